#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padic/ffpoly.hpp"
#include "padic/polymod.hpp"
#include "padic/residue_poly.hpp"

namespace padic {

/// Monic g*h = f mod p^k, deg g <= deg h; ascending coefficients with leading 1.
struct Factorization {
  Coeffs g;
  Coeffs h;

  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend bool operator<(const Factorization& a, const Factorization& b) {
    return std::tie(a.g, a.h) < std::tie(b.g, b.h);
  }
};

enum class SearchStrategy { naive, structured };

namespace detail {

inline Factorization canonical(Coeffs g, Coeffs h) {
  if (g.size() > h.size() || (g.size() == h.size() && h < g)) std::swap(g, h);
  return {std::move(g), std::move(h)};
}

inline Coeffs monic_from(const Coeffs& low) {
  Coeffs c = low;
  c.push_back(1);
  return c;
}

/// g(x + s) mod m.
inline Coeffs taylor_shift(Coeffs g, Int s, Int m) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) g[j] = reduce(g[j] + mulmod(s, g[j + 1], m), m);
  return g;
}

inline bool divides(const Coeffs& g, const Coeffs& f, Int m) {
  return poly_divmod_monic(f, g, m).second.empty();
}

/// Solutions of a*t = r mod m = p^k as t = t0 (mod period); nullopt if none.
inline std::optional<std::pair<Int, Int>> solve_linear(Int a, Int r, Int p, Int m) {
  a = reduce(a, m);
  r = reduce(r, m);
  if (a == 0) {
    if (r == 0) return std::pair<Int, Int>{0, 1};
    return std::nullopt;
  }
  int va = vp<Int>(a, p);
  Int pv = ipow<Int>(p, va);
  if (r % pv != 0) return std::nullopt;
  Int period = m / pv;
  Int t0 = mulmod(reduce(r / pv, period), inverse<Int>(reduce(a / pv, period), period), period);
  return std::pair<Int, Int>{t0, period};
}

inline int tval(Int x, Int p, int k) {
  return x == 0 ? k : vp<Int>(x, p);
}

// Monic divisors of the given degree of a product of irreducible powers.
inline void modp_divisors(const FactorMultiset& fm, std::size_t idx, int remaining, const FFPoly& acc,
                          std::vector<FFPoly>& out) {
  if (remaining == 0) {
    out.push_back(acc);
    return;
  }
  if (idx == fm.size()) return;
  FFPoly cur = acc;
  for (int e = 0; e <= fm[idx].multiplicity; ++e) {
    int used = e * fm[idx].poly.degree();
    if (used > remaining) break;
    modp_divisors(fm, idx + 1, remaining - used, cur, out);
    cur = cur * fm[idx].poly;
  }
}

template <class Visit>
bool lift_divisor(const Coeffs& f, Coeffs g, Int p, int level, int k, Int pj, Visit& visit) {
  if (level == k) {
    Int m = pj;
    auto q = poly_divmod_monic(f, g, m).first;
    q.resize(f.size() - g.size() + 1, 0);
    return visit(std::move(g), std::move(q));
  }
  const std::size_t d = g.size() - 1;
  Int next = pj * p;
  Coeffs f_next = poly_reduce(f, next);
  std::vector<Int> digits(d, 0);
  for (;;) {
    Coeffs cand = g;
    for (std::size_t i = 0; i < d; ++i) cand[i] = cand[i] + pj * digits[i];
    if (divides(cand, f_next, next) && lift_divisor(f, cand, p, level + 1, k, next, visit)) return true;
    std::size_t i = 0;
    while (i < d && ++digits[i] == p) digits[i++] = 0;
    if (i == d) break;
  }
  return false;
}

template <class Visit>
bool naive_search(const ResiduePoly& f, Visit& visit) {
  const int n = f.degree();
  const Int m = f.modulus();
  Coeffs full = f.full();
  for (int d = 1; 2 * d <= n; ++d) {
    Int total = 1;
    for (int i = 0; i < d; ++i) {
      if (total > Int{200'000'000} / m) throw Error(ErrorCode::resource_limit, "naive factor search too large");
      total *= m;
    }
    Coeffs g(static_cast<std::size_t>(d) + 1, 0);
    g[static_cast<std::size_t>(d)] = 1;
    for (Int code = 0; code < total; ++code) {
      Int c = code;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = c % m;
        c /= m;
      }
      auto [q, r] = poly_divmod_monic(full, g, m);
      if (!r.empty()) continue;
      q.resize(static_cast<std::size_t>(n - d) + 1, 0);
      if (visit(Coeffs(g), std::move(q))) return true;
    }
  }
  return false;
}

// Quadratic pairs of a quartic via x^4 + c2 x^2 + c1 x + c0 = (x^2+u)^2 - (bx-w)^2.
template <class Visit>
bool quartic_pairs(const ResiduePoly& f, bool representatives, Visit& visit) {
  const Int p = f.p();
  const int k = f.level();
  const Int m = f.modulus();
  Int shift = 0;
  Coeffs F = f.full();
  if (F[3] != 0) {
    shift = mulmod(F[3], inverse<Int>(4, m), m);
    F = taylor_shift(F, reduce(-shift, m), m);
  }
  const Int c2 = F[2], c1 = F[1], c0 = F[0];
  Coeffs resolvent = {reduce(mulmod(4, mulmod(c2, c0, m), m) - mulmod(c1, c1, m), m),
                      reduce(-mulmod(8, c0, m), m), reduce(-mulmod(4, c2, m), m), 8 % m};

  auto emit = [&](Int u, Int b, Int w) {
    Coeffs g = {reduce(u - w, m), reduce(b, m), 1};
    Coeffs h = {reduce(u + w, m), reduce(-b, m), 1};
    if (shift != 0) {
      g = taylor_shift(g, shift, m);
      h = taylor_shift(h, shift, m);
    }
    return visit(std::move(g), std::move(h));
  };

  for (Int u : roots_mod(resolvent, p, k)) {
    auto s1 = try_sqrt_mod<Int>(reduce(2 * u - c2, m), p, k);
    if (s1.status != SqrtStatus::ok) continue;
    auto s2 = try_sqrt_mod<Int>(reduce(mulmod(u, u, m) - c0, m), p, k);
    if (s2.status != SqrtStatus::ok) continue;
    const Int P = s1.step, Q = s2.step;
    for (Int beta : s1.bases) {
      for (Int omega : s2.bases) {
        // 2(beta + P t1)(omega + Q t2) = c1, and P*Q = 0 mod m
        Int A = mulmod(mulmod(2, omega, m), P % m, m);
        Int B = mulmod(mulmod(2, beta, m), Q % m, m);
        Int r0 = reduce(c1 - mulmod(2, mulmod(beta, omega, m), m), m);
        if (representatives) {
          int va = tval(A, p, k), vb = tval(B, p, k), vr = tval(r0, p, k);
          if (std::min(va, vb) > vr) continue;
          Int t1 = 0, t2 = 0;
          if (va <= vb)
            t1 = solve_linear(A, r0, p, m)->first;
          else
            t2 = solve_linear(B, r0, p, m)->first;
          if (emit(u, reduce(beta + P * t1, m), reduce(omega + Q * t2, m))) return true;
          continue;
        }
        for (Int t1 = 0; t1 < m / P; ++t1) {
          Int r = reduce(r0 - mulmod(A, t1, m), m);
          auto sol = solve_linear(B, r, p, m);
          if (!sol) continue;
          for (Int t2 = sol->first; t2 < m / Q; t2 += sol->second)
            if (emit(u, reduce(beta + P * t1, m), reduce(omega + Q * t2, m))) return true;
        }
      }
    }
  }
  return false;
}

template <class Visit>
bool structured_search(const ResiduePoly& f, bool representatives, Visit& visit) {
  const int n = f.degree();
  const Int m = f.modulus();
  const Int p = f.p();
  Coeffs full = f.full();
  if (n < 2) return false;
  for (Int r : roots_mod(full, p, f.level())) {
    Coeffs g = {reduce(-r, m), 1};
    auto q = poly_divmod_monic(full, g, m).first;
    q.resize(static_cast<std::size_t>(n), 0);
    if (visit(std::move(g), std::move(q))) return true;
  }
  if (n == 4) return quartic_pairs(f, representatives, visit);
  if (n < 5) return false;
  std::vector<Int> low(f.coeffs().begin(), f.coeffs().end());
  for (auto& c : low) c = reduce(c, p);
  low.push_back(1);
  auto fm = factor_mod_p(FFPoly(p, low));
  for (int d = 2; 2 * d <= n; ++d) {
    std::vector<FFPoly> divs;
    modp_divisors(fm, 0, d, FFPoly::constant(p, 1), divs);
    for (const auto& g0 : divs) {
      Coeffs g(g0.coeffs().begin(), g0.coeffs().end());
      if (lift_divisor(full, g, p, 1, f.level(), p, visit)) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Walks factor pairs (g, h) of f mod p^k; visit(g, h) returns true to stop.
/// With representatives set, the quadratic-pair search yields one pair per
/// solution family instead of every pair.
template <class Visit>
bool for_each_factorization(const ResiduePoly& f, SearchStrategy s, Visit&& visit, bool representatives = false) {
  if (s == SearchStrategy::naive) return detail::naive_search(f, visit);
  return detail::structured_search(f, representatives, visit);
}

/// Every factorization of f mod p^k, each pair once.
inline std::vector<Factorization> find_factorizations(const ResiduePoly& f, SearchStrategy s) {
  std::set<Factorization> out;
  for_each_factorization(f, s, [&](Coeffs g, Coeffs h) {
    out.insert(detail::canonical(std::move(g), std::move(h)));
    return false;
  });
  return {out.begin(), out.end()};
}

}  // namespace padic
