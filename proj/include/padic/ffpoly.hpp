#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padic/rational.hpp"
#include "padic/ring.hpp"

namespace padic {

/// Polynomial over the field with p elements, ascending coefficients.
class FFPoly {
 public:
  FFPoly(Int p, std::vector<Int> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x = reduce(x, p_);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  static FFPoly zero(Int p) { return FFPoly(p, {}); }
  static FFPoly constant(Int p, Int c) { return FFPoly(p, {c}); }
  static FFPoly x(Int p) { return FFPoly(p, {0, 1}); }

  Int prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Int lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return lead() == 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
  }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      Int c = (*this)[i];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (c != 1 || i == 0) os << c;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

  friend bool operator==(const FFPoly& a, const FFPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator<(const FFPoly& a, const FFPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

 private:
  Int p_;
  std::vector<Int> c_;
};

inline FFPoly operator+(const FFPoly& a, const FFPoly& b) {
  std::vector<Int> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0);
  for (int i = 0; i < static_cast<int>(r.size()); ++i) r[static_cast<std::size_t>(i)] = a[i] + b[i];
  return FFPoly(a.prime(), r);
}

inline FFPoly operator-(const FFPoly& a, const FFPoly& b) {
  std::vector<Int> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1), 0);
  for (int i = 0; i < static_cast<int>(r.size()); ++i) r[static_cast<std::size_t>(i)] = a[i] - b[i];
  return FFPoly(a.prime(), r);
}

inline FFPoly operator*(const FFPoly& a, const FFPoly& b) {
  if (a.is_zero() || b.is_zero()) return FFPoly::zero(a.prime());
  Int p = a.prime();
  std::vector<Int> r(static_cast<std::size_t>(a.degree() + b.degree() + 1), 0);
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j)
      r[static_cast<std::size_t>(i + j)] = (r[static_cast<std::size_t>(i + j)] + a[i] * b[j]) % p;
  return FFPoly(p, r);
}

inline FFPoly scale(const FFPoly& a, Int c) {
  std::vector<Int> r = a.coeffs();
  for (auto& x : r) x = mulmod(x, reduce(c, a.prime()), a.prime());
  return FFPoly(a.prime(), r);
}

inline std::pair<FFPoly, FFPoly> divmod(const FFPoly& a, const FFPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Int p = a.prime();
  Int inv = inverse<Int>(b.lead(), p);
  std::vector<Int> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {FFPoly::zero(p), a};
  std::vector<Int> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    Int c = mulmod(r[static_cast<std::size_t>(i)], inv, p);
    if (c == 0) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(i - db + j)];
      x = reduce(x - c * b[j], p);
    }
  }
  return {FFPoly(p, q), FFPoly(p, r)};
}

inline FFPoly operator%(const FFPoly& a, const FFPoly& b) { return divmod(a, b).second; }
inline FFPoly operator/(const FFPoly& a, const FFPoly& b) { return divmod(a, b).first; }

inline FFPoly make_monic(const FFPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, inverse<Int>(a.lead(), a.prime()));
}

/// Monic gcd (zero only if both inputs are zero).
inline FFPoly gcd(FFPoly a, FFPoly b) {
  while (!b.is_zero()) {
    FFPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

inline FFPoly derivative(const FFPoly& a) {
  std::vector<Int> d;
  for (int i = 1; i <= a.degree(); ++i) d.push_back(mulmod(static_cast<Int>(i) % a.prime(), a[i], a.prime()));
  return FFPoly(a.prime(), d);
}

inline FFPoly powmod(FFPoly base, std::uint64_t e, const FFPoly& m) {
  FFPoly r = FFPoly::constant(m.prime(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

struct Factor {
  FFPoly poly;
  int multiplicity;

  friend bool operator==(const Factor&, const Factor&) = default;
};

using FactorMultiset = std::vector<Factor>;

namespace detail {

// f(x) = g(x^p) -> g(x); coefficients are fixed by Frobenius on the prime field.
inline FFPoly pth_root(const FFPoly& f) {
  Int p = f.prime();
  std::vector<Int> r;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) r.push_back(f[i]);
  return FFPoly(p, r);
}

inline void squarefree(const FFPoly& f, int mult, std::vector<std::pair<FFPoly, int>>& out) {
  if (f.degree() < 1) return;
  FFPoly c = gcd(f, derivative(f));
  FFPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FFPoly y = gcd(w, c);
    FFPoly z = w / y;
    if (z.degree() > 0) out.emplace_back(make_monic(z), i * mult);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree(make_monic(pth_root(c)), mult * static_cast<int>(f.prime()), out);
}

inline std::uint64_t checked_pow(Int p, int d) {
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) {
    if (r > (~std::uint64_t{0}) / static_cast<std::uint64_t>(p))
      throw Error(ErrorCode::resource_limit, "field extension too large for factoring");
    r *= static_cast<std::uint64_t>(p);
  }
  return r;
}

// Splits a product of distinct degree-d irreducibles.
inline void equal_degree(const FFPoly& f, int d, std::vector<FFPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  Int p = f.prime();
  std::uint64_t e = (checked_pow(p, d) - 1) / 2;
  FFPoly one = FFPoly::constant(p, 1);
  // deterministic sweep over trial polynomials of rising degree
  for (std::uint64_t code = static_cast<std::uint64_t>(p);; ++code) {
    std::vector<Int> tc;
    for (std::uint64_t c = code; c; c /= static_cast<std::uint64_t>(p))
      tc.push_back(static_cast<Int>(c % static_cast<std::uint64_t>(p)));
    if (static_cast<int>(tc.size()) > f.degree()) break;
    FFPoly t(p, tc);
    FFPoly g = gcd(f, t);
    if (g.degree() <= 0 || g.degree() == f.degree()) g = gcd(f, powmod(t, e, f) - one);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, out);
      equal_degree(make_monic(f / g), d, out);
      return;
    }
  }
  throw std::logic_error("equal-degree splitting failed");
}

}  // namespace detail

/// Complete factorization of a monic polynomial into monic irreducibles.
inline FactorMultiset factor_mod_p(const FFPoly& f) {
  if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("factor_mod_p needs a monic polynomial of degree >= 1");
  Int p = f.prime();
  std::vector<std::pair<FFPoly, int>> sqf;
  detail::squarefree(f, 1, sqf);
  FactorMultiset out;
  for (auto& [g0, e] : sqf) {
    FFPoly g = g0;
    FFPoly h = FFPoly::x(p);
    FFPoly xpoly = FFPoly::x(p);
    for (int d = 1; 2 * d <= g.degree(); ++d) {
      h = powmod(h, static_cast<std::uint64_t>(p), g);
      FFPoly fd = gcd(g, h - xpoly);
      if (fd.degree() > 0) {
        std::vector<FFPoly> parts;
        detail::equal_degree(fd, d, parts);
        for (auto& q : parts) out.push_back({q, e});
        g = g / fd;
        h = h % g;
      }
    }
    if (g.degree() > 0) out.push_back({make_monic(g), e});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
    return a.poly < b.poly;
  });
  // squarefree parts are coprime, so each irreducible appears once
  return out;
}

inline bool is_irreducible(const FFPoly& f) {
  auto fm = factor_mod_p(f);
  return fm.size() == 1 && fm[0].multiplicity == 1;
}

inline int mobius(long long m) {
  if (m < 1) throw std::invalid_argument("mobius needs m >= 1");
  int sign = 1;
  for (long long d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    m /= d;
    if (m % d == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

/// Number of monic irreducibles of degree n over F_p.
inline BigInt nu(int n, const PrimeModulus& p) {
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  BigInt s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += mobius(n / d) * boost::multiprecision::pow(BigInt(p.value()), static_cast<unsigned>(d));
  return s / n;
}

/// Number of monic irreducibles of degree n over F_p with zero x^(n-1) term.
inline BigInt nu_no_trace(int n, const PrimeModulus& p) {
  if (n % p.value() == 0)
    throw Error(ErrorCode::hypothesis, "count without trace term needs p not dividing n");
  return nu(n, p) / p.value();
}

}  // namespace padic
