#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "padic/classify.hpp"
#include "padic/lifting.hpp"

namespace padic {

enum class FamilyKind { double_quadratic, slope_half };
enum class SlopeCase { case1, case2 };

inline const char* family_name(FamilyKind f) {
  return f == FamilyKind::double_quadratic ? "double_quadratic" : "slope_half";
}

/// Parameters of f_(A,B,C) = (x^2 + pA + zeta)^2 - p^2 (Bx + C)^2.
struct FamilyParams {
  FamilyKind family = FamilyKind::double_quadratic;
  Int zeta = 0;
  Int A = 0, B = 0, C = 0;

  /// Largest k with p^k | B and p^k | C (B = C = 0 has no profile).
  std::optional<int> k(Int p) const {
    if (B == 0 && C == 0) return std::nullopt;
    int vb = B == 0 ? 1 << 20 : vp(B, p), vc = C == 0 ? 1 << 20 : vp(C, p);
    return std::min(vb, vc);
  }

  std::optional<SlopeCase> slope_case(Int p) const {
    auto kk = k(p);
    if (!kk || family != FamilyKind::slope_half) return std::nullopt;
    return (C != 0 && vp(C, p) == *kk) ? SlopeCase::case1 : SlopeCase::case2;
  }

  void check(Int p) const {
    if (family == FamilyKind::double_quadratic) {
      if (detail::is_qr_mod_p(reduce(-zeta, p), p) || reduce(zeta, p) == 0)
        throw Error(ErrorCode::hypothesis, "-zeta must be a non-residue mod p");
    } else {
      if (zeta != 0) throw Error(ErrorCode::usage, "slope-half family has zeta = 0");
      if (reduce(A * A - C * C, p) == 0) throw Error(ErrorCode::hypothesis, "p divides A^2 - C^2");
    }
  }

  ResiduePoly poly(const PrimeModulus& p, int level) const {
    const Int m = p.pow(level), pv = p.value();
    Int u = reduce(mulmod(pv % m, reduce(A, m), m) + zeta, m);
    Int b = reduce(B, m), c = reduce(C, m), p2 = reduce(pv * pv, m);
    Int c2 = reduce(2 * u - mulmod(p2, mulmod(b, b, m), m), m);
    Int c1 = reduce(-mulmod(p2, mulmod(2, mulmod(b, c, m), m), m), m);
    Int c0 = reduce(mulmod(u, u, m) - mulmod(p2, mulmod(c, c, m), m), m);
    return ResiduePoly(p, level, {c0, c1, c2, 0}, true);
  }
};

struct Counterexample {
  std::string what;
  std::vector<std::pair<std::string, Int>> params;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct CountCheck {
  std::string label;
  BigInt expected;
  BigInt enumerated;

  friend bool operator==(const CountCheck&, const CountCheck&) = default;
};

struct ClaimReport {
  std::string claim;
  Int p = 0;
  std::vector<std::pair<std::string, std::string>> grid;
  std::vector<Counterexample> counterexamples;  // first kMaxRecorded only
  Int counterexample_count = 0;
  std::vector<CountCheck> counts;

  static constexpr std::size_t kMaxRecorded = 50;

  void add(Counterexample c) {
    ++counterexample_count;
    if (counterexamples.size() < kMaxRecorded) counterexamples.push_back(std::move(c));
  }
  void count(std::string label, BigInt expected, BigInt enumerated) {
    counts.push_back({std::move(label), std::move(expected), std::move(enumerated)});
  }
  bool passed() const {
    return counterexample_count == 0 &&
           std::all_of(counts.begin(), counts.end(), [](const CountCheck& c) { return c.expected == c.enumerated; });
  }

  friend bool operator==(const ClaimReport&, const ClaimReport&) = default;
};

/// Smallest zeta in [1, p) with -zeta a non-residue.
inline Int default_zeta(Int p) {
  for (Int z = 1; z < p; ++z)
    if (!detail::is_qr_mod_p(reduce(-z, p), p)) return z;
  throw Error(ErrorCode::hypothesis, "no admissible zeta");
}

// ---- Hensel moduli ----

namespace detail {

inline int vp_or(Int x, Int p, int inf) { return x == 0 ? inf : vp(x, p); }

inline Coeffs quad_factor(Int p, Int alpha, Int beta, Int zeta, Int m) {
  return {reduce(p * beta + zeta, m), reduce(p * alpha, m), 1};
}

inline Coeffs product_trace_zero(const Coeffs& g, const Coeffs& h, Int m) {
  Coeffs f = poly_mul(g, h, m);
  f.resize(5, 0);
  return f;
}

}  // namespace detail

/// Root certificates for (x^2 + p a x + p b + zeta)(x^2 - p a x + p c + zeta) succeed first at
/// level 2k+3 (double quadratic), 2k+4 (slope half, case 1) or 2k+5 (case 2) with v(f'(y))
/// equal to k+1, k+3/2, k+2.
inline ClaimReport verify_hensel_moduli(FamilyKind family, const PrimeModulus& p, const std::vector<int>& k_range,
                                        Int zeta = -1) {
  const Int pv = p.value();
  if (family == FamilyKind::double_quadratic) {
    if (zeta < 0) zeta = default_zeta(pv);
    FamilyParams{family, zeta}.check(pv);
  } else {
    zeta = 0;
  }
  ClaimReport rep;
  rep.claim = family == FamilyKind::double_quadratic ? "claim1" : "claim3";
  rep.p = pv;
  rep.grid.push_back({"family", family_name(family)});
  rep.grid.push_back({"zeta", std::to_string(zeta)});
  std::string ks;
  for (int k : k_range) ks += (ks.empty() ? "" : ",") + std::to_string(k);
  rep.grid.push_back({"k", ks});
  rep.grid.push_back({"alpha", "[0, p^(k+1))"});
  rep.grid.push_back({"beta,gamma", "[0, p^(k+2))"});

  for (int k : k_range) {
    const Int ra = ipow(pv, k + 1), rb = ipow(pv, k + 2);
    const int inf = 1 << 20;
    Int tested[2] = {0, 0};
    for (Int a = 0; a < ra; ++a)
      for (Int b = 0; b < rb; ++b)
        for (Int c = 0; c < rb; ++c) {
          int va = detail::vp_or(a, pv, inf), vd = detail::vp_or(b - c, pv, inf);
          int level = 0, expect_h = 0, which = 0;
          if (family == FamilyKind::double_quadratic) {
            if (std::min(va, vd) != k) continue;
            level = 2 * k + 3;
            expect_h = 2 * k + 2;
          } else {
            if (b % pv == 0 || c % pv == 0) continue;
            if (vd == k && va >= k) {
              level = 2 * k + 4;
              expect_h = 2 * k + 3;
            } else if (va == k && vd >= k + 1) {
              level = 2 * k + 5;
              expect_h = 2 * k + 4;
              which = 1;
            } else {
              continue;
            }
          }
          ++tested[which];
          auto params = [&] {
            return std::vector<std::pair<std::string, Int>>{{"k", k}, {"alpha", a}, {"beta", b}, {"gamma", c}};
          };
          for (int lv : {level - 1, level}) {
            const Int m = p.pow(lv);
            Coeffs g = detail::quad_factor(pv, a, b, zeta, m);
            Coeffs h = detail::quad_factor(pv, -a, c, zeta, m);
            Coeffs f = detail::product_trace_zero(g, h, m);
            ResiduePoly rf(p, lv, Coeffs(f.begin(), f.begin() + 4), true);
            auto rc = root_certificate(rf, g);
            if (lv == level) {
              if (!rc.passed)
                rep.add({"certificate fails at level " + std::to_string(lv), params()});
              else if (rc.v_fprime != TruncatedValuation::exact(expect_h))
                rep.add({"v(f'(y)) = " + rc.v_fprime.to_string() + " at level " + std::to_string(lv), params()});
            } else if (rc.passed) {
              rep.add({"certificate already succeeds at level " + std::to_string(lv), params()});
            }
          }
        }
    if (family == FamilyKind::double_quadratic) {
      rep.count("k=" + std::to_string(k) + " tuples checked", BigInt(tested[0]), BigInt(tested[0]));
    } else {
      rep.count("k=" + std::to_string(k) + " case 1 tuples checked", BigInt(tested[0]), BigInt(tested[0]));
      rep.count("k=" + std::to_string(k) + " case 2 tuples checked", BigInt(tested[1]), BigInt(tested[1]));
    }
    if (tested[0] == 0 || (family == FamilyKind::slope_half && tested[1] == 0))
      rep.add({"empty grid", {{"k", k}}});
  }
  return rep;
}

// ---- enumeration of f_(A,B,C) mod p^L ----

namespace detail {

enum class QProfile { any, case1, case2 };

/// One distinct value of p^2 (Bx + C)^2 mod p^L.
struct QValue {
  Int q2, q1, q0;
  Int csq;  // C^2 mod p
  Int B, C;  // a representative
};

/// Distinct p^2(Bx+C)^2 mod p^L over B = p^k b, C = p^k c with the given profile.
inline std::vector<QValue> q_values(Int p, int L, int k, QProfile prof) {
  const Int m = ipow(p, L), pk = ipow(p, k), p2 = reduce(p * p, m);
  const int d = L - 2 * k - 2;
  if (d < 1) throw std::invalid_argument("modulus too small for k");
  const Int R = ipow(p, d);
  std::map<std::tuple<Int, Int, Int>, QValue> seen;
  for (Int b = 0; b < R; ++b)
    for (Int c = 0; c < R; ++c) {
      if (prof == QProfile::case1 && c % p == 0) continue;
      if (prof == QProfile::case2 && (b % p == 0 || c % p != 0)) continue;
      Int B = pk * b, C = pk * c;
      Int Bm = reduce(B, m), Cm = reduce(C, m);
      QValue q{mulmod(p2, mulmod(Bm, Bm, m), m), mulmod(p2, mulmod(2, mulmod(Bm, Cm, m), m), m),
               mulmod(p2, mulmod(Cm, Cm, m), m), reduce(C * C, p), B, C};
      seen.emplace(std::make_tuple(q.q2, q.q1, q.q0), q);
    }
  std::vector<QValue> out;
  for (auto& [key, q] : seen) out.push_back(q);
  return out;
}

struct Packed {
  std::uint64_t key;
  std::uint32_t A;
  std::uint32_t q;
  bool operator<(const Packed& o) const { return key < o.key || (key == o.key && (A < o.A || (A == o.A && q < o.q))); }
};

struct Enumeration {
  Int p, m, zeta;
  int L;

  void check_packable() const {
    if (static_cast<long double>(m) * m * m >= 1.8e19L || ipow(p, L - 1) > 0xffffffffLL)
      throw Error(ErrorCode::resource_limit, "modulus too large for packed enumeration");
  }
  std::uint64_t key(Int c2, Int c1, Int c0) const {
    return (static_cast<std::uint64_t>(c2) * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(c1)) *
               static_cast<std::uint64_t>(m) +
           static_cast<std::uint64_t>(c0);
  }
  std::uint64_t f_key(Int A, const QValue& q) const {
    Int u = reduce(p * A + zeta, m);
    return key(reduce(2 * u - q.q2, m), reduce(-q.q1, m), reduce(mulmod(u, u, m) - q.q0, m));
  }
  std::uint64_t square_key(Int A) const {
    Int u = reduce(p * A + zeta, m);
    return key(reduce(2 * u, m), 0, mulmod(u, u, m));
  }
  std::tuple<Int, Int, Int> unpack(std::uint64_t k) const {
    const auto M = static_cast<std::uint64_t>(m);
    return {static_cast<Int>(k / M / M), static_cast<Int>(k / M % M), static_cast<Int>(k % M)};
  }
};

/// f_(A,Q) over A in [0, p^(L-1)) with A = r mod p and p not dividing A^2 - C^2 when required.
inline std::vector<Packed> enumerate_partition(const Enumeration& e, const std::vector<QValue>& qs, Int r,
                                               bool need_unit) {
  std::vector<Packed> out;
  const Int ra = ipow(e.p, e.L - 1);
  for (Int A = r; A < ra; A += e.p)
    for (std::size_t qi = 0; qi < qs.size(); ++qi) {
      if (need_unit && reduce(A * A - qs[qi].csq, e.p) == 0) continue;
      out.push_back({e.f_key(A, qs[qi]), static_cast<std::uint32_t>(A), static_cast<std::uint32_t>(qi)});
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<std::string, Int>> pair_params(const Packed& x, const Packed& y,
                                                            const std::vector<QValue>& qs) {
  return {{"A", x.A}, {"B", qs[x.q].B}, {"C", qs[x.q].C}, {"A'", y.A}, {"B'", qs[y.q].B}, {"C'", qs[y.q].C}};
}

}  // namespace detail

enum class UniquenessClaim { claim2, claim4, claim4_weak, claim5, claim6 };

inline const char* uniqueness_name(UniquenessClaim c) {
  switch (c) {
    case UniquenessClaim::claim2: return "claim2";
    case UniquenessClaim::claim4: return "claim4";
    case UniquenessClaim::claim4_weak: return "claim4_weak";
    case UniquenessClaim::claim5: return "claim5";
    case UniquenessClaim::claim6: return "claim6";
  }
  return "?";
}

/// Congruent f_(A,B,C) = f_(A',B',C') mod p^L forces A = A' mod p^t; claims 5 and 6 also need
/// exactly one p^2(B'x+C')^2 for each admissible (A, B, C, A').
/// exponent overrides the claimed congruence exponent t.
inline ClaimReport verify_uniqueness(UniquenessClaim claim, const PrimeModulus& p, int k,
                                     std::optional<int> exponent = std::nullopt) {
  using namespace detail;
  const Int pv = p.value();
  int L = 0, t = 0;
  QProfile prof = QProfile::any;
  Int zeta = 0;
  switch (claim) {
    case UniquenessClaim::claim2: L = 2 * k + 3; t = 2 * k + 2; zeta = default_zeta(pv); break;
    case UniquenessClaim::claim4: L = 2 * k + 4; t = 2 * k + 3; prof = QProfile::case1; break;
    case UniquenessClaim::claim4_weak: L = 2 * k + 3; t = 2 * k + 2; prof = QProfile::case1; break;
    case UniquenessClaim::claim5: L = 2 * k + 4; t = 2 * k + 2; prof = QProfile::case2; break;
    case UniquenessClaim::claim6: L = 2 * k + 5; t = 2 * k + 3; prof = QProfile::case2; break;
  }
  if (exponent) t = *exponent;
  const bool slope = claim != UniquenessClaim::claim2;
  Enumeration e{pv, p.pow(L), zeta, L};
  e.check_packable();
  auto qs = q_values(pv, L, k, prof);
  const Int pt = ipow(pv, t);

  ClaimReport rep;
  rep.claim = uniqueness_name(claim);
  rep.p = pv;
  rep.grid = {{"k", std::to_string(k)},
              {"modulus", "p^" + std::to_string(L)},
              {"A", "[0, p^" + std::to_string(L - 1) + ")"},
              {"B,C", "p^k * [0, p^" + std::to_string(L - 2 * k - 2) + ")"},
              {"zeta", std::to_string(zeta)}};

  // equal polynomials have equal c2 mod p^2, hence equal A mod p
  Int pairs = 0, distinct = 0;
  for (Int r = 0; r < pv; ++r) {
    auto v = enumerate_partition(e, qs, r, slope);
    pairs += static_cast<Int>(v.size());
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j].key == v[i].key) ++j;
      ++distinct;
      for (std::size_t x = i + 1; x < j; ++x)
        if (reduce(static_cast<Int>(v[x].A) - static_cast<Int>(v[i].A), pt) != 0)
          rep.add({"A and A' differ mod p^" + std::to_string(t), pair_params(v[i], v[x], qs)});
      i = j;
    }
  }
  rep.count("(A, p^2(Bx+C)^2) pairs", BigInt(pairs), BigInt(pairs));
  rep.count("distinct polynomials", BigInt(distinct), BigInt(distinct));

  if (claim == UniquenessClaim::claim5 || claim == UniquenessClaim::claim6) {
    std::vector<std::tuple<Int, Int, Int>> qset;
    for (auto& q : qs) qset.emplace_back(q.q2, q.q1, q.q0);
    std::sort(qset.begin(), qset.end());
    const Int m = e.m, ra = ipow(pv, L - 1);
    Int checked = 0, unique = 0;
    for (Int A = 0; A < ra; ++A) {
      if (A % pv == 0) continue;
      Int u = reduce(pv * A, m);
      for (Int s = 0; s < ra; s += pt) {
        Int A2 = reduce(A + s, ra);
        Int u2 = reduce(pv * A2, m);
        // p^2(B'x+C')^2 = (x^2 + pA')^2 - (x^2 + pA)^2 + p^2(Bx+C)^2
        Int d2 = reduce(2 * (u2 - u), m), d0 = reduce(mulmod(u2, u2, m) - mulmod(u, u, m), m);
        for (auto& q : qs) {
          auto target = std::make_tuple(reduce(d2 + q.q2, m), q.q1, reduce(d0 + q.q0, m));
          ++checked;
          if (std::binary_search(qset.begin(), qset.end(), target)) {
            ++unique;
          } else {
            rep.add({"no admissible p^2(B'x+C')^2", {{"A", A}, {"B", q.B}, {"C", q.C}, {"A'", A2}}});
          }
        }
      }
    }
    rep.count("(A,B,C,A') with exactly one p^2(B'x+C')^2", BigInt(checked), BigInt(unique));
  }
  return rep;
}

// ---- case counts ----

inline BigInt case1_count(Int p, int i) {
  BigInt P = p;
  auto pw = [&](int e) { return BigInt(ipow(p, e)); };
  if (i == 3) return pw(2) * (P - 2) * (P - 1) / 2;
  if (i == 4) return pw(5) * (P - 2) * (P - 1) / 2;
  if (i % 2 == 1) return pw(i - 1) * (P - 1) * (P - 1) / 2;  // i = 2k+3, p^(2k+2)
  return pw(i + 1) * (P - 1) * (P - 1) / 2;                  // i = 2k+4, p^(2k+5)
}

inline BigInt case2_count(Int p, int i) {
  BigInt P = p;
  if (i < 4) return 0;
  if (i % 2 == 0) return BigInt(ipow(p, i - 1)) * (P - 1) * (P - 1) / 2;  // i = 2k+4, p^(2k+3)
  return BigInt(ipow(p, i + 1)) * (P - 1) * (P - 1) / 2;                  // i = 2k+5, p^(2k+6)
}

/// Distinct case-1 and case-2 polynomials mod p^i against the counting formulas, plus
/// disjointness, distance from (x^2 + pA)^2, and the case-2 collapse mod p^(2k+3).
inline ClaimReport verify_case_counts(const PrimeModulus& p, int i) {
  using namespace detail;
  const Int pv = p.value();
  if (i < 3) throw Error(ErrorCode::usage, "case counts start at level 3");
  Enumeration e{pv, p.pow(i), 0, i};
  e.check_packable();
  const int k1 = i % 2 == 1 ? (i - 3) / 2 : (i - 4) / 2;
  const int k2 = i % 2 == 0 ? (i - 4) / 2 : (i - 5) / 2;
  auto q1 = q_values(pv, i, k1, QProfile::case1);
  std::vector<QValue> q2;
  if (i >= 4) q2 = q_values(pv, i, k2, QProfile::case2);

  ClaimReport rep;
  rep.claim = "case_counts";
  rep.p = pv;
  rep.grid = {{"i", std::to_string(i)}, {"case1_k", std::to_string(k1)}, {"case2_k", i >= 4 ? std::to_string(k2) : "-"}};

  std::vector<std::uint64_t> squares;
  for (Int A = 0; A < ipow(pv, i - 1); ++A) squares.push_back(e.square_key(A));
  std::sort(squares.begin(), squares.end());

  Int n1 = 0, n2 = 0;
  auto distinct_keys = [](std::vector<Packed>& v) {
    std::vector<std::uint64_t> k;
    k.reserve(v.size());
    for (auto& x : v)
      if (k.empty() || k.back() != x.key) k.push_back(x.key);
    std::vector<Packed>().swap(v);
    return k;
  };
  for (Int r = 1; r < pv; ++r) {
    auto v1 = enumerate_partition(e, q1, r, true);
    auto v2 = i >= 4 ? enumerate_partition(e, q2, r, true) : std::vector<Packed>{};
    auto k1v = distinct_keys(v1);
    auto k2v = distinct_keys(v2);
    n1 += static_cast<Int>(k1v.size());
    n2 += static_cast<Int>(k2v.size());
    for (auto* ks : {&k1v, &k2v})
      for (auto key : *ks)
        if (std::binary_search(squares.begin(), squares.end(), key)) {
          auto [c2, c1, c0] = e.unpack(key);
          rep.add({std::string(ks == &k1v ? "case 1" : "case 2") + " polynomial equals some (x^2+pA)^2",
                   {{"c2", c2}, {"c1", c1}, {"c0", c0}}});
        }
    std::vector<std::uint64_t> both;
    std::set_intersection(k1v.begin(), k1v.end(), k2v.begin(), k2v.end(), std::back_inserter(both));
    for (auto key : both) {
      auto [c2, c1, c0] = e.unpack(key);
      rep.add({"polynomial in both T and U", {{"c2", c2}, {"c1", c1}, {"c0", c0}}});
    }
  }
  // A = 0 mod p is inadmissible for case 2 and for case 1 with k > 0; for k = 0 it is allowed
  if (k1 == 0) {
    auto v1 = enumerate_partition(e, q1, 0, true);
    auto k1v = distinct_keys(v1);
    n1 += static_cast<Int>(k1v.size());
    for (auto key : k1v)
      if (std::binary_search(squares.begin(), squares.end(), key)) {
        auto [c2, c1, c0] = e.unpack(key);
        rep.add({"case 1 polynomial equals some (x^2+pA)^2", {{"c2", c2}, {"c1", c1}, {"c0", c0}}});
      }
  }
  rep.count("case 1 polynomials mod p^" + std::to_string(i), case1_count(pv, i), BigInt(n1));
  rep.count("case 2 polynomials mod p^" + std::to_string(i), case2_count(pv, i), BigInt(n2));

  // collapse: case-2 f_(A,B,C) = (x^2 + p(A - pB^2/2))^2 mod p^(2k+3)
  {
    const int kc = i >= 4 ? k2 : 0;
    const int Lc = 2 * kc + 3;
    const Int m = p.pow(Lc), pk = ipow(pv, kc), half = inverse<Int>(2, m);
    Int checked = 0;
    for (Int A = 0; A < ipow(pv, Lc - 1); ++A) {
      if (A % pv == 0) continue;
      for (Int b = 1; b < pv * pv; ++b) {
        if (b % pv == 0) continue;
        for (Int c = 0; c < pv * pv; ++c) {
          FamilyParams fp{FamilyKind::slope_half, 0, A, pk * b, pk * pv * c};
          ResiduePoly f = fp.poly(p, Lc);
          Int s = reduce(A - mulmod(pv, mulmod(fp.B % m, fp.B % m, m), m) * half, m);
          FamilyParams sq{FamilyKind::slope_half, 0, s, 0, 0};
          ++checked;
          if (!(f == sq.poly(p, Lc)))
            rep.add({"collapse identity fails mod p^" + std::to_string(Lc), {{"A", A}, {"B", fp.B}, {"C", fp.C}}});
        }
      }
    }
    rep.count("collapse identity tuples (k=" + std::to_string(kc) + ")", BigInt(checked), BigInt(checked));
  }
  return rep;
}

/// Per-parent lift counts for the class of (x^2 + zeta)^2.
inline ClaimReport verify_table2_pattern(Int zeta, const PrimeModulus& p, int k_max, unsigned workers = 1) {
  const Int pv = p.value();
  FamilyParams{FamilyKind::double_quadratic, zeta}.check(pv);
  auto spec = ClassSpec::congruent(p, FFPoly(pv, {reduce(zeta * zeta, pv), 0, reduce(2 * zeta, pv), 0, 1}));
  LiftOptions opt;
  opt.workers = workers;
  auto table = lift_table(spec, k_max, opt);
  ClaimReport rep;
  rep.claim = "table2_pattern";
  rep.p = pv;
  rep.grid = {{"zeta", std::to_string(zeta)}, {"k_max", std::to_string(k_max)}};
  if (table.truncated) rep.add({"lift table truncated", {{"k_max", k_max}}});
  const Int w = pv * pv * pv - pv;
  for (const auto& r : table.rows) {
    Int ei = 0, ea = 1, eh = 0;
    if (r.level >= 2) {
      ea = pv;
      ei = r.level % 2 == 0 ? w : w / 2;
      eh = r.level % 2 == 0 ? 0 : w / 2;
    }
    auto lv = [&](const char* what, Int per) {
      return "k=" + std::to_string(r.level) + " " + what + " (" + std::to_string(per) + " per parent)";
    };
    rep.count(lv("irreducible", ei), BigInt(ei) * r.parents, BigInt(r.irreducible));
    rep.count(lv("ambiguous", ea), BigInt(ea) * r.parents, BigInt(r.undecided));
    rep.count(lv("hensel", eh), BigInt(eh) * r.parents, BigInt(r.hensel));
  }
  return rep;
}

struct ClaimGrid {
  std::vector<Int> primes{3, 5};
  std::vector<int> ks{0, 1};
  int i_max = 7;
  int table2_kmax_p3 = 7;
  int table2_kmax_other = 5;
  std::set<std::string> only;  // claim ids to run; empty runs everything
};

inline constexpr const char* kClaimIds[] = {"claim1", "claim2", "claim3", "claim4", "claim4_weak",
                                            "claim5", "claim6", "case_counts", "table2_pattern"};

/// Every verifier over the grid, run as independent tasks and merged in a fixed order.
inline std::vector<ClaimReport> verify_all(const ClaimGrid& grid, unsigned workers = 1) {
  std::vector<std::function<ClaimReport()>> tasks;
  auto want = [&](const std::string& id) { return grid.only.empty() || grid.only.count(id) > 0; };
  for (Int pv : grid.primes) {
    PrimeModulus p(pv);
    if (want("claim1"))
      tasks.push_back([p, grid] { return verify_hensel_moduli(FamilyKind::double_quadratic, p, grid.ks); });
    if (want("claim3"))
      tasks.push_back([p, grid] { return verify_hensel_moduli(FamilyKind::slope_half, p, grid.ks); });
    for (auto c : {UniquenessClaim::claim2, UniquenessClaim::claim4, UniquenessClaim::claim4_weak,
                   UniquenessClaim::claim5, UniquenessClaim::claim6}) {
      if (!want(uniqueness_name(c))) continue;
      for (int k : grid.ks) tasks.push_back([c, p, k] { return verify_uniqueness(c, p, k); });
    }
    if (want("case_counts"))
      for (int i = 3; i <= grid.i_max; ++i) tasks.push_back([p, i] { return verify_case_counts(p, i); });
    int km = pv == 3 ? grid.table2_kmax_p3 : grid.table2_kmax_other;
    if (want("table2_pattern"))
      tasks.push_back([p, km] { return verify_table2_pattern(default_zeta(p.value()), p, km); });
  }
  std::vector<ClaimReport> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) out[t] = tasks[t]();
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace padic
