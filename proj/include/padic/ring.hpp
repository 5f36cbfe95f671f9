#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "padic/errors.hpp"

namespace padic {

using Int = std::int64_t;

// Largest modulus the fixed-width residue paths accept.
inline constexpr Int kModulusCeiling = Int{1} << 62;

inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class PrimeModulus {
 public:
  explicit PrimeModulus(Int p) : p_(p) {
    if (p == 2)
      throw Error(ErrorCode::usage, "p = 2 is not supported (odd primes only)");
    if (!is_prime(p))
      throw Error(ErrorCode::usage, "p must be an odd prime, got " + std::to_string(p));
  }

  Int value() const noexcept { return p_; }

  /// p^k, refusing anything at or above kModulusCeiling.
  Int pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative exponent");
    Int r = 1;
    for (int i = 0; i < k; ++i) {
      if (r > kModulusCeiling / p_)
        throw Error(ErrorCode::resource_limit,
                    std::to_string(p_) + "^" + std::to_string(k) +
                        " exceeds the 64-bit residue ceiling");
      r *= p_;
    }
    return r;
  }

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  Int p_;
};

// ---- modular helpers, generic over the integer type ----

template <class I>
I reduce(const I& a, const I& m) {
  I r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int mulmod(Int a, Int b, Int m) {
  auto r = static_cast<Int>(static_cast<__int128>(a) * b % m);
  return r < 0 ? r + m : r;
}

template <class I>
I mulmod(const I& a, const I& b, const I& m) {
  return reduce<I>(I(a * b), m);
}

template <class I>
I powmod(I base, std::uint64_t e, const I& m) {
  I r = reduce<I>(I(1), m);
  base = reduce<I>(base, m);
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

template <class I>
I ipow(const I& b, int e) {
  I r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

/// Inverse of a mod m; throws std::domain_error when gcd(a, m) != 1.
template <class I>
I inverse(const I& a, const I& m) {
  I r0 = m, r1 = reduce<I>(a, m);
  I s0 = 0, s1 = 1;
  while (r1 != 0) {
    I q = r0 / r1;
    I t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("element is not invertible");
  return reduce<I>(s0, m);
}

// ---- truncated valuations ----

/// Valuation in half-units: either known exactly or only bounded below.
class TruncatedValuation {
 public:
  static constexpr TruncatedValuation exact(int half_units) {
    return TruncatedValuation(true, half_units);
  }
  static constexpr TruncatedValuation at_least(int half_units) {
    return TruncatedValuation(false, half_units);
  }
  /// Truncated zero at level k.
  static constexpr TruncatedValuation at_least_level(int k) { return at_least(2 * k); }

  constexpr bool is_exact() const noexcept { return exact_; }
  /// The exact value, or the lower bound when not exact.
  constexpr int half_units() const noexcept { return h_; }

  std::string to_string() const {
    std::string v = (h_ % 2 == 0) ? std::to_string(h_ / 2) : std::to_string(h_) + "/2";
    return exact_ ? v : ">=" + v;
  }

  friend constexpr bool operator==(const TruncatedValuation&, const TruncatedValuation&) = default;

 private:
  constexpr TruncatedValuation(bool e, int h) : exact_(e), h_(h) {}
  bool exact_;
  int h_;
};

/// Demote to a bound once the value reaches the precision of a level-k computation.
constexpr TruncatedValuation truncate_at(TruncatedValuation v, int k) {
  if (v.half_units() >= 2 * k) return TruncatedValuation::at_least_level(k);
  return v;
}

constexpr TruncatedValuation operator+(TruncatedValuation a, TruncatedValuation b) {
  int h = a.half_units() + b.half_units();
  return (a.is_exact() && b.is_exact()) ? TruncatedValuation::exact(h)
                                        : TruncatedValuation::at_least(h);
}

constexpr TruncatedValuation shift(TruncatedValuation a, int half_units) {
  return a.is_exact() ? TruncatedValuation::exact(a.half_units() + half_units)
                      : TruncatedValuation::at_least(a.half_units() + half_units);
}

/// Valuation of a sum of terms whose valuations are a and b, assuming no
/// cancellation is possible (distinct exact values, or a bound strictly above).
constexpr TruncatedValuation min_distinct(TruncatedValuation a, TruncatedValuation b) {
  if (a.is_exact() && b.is_exact()) {
    if (a.half_units() == b.half_units()) return TruncatedValuation::at_least(a.half_units());
    return TruncatedValuation::exact(std::min(a.half_units(), b.half_units()));
  }
  if (a.is_exact() && a.half_units() < b.half_units()) return a;
  if (b.is_exact() && b.half_units() < a.half_units()) return b;
  return TruncatedValuation::at_least(std::min(a.half_units(), b.half_units()));
}

template <class I>
TruncatedValuation valuation(const I& x, Int p, int k) {
  if (k < 1) throw std::invalid_argument("level must be >= 1");
  I m = ipow<I>(I(p), k);
  I y = reduce<I>(x, m);
  if (y == 0) return TruncatedValuation::at_least_level(k);
  int v = 0;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return TruncatedValuation::exact(2 * v);
}

inline TruncatedValuation valuation(Int x, const PrimeModulus& p, int k) {
  return valuation<Int>(x, p.value(), k);
}

/// Exact p-adic valuation of a nonzero integer (no truncation).
template <class I>
int vp(I x, Int p) {
  if (x == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// ---- square roots ----

enum class SqrtStatus { ok, non_residue, odd_valuation };

/// Root set {base + step*t : base in bases, 0 <= t < modulus/step}.
template <class I>
struct SqrtSet {
  SqrtStatus status = SqrtStatus::non_residue;
  std::vector<I> bases;
  I step = 1;
  I modulus = 1;

  I fiber() const { return modulus / step; }

  std::vector<I> roots() const {
    std::vector<I> out;
    for (const I& b : bases)
      for (I t = 0; t < fiber(); ++t) out.push_back(reduce<I>(I(b + step * t), modulus));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
};

namespace detail {

inline bool is_qr_mod_p(Int a, Int p) {
  a = reduce(a, p);
  return a == 0 || powmod<Int>(a, static_cast<std::uint64_t>((p - 1) / 2), p) == 1;
}

// Tonelli-Shanks; a must be a nonzero residue mod p.
inline Int sqrt_mod_prime(Int a, Int p) {
  a = reduce(a, p);
  if (p % 4 == 3) return powmod<Int>(a, static_cast<std::uint64_t>((p + 1) / 4), p);
  Int q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Int z = 2;
  while (is_qr_mod_p(z, p)) ++z;
  Int m = s;
  Int c = powmod<Int>(z, q, p);
  Int t = powmod<Int>(a, q, p);
  Int r = powmod<Int>(a, (q + 1) / 2, p);
  while (t != 1) {
    Int i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

// Newton lift of a unit square root from mod p to mod p^k.
template <class I>
I lift_unit_sqrt(const I& a, Int root_mod_p, Int p, int k) {
  I r = root_mod_p;
  int prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    I m = ipow<I>(I(p), prec);
    I err = reduce<I>(I(r * r - a), m);
    I inv = inverse<I>(reduce<I>(I(2 * r), m), m);
    r = reduce<I>(I(r - mulmod<I>(err, inv, m)), m);
  }
  return r;
}

}  // namespace detail

/// All square roots of a mod p^k, in structured form.
template <class I>
SqrtSet<I> try_sqrt_mod(const I& a_in, Int p, int k) {
  SqrtSet<I> out;
  out.modulus = ipow<I>(I(p), k);
  I a = reduce<I>(a_in, out.modulus);
  if (a == 0) {
    out.status = SqrtStatus::ok;
    out.bases = {I(0)};
    out.step = ipow<I>(I(p), (k + 1) / 2);
    return out;
  }
  int v = vp<I>(a, p);
  if (v % 2 != 0) {
    out.status = SqrtStatus::odd_valuation;
    return out;
  }
  int s = v / 2;
  I unit = a / ipow<I>(I(p), v);
  Int unit_mod_p = static_cast<Int>(reduce<I>(unit, I(p)));
  if (!detail::is_qr_mod_p(unit_mod_p, p)) {
    out.status = SqrtStatus::non_residue;
    return out;
  }
  I rho = detail::lift_unit_sqrt<I>(unit, detail::sqrt_mod_prime(unit_mod_p, p), p, k - v);
  I step = ipow<I>(I(p), k - s);
  I ps = ipow<I>(I(p), s);
  I b1 = reduce<I>(I(ps * rho), step);
  I b2 = reduce<I>(I(-b1), step);
  out.status = SqrtStatus::ok;
  out.step = step;
  out.bases = {std::min(b1, b2), std::max(b1, b2)};
  if (out.bases[0] == out.bases[1]) out.bases.pop_back();
  return out;
}

/// Sorted roots of r^2 = a mod p^k; empty for non-residues.
/// Throws std::domain_error when a has odd valuation below k.
template <class I>
std::vector<I> sqrt_mod(const I& a, Int p, int k) {
  auto s = try_sqrt_mod<I>(a, p, k);
  if (s.status == SqrtStatus::odd_valuation)
    throw std::domain_error("no square root: odd valuation");
  if (s.status == SqrtStatus::non_residue) return {};
  return s.roots();
}

inline std::vector<Int> sqrt_mod(Int a, const PrimeModulus& p, int k) {
  return sqrt_mod<Int>(a, p.value(), k);
}

}  // namespace padic
