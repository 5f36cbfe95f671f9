#pragma once

#include <stdexcept>
#include <string>

#include "padic/rational.hpp"
#include "padic/ring.hpp"

namespace padic {

namespace detail {

inline QRational q_const(long long p, const Rational& a) { return QRational(p, a, 0); }

// p^(-h/2) for integer h
inline QRational p_half_pow(long long p, long long neg_half_units) { return QRational::qpow(p, -neg_half_units); }

inline void check_identity(const Rational& a, const Rational& b, const char* what) {
  if (a != b) throw std::logic_error(std::string("closed-form identity failed: ") + what);
}

}  // namespace detail

/// Closed form for prime degree r, computed over Q(sqrt p).
inline QRational prime_degree_closed_q(int r, long long p) {
  using detail::q_const;
  const QRational one = q_const(p, 1);
  const QRational a = one - detail::p_half_pow(p, r + 1);  // 1 - p^{-(r+1)/2}
  const QRational b = one - detail::p_half_pow(p, static_cast<long long>(r + 1) * (r - 1));
  const Rational pr = rpow(p, r);
  QRational num = q_const(p, pr - p) * a + q_const(p, Rational(r) * (p - 1)) * b;
  QRational den = q_const(p, Rational(r) * pr * (1 - rpow(p, -(static_cast<long long>(r) * (r + 1) / 2 - 1)))) * a;
  return num / den;
}

/// The same density summed term by term over constant-term valuations e.
inline QRational prime_degree_series_q(int r, long long p) {
  using detail::q_const;
  QRational sum = q_const(p, (rpow(p, r) - p) / (Rational(r) * rpow(p, r)));
  for (int e = 1; e <= r - 1; ++e)
    sum = sum + q_const(p, Rational(p - 1)) * detail::p_half_pow(p, static_cast<long long>(r) * e + r + e - 1);
  return sum / q_const(p, 1 - rpow(p, -(static_cast<long long>(r) * (r + 1) / 2 - 1)));
}

/// Irreducible proportion of monic degree-r polynomials, r prime and r != p.
inline Rational density_prime_degree(int r, const PrimeModulus& p) {
  if (!is_prime(r)) throw Error(ErrorCode::hypothesis, "degree must be prime (composite degrees have no formula)");
  if (r == p.value())
    throw Error(ErrorCode::hypothesis, "degree equal to p is an open case; no closed form is known");
  QRational closed = prime_degree_closed_q(r, p.value());
  QRational series = prime_degree_series_q(r, p.value());
  if (!(closed == series)) throw std::logic_error("prime-degree closed form disagrees with its series");
  return closed.to_rational();
}

struct QuarticComponents {
  Rational m1, m2, m3, m4;

  Rational sum() const { return m1 + m2 + m3 + m4; }
};

inline Rational density_double_quadratic(const PrimeModulus& p) {
  const Rational P = p.value();
  return (2 * P * P + 1) / (2 * (P * P + 1));
}

/// Truncated series for the double-quadratic class, levels 2..j_max.
inline Rational double_quadratic_partial_sum(const PrimeModulus& p, int j_max) {
  const long long pv = p.value();
  const Rational w = Rational(pv * pv * pv - pv);
  Rational s = 0;
  for (int j = 2; j <= j_max; ++j) s += rpow(pv, j - 2) * (j % 2 == 0 ? w : w / 2) * rpow(pv, -3 * j + 3);
  return s;
}

/// Irreducible measure of the slope-half set from its per-level series, levels 3..i_max
/// (i_max < 0 sums the geometric tail in closed form).
inline Rational slope_half_measure_series(const PrimeModulus& p, int i_max = -1) {
  const long long pv = p.value();
  const Rational P = pv;
  Rational m = (P - 1) * rpow(pv, -7) / 2;
  if (i_max < 0) {
    Rational tail = rpow(pv, -6) / (1 - rpow(pv, -2));
    return m + (P - 1) * (1 - rpow(pv, -2) - (P - 1) / (2 * P)) * tail;
  }
  for (int i = 3; i <= i_max; ++i) {
    Rational mu = rpow(pv, -2 * i - 1) * (P - 1) * (P - 1) / 2;
    m += (P - 1) * rpow(pv, -2 * i) - (P - 1) * rpow(pv, -2 * i - 2) - mu;
  }
  return m;
}

inline Rational density_slope_half(const PrimeModulus& p) {
  const Rational P = p.value();
  Rational closed = (P * P + 3 * P + 1) / (2 * P * (P + 1));
  detail::check_identity(closed, 1 / (2 * P) + (P + 2) / (2 * (P + 1)), "slope-half split form");
  detail::check_identity(closed, slope_half_measure_series(p) / ((P - 1) * rpow(p.value(), -6)),
                         "slope-half measure series");
  return closed;
}

inline QuarticComponents quartic_measure_components(const PrimeModulus& p) {
  const long long pv = p.value();
  const Rational P = pv;
  QuarticComponents c;
  c.m1 = (rpow(pv, 4) - rpow(pv, 2)) / (4 * rpow(pv, 4));
  c.m2 = (P - 1) * (2 * P * P + 1) / (4 * rpow(pv, 3) * (P * P + 1));
  c.m3 = (P - 1) * (P * P + 3 * P + 1) / (2 * rpow(pv, 6) * (P * P + P));
  c.m4 = (P - 1) / rpow(pv, 4) + (P - 1) / rpow(pv, 9);
  detail::check_identity(c.m2, (P - 1) / 2 * rpow(pv, -3) * density_double_quadratic(p), "M2 assembly");
  detail::check_identity(c.m3, (P - 1) * rpow(pv, -6) * density_slope_half(p), "M3 assembly");
  return c;
}

/// Irreducible proportion of monic quartics, p odd.
inline Rational density_quartic(const PrimeModulus& p) {
  const Rational P = p.value();
  auto pw = [&](int e) { return rpow(p.value(), e); };
  Rational num = pw(12) + pw(11) + 2 * pw(10) + 4 * pw(9) - 2 * pw(8) + pw(7) + 3 * pw(6) - 6 * pw(5) +
                 6 * pw(4) - 4 * pw(3) - 2 * pw(2) - 4;
  Rational closed = num / (4 * (P + 1) * (P * P + 1) * (pw(9) - 1));
  detail::check_identity(closed, quartic_measure_components(p).sum() / (1 - rpow(p.value(), -9)),
                         "quartic component assembly");
  return closed;
}

/// |I - 1/n|.
inline Rational approx_residual(int n, const Rational& I) { return rabs(I - Rational(1, n)); }

}  // namespace padic
