#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational(long long n, long long d = 1) {
  if (d < 0) return Rational(-BigInt(n), -BigInt(d));
  return Rational(BigInt(n), BigInt(d));
}

/// b^e for integer e of either sign.
inline Rational rpow(long long b, long long e) {
  BigInt m = boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), m) : Rational(m);
}

inline Rational rabs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Accepts "a/b" or "a".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) return Rational(-num, -den);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + s);
  }
}

/// Fixed-point decimal rendering, truncated toward zero.
inline std::string to_decimal(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  BigInt whole = num / den;
  BigInt rem = num % den;
  std::string frac;
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    frac += static_cast<char>('0' + static_cast<int>(rem / den));
    rem %= den;
  }
  return sign + whole.str() + (digits > 0 ? "." + frac : "");
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// a + b*q with q^2 = p, for half-integer powers of p.
class QRational {
 public:
  QRational(long long p, Rational a = 0, Rational b = 0) : p_(p), a_(std::move(a)), b_(std::move(b)) {}

  /// q^e.
  static QRational qpow(long long p, long long e) {
    long long h = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
    Rational base = rpow(p, h);
    return (e - 2 * h) ? QRational(p, 0, base) : QRational(p, base, 0);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& q_part() const { return b_; }
  long long prime() const { return p_; }
  bool is_rational() const { return b_ == 0; }

  Rational to_rational() const {
    if (b_ != 0) throw std::logic_error("q-component did not cancel");
    return a_;
  }

  QRational operator+(const QRational& o) const { return {p_, a_ + o.a_, b_ + o.b_}; }
  QRational operator-(const QRational& o) const { return {p_, a_ - o.a_, b_ - o.b_}; }
  QRational operator-() const { return {p_, -a_, -b_}; }
  QRational operator*(const QRational& o) const {
    return {p_, a_ * o.a_ + b_ * o.b_ * p_, a_ * o.b_ + b_ * o.a_};
  }
  QRational inverse() const {
    Rational n = a_ * a_ - b_ * b_ * p_;
    if (n == 0) throw std::domain_error("division by zero");
    return {p_, a_ / n, -b_ / n};
  }
  QRational operator/(const QRational& o) const { return *this * o.inverse(); }

  friend bool operator==(const QRational& x, const QRational& y) {
    return x.p_ == y.p_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  long long p_;
  Rational a_, b_;
};

}  // namespace padic
