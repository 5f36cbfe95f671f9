#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "padic/polymod.hpp"
#include "padic/ring.hpp"

namespace padic {

/// Monic degree-n polynomial with c_0..c_{n-1} known mod p^k.
class ResiduePoly {
 public:
  ResiduePoly(PrimeModulus p, int level, std::vector<Int> coeffs, bool trace_zero = false)
      : p_(p), level_(level), modulus_(p.pow(level)), coeffs_(std::move(coeffs)), trace_zero_(trace_zero) {
    if (level_ < 1) throw std::invalid_argument("level must be >= 1");
    if (coeffs_.empty()) throw std::invalid_argument("degree must be >= 1");
    for (auto& c : coeffs_) c = reduce(c, modulus_);
    if (trace_zero_ && coeffs_.back() != 0)
      throw std::invalid_argument("trace-zero polynomial with nonzero x^(n-1) coefficient");
  }

  const PrimeModulus& prime() const { return p_; }
  Int p() const { return p_.value(); }
  int degree() const { return static_cast<int>(coeffs_.size()); }
  int level() const { return level_; }
  Int modulus() const { return modulus_; }
  bool trace_zero() const { return trace_zero_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  /// c_i, with c_n = 1.
  Int coeff(int i) const { return i == degree() ? 1 : coeffs_.at(static_cast<std::size_t>(i)); }

  TruncatedValuation coeff_valuation(int i) const { return valuation(coeff(i), p_, level_); }

  /// Ascending coefficients including the leading 1.
  Coeffs full() const {
    Coeffs c = coeffs_;
    c.push_back(1);
    return c;
  }

  ResiduePoly reduced_to(int level) const {
    if (level > level_) throw std::invalid_argument("cannot raise precision");
    return ResiduePoly(p_, level, coeffs_, trace_zero_);
  }

  Coeffs derivative() const { return poly_derivative(full(), modulus_); }

  std::string to_string() const {
    std::ostringstream os;
    os << "x^" << degree();
    for (int i = degree() - 1; i >= 0; --i) {
      Int c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      os << " + " << c;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
    os << " (mod " << p() << "^" << level_ << ")";
    return os.str();
  }

  friend bool operator==(const ResiduePoly& a, const ResiduePoly& b) {
    return a.p_ == b.p_ && a.level_ == b.level_ && a.coeffs_ == b.coeffs_ &&
           a.trace_zero_ == b.trace_zero_;
  }

 private:
  PrimeModulus p_;
  int level_;
  Int modulus_;
  std::vector<Int> coeffs_;
  bool trace_zero_;
};

}  // namespace padic
