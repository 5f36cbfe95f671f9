#pragma once

#include <cctype>
#include <string>

#include "padic/lifting.hpp"

namespace padic {

/// class := "(" "x^2" ("+"|"-") int ")" "^2" | "x^" int | "slope-half"
struct ClassExpr {
  enum class Kind { square_of_quadratic, monomial, slope_half };
  Kind kind = Kind::monomial;
  Int c = 0;  // (x^2 + c)^2
  int n = 0;  // x^n

  int degree() const { return kind == Kind::monomial ? n : 4; }
};

namespace detail {

class ClassParser {
 public:
  explicit ClassParser(const std::string& s) {
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  ClassExpr parse() {
    ClassExpr e;
    if (s_ == "slope-half") {
      e.kind = ClassExpr::Kind::slope_half;
      return e;
    }
    if (peek() == '(') {
      ++i_;
      expect("x^2");
      char sign = next();
      if (sign != '+' && sign != '-') fail("expected + or - after x^2");
      Int c = integer();
      e.c = sign == '-' ? -c : c;
      expect(")^2");
      e.kind = ClassExpr::Kind::square_of_quadratic;
    } else {
      expect("x^");
      Int n = integer();
      if (n < 1 || n > 64) fail("exponent out of range");
      e.kind = ClassExpr::Kind::monomial;
      e.n = static_cast<int>(n);
    }
    if (i_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  char next() { return i_ < s_.size() ? s_[i_++] : '\0'; }

  void expect(const std::string& lit) {
    if (s_.compare(i_, lit.size(), lit) != 0) fail("expected '" + lit + "'");
    i_ += lit.size();
  }

  Int integer() {
    std::size_t start = i_;
    Int v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (i_ - start >= 15) fail("integer too long");
      v = v * 10 + (next() - '0');
    }
    if (i_ == start) fail("expected an integer");
    return v;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::usage, "bad class '" + s_ + "' at position " + std::to_string(i_) + ": " + why);
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline ClassExpr parse_class(const std::string& s) { return detail::ClassParser(s).parse(); }

/// Region of trace-zero monics named by the expression.
inline ClassSpec class_spec(const ClassExpr& e, const PrimeModulus& p) {
  const Int pv = p.value();
  switch (e.kind) {
    case ClassExpr::Kind::slope_half: return ClassSpec::slope_half(p);
    case ClassExpr::Kind::square_of_quadratic: {
      Int c = reduce(e.c, pv);
      return ClassSpec::congruent(p, FFPoly(pv, {mulmod(c, c, pv), 0, reduce(2 * c, pv), 0, 1}));
    }
    case ClassExpr::Kind::monomial: {
      if (e.n < 2) throw Error(ErrorCode::usage, "x^n class needs n >= 2");
      std::vector<Int> c(static_cast<std::size_t>(e.n) + 1, 0);
      c.back() = 1;
      return ClassSpec::congruent(p, FFPoly(pv, c));
    }
  }
  throw Error(ErrorCode::usage, "unknown class");
}

}  // namespace padic
