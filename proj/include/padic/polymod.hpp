#pragma once

#include <stdexcept>
#include <vector>

#include "padic/ring.hpp"

namespace padic {

// Dense polynomials over Z/m, ascending coefficients.
using Coeffs = std::vector<Int>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs poly_reduce(Coeffs a, Int m) {
  for (auto& c : a) c = reduce(c, m);
  trim(a);
  return a;
}

inline Coeffs poly_mul(const Coeffs& a, const Coeffs& b, Int m) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], m)) % m;
  }
  trim(r);
  return r;
}

inline Coeffs poly_sub(Coeffs a, const Coeffs& b, Int m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = reduce(a[i] - b[i], m);
  trim(a);
  return a;
}

/// Division by a monic divisor; returns {quotient, remainder}.
inline std::pair<Coeffs, Coeffs> poly_divmod_monic(Coeffs a, const Coeffs& b, Int m) {
  if (b.empty() || b.back() != 1) throw std::invalid_argument("divisor must be monic");
  trim(a);
  std::size_t db = b.size() - 1;
  if (a.size() <= db) return {Coeffs{}, a};
  Coeffs q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    Int c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = reduce(a[i - db + j] - mulmod(c, b[j], m), m);
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline Int poly_eval(const Coeffs& a, Int x, Int m) {
  Int r = 0;
  x = reduce(x, m);
  for (std::size_t i = a.size(); i-- > 0;) r = reduce(mulmod(r, x, m) + a[i], m);
  return r;
}

inline Coeffs poly_derivative(const Coeffs& a, Int m) {
  Coeffs d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(reduce(static_cast<Int>(i), m), a[i], m));
  trim(d);
  return d;
}

/// Sorted roots of a mod p^k, lifted digit by digit.
inline std::vector<Int> roots_mod(const Coeffs& a, Int p, int k) {
  std::vector<Int> level;
  for (Int r = 0; r < p; ++r)
    if (poly_eval(a, r, p) == 0) level.push_back(r);
  Int pj = p;
  Coeffs da = poly_derivative(a, pj);
  for (int j = 1; j < k && !level.empty(); ++j) {
    Int next = pj * p;
    std::vector<Int> lifted;
    for (Int r : level) {
      Int fr = poly_eval(a, r, next);
      Int dr = poly_eval(da, r, p);
      if (dr != 0) {
        // simple root: exactly one lift
        Int t = mulmod(reduce(-(fr / pj), p), inverse<Int>(dr, p), p);
        lifted.push_back(r + pj * t);
        continue;
      }
      if (fr != 0) continue;  // f(r + p^j t) = f(r) mod p^{j+1}
      for (Int t = 0; t < p; ++t) lifted.push_back(r + pj * t);
    }
    level.swap(lifted);
    pj = next;
  }
  std::sort(level.begin(), level.end());
  return level;
}

}  // namespace padic
