#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "padic/rational.hpp"
#include "padic/residue_poly.hpp"

namespace padic {

enum class ClassLabel { cert_irreducible, cert_reducible, undecided };

inline const char* label_name(ClassLabel l) {
  switch (l) {
    case ClassLabel::cert_irreducible: return "CertIrreducible";
    case ClassLabel::cert_reducible: return "CertReducible";
    case ClassLabel::undecided: return "Undecided";
  }
  return "?";
}

enum class Tri { no, yes, unknown };

struct LatticePoint {
  int i;
  int j;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct NewtonPolygon {
  bool determined = false;
  std::vector<LatticePoint> vertices;
  int lattice_points_on_hull = 0;

  int slope_count() const { return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1; }
};

namespace detail {

inline long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return static_cast<long long>(a.i - o.i) * (b.j - o.j) - static_cast<long long>(a.j - o.j) * (b.i - o.i);
}

inline std::vector<LatticePoint> lower_hull(const std::vector<LatticePoint>& pts) {
  std::vector<LatticePoint> h;
  for (const auto& q : pts) {
    while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), q) <= 0) h.pop_back();
    h.push_back(q);
  }
  return h;
}

// true if (i, y) lies on or below the hull, i.e. y <= H(i); false if i is outside it
inline bool at_or_below(const std::vector<LatticePoint>& hull, int i, int y) {
  if (hull.empty() || i < hull.front().i || i > hull.back().i) return true;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const auto& a = hull[s];
    const auto& b = hull[s + 1];
    if (i < a.i || i > b.i) continue;
    // y <= a.j + (b.j - a.j)(i - a.i)/(b.i - a.i)
    return static_cast<long long>(y - a.j) * (b.i - a.i) <= static_cast<long long>(b.j - a.j) * (i - a.i);
  }
  return true;
}

}  // namespace detail

/// Lower convex hull of {(i, v(c_i))} together with (n, 0).
inline NewtonPolygon newton_polygon(const ResiduePoly& f) {
  const int n = f.degree();
  std::vector<LatticePoint> exact;
  std::vector<LatticePoint> bounded;
  for (int i = 0; i < n; ++i) {
    if (f.trace_zero() && i == n - 1) continue;  // structural zero, no point at all
    auto v = f.coeff_valuation(i);
    if (v.is_exact())
      exact.push_back({i, v.half_units() / 2});
    else
      bounded.push_back({i, v.half_units() / 2});
  }
  exact.push_back({n, 0});

  NewtonPolygon np;
  np.vertices = detail::lower_hull(exact);
  for (std::size_t s = 0; s + 1 < np.vertices.size(); ++s)
    np.lattice_points_on_hull += std::gcd(np.vertices[s + 1].i - np.vertices[s].i,
                                          std::abs(np.vertices[s + 1].j - np.vertices[s].j));
  np.lattice_points_on_hull += 1;

  np.determined = np.vertices.front().i == 0;
  for (const auto& b : bounded)
    if (detail::at_or_below(np.vertices, b.i, b.j)) np.determined = false;
  return np;
}

inline ClassLabel polygon_classify(const NewtonPolygon& np) {
  if (!np.determined) return ClassLabel::undecided;
  if (np.slope_count() >= 2) return ClassLabel::cert_reducible;
  if (np.slope_count() == 1 && np.lattice_points_on_hull == 2) return ClassLabel::cert_irreducible;
  return ClassLabel::undecided;
}

/// Membership in the set of polynomials with v(c_i) >= n - i for all i.
inline Tri in_set_S(const ResiduePoly& f) {
  const int n = f.degree();
  bool unknown = false;
  for (int i = 0; i < n; ++i) {
    if (f.trace_zero() && i == n - 1) continue;
    auto v = f.coeff_valuation(i);
    if (v.is_exact()) {
      if (v.half_units() / 2 < n - i) return Tri::no;
    } else if (v.half_units() / 2 < n - i) {
      unknown = true;
    }
  }
  return unknown ? Tri::unknown : Tri::yes;
}

/// f(px)/p^n, known to level k - n.
inline ResiduePoly scale_phi(const ResiduePoly& f) {
  const int n = f.degree();
  if (f.level() <= n) throw std::invalid_argument("scale_phi needs level > degree");
  std::vector<Int> c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Int d = f.prime().pow(n - i);
    Int ci = f.coeff(i);
    if (ci % d != 0) throw std::invalid_argument("coefficient not divisible by p^(n-i)");
    c[static_cast<std::size_t>(i)] = ci / d;
  }
  return ResiduePoly(f.prime(), f.level() - n, c, f.trace_zero());
}

/// Measure (trace-zero monic space) of classes whose polygon is the single
/// segment (0,e)-(n,0), n prime.
inline Rational polygon_class_measure(int n, int e, const PrimeModulus& p) {
  if (!is_prime(n)) throw Error(ErrorCode::hypothesis, "polygon class measure needs prime degree");
  if (e <= 0 || e >= n) throw Error(ErrorCode::hypothesis, "constant-term valuation must satisfy 0 < e < n");
  return Rational(p.value() - 1) * rpow(p.value(), -static_cast<long long>((n * e + n + e - 1) / 2));
}

}  // namespace padic
