#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "padic/extension.hpp"
#include "padic/factorize.hpp"
#include "padic/ffpoly.hpp"
#include "padic/newton.hpp"

namespace padic {

enum class Reason {
  mod_p_irreducible,
  no_factorization_at_precision,
  polygon_two_point,
  coprime_mod_p,
  root_hensel,
  polygon_multi_slope,
  none,
};

inline const char* reason_name(Reason r) {
  switch (r) {
    case Reason::mod_p_irreducible: return "ModPIrreducible";
    case Reason::no_factorization_at_precision: return "NoFactorizationAtPrecision";
    case Reason::polygon_two_point: return "PolygonTwoPoint";
    case Reason::coprime_mod_p: return "CoprimeModP";
    case Reason::root_hensel: return "RootHensel";
    case Reason::polygon_multi_slope: return "PolygonMultiSlope";
    case Reason::none: return "None";
  }
  return "?";
}

inline constexpr Reason kAllReasons[] = {
    Reason::mod_p_irreducible, Reason::no_factorization_at_precision, Reason::polygon_two_point,
    Reason::coprime_mod_p,     Reason::root_hensel,                   Reason::polygon_multi_slope,
    Reason::none,
};

struct Certificate {
  ClassLabel label = ClassLabel::undecided;
  Reason reason = Reason::none;
  std::optional<Factorization> witness;     // mod p^k (mod p for coprime splits)
  std::optional<TruncatedValuation> v_fprime;  // root certificates only
};

inline bool coprime_certificate(const FFPoly& g, const FFPoly& h) { return gcd(g, h).degree() == 0; }

struct RootCheck {
  bool passed = false;
  TruncatedValuation v_fprime = TruncatedValuation::at_least(0);
};

/// Hensel check |f(a)| < |f'(a)|^2 at a root a of g, where g | f mod p^k.
inline RootCheck root_certificate(const ResiduePoly& f, const Coeffs& g) {
  const Int m = f.modulus();
  const int k = f.level();
  if (g.size() < 2 || g.size() > 3 || g.back() != 1)
    throw std::invalid_argument("root certificate needs a monic factor of degree 1 or 2");
  Coeffs full = f.full();
  if (!detail::divides(g, full, m)) throw std::invalid_argument("g does not divide f mod p^k");
  Coeffs df = poly_derivative(full, m);
  df.resize(full.size() - 1, 0);
  RootCheck out;
  if (g.size() == 2) {
    out.v_fprime = valuation(poly_eval(df, reduce(-g[0], m), m), f.prime(), k);
  } else {
    out.v_fprime = ext_eval(std::span<const Int>(df), MonicQuadratic{g[1], g[0]}, f.prime(), k).valuation();
  }
  // v(f(a)) >= k is certified; need k > 2 v(f'(a)), i.e. k > h
  out.passed = out.v_fprime.is_exact() && out.v_fprime.half_units() < k;
  return out;
}

inline FFPoly reduce_mod_p(const ResiduePoly& f) {
  std::vector<Int> c(f.coeffs().begin(), f.coeffs().end());
  c.push_back(1);
  return FFPoly(f.p(), c);
}

struct CascadeOptions {
  // Off by default: the reference tables count only Hensel-certified classes
  // as reducible, and a multi-slope class becomes Hensel a level or two later.
  bool polygon_reducibility = false;
};

/// Decision cascade for one residue class. modp is the factorization of f mod p.
inline Certificate classify_residue(const ResiduePoly& f, const FactorMultiset& modp,
                                    const CascadeOptions& opt = {}) {
  Certificate cert;
  if (modp.size() == 1 && modp[0].multiplicity == 1) {
    cert.label = ClassLabel::cert_irreducible;
    cert.reason = Reason::mod_p_irreducible;
    return cert;
  }
  auto np = newton_polygon(f);
  switch (polygon_classify(np)) {
    case ClassLabel::cert_irreducible:
      cert.label = ClassLabel::cert_irreducible;
      cert.reason = Reason::polygon_two_point;
      return cert;
    case ClassLabel::cert_reducible:
      if (!opt.polygon_reducibility) break;
      cert.label = ClassLabel::cert_reducible;
      cert.reason = Reason::polygon_multi_slope;
      return cert;
    case ClassLabel::undecided:
      break;
  }
  if (modp.size() >= 2) {
    // Hensel lifts this split, so a coprime factor pair exists at every level
    FFPoly g = FFPoly::constant(f.p(), 1);
    for (int e = 0; e < modp[0].multiplicity; ++e) g = g * modp[0].poly;
    FFPoly h = reduce_mod_p(f) / g;
    cert.label = ClassLabel::cert_reducible;
    cert.reason = Reason::coprime_mod_p;
    cert.witness = Factorization{g.coeffs(), h.coeffs()};
    return cert;
  }
  bool found = false;
  for_each_factorization(
      f, SearchStrategy::structured,
      [&](const Coeffs& g, const Coeffs& h) {
        found = true;
        for (const Coeffs* c : {&g, &h}) {
          if (c->size() > 3) continue;
          auto rc = root_certificate(f, *c);
          if (rc.passed) {
            cert.label = ClassLabel::cert_reducible;
            cert.reason = Reason::root_hensel;
            cert.witness = detail::canonical(g, h);
            cert.v_fprime = rc.v_fprime;
            return true;
          }
        }
        return false;
      },
      true);
  if (cert.label == ClassLabel::cert_reducible) return cert;
  if (!found) {
    cert.label = ClassLabel::cert_irreducible;
    cert.reason = Reason::no_factorization_at_precision;
  }
  return cert;
}

inline Certificate classify_residue(const ResiduePoly& f, const CascadeOptions& opt = {}) {
  return classify_residue(f, factor_mod_p(reduce_mod_p(f)), opt);
}

}  // namespace padic
