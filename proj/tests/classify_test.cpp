#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padic/classify.hpp"
#include "padic/closedform.hpp"
#include "padic/lifting.hpp"

using namespace padic;
using oracle::for_each_class;
using oracle::for_each_lift;
using oracle::ProductOracle;

namespace {

struct Row {
  Int irr, und, hen;
};

std::vector<Row> rows_of(const LevelTable& t) {
  std::vector<Row> out;
  for (const auto& r : t.rows) out.push_back({r.irreducible, r.undecided, r.hensel});
  return out;
}

bool operator==(const Row& a, const Row& b) { return a.irr == b.irr && a.und == b.und && a.hen == b.hen; }

std::ostream& operator<<(std::ostream& os, const Row& r) {
  return os << "(" << r.irr << "," << r.und << "," << r.hen << ")";
}

const ClassSpec kDoubleQuad = ClassSpec::congruent(PrimeModulus(5), FFPoly(5, {4, 0, 4, 0, 1}));

}  // namespace

TEST(FindFactorizations, Examples) {
  PrimeModulus p(5);
  auto a = find_factorizations(ResiduePoly(p, 3, {14, 0, 9, 0}, true), SearchStrategy::structured);
  Factorization want{{2, 0, 1}, {7, 0, 1}};
  EXPECT_NE(std::find(a.begin(), a.end(), want), a.end());
  EXPECT_TRUE(find_factorizations(ResiduePoly(p, 1, {1, 1, 0}, true), SearchStrategy::structured).empty());
  EXPECT_TRUE(find_factorizations(ResiduePoly(p, 1, {1, 1, 0}, true), SearchStrategy::naive).empty());

  // f_(0,1,0) with zeta = 2: (x^2 + 2)^2 - 25 x^2 = (x^2 + 5x + 2)(x^2 - 5x + 2)
  auto f = ResiduePoly(p, 3, {4, 0, reduce(4 - 25, 125), 0}, true);
  auto s = find_factorizations(f, SearchStrategy::structured);
  EXPECT_EQ(s, find_factorizations(f, SearchStrategy::naive));
  Factorization sign_pair{{2, 5, 1}, {2, 120, 1}};
  EXPECT_NE(std::find(s.begin(), s.end(), sign_pair), s.end());
  for (const auto& fac : s) {
    Coeffs prod = poly_mul(fac.g, fac.h, 125);
    prod.resize(5, 0);
    EXPECT_EQ(prod, f.full());
  }
}

TEST(FindFactorizations, StrategiesAgree) {
  for (Int pv : {3, 5}) {
    PrimeModulus p(pv);
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= 2; ++k)
        for_each_class(p, n, k, [&](const ResiduePoly& f) {
          ASSERT_EQ(find_factorizations(f, SearchStrategy::structured), find_factorizations(f, SearchStrategy::naive))
              << f.to_string() << " level " << k;
        });
  }
}

TEST(FindFactorizations, StrategiesAgreeAtDepthThree) {
  PrimeModulus p(3);
  for_each_class(p, 4, 3, [&](const ResiduePoly& f) {
    if (f.coeffs()[0] % 3 || f.coeffs()[1] % 3 || f.coeffs()[2] % 3) return;  // x^4 class only
    ASSERT_EQ(find_factorizations(f, SearchStrategy::structured), find_factorizations(f, SearchStrategy::naive))
        << f.to_string();
  });
}

TEST(CoprimeCertificate, Examples) {
  EXPECT_TRUE(coprime_certificate(FFPoly(5, {0, 1}), FFPoly(5, {1, 0, 1})));
  EXPECT_FALSE(coprime_certificate(FFPoly(5, {2, 0, 1}), FFPoly(5, {2, 0, 1})));
  EXPECT_FALSE(coprime_certificate(FFPoly(3, {1, 1}), FFPoly(3, {1, 1}) * FFPoly(3, {2, 1})));
}

TEST(RootCertificate, Examples) {
  PrimeModulus p(5);
  auto a = root_certificate(ResiduePoly(p, 3, {14, 0, 9, 0}), {7, 0, 1});
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.v_fprime, TruncatedValuation::exact(2));

  // (alpha, beta, gamma) = (1, 1, 2), zeta = 2: (x^2 + 5x + 7)(x^2 - 5x + 12)
  Coeffs g{7, 5, 1}, h{12, 120, 1};
  Coeffs prod = poly_mul(g, h, 125);
  prod.resize(5, 0);
  ResiduePoly f3(p, 3, {prod[0], prod[1], prod[2], 0}, true);
  auto b = root_certificate(f3, g);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.v_fprime, TruncatedValuation::exact(2));

  auto f2 = f3.reduced_to(2);
  auto c = root_certificate(f2, {7 % 25, 5, 1});
  EXPECT_FALSE(c.passed);

  EXPECT_THROW(root_certificate(f3, {1, 1}), std::invalid_argument);
}

TEST(ClassifyResidue, Examples) {
  PrimeModulus p(5);
  auto a = classify_residue(ResiduePoly(p, 1, {1, 1, 0}, true));
  EXPECT_EQ(a.label, ClassLabel::cert_irreducible);
  EXPECT_EQ(a.reason, Reason::mod_p_irreducible);
  auto b = classify_residue(ResiduePoly(p, 2, {5, 5, 0}, true));
  EXPECT_EQ(b.label, ClassLabel::cert_irreducible);
  EXPECT_EQ(b.reason, Reason::polygon_two_point);
  auto c = classify_residue(ResiduePoly(p, 1, {0, 1, 0}, true));
  EXPECT_EQ(c.label, ClassLabel::cert_reducible);
  EXPECT_EQ(c.reason, Reason::coprime_mod_p);
  auto d = classify_residue(ResiduePoly(p, 1, {4, 0, 4, 0}, true));
  EXPECT_EQ(d.label, ClassLabel::undecided);
  auto e = classify_residue(ResiduePoly(p, 3, {14, 0, 9, 0}, true));
  EXPECT_EQ(e.label, ClassLabel::cert_reducible);
  EXPECT_EQ(e.reason, Reason::root_hensel);
  ASSERT_TRUE(e.witness.has_value());
}

TEST(ClassifyResidue, PolygonReducibilityIsOptIn) {
  PrimeModulus p(5);
  ResiduePoly f(p, 4, {125, 5});
  EXPECT_EQ(classify_residue(f, CascadeOptions{true}).reason, Reason::polygon_multi_slope);
  EXPECT_NE(classify_residue(f).reason, Reason::polygon_multi_slope);
}

TEST(Soundness, CertificatesHoldOnDeeperLifts) {
  const Int pv = 3;
  PrimeModulus p(pv);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k) {
      ProductOracle oracle(pv, n, k + 2);
      Int irr = 0, red = 0;
      for_each_class(p, n, k, [&](const ResiduePoly& f) {
        auto label = classify_residue(f).label;
        if (label == ClassLabel::undecided) return;
        (label == ClassLabel::cert_irreducible ? irr : red)++;
        for_each_lift(f, 2, [&](const Coeffs& g) {
          ASSERT_EQ(oracle.factors(g), label == ClassLabel::cert_reducible)
              << "n=" << n << " k=" << k << " class " << f.to_string();
        });
      });
      EXPECT_GT(irr + red, 0);
    }
}

TEST(LiftTable, CubicLevels) {
  auto t = lift_table(ClassSpec::all(3, PrimeModulus(5)), 7);
  std::vector<Row> want{{8, 1, 16}, {20, 5, 0}, {20, 5, 100}, {40, 85, 0}, {100, 25, 2000}, {100, 525, 0}, {200, 425, 12500}};
  EXPECT_EQ(rows_of(t), want);
  EXPECT_FALSE(t.truncated);
}

TEST(LiftTable, DoubleQuadraticAbsoluteAndPerParent) {
  auto t = lift_table(kDoubleQuad, 3);
  std::vector<Row> want{{0, 1, 0}, {120, 5, 0}, {300, 25, 300}};
  EXPECT_EQ(rows_of(t), want);
  EXPECT_EQ(t.rows[2].parents, 5);
  EXPECT_EQ(t.rows[2].per_parent(t.rows[2].irreducible), 60);
  EXPECT_EQ(t.rows[2].per_parent(t.rows[2].undecided), 5);
}

TEST(LiftTable, CubeClass) {
  auto t = lift_table(ClassSpec::congruent(PrimeModulus(5), FFPoly(5, {0, 0, 0, 1})), 2);
  std::vector<Row> want{{0, 1, 0}, {20, 5, 0}};
  EXPECT_EQ(rows_of(t), want);
}

TEST(LiftTable, ConservationAndWorkerIndependence) {
  for (Int pv : {3, 5}) {
    auto spec = ClassSpec::all(4, PrimeModulus(pv));
    auto a = lift_table(spec, pv == 3 ? 5 : 3);
    LiftOptions opt;
    opt.workers = 3;
    auto b = lift_table(spec, pv == 3 ? 5 : 3, opt);
    EXPECT_EQ(a, b);
    for (std::size_t i = 1; i < a.rows.size(); ++i) {
      const auto& r = a.rows[i];
      EXPECT_EQ(r.irreducible + r.undecided + r.hensel, a.rows[i - 1].undecided * a.lifts_per_parent);
    }
  }
}

TEST(LiftTable, ResourceLimitTruncates) {
  LiftOptions opt;
  opt.max_work = 200;
  auto t = lift_table(ClassSpec::all(3, PrimeModulus(5)), 7, opt);
  EXPECT_TRUE(t.truncated);
  EXPECT_LT(t.rows.size(), 7u);
  EXPECT_FALSE(t.rows.empty());
}

TEST(DensityBracket, Examples) {
  auto a = density_bracket(kDoubleQuad, 2, false);
  EXPECT_EQ(a.lower, rational(24, 25));
  EXPECT_EQ(a.upper, 1);

  auto cubic = ClassSpec::all(3, PrimeModulus(5));
  auto b = density_bracket(cubic, 1, false);
  EXPECT_EQ(b.lower, rational(8, 25));
  EXPECT_EQ(b.upper, rational(9, 25));
  auto bq = density_bracket(cubic, 1, true);
  Rational norm = 1 - rpow(5, -5);
  EXPECT_EQ(bq.lower, rational(8, 25) / norm);
  EXPECT_EQ(bq.upper, 1 - rational(16, 25) / norm);

  auto c = density_bracket(ClassSpec::congruent(PrimeModulus(5), FFPoly(5, {0, 1, 0, 1})), 1, false);
  EXPECT_EQ(c.lower, 0);
  EXPECT_EQ(c.upper, 0);
}

TEST(DensityBracket, MonotoneAndContainsClosedForms) {
  struct Case {
    ClassSpec spec;
    Rational value;
    int kmax;
  };
  std::vector<Case> cases{
      {ClassSpec::all(2, PrimeModulus(5)), density_prime_degree(2, PrimeModulus(5)), 6},
      {ClassSpec::all(3, PrimeModulus(5)), density_prime_degree(3, PrimeModulus(5)), 6},
      {kDoubleQuad, density_double_quadratic(PrimeModulus(5)), 5},
      {ClassSpec::slope_half(PrimeModulus(3)), density_slope_half(PrimeModulus(3)), 6},
  };
  for (const auto& c : cases) {
    auto t = lift_table(c.spec, c.kmax);
    Rational prev_lo = -1, prev_hi = 2;
    for (std::size_t i = 1; i <= t.rows.size(); ++i) {
      LevelTable head = t;
      head.rows.resize(i);
      auto b = bracket_from_table(c.spec, head, false);
      EXPECT_GE(b.lower, prev_lo);
      EXPECT_LE(b.upper, prev_hi);
      EXPECT_TRUE(b.contains(c.value)) << c.spec.describe() << " level " << b.level_reached;
      EXPECT_GE(b.lower, 0);
      EXPECT_LE(b.upper, 1);
      prev_lo = b.lower;
      prev_hi = b.upper;
    }
  }
}

TEST(McEstimate, Examples) {
  auto q = mc_estimate(ClassSpec::all(2, PrimeModulus(5)), 6, 10000, 1);
  Rational v = rational(7, 12);
  EXPECT_LE(q.ci_low, to_double(v));
  EXPECT_GE(q.ci_high, to_double(v));
  EXPECT_THROW(mc_estimate(ClassSpec::all(2, PrimeModulus(5)), 6, 0, 1), Error);
  auto d = mc_estimate(kDoubleQuad, 8, 10000, 1);
  EXPECT_LE(d.ci_low, 51.0 / 52);
  EXPECT_GE(d.ci_high, 51.0 / 52);
}

TEST(McEstimate, DeterministicAcrossWorkers) {
  auto spec = ClassSpec::all(3, PrimeModulus(5));
  auto a = mc_estimate(spec, 6, 3000, 11, 1);
  auto b = mc_estimate(spec, 6, 3000, 11, 4);
  EXPECT_EQ(a.irreducible, b.irreducible);
  EXPECT_EQ(a.decided, b.decided);
  EXPECT_EQ(a.point, b.point);
  auto c = mc_estimate(spec, 6, 3000, 12, 1);
  EXPECT_EQ(c.samples, 3000);
  EXPECT_GE(a.undecided_fraction, 0.0);
  EXPECT_LE(a.undecided_fraction, 1.0);
}
