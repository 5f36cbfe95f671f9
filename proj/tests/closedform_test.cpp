#include <gtest/gtest.h>

#include "padic/closedform.hpp"

using namespace padic;

TEST(PrimeDegree, Examples) {
  EXPECT_EQ(density_prime_degree(2, PrimeModulus(5)), rational(7, 12));
  EXPECT_EQ(density_prime_degree(3, PrimeModulus(5)), rational(276, 781));
  try {
    density_prime_degree(3, PrimeModulus(3));
    FAIL() << "r = p accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::hypothesis);
  }
  EXPECT_THROW(density_prime_degree(4, PrimeModulus(5)), Error);
}

TEST(PrimeDegree, QuadraticSimplifies) {
  for (Int p : {3, 5, 7, 11, 13}) {
    auto q = prime_degree_closed_q(2, p);
    EXPECT_TRUE(q.is_rational()) << p;
    EXPECT_EQ(q.to_rational(), Rational(p + 2) / Rational(2 * (p + 1))) << p;
  }
}

TEST(PrimeDegree, ClosedEqualsSeries) {
  for (int r : {3, 5, 7})
    for (Int p : {3, 5, 7, 11}) {
      if (r == p) continue;
      auto closed = prime_degree_closed_q(r, p), series = prime_degree_series_q(r, p);
      EXPECT_EQ(closed, series) << "r=" << r << " p=" << p;
      EXPECT_TRUE(closed.is_rational());
    }
}

TEST(Quartic, Examples) {
  auto c5 = quartic_measure_components(PrimeModulus(5));
  EXPECT_EQ(c5.m1, rational(6, 25));
  auto c3 = quartic_measure_components(PrimeModulus(3));
  EXPECT_EQ(c3.m4, rational(2, 81) + rational(2, 19683));
  EXPECT_THROW(density_quartic(PrimeModulus(2)), Error);
}

TEST(Quartic, AssemblyIdentity) {
  for (Int pv : {3, 5, 7, 11}) {
    PrimeModulus p(pv);
    auto c = quartic_measure_components(p);
    EXPECT_EQ(density_quartic(p), c.sum() / (1 - rpow(pv, -9))) << pv;
    EXPECT_EQ(c.m2 / (Rational(pv - 1, 2) * rpow(pv, -3)), density_double_quadratic(p));
    EXPECT_EQ(c.m3 / (Rational(pv - 1) * rpow(pv, -6)), density_slope_half(p));
  }
  EXPECT_EQ(density_quartic(PrimeModulus(3)), rational(55973, 196820));
}

TEST(DoubleQuadratic, Examples) {
  EXPECT_EQ(density_double_quadratic(PrimeModulus(5)), rational(51, 52));
  EXPECT_EQ(density_double_quadratic(PrimeModulus(3)), rational(19, 20));
  EXPECT_EQ(double_quadratic_partial_sum(PrimeModulus(5), 3), rational(24, 25) + rational(12, 625));
  EXPECT_LT(double_quadratic_partial_sum(PrimeModulus(5), 3), rational(51, 52));
}

TEST(DoubleQuadratic, PartialSumsIncreaseWithBoundedTail) {
  for (Int pv : {3, 5, 7}) {
    PrimeModulus p(pv);
    Rational closed = density_double_quadratic(p), prev = 0;
    for (int j = 2; j <= 14; ++j) {
      Rational s = double_quadratic_partial_sum(p, j);
      EXPECT_GT(s, prev);
      EXPECT_LT(s, closed);
      EXPECT_LT(closed - s, rpow(pv, -2 * j + 2)) << "p=" << pv << " j=" << j;
      prev = s;
    }
  }
}

TEST(SlopeHalf, Examples) {
  EXPECT_EQ(density_slope_half(PrimeModulus(5)), rational(41, 60));
  EXPECT_EQ(density_slope_half(PrimeModulus(3)), rational(19, 24));
  EXPECT_EQ(rational(41, 60), rational(1, 10) + rational(7, 12));
}

TEST(SlopeHalf, SeriesConvergesToClosedForm) {
  for (Int pv : {3, 5, 7}) {
    PrimeModulus p(pv);
    Rational limit = slope_half_measure_series(p);
    Rational prev = 0;
    for (int i = 3; i <= 20; ++i) {
      Rational s = slope_half_measure_series(p, i);
      EXPECT_GT(s, prev);
      EXPECT_LT(s, limit);
      prev = s;
    }
    EXPECT_LT(limit - prev, rpow(pv, -40));
    EXPECT_EQ(limit, density_slope_half(p) * Rational(pv - 1) * rpow(pv, -6));
  }
}

TEST(Densities, StrictlyBetweenZeroAndOne) {
  for (Int pv : {3, 5, 7, 11, 13}) {
    PrimeModulus p(pv);
    std::vector<Rational> vals{density_quartic(p), density_double_quadratic(p), density_slope_half(p)};
    for (int r : {2, 3, 5, 7})
      if (r != pv) vals.push_back(density_prime_degree(r, p));
    for (const auto& v : vals) {
      EXPECT_GT(v, 0);
      EXPECT_LT(v, 1);
    }
  }
}

TEST(Residual, Examples) {
  EXPECT_EQ(approx_residual(2, rational(7, 12)), rational(1, 12));
  EXPECT_LT(rational(1, 12), rational(1, 5));
  EXPECT_LT(approx_residual(4, density_quartic(PrimeModulus(3))), rational(1, 9));
  Rational r3 = approx_residual(3, rational(276, 781));
  EXPECT_LT(r3 * r3, rational(1, 125));
}

TEST(Residual, DiagnosticBoundOnGrid) {
  // |I - 1/n|^2 <= p^-n
  for (Int pv : {3, 5, 7, 11, 13}) {
    PrimeModulus p(pv);
    auto check = [&](int n, const Rational& I) {
      Rational r = approx_residual(n, I);
      EXPECT_LE(r * r, rpow(pv, -n)) << "n=" << n << " p=" << pv;
    };
    check(4, density_quartic(p));
    for (int r : {2, 3, 5, 7})
      if (r != pv) check(r, density_prime_degree(r, p));
  }
}
