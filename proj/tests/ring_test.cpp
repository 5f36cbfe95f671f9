#include <gtest/gtest.h>

#include <random>
#include <set>

#include "padic/extension.hpp"
#include "padic/rational.hpp"
#include "padic/residue_poly.hpp"
#include "padic/ring.hpp"

using namespace padic;

namespace {

std::vector<Int> brute_sqrt(Int a, Int m) {
  std::vector<Int> out;
  for (Int r = 0; r < m; ++r)
    if (mulmod(r, r, m) == reduce(a, m)) out.push_back(r);
  return out;
}

}  // namespace

TEST(PrimeModulus, RejectsTwoAndComposites) {
  EXPECT_THROW(PrimeModulus(2), Error);
  EXPECT_THROW(PrimeModulus(9), Error);
  EXPECT_THROW(PrimeModulus(1), Error);
  EXPECT_EQ(PrimeModulus(13).pow(12), 23298085122481LL);
  EXPECT_THROW(PrimeModulus(13).pow(40), Error);
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(75, PrimeModulus(5), 4), TruncatedValuation::exact(4));
  EXPECT_EQ(valuation(0, PrimeModulus(5), 3), TruncatedValuation::at_least_level(3));
  EXPECT_EQ(valuation(14, PrimeModulus(7), 2), TruncatedValuation::exact(2));
}

TEST(Valuation, ExactValueStaysBelowLevel) {
  PrimeModulus p(3);
  for (int k = 1; k <= 5; ++k)
    for (Int x = 0; x < p.pow(k); ++x) {
      auto v = valuation(x, p, k);
      if (v.is_exact()) EXPECT_LT(v.half_units(), 2 * k);
      else EXPECT_EQ(x, 0);
    }
}

TEST(Valuation, MultiplicativeWhenBothExact) {
  PrimeModulus p(5);
  const int k = 4;
  const Int m = p.pow(k);
  for (Int x = 1; x < m; x += 7)
    for (Int y = 1; y < m; y += 11) {
      auto vx = valuation(x, p, k), vy = valuation(y, p, k);
      auto sum = vx + vy;
      if (sum.is_exact() && sum.half_units() < 2 * k) {
        EXPECT_EQ(valuation(mulmod(x, y, m), p, k), sum);
      }
    }
}

TEST(SqrtMod, Examples) {
  EXPECT_EQ(sqrt_mod(4, PrimeModulus(5), 3), (std::vector<Int>{2, 123}));
  EXPECT_TRUE(sqrt_mod(2, PrimeModulus(5), 1).empty());
  EXPECT_EQ(sqrt_mod(25, PrimeModulus(5), 3), brute_sqrt(25, 125));
  EXPECT_EQ(sqrt_mod(25, PrimeModulus(5), 3), (std::vector<Int>{5, 20, 30, 45, 55, 70, 80, 95, 105, 120}));
}

TEST(SqrtMod, OddValuationIsDistinctError) {
  EXPECT_THROW(sqrt_mod(5, PrimeModulus(5), 3), std::domain_error);
  EXPECT_EQ(try_sqrt_mod<Int>(5, 5, 3).status, SqrtStatus::odd_valuation);
  EXPECT_EQ(try_sqrt_mod<Int>(2, 5, 3).status, SqrtStatus::non_residue);
}

TEST(SqrtMod, MatchesBruteForce) {
  for (Int pv : {3, 5, 7, 11}) {
    PrimeModulus p(pv);
    for (int k = 1; k <= 3; ++k) {
      const Int m = p.pow(k);
      for (Int a = 0; a < m; ++a) {
        auto s = try_sqrt_mod<Int>(a, pv, k);
        auto bf = brute_sqrt(a, m);
        if (s.status == SqrtStatus::ok) {
          EXPECT_EQ(s.roots(), bf) << "a=" << a << " p=" << pv << " k=" << k;
        } else {
          EXPECT_TRUE(bf.empty()) << "a=" << a << " p=" << pv << " k=" << k;
        }
      }
    }
  }
}

TEST(SqrtMod, RootsSquareBackAndAreClosedUnderNegation) {
  std::mt19937_64 rng(42);
  for (Int pv : {3, 5, 13}) {
    PrimeModulus p(pv);
    const int k = 6;
    const Int m = p.pow(k);
    for (int t = 0; t < 300; ++t) {
      Int a = std::uniform_int_distribution<Int>(0, m - 1)(rng);
      a = mulmod(a, a, m);
      auto roots = sqrt_mod(a, p, k);
      ASSERT_FALSE(roots.empty());
      std::set<Int> rs(roots.begin(), roots.end());
      for (Int r : roots) {
        EXPECT_EQ(mulmod(r, r, m), a);
        EXPECT_TRUE(rs.count(reduce(-r, m)));
      }
      if (a % pv != 0) {
        EXPECT_EQ(roots.size(), 2u);
      }
    }
  }
}

TEST(SqrtMod, BigIntegerPath) {
  // 13^12 fits in 64 bits but the big-integer instantiation must agree
  const int k = 12;
  BigInt a = 4;
  auto r = sqrt_mod<BigInt>(a, 13, k);
  ASSERT_EQ(r.size(), 2u);
  BigInt m = ipow<BigInt>(BigInt(13), k);
  for (const auto& x : r) EXPECT_EQ((x * x) % m, a);
}

TEST(ExtEval, Examples) {
  PrimeModulus p(5);
  ResiduePoly f(p, 3, {14, 0, 9, 0});
  auto e = ext_eval(f, MonicQuadratic{0, 7});
  EXPECT_EQ(e.a1(), 0);
  EXPECT_EQ(e.a0(), 0);

  std::vector<Int> df{0, 18, 0, 4};
  auto d = ext_eval(std::span<const Int>(df), MonicQuadratic{0, 7}, p, 3);
  EXPECT_EQ(d.a1(), 115);
  EXPECT_EQ(d.a0(), 0);
  EXPECT_EQ(d.ramification(), Ramification::unramified);
  EXPECT_EQ(d.valuation(), TruncatedValuation::exact(2));

  ResiduePoly g(p, 2, {5, 0});
  auto r = ext_eval(g, MonicQuadratic{0, -5});
  EXPECT_EQ(r.a1(), 0);
  EXPECT_EQ(r.a0(), 10);
  EXPECT_EQ(r.ramification(), Ramification::ramified);
}

TEST(ExtEval, RamificationTags) {
  EXPECT_EQ(ramification_of(MonicQuadratic{0, 2}, 5), Ramification::unramified);
  EXPECT_EQ(ramification_of(MonicQuadratic{0, 1}, 5), Ramification::split);
  EXPECT_EQ(ramification_of(MonicQuadratic{0, 5}, 5), Ramification::ramified);
  EXPECT_EQ(ramification_of(MonicQuadratic{2, 1}, 5), Ramification::ramified);
}

TEST(ExtEval, UnramifiedMinRuleMatchesNorm) {
  // N(a1 y + a0) = a0^2 - t a0 a1 + s a1^2 for y^2 + t y + s
  PrimeModulus p(3);
  for (int k = 1; k <= 3; ++k) {
    const Int m = p.pow(k);
    for (Int t = 0; t < m; ++t)
      for (Int s = 0; s < m; ++s) {
        MonicQuadratic g{t, s};
        if (ramification_of(g, 3) != Ramification::unramified) continue;
        for (Int a1 = 0; a1 < m; ++a1)
          for (Int a0 = 0; a0 < m; ++a0) {
            QuadExtElem e(a1, a0, g, p, k);
            auto v = e.valuation();
            Int norm = reduce(mulmod(a0, a0, m) - mulmod(t, mulmod(a0, a1, m), m) + mulmod(s, mulmod(a1, a1, m), m), m);
            auto vn = valuation(norm, p, k);
            if (!v.is_exact()) {
              EXPECT_FALSE(vn.is_exact());
            } else if (2 * v.half_units() < 2 * k) {
              ASSERT_TRUE(vn.is_exact());
              EXPECT_EQ(vn.half_units(), 2 * v.half_units());
            }
          }
      }
  }
}

TEST(ExtEval, RamifiedRuleMatchesNorm) {
  // y^2 = 3 u: v(a1 y + a0) = v(N)/2 with N = a0^2 - 3u a1^2
  PrimeModulus p(3);
  const int k = 4;
  const Int m = p.pow(k);
  for (Int u : {1, 2}) {
    MonicQuadratic g{0, reduce(-3 * u, m)};
    for (Int a1 = 0; a1 < 27; ++a1)
      for (Int a0 = 0; a0 < 27; ++a0) {
        QuadExtElem e(a1, a0, g, p, k);
        auto v = e.valuation();
        if (!v.is_exact()) continue;
        Int norm = reduce(mulmod(a0, a0, m) - mulmod(3 * u, mulmod(a1, a1, m), m), m);
        auto vn = valuation(norm, p, k);
        if (2 * v.half_units() >= 2 * k) continue;
        ASSERT_TRUE(vn.is_exact());
        EXPECT_EQ(vn.half_units(), 2 * v.half_units());
      }
  }
}

TEST(TruncatedValuationOps, Combinators) {
  auto e2 = TruncatedValuation::exact(2), e4 = TruncatedValuation::exact(4);
  EXPECT_EQ(min_distinct(e2, e4), e2);
  EXPECT_FALSE(min_distinct(e2, e2).is_exact());
  EXPECT_EQ(min_distinct(e2, TruncatedValuation::at_least(6)), e2);
  EXPECT_FALSE(min_distinct(e4, TruncatedValuation::at_least(2)).is_exact());
  EXPECT_EQ(truncate_at(TruncatedValuation::exact(6), 3), TruncatedValuation::at_least_level(3));
  EXPECT_EQ(shift(e2, 1), TruncatedValuation::exact(3));
  EXPECT_EQ(TruncatedValuation::exact(3).to_string(), "3/2");
  EXPECT_EQ(TruncatedValuation::at_least(4).to_string(), ">=2");
}

TEST(RationalArith, RandomIdentities) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long long> d(-50, 50), dp(1, 60);
  for (int t = 0; t < 500; ++t) {
    Rational a = rational(d(rng), dp(rng)), b = rational(d(rng), dp(rng)), c = rational(d(rng), dp(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    Rational s = a + b;
    EXPECT_EQ(gcd(boost::multiprecision::numerator(s), boost::multiprecision::denominator(s)) == 1 ||
                  boost::multiprecision::numerator(s) == 0,
              true);
    EXPECT_GT(boost::multiprecision::denominator(s), 0);
  }
}

TEST(RationalArith, ParseAndPrint) {
  EXPECT_EQ(to_string(rational(6, -8)), "-3/4");
  EXPECT_EQ(parse_rational("-3/4"), rational(-3, 4));
  EXPECT_EQ(parse_rational("12"), rational(12));
  EXPECT_EQ(to_decimal(rational(1, 3), 5), "0.33333");
  EXPECT_EQ(rpow(5, -2), rational(1, 25));
}

TEST(QRationalArith, HalfPowers) {
  auto q = QRational::qpow(5, 1);
  EXPECT_FALSE(q.is_rational());
  EXPECT_EQ((q * q).to_rational(), rational(5));
  EXPECT_EQ(QRational::qpow(5, -3) * QRational::qpow(5, 3), QRational(5, 1));
  EXPECT_EQ(QRational::qpow(5, -4).to_rational(), rational(1, 25));
  EXPECT_THROW(q.to_rational(), std::logic_error);
  QRational x(7, rational(2), rational(3));
  EXPECT_EQ(x * x.inverse(), QRational(7, 1));
}
