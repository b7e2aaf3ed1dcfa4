#include <gtest/gtest.h>

#include <random>

#include "sofree/polynomial.hpp"

using namespace sofree;

namespace {

PolynomialZ random_poly(std::mt19937_64& rng, int max_degree) {
  std::vector<mpz_class> c(static_cast<std::size_t>(rng() % (max_degree + 1)) + 1);
  for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
  return PolynomialZ(std::move(c));
}

}  // namespace

TEST(PolynomialZ, CanonicalDegree) {
  EXPECT_EQ(PolynomialZ({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(PolynomialZ({0, 0}).is_zero());
  EXPECT_EQ(PolynomialZ{}.degree(), -1);
  EXPECT_EQ(PolynomialZ({0, -1, 0, 1}).to_string(), "N^3 - N");
  EXPECT_EQ(PolynomialZ({-2, 0, 3}).to_string(), "3*N^2 - 2");
}

TEST(PolynomialZ, ArithmeticAgreesWithEvaluation) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_poly(rng, 5);
    const auto b = random_poly(rng, 5);
    for (long x : {-3L, 0L, 2L, 7L}) {
      const mpq_class q(x);
      EXPECT_EQ((a + b).evaluate(q), a.evaluate(q) + b.evaluate(q));
      EXPECT_EQ((a - b).evaluate(q), a.evaluate(q) - b.evaluate(q));
      EXPECT_EQ((a * b).evaluate(q), a.evaluate(q) * b.evaluate(q));
    }
  }
}

TEST(PolynomialZ, ExactDivision) {
  const PolynomialZ a{-1, 0, 1};  // N^2 - 1
  const PolynomialZ b{1, 1};      // N + 1
  EXPECT_EQ(a.exact_div(b), PolynomialZ({-1, 1}));
  EXPECT_THROW(a.exact_div(PolynomialZ({2, 1})), ArithmeticError);
  EXPECT_THROW(a.exact_div(PolynomialZ{}), ArithmeticError);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_poly(rng, 4);
    const auto y = random_poly(rng, 4);
    if (y.is_zero()) continue;
    EXPECT_EQ((x * y).exact_div(y), x);
  }
}

TEST(PolynomialZ, GcdOfProducts) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_poly(rng, 3).primitive_part();
    const auto x = random_poly(rng, 3);
    const auto y = random_poly(rng, 3);
    if (g.is_zero() || x.is_zero() || y.is_zero()) continue;
    const auto d = gcd(g * x, g * y).primitive_part();
    // g divides the gcd, and the gcd divides both products.
    EXPECT_NO_THROW(d.exact_div(g));
    EXPECT_NO_THROW((g * x).exact_div(d));
    EXPECT_NO_THROW((g * y).exact_div(d));
  }
}

TEST(RationalFunctionN, CanonicalForm) {
  // (2N + 2) / (-2N^2 + 2) = -1 / (N - 1)
  const RationalFunctionN f(PolynomialZ{2, 2}, PolynomialZ{2, 0, -2});
  EXPECT_EQ(f.numerator(), PolynomialZ({-1}));
  EXPECT_EQ(f.denominator(), PolynomialZ({-1, 1}));
  EXPECT_EQ(RationalFunctionN(PolynomialZ{}, PolynomialZ{3, 1}).denominator(), PolynomialZ({1}));
  EXPECT_THROW(RationalFunctionN(PolynomialZ{1}, PolynomialZ{}), ArithmeticError);
  EXPECT_EQ(f.to_string(), "(-1) / (N - 1)");
}

TEST(RationalFunctionN, FieldOperations) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 150; ++trial) {
    const RationalFunctionN a(random_poly(rng, 3), PolynomialZ{static_cast<long>(rng() % 5) + 1, 1});
    const RationalFunctionN b(random_poly(rng, 3), PolynomialZ{-static_cast<long>(rng() % 5) - 7, 0, 1});
    for (long x : {11L, 13L}) {
      const mpq_class q(x);
      EXPECT_EQ((a + b).evaluate(q), a.evaluate(q) + b.evaluate(q));
      EXPECT_EQ((a * b).evaluate(q), a.evaluate(q) * b.evaluate(q));
      EXPECT_EQ((a - b).evaluate(q), a.evaluate(q) - b.evaluate(q));
      if (!b.is_zero() && b.evaluate(q) != 0) {
        EXPECT_EQ((a / b).evaluate(q), a.evaluate(q) / b.evaluate(q));
      }
    }
    EXPECT_EQ(a - a, RationalFunctionN());
    if (!a.is_zero()) {
      EXPECT_EQ(a / a, RationalFunctionN::constant(1));
    }
  }
}

TEST(RationalFunctionN, EvaluateAtPole) {
  const RationalFunctionN f(PolynomialZ{1}, PolynomialZ{-1, 0, 1});
  EXPECT_THROW(f.evaluate(mpq_class(1)), InvalidArgument);
  EXPECT_EQ(f.evaluate(mpq_class(3)), mpq_class(1, 8));
}

TEST(Series, Examples) {
  const auto s1 = series(RationalFunctionN(PolynomialZ{1}, PolynomialZ{0, 1}), 3);
  EXPECT_EQ(s1.offset, 1);
  EXPECT_EQ(s1.coeffs, (std::vector<mpq_class>{1, 0, 0, 0}));

  const auto s2 = series(RationalFunctionN(PolynomialZ{1}, PolynomialZ{-1, 0, 1}), 6);
  EXPECT_EQ(s2.offset, 2);
  EXPECT_EQ(s2.coeffs, (std::vector<mpq_class>{1, 0, 1, 0, 1, 0, 1}));
  EXPECT_EQ(s2.at_exponent(6), 1);
  EXPECT_EQ(s2.at_exponent(1), 0);
  EXPECT_THROW(s2.at_exponent(9), InvalidArgument);
  EXPECT_THROW(series(RationalFunctionN::constant(1), -1), InvalidArgument);

  const auto z = series(RationalFunctionN(), 2);
  EXPECT_TRUE(z.is_zero);
}

TEST(Series, PolynomialPartHasNegativeOffset) {
  // (N^2 + 1) / N = N + N^{-1}
  const auto s = series(RationalFunctionN(PolynomialZ{1, 0, 1}, PolynomialZ{0, 1}), 2);
  EXPECT_EQ(s.offset, -1);
  EXPECT_EQ(s.coeffs, (std::vector<mpq_class>{1, 0, 1}));
}

TEST(Series, MatchesNumericEvaluation) {
  // Truncated series at large N approaches the function value.
  const RationalFunctionN f(PolynomialZ{3, -2, 1}, PolynomialZ{1, 0, 4, 0, 1});
  const auto s = series(f, 12);
  const mpq_class n(1000);
  mpq_class approx = 0;
  for (std::size_t j = 0; j < s.coeffs.size(); ++j) {
    mpq_class power = 1;
    for (long k = 0; k < s.offset + static_cast<long>(j); ++k) power /= n;
    approx += s.coeffs[j] * power;
  }
  const mpq_class err = abs(approx - f.evaluate(n));
  EXPECT_LT(err, mpq_class(1, 1000000000) * mpq_class(1, 1000000000) * mpq_class(1, 1000000000));
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), mpq_class(3, 2));
  EXPECT_EQ(parse_rational("-7"), mpq_class(-7));
  EXPECT_EQ(to_string(mpq_class(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(mpq_class(4)), "4");
  EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
  EXPECT_THROW(parse_rational("x"), InvalidArgument);
}
