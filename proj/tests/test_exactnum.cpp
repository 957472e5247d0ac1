#include <gtest/gtest.h>

#include <random>

#include "spinpa/exactnum.hpp"

using spinpa::Rational;
using spinpa::Scalar;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }
Scalar surd(Rational a, Rational b, int n) { return Scalar(std::move(a), std::move(b), n); }

TEST(Scalar, AddIsComponentwise) {
  EXPECT_EQ(q(1) + Scalar::sqrtn(5), surd(1, 1, 5));
  const Scalar x = surd(Rational(2, 3), Rational(-1, 7), 5);
  EXPECT_EQ(x + Scalar(0), x);
}

TEST(Scalar, PerfectSquareFolds) {
  const Scalar r = Scalar::sqrtn(4) + Scalar(0);
  EXPECT_TRUE(r.is_rational());
  EXPECT_EQ(r, q(2));
  EXPECT_EQ(surd(1, Rational(1, 3), 9), q(2));
}

TEST(Scalar, MulUsesSquareOfRoot) {
  for (int n : {2, 3, 5, 7}) EXPECT_EQ(Scalar::sqrtn(n) * Scalar::sqrtn(n), q(n));
  EXPECT_EQ(surd(1, 1, 2) * surd(1, -1, 2), q(-1));
  const Scalar x = surd(3, 4, 3);
  EXPECT_EQ(Scalar(1) * x, x);
}

TEST(Scalar, Inverse) {
  EXPECT_EQ(Scalar::sqrtn(3).inverse(), surd(0, Rational(1, 3), 3));
  EXPECT_EQ(Scalar(1).inverse(), Scalar(1));
  EXPECT_EQ(surd(1, 1, 3).inverse(), surd(Rational(-1, 2), Rational(1, 2), 3));
  EXPECT_THROW(Scalar(0).inverse(), spinpa::DivisionByZero);
}

TEST(Scalar, SqrtPowers) {
  EXPECT_EQ(spinpa::sc_sqrtn_pow(3, 0), q(1));
  EXPECT_EQ(spinpa::sc_sqrtn_pow(3, 1), Scalar::sqrtn(3));
  EXPECT_EQ(spinpa::sc_sqrtn_pow(3, -1), surd(0, Rational(1, 3), 3));
  EXPECT_EQ(spinpa::sc_sqrtn_pow(2, -3), surd(0, Rational(1, 4), 2));
  EXPECT_EQ(spinpa::sc_sqrtn_pow(5, 4), q(25));
  for (int n : {2, 3, 4}) {
    for (int a = -8; a <= 8; ++a) {
      for (int b = -8; b <= 8; ++b) {
        EXPECT_EQ(spinpa::sc_sqrtn_pow(n, a) * spinpa::sc_sqrtn_pow(n, b), spinpa::sc_sqrtn_pow(n, a + b));
      }
    }
  }
}

TEST(Scalar, MixingDifferentRootsIsAnError) {
  EXPECT_THROW(Scalar::sqrtn(2) + Scalar::sqrtn(3), spinpa::ConfigError);
  EXPECT_THROW(Scalar::sqrtn(2) * Scalar::sqrtn(3), spinpa::ConfigError);
  EXPECT_NO_THROW(Scalar::sqrtn(2) + q(1, 2));
}

TEST(Scalar, Sign) {
  EXPECT_EQ(surd(3, -2, 2).sign(), 1);    // 3 > 2.83
  EXPECT_EQ(surd(2, -2, 2).sign(), -1);   // 2 < 2.83
  EXPECT_EQ(surd(-3, 2, 2).sign(), -1);
  EXPECT_EQ(Scalar(0).sign(), 0);
}

TEST(Scalar, Rendering) {
  EXPECT_EQ(Scalar(0).to_string(), "0");
  EXPECT_EQ(q(-3, 6).to_string(), "-1/2");
  EXPECT_EQ(surd(Rational(1, 2), Rational(3, 4), 2).to_string(), "1/2 + 3/4*sqrt(2)");
  EXPECT_EQ(surd(1, -1, 3).to_string(), "1 - 1*sqrt(3)");
  EXPECT_EQ(surd(0, -1, 3).to_string(), "-1*sqrt(3)");
}

Scalar random_scalar(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  return surd(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), n);
}

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, HoldOnRandomSamples) {
  const int n = GetParam();
  std::mt19937_64 rng(17 + static_cast<unsigned>(n));
  for (int i = 0; i < 300; ++i) {
    const Scalar x = random_scalar(rng, n);
    const Scalar y = random_scalar(rng, n);
    const Scalar z = random_scalar(rng, n);
    EXPECT_EQ(x + y, y + x);
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x - x, Scalar(0));
    if (!x.is_zero()) EXPECT_EQ(x * x.inverse(), Scalar(1));
  }
}

INSTANTIATE_TEST_SUITE_P(SquareFreeAndSquare, FieldAxioms, ::testing::Values(2, 3, 4, 5, 9));

TEST(Scalar, CanonicalFormsDecideEquality) {
  // equal values built along different routes have identical fields
  for (int n : {2, 4, 6, 9}) {
    const Scalar a = (Scalar::sqrtn(n) + q(1)) * (Scalar::sqrtn(n) - q(1));
    const Scalar b = q(n - 1);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rational_part(), b.rational_part());
    EXPECT_EQ(a.sqrt_part(), b.sqrt_part());
    EXPECT_EQ(a.n(), b.n());
  }
  EXPECT_NE(Scalar::sqrtn(2), q(1));
}

TEST(Scalar, PerfectSquareHelper) {
  EXPECT_TRUE(spinpa::is_perfect_square(0));
  EXPECT_TRUE(spinpa::is_perfect_square(49));
  EXPECT_FALSE(spinpa::is_perfect_square(50));
  EXPECT_FALSE(spinpa::is_perfect_square(-4));
}

}  // namespace
