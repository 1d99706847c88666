#include <gtest/gtest.h>

#include <limits>

#include "oscchain/exact.hpp"

using namespace oscchain;

namespace {

ExactInt big(int bits) {
  ExactInt r{1};
  for (int i = 0; i < bits; ++i) r = r * ExactInt{2};
  return r;
}

}  // namespace

TEST(ExactInt, ArithmeticAndFormatting) {
  EXPECT_EQ(ExactInt{7} * ExactInt{-6}, ExactInt{-42});
  EXPECT_EQ((ExactInt{-42} / ExactInt{5}).to_string(), "-8");
  EXPECT_EQ((ExactInt{-42} % ExactInt{5}).to_string(), "-2");
  EXPECT_EQ(big(100).to_string(), "1267650600228229401496703205376");
  EXPECT_EQ(gcd(ExactInt{-12}, ExactInt{18}), ExactInt{6});
}

TEST(ExactInt, OverflowThrowsInsteadOfWrapping) {
  const ExactInt top = big(126);
  EXPECT_NO_THROW(top + (top - ExactInt{1}));
  EXPECT_THROW(top * ExactInt{2}, OverflowError);
  EXPECT_THROW(top + top, OverflowError);
  EXPECT_THROW(-(top + (top - ExactInt{1})) - ExactInt{2}, OverflowError);
  EXPECT_THROW(big(64).to_int64(), OverflowError);
  EXPECT_THROW(ExactInt{1} / ExactInt{0}, std::domain_error);
}

TEST(ExactInt, Binomials) {
  EXPECT_EQ(binomial(4, 0), ExactInt{1});
  EXPECT_EQ(binomial(3, 1), ExactInt{3});
  EXPECT_EQ(binomial(24, 8), ExactInt{735471});
  EXPECT_EQ(binomial(3, 5), ExactInt{0});
  // Pascal's rule as an independent check.
  for (int n = 1; n <= 60; ++n)
    for (int k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST(Rational, NormalizesAndComputesExactly) {
  const Rational a(ExactInt{6}, ExactInt{-4});
  EXPECT_EQ(a.num(), ExactInt{-3});
  EXPECT_EQ(a.den(), ExactInt{2});
  EXPECT_EQ(a + Rational(ExactInt{3}, ExactInt{2}), Rational{0});
  EXPECT_EQ(Rational(ExactInt{1}, ExactInt{3}) * Rational{3}, Rational{1});
  EXPECT_EQ((Rational{1} / Rational{ExactInt{7}}).to_string(), "1/7");
  EXPECT_THROW(Rational(ExactInt{1}, ExactInt{0}), std::domain_error);
}
