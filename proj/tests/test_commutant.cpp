#include <gtest/gtest.h>

#include <random>

#include "oscchain/commutant.hpp"

using namespace oscchain;

namespace {

IntMatrix make(std::size_t n, std::initializer_list<long long> row_major) {
  std::vector<ExactInt> v;
  for (auto x : row_major) v.emplace_back(x);
  return IntMatrix(n, std::move(v));
}

std::vector<Rational> rationals(std::initializer_list<long long> xs) {
  std::vector<Rational> r;
  for (auto x : xs) r.emplace_back(ExactInt{x});
  return r;
}

}  // namespace

TEST(Basis, Examples) {
  const auto b2 = commutant_basis(2);
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(b2[0], IntMatrix::identity(2));
  EXPECT_EQ(b2[1], make(2, {0, 1, 1, 0}));
  EXPECT_EQ(commutant_basis(3)[2], make(3, {0, 0, 1, 0, 1, 0, 1, 0, 0}));
  for (const auto& m : commutant_basis(5)) EXPECT_TRUE(commutator(linear_coupling_matrix(5), m).is_zero());
  EXPECT_THROW(commutant_basis(31), CapExceeded);
}

TEST(Basis, StructureForSmallChains) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto basis = commutant_basis(n);
    ASSERT_EQ(basis.size(), n);
    EXPECT_EQ(exact_rank(basis), n) << n;
    for (std::size_t a = 0; a < n; ++a) {
      EXPECT_TRUE(structural_checks(basis[a]).all()) << n << "/" << a;
      EXPECT_TRUE(commutator(linear_coupling_matrix(n), basis[a]).is_zero());
      for (std::size_t b = a + 1; b < n; ++b) EXPECT_TRUE(commutator(basis[a], basis[b]).is_zero());
      // First row is e_a.
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(basis[a](0, j), ExactInt{j == a ? 1 : 0});
    }
  }
}

TEST(Decompose, Examples) {
  const auto j3 = decompose(exchange_matrix(3), 3);
  ASSERT_TRUE(std::holds_alternative<CommutantDecomposition>(j3));
  EXPECT_EQ(std::get<CommutantDecomposition>(j3).coefficients, rationals({0, 0, 1}));
  EXPECT_TRUE(std::get<CommutantDecomposition>(j3).residual_zero);

  const auto i4 = decompose(IntMatrix::identity(4), 4);
  ASSERT_TRUE(std::holds_alternative<CommutantDecomposition>(i4));
  EXPECT_EQ(std::get<CommutantDecomposition>(i4).coefficients, rationals({1, 0, 0, 0}));

  const auto t4 = decompose(shift_matrix(4), 4);
  ASSERT_TRUE(std::holds_alternative<NotInSpan>(t4));
  EXPECT_GT(std::get<NotInSpan>(t4).nonzero_commutator_entries, 0u);

  EXPECT_THROW(decompose(IntMatrix::identity(3), 4), DimensionError);
}

TEST(Decompose, ExchangeInSpanShiftNot) {
  for (std::size_t n = 2; n <= 20; ++n) {
    const auto j = decompose(exchange_matrix(n), n);
    ASSERT_TRUE(std::holds_alternative<CommutantDecomposition>(j)) << n;
    EXPECT_TRUE(std::get<CommutantDecomposition>(j).residual_zero);
    if (n >= 3) {
      EXPECT_TRUE(std::holds_alternative<NotInSpan>(decompose(shift_matrix(n), n))) << n;
    }
  }
}

TEST(Decompose, RoundTripOfRandomCombinations) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto basis = commutant_basis(n);
    for (int trial = 0; trial < 5; ++trial) {
      IntMatrix m(n);
      std::vector<Rational> want;
      for (const auto& b : basis) {
        const long long w = static_cast<long long>(rng() % 11) - 5;
        want.emplace_back(ExactInt{w});
        m += ExactInt{w} * b;
      }
      const auto d = decompose(m, n);
      ASSERT_TRUE(std::holds_alternative<CommutantDecomposition>(d));
      EXPECT_EQ(std::get<CommutantDecomposition>(d).coefficients, want);
      EXPECT_TRUE(std::get<CommutantDecomposition>(d).residual_zero);
      // Breaking one corner takes the matrix out of the commutant.
      m(0, n - 1) += ExactInt{1};
      EXPECT_TRUE(std::holds_alternative<NotInSpan>(decompose(m, n)));
    }
  }
}

TEST(Structural, Examples) {
  EXPECT_TRUE(structural_checks(exchange_matrix(4)).all());
  EXPECT_FALSE(structural_checks(shift_matrix(4)).cross_sum);
  EXPECT_TRUE(structural_checks(IntMatrix::identity(3)).all());
  const auto s = structural_checks(make(2, {1, 2, 3, 4}));
  EXPECT_FALSE(s.symmetric);
}

TEST(Nullspace, DimensionEqualsN) {
  for (std::size_t n = 2; n <= 10; ++n) {
    const auto null = commuting_nullspace(n);
    EXPECT_EQ(null.size(), n) << n;
    for (const auto& m : null) EXPECT_TRUE(commutator(linear_coupling_matrix(n), m).is_zero());
  }
  EXPECT_THROW(commuting_nullspace(kProbeCap + 1), CapExceeded);
}

TEST(Nullspace, ProbeExamples) {
  const auto r4 = commutant_dimension_probe(4, 6, 1);
  EXPECT_EQ(r4.nullspace_dimension, 4u);
  EXPECT_EQ(r4.decomposed, 6u);
  EXPECT_TRUE(r4.passed());
  EXPECT_EQ(commutant_dimension_probe(2, 3, 9).nullspace_dimension, 2u);
  EXPECT_THROW(commutant_dimension_probe(4, 0, 1), std::invalid_argument);
}

TEST(RowReduce, SmallSystem) {
  std::vector<std::vector<Rational>> rows{rationals({2, 4, 6}), rationals({1, 2, 3}), rationals({0, 1, 1})};
  const RowEchelon e = row_reduce(rows, 3);
  EXPECT_EQ(e.pivot_columns, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.rows[0], rationals({1, 0, 1}));
  EXPECT_EQ(e.rows[1], rationals({0, 1, 1}));
}
