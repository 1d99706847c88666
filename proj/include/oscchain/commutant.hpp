#pragma once

// The commutant of the linear chain: every matrix commuting with H_l(n) is
// a combination sum_i c_i P_i(𝓗), i < n, where 𝓗 = H_l + 2*1 is the path
// adjacency matrix and P_i the monic Chebyshev-U polynomials.
//
// Everything here is exact. P_i(𝓗) has first row e_i (the walk count from
// vertex 0 with i steps reaching i is 1 and nothing further is reachable),
// so coefficients come out of a triangular solve on the first row.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "oscchain/chebyshev.hpp"
#include "oscchain/exact.hpp"
#include "oscchain/matrix.hpp"

namespace oscchain {

class CapExceeded : public std::length_error {
public:
  explicit CapExceeded(const std::string& what) : std::length_error(what) {}
};

// Entries of 𝓗^k count lattice walks and stay below 2^k, so n <= 30 keeps
// every intermediate of the matrix polynomials far inside 128 bits.
inline constexpr std::size_t kExactCap = 30;
// The dimension probe row-reduces an n^2 x n^2 rational system.
inline constexpr std::size_t kProbeCap = 16;

namespace detail {
inline void require_exact_cap(std::size_t n, const char* what) {
  if (n > kExactCap)
    throw CapExceeded(std::string(what) + ": n=" + std::to_string(n) + " exceeds the exact-arithmetic cap of " +
                      std::to_string(kExactCap));
}
}  // namespace detail

// {P_0(𝓗), ..., P_{n-1}(𝓗)} via P_i = 𝓗 P_{i-1} - P_{i-2}.
inline std::vector<IntMatrix> commutant_basis(std::size_t n) {
  detail::require_chain_size(n);
  detail::require_exact_cap(n, "commutant_basis");
  const IntMatrix h = shifted_linear_matrix(n);
  std::vector<IntMatrix> basis;
  basis.reserve(n);
  basis.push_back(IntMatrix::identity(n));
  basis.push_back(h);
  for (std::size_t i = 2; i < n; ++i) basis.push_back(h * basis[i - 1] - basis[i - 2]);
  return basis;
}

struct CommutantDecomposition {
  std::size_t n = 0;
  std::vector<Rational> coefficients;
  bool residual_zero = false;
};

struct NotInSpan {
  std::size_t n = 0;
  std::size_t nonzero_commutator_entries = 0;
};

using DecomposeResult = std::variant<CommutantDecomposition, NotInSpan>;

inline DecomposeResult decompose(const IntMatrix& m, std::size_t n) {
  if (m.side() != n)
    throw DimensionError("decompose: matrix side " + std::to_string(m.side()) + " does not match n=" +
                         std::to_string(n));
  const IntMatrix comm = commutator(linear_coupling_matrix(n), m);
  if (!comm.is_zero()) return NotInSpan{n, comm.nonzero_count()};

  const std::vector<IntMatrix> basis = commutant_basis(n);

  // First-row system: sum_i c_i basis[i](0, j) = m(0, j). basis[i](0, j) is
  // zero for j > i, so solve from the last column backwards.
  std::vector<Rational> c(n);
  for (std::size_t jj = n; jj-- > 0;) {
    Rational rhs{m(0, jj)};
    for (std::size_t i = jj + 1; i < n; ++i) rhs -= c[i] * Rational{basis[i](0, jj)};
    const ExactInt pivot = basis[jj](0, jj);
    if (pivot.is_zero()) throw std::logic_error("decompose: commutant basis lost its triangular first row");
    c[jj] = rhs / Rational{pivot};
  }

  bool exact = true;
  for (std::size_t r = 0; r < n && exact; ++r) {
    for (std::size_t col = 0; col < n && exact; ++col) {
      Rational s;
      for (std::size_t i = 0; i < n; ++i)
        if (!c[i].is_zero()) s += c[i] * Rational{basis[i](r, col)};
      exact = (s == Rational{m(r, col)});
    }
  }
  return CommutantDecomposition{n, std::move(c), exact};
}

struct StructuralReport {
  bool cross_sum = false;
  bool symmetric = false;
  bool persymmetric = false;

  bool all() const { return cross_sum && symmetric && persymmetric; }
};

// cross_sum: M(i-1,j) + M(i+1,j) == M(i,j-1) + M(i,j+1) at every (i,j),
// out-of-range terms dropped. This is entry (i,j) of [𝓗, M] = 0.
inline StructuralReport structural_checks(const IntMatrix& m) {
  const std::size_t n = m.side();
  auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(n) || j >= static_cast<std::ptrdiff_t>(n))
      return ExactInt{0};
    return m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  StructuralReport r;
  r.cross_sum = true;
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n) && r.cross_sum; ++i)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(n) && r.cross_sum; ++j)
      r.cross_sum = (at(i - 1, j) + at(i + 1, j) == at(i, j - 1) + at(i, j + 1));
  r.symmetric = m.is_symmetric();
  r.persymmetric = m.is_persymmetric();
  return r;
}

// P_n(𝓗(n)) is exactly the zero matrix.
inline bool cayley_hamilton_check(std::size_t n) {
  detail::require_chain_size(n);
  detail::require_exact_cap(n, "cayley_hamilton_check");
  return eval_matrix(p_poly_recurrence(n), shifted_linear_matrix(n)).is_zero();
}

// Exact row reduction of a dense rational system; returns the rank and
// leaves `rows` in reduced row echelon form with pivot columns recorded.
struct RowEchelon {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivot_columns;
};

inline RowEchelon row_reduce(std::vector<std::vector<Rational>> rows, std::size_t columns) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < columns && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = Rational{1} / rows[r][col];
    for (auto& x : rows[r])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = col; j < columns; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
    }
    out.pivot_columns.push_back(col);
    ++r;
  }
  rows.resize(r);
  out.rows = std::move(rows);
  return out;
}

// Basis of {M : [H_l(n), M] = 0}, each element an integer matrix.
inline std::vector<IntMatrix> commuting_nullspace(std::size_t n) {
  detail::require_chain_size(n);
  if (n > kProbeCap)
    throw CapExceeded("commuting_nullspace: n=" + std::to_string(n) + " exceeds the probe cap of " +
                      std::to_string(kProbeCap));
  const std::size_t vars = n * n;
  const IntMatrix h = linear_coupling_matrix(n);
  // Row (i,j): sum_k H(i,k) M(k,j) - M(i,k) H(k,j).
  std::vector<std::vector<Rational>> system;
  system.reserve(vars);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(vars);
      for (std::size_t k = 0; k < n; ++k) {
        if (!h(i, k).is_zero()) row[k * n + j] += Rational{h(i, k)};
        if (!h(k, j).is_zero()) row[i * n + k] -= Rational{h(k, j)};
      }
      system.push_back(std::move(row));
    }
  }
  const RowEchelon rref = row_reduce(std::move(system), vars);

  std::vector<bool> is_pivot(vars, false);
  for (auto c : rref.pivot_columns) is_pivot[c] = true;

  std::vector<IntMatrix> basis;
  for (std::size_t free = 0; free < vars; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(vars);
    x[free] = Rational{1};
    for (std::size_t r = 0; r < rref.rows.size(); ++r) x[rref.pivot_columns[r]] = -rref.rows[r][free];
    ExactInt scale{1};
    for (const auto& v : x) scale = scale / gcd(scale, v.den()) * v.den();
    IntMatrix m(n);
    for (std::size_t v = 0; v < vars; ++v) m(v / n, v % n) = x[v].num() * (scale / x[v].den());
    basis.push_back(std::move(m));
  }
  return basis;
}

struct DimensionProbeReport {
  std::size_t n = 0;
  std::size_t nullspace_dimension = 0;
  std::size_t trials = 0;
  std::size_t decomposed = 0;  // samples that decomposed with residual_zero

  bool passed() const { return nullspace_dimension == n && decomposed == trials; }
};

// Samples random integer combinations of the exact nullspace of [H_l, .]
// and checks each decomposes exactly in the P_i(𝓗) basis.
inline DimensionProbeReport commutant_dimension_probe(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("commutant_dimension_probe needs trials >= 1");
  const std::vector<IntMatrix> null = commuting_nullspace(n);
  DimensionProbeReport rep{n, null.size(), trials, 0};
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    IntMatrix sample(n);
    for (const auto& b : null) {
      const auto w = static_cast<long long>(rng() % 7) - 3;
      if (w != 0) sample += ExactInt{w} * b;
    }
    const auto d = decompose(sample, n);
    if (const auto* ok = std::get_if<CommutantDecomposition>(&d); ok && ok->residual_zero) ++rep.decomposed;
  }
  return rep;
}

// Exact rank of a set of equally sized matrices, each flattened to a row.
inline std::size_t exact_rank(const std::vector<IntMatrix>& mats) {
  if (mats.empty()) return 0;
  const std::size_t cols = mats.front().side() * mats.front().side();
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : mats) {
    std::vector<Rational> r;
    r.reserve(cols);
    for (const auto& e : m.entries()) r.emplace_back(e);
    rows.push_back(std::move(r));
  }
  return row_reduce(std::move(rows), cols).pivot_columns.size();
}

}  // namespace oscchain
