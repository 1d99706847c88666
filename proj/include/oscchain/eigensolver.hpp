#pragma once

// Independent numerical eigenvalue oracles for real symmetric matrices.
// Nothing here knows about closed-form chain spectra; these routines are
// what the closed forms are checked against.
//
//   jacobi_eigenvalues  cyclic-by-row two-sided Jacobi rotations, dense
//   sturm_eigenvalues   Sturm-count bisection, symmetric tridiagonal only

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscchain/matrix.hpp"

namespace oscchain {

class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  int iterations = 0;               // completed sweeps
  double off_diagonal_residual = 0.0;
};

inline constexpr double kDefaultEigenTol = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

namespace detail {

inline double frobenius(const RealMatrix& a) {
  double s = 0.0;
  for (double x : a.entries()) s += x * x;
  return std::sqrt(s);
}

inline void require_symmetric(const RealMatrix& a) {
  double scale = 1.0;
  for (double x : a.entries()) scale = std::max(scale, std::abs(x));
  const std::size_t n = a.side();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
        throw std::invalid_argument("jacobi_eigenvalues requires a symmetric matrix");
}

}  // namespace detail

// Convergence: off-diagonal Frobenius norm <= tol * ||a||_F. A rotation is
// skipped when |a_pq| < 1e-300, or when |a_pq| < tol * ||a||_F / n: if every
// off-diagonal entry is under that bound the convergence test already holds,
// so such rotations can never be the ones that decide it.
inline EigenResult jacobi_eigenvalues(const RealMatrix& input, double tol = kDefaultEigenTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("jacobi_eigenvalues: tol must be positive");
  detail::require_symmetric(input);
  const std::size_t n = input.side();
  EigenResult result;
  if (n == 0) return result;

  // Leading dimension padded off a power of two: column updates stride
  // through memory and a 4 KiB stride maps every row to the same cache set.
  const std::size_t ld = n + 8;
  std::vector<double> a(n * ld, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * ld + j] = input(i, j);

  const double norm = detail::frobenius(input);
  const double target = tol * norm;
  const double skip_below = std::max(1e-300, target / static_cast<double>(n));

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * ld + q] * a[p * ld + q];
    return std::sqrt(s);
  };

  double off = off_norm();
  int sweeps = 0;
  while (off > target) {
    if (sweeps == kJacobiMaxSweeps)
      throw ConvergenceError("jacobi_eigenvalues: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                             " sweeps (n=" + std::to_string(n) + ", off-diagonal norm " + std::to_string(off) + ")");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * ld + q];
        if (std::abs(apq) < skip_below) continue;
        const double app = a[p * ld + p];
        const double aqq = a[q * ld + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        double* rp = &a[p * ld];
        double* rq = &a[q * ld];
        for (std::size_t k = 0; k < n; ++k) {
          const double x = rp[k];
          const double y = rq[k];
          rp[k] = c * x - s * y;
          rq[k] = s * x + c * y;
        }
        // Columns p and q mirror the freshly rotated rows.
        for (std::size_t k = 0; k < n; ++k) {
          a[k * ld + p] = rp[k];
          a[k * ld + q] = rq[k];
        }
        a[p * ld + p] = app - t * apq;
        a[q * ld + q] = aqq + t * apq;
        a[p * ld + q] = 0.0;
        a[q * ld + p] = 0.0;
      }
    }
    ++sweeps;
    off = off_norm();
  }

  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a[i * ld + i];
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  result.iterations = sweeps;
  result.off_diagonal_residual = off;
  return result;
}

inline EigenResult jacobi_eigenvalues(const IntMatrix& input, double tol = kDefaultEigenTol) {
  return jacobi_eigenvalues(to_real(input), tol);
}

// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
// (diag, offdiag): count of negative terms in the LDL^T pivot recurrence
//   q_0 = d_0 - x,  q_i = (d_i - x) - e_{i-1}^2 / q_{i-1}.
inline std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag, double x) {
  constexpr double kPivotFloor = std::numeric_limits<double>::min();
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double e2 = (i == 0) ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
    q = (diag[i] - x) - (i == 0 ? 0.0 : e2 / q);
    if (std::abs(q) < kPivotFloor) q = -kPivotFloor;
    if (q < 0.0) ++count;
  }
  return count;
}

// Bisection on the Gershgorin enclosure; each eigenvalue is bracketed to an
// interval narrower than tol and the midpoint returned. Ascending order.
inline std::vector<double> sturm_eigenvalues(std::span<const double> diag, std::span<const double> offdiag,
                                             double tol = kDefaultEigenTol) {
  if (!(tol > 0.0)) throw std::invalid_argument("sturm_eigenvalues: tol must be positive");
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (offdiag.size() + 1 != n) throw DimensionError("sturm_eigenvalues: offdiag must have length n-1");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  // Open the enclosure slightly so the count is exact at the ends.
  const double pad = std::max(1.0, std::max(std::abs(lo), std::abs(hi))) * 1e-14;
  lo -= pad;
  hi += pad;

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest x with count(x) > k, i.e. the (k+1)-th eigenvalue.
    double a = lo;
    double b = hi;
    while (b - a >= tol) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (sturm_count(diag, offdiag, mid) > k)
        b = mid;
      else
        a = mid;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

// ||a v - lambda v||_inf / ||v||_2.
inline double residual(const RealMatrix& a, double lambda, std::span<const double> v) {
  if (v.size() != a.side()) throw DimensionError("residual: vector length does not match matrix side");
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (!(norm2 > 0.0)) throw std::invalid_argument("residual: zero vector");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.side(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.side(); ++j) s += a(i, j) * v[j];
    worst = std::max(worst, std::abs(s - lambda * v[i]));
  }
  return worst / std::sqrt(norm2);
}

inline double residual(const IntMatrix& a, double lambda, std::span<const double> v) {
  return residual(to_real(a), lambda, v);
}

}  // namespace oscchain
