#pragma once

// Dense square matrices and the five structural operators of a mass-spring
// chain: circular coupling H_c, linear coupling H_l, cyclic shift T,
// exchange J and alternating sign S.
//
// All indices are 0-based. Structural constructors return IntMatrix so that
// symmetry relations can be checked by exact equality.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "oscchain/exact.hpp"

namespace oscchain {

class DimensionError : public std::invalid_argument {
public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

enum class ScalarKind { exact_integer, floating };

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<ExactInt> {
  static constexpr ScalarKind kind = ScalarKind::exact_integer;
};

template <>
struct scalar_traits<double> {
  static constexpr ScalarKind kind = ScalarKind::floating;
};

template <class T>
class Matrix {
public:
  using value_type = T;
  static constexpr ScalarKind kind = scalar_traits<T>::kind;

  Matrix() = default;
  explicit Matrix(std::size_t side) : side_(side), data_(side * side, T{}) {}
  Matrix(std::size_t side, std::vector<T> row_major) : side_(side), data_(std::move(row_major)) {
    if (data_.size() != side_ * side_) throw DimensionError("entry count does not match side*side");
  }

  static Matrix zero(std::size_t side) { return Matrix(side); }
  static Matrix identity(std::size_t side) {
    Matrix m(side);
    for (std::size_t i = 0; i < side; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t side() const { return side_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * side_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * side_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * side_, side_}; }
  std::span<const T> entries() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  Matrix& operator+=(const Matrix& o) {
    require_same_side(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_side(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_side(a, b);
    const std::size_t n = a.side_;
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const T& aik = a(i, k);
        if (aik == T{}) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  std::vector<T> operator*(std::span<const T> v) const {
    if (v.size() != side_) throw DimensionError("vector length does not match matrix side");
    std::vector<T> out(side_, T{});
    for (std::size_t i = 0; i < side_; ++i) {
      T s{};
      for (std::size_t j = 0; j < side_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(side_);
    for (std::size_t i = 0; i < side_; ++i)
      for (std::size_t j = 0; j < side_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < side_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == T{})) return false;
    return true;
  }

  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const auto& x : data_)
      if (!(x == T{})) ++c;
    return c;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < side_; ++i)
      for (std::size_t j = i + 1; j < side_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  // Symmetric about the anti-diagonal: M(i,j) == M(n-1-j, n-1-i).
  bool is_persymmetric() const {
    const std::size_t n = side_;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!((*this)(i, j) == (*this)(n - 1 - j, n - 1 - i))) return false;
    return true;
  }

private:
  static void require_same_side(const Matrix& a, const Matrix& b) {
    if (a.side_ != b.side_)
      throw DimensionError("matrix sides differ: " + std::to_string(a.side_) + " vs " + std::to_string(b.side_));
  }

  std::size_t side_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<ExactInt>;
using RealMatrix = Matrix<double>;

inline RealMatrix to_real(const IntMatrix& m) {
  RealMatrix r(m.side());
  for (std::size_t i = 0; i < m.side(); ++i)
    for (std::size_t j = 0; j < m.side(); ++j) r(i, j) = m(i, j).to_double();
  return r;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, unsigned exponent) {
  Matrix<T> result = Matrix<T>::identity(m.side());
  Matrix<T> base = m;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
Matrix<T> anticommutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b + b * a;
}

namespace detail {
inline void require_chain_size(std::size_t n) {
  if (n < 2) throw std::invalid_argument("a chain needs at least two masses (n >= 2), got n=" + std::to_string(n));
}
}  // namespace detail

// T: shifts mass j to (j+1) mod n, i.e. T(i,j) = 1 iff i == (j+1) mod n.
inline IntMatrix shift_matrix(std::size_t n) {
  detail::require_chain_size(n);
  IntMatrix t(n);
  for (std::size_t j = 0; j < n; ++j) t((j + 1) % n, j) = 1;
  return t;
}

// J: ones on the anti-diagonal, J(i,j) = 1 iff i + j == n - 1.
inline IntMatrix exchange_matrix(std::size_t n) {
  detail::require_chain_size(n);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
  return m;
}

// S = diag(+1, -1, +1, ...). With 0-based i the entry is (-1)^i, so the
// last entry is (-1)^(n-1) = (-1)^(n+1) in 1-based counting.
inline IntMatrix sign_matrix(std::size_t n) {
  detail::require_chain_size(n);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = (i % 2 == 0) ? 1 : -1;
  return m;
}

// H_l: tridiagonal Toeplitz with -2 on the diagonal and 1 beside it.
inline IntMatrix linear_coupling_matrix(std::size_t n) {
  detail::require_chain_size(n);
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = -2;
    if (i + 1 < n) {
      m(i, i + 1) = 1;
      m(i + 1, i) = 1;
    }
  }
  return m;
}

// T + T^-1 - 2*1, with T^-1 = T^T for the permutation T.
inline IntMatrix reconstruct_circular_from_shift(std::size_t n) {
  IntMatrix t = shift_matrix(n);
  return t + t.transpose() - ExactInt{2} * IntMatrix::identity(n);
}

// H_c: H_l plus the wrap-around corners. At n = 2 the corner and the
// off-diagonal are the same entry and the couplings add, giving
// [[-2, 2], [2, -2]] (equal to T + T^-1 - 2*1).
inline IntMatrix circular_coupling_matrix(std::size_t n) {
  IntMatrix m = linear_coupling_matrix(n);
  m(0, n - 1) += 1;
  m(n - 1, 0) += 1;
  return m;
}

// 𝓗 = H_l + 2*1: the path-graph adjacency matrix.
inline IntMatrix shifted_linear_matrix(std::size_t n) {
  return linear_coupling_matrix(n) + ExactInt{2} * IntMatrix::identity(n);
}

}  // namespace oscchain
