#pragma once

// Chebyshev polynomials of the second kind, U_n, and their monic rescaling
// P_n(x) = U_n(x/2), the characteristic polynomials of the path adjacency
// matrix. P_n has integer coefficients, which is why matrix arguments are
// always evaluated through P_n: U_n(𝓗/2) == P_n(𝓗).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "oscchain/exact.hpp"
#include "oscchain/matrix.hpp"

namespace oscchain {

// Integer-coefficient polynomial; coefficient i multiplies x^i. Trailing
// zeros are always trimmed, so the zero polynomial has no coefficients.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<ExactInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<long long> coeffs) {
    for (auto v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Polynomial constant(ExactInt v) { return Polynomial(std::vector<ExactInt>{v}); }
  static Polynomial x() { return Polynomial({0, 1}); }

  const std::vector<ExactInt>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  ExactInt coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : ExactInt{0}; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<ExactInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) + b.coefficient(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<ExactInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) - b.coefficient(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<ExactInt> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }

  // q(x) = p(factor * x).
  Polynomial rescale_argument(ExactInt factor) const {
    std::vector<ExactInt> r = c_;
    ExactInt f{1};
    for (auto& ci : r) {
      ci = ci * f;
      f = f * factor;
    }
    return Polynomial(std::move(r));
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const ExactInt& ci = c_[static_cast<std::size_t>(i)];
      if (ci.is_zero()) continue;
      ExactInt mag = abs(ci);
      if (s.empty()) {
        if (ci.sign() < 0) s += "-";
      } else {
        s += ci.sign() < 0 ? " - " : " + ";
      }
      if (i == 0 || mag != ExactInt{1}) s += mag.to_string();
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<ExactInt> c_;
};

// P_0 = 1, P_1 = x, P_n = x P_{n-1} - P_{n-2}.
inline Polynomial p_poly_recurrence(std::size_t n) {
  Polynomial prev = Polynomial::constant(1);
  if (n == 0) return prev;
  Polynomial cur = Polynomial::x();
  for (std::size_t k = 2; k <= n; ++k) {
    Polynomial next = Polynomial::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// P_n(x) = sum_{k=0}^{floor(n/2)} (-1)^k C(n-k, k) x^{n-2k}.
inline Polynomial p_poly_explicit(std::size_t n) {
  std::vector<ExactInt> c(n + 1);
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t k = 0; 2 * k <= nn; ++k) {
    ExactInt b = binomial(nn - k, k);
    c[static_cast<std::size_t>(nn - 2 * k)] = (k % 2 == 0) ? b : -b;
  }
  return Polynomial(std::move(c));
}

// U_0 = 1, U_1 = 2x, U_n = 2x U_{n-1} - U_{n-2}.
inline Polynomial u_poly(std::size_t n) {
  Polynomial prev = Polynomial::constant(1);
  if (n == 0) return prev;
  const Polynomial two_x({0, 2});
  Polynomial cur = two_x;
  for (std::size_t k = 2; k <= n; ++k) {
    Polynomial next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Horner evaluation in double precision.
inline double eval_scalar(const Polynomial& p, double x) {
  double r = 0.0;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + it->to_double();
  return r;
}

// U_n(x) through the three-term recurrence. On [-1, 1] this stays accurate
// to a few ulps times n, whereas Horner on the monomial coefficients of U_n
// loses everything past n ~ 20 (the coefficients grow like (1+sqrt 2)^n).
inline double chebyshev_u_value(std::size_t n, double x) {
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (std::size_t k = 2; k <= n; ++k) {
    double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// sum_i c_i a^i in exact arithmetic (matrix Horner). Throws OverflowError
// instead of wrapping.
inline IntMatrix eval_matrix(const Polynomial& p, const IntMatrix& a) {
  const std::size_t n = a.side();
  const auto& c = p.coefficients();
  IntMatrix r(n);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    r = r * a;
    for (std::size_t i = 0; i < n; ++i) r(i, i) += *it;
  }
  return r;
}

inline RealMatrix eval_matrix(const Polynomial& p, const RealMatrix& a) {
  const std::size_t n = a.side();
  const auto& c = p.coefficients();
  RealMatrix r(n);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    r = r * a;
    for (std::size_t i = 0; i < n; ++i) r(i, i) += it->to_double();
  }
  return r;
}

// Roots of U_n: cos(k pi / (n+1)) for k = 1..n, in descending order.
inline std::vector<double> u_roots(std::size_t n) {
  if (n < 1) throw std::invalid_argument("u_roots needs n >= 1");
  std::vector<double> r;
  r.reserve(n);
  const double step = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) r.push_back(std::cos(static_cast<double>(k) * step));
  return r;
}

}  // namespace oscchain
