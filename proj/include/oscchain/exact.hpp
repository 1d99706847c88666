#pragma once

// Overflow-checked 128-bit integers and exact rationals built on them.
//
// Structural matrix algebra (commutators, matrix polynomials, Cayley-Hamilton)
// must be an equality test, so every operation either produces the exact
// result or throws OverflowError. Nothing ever wraps.

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace oscchain {

class OverflowError : public std::overflow_error {
public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

class ExactInt {
public:
  using rep = __int128;

  constexpr ExactInt() = default;
  constexpr ExactInt(int v) : v_(v) {}
  constexpr ExactInt(long v) : v_(v) {}
  constexpr ExactInt(long long v) : v_(v) {}
  static constexpr ExactInt from_rep(rep v) {
    ExactInt r;
    r.v_ = v;
    return r;
  }

  constexpr rep raw() const { return v_; }

  friend ExactInt operator+(ExactInt a, ExactInt b) {
    rep r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw OverflowError("ExactInt addition overflow");
    return from_rep(r);
  }
  friend ExactInt operator-(ExactInt a, ExactInt b) {
    rep r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw OverflowError("ExactInt subtraction overflow");
    return from_rep(r);
  }
  friend ExactInt operator*(ExactInt a, ExactInt b) {
    rep r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw OverflowError("ExactInt multiplication overflow");
    return from_rep(r);
  }
  // Truncating division; throws on division by zero and on MIN / -1.
  friend ExactInt operator/(ExactInt a, ExactInt b) {
    if (b.v_ == 0) throw std::domain_error("ExactInt division by zero");
    if (a.v_ == kMin && b.v_ == -1) throw OverflowError("ExactInt division overflow");
    return from_rep(a.v_ / b.v_);
  }
  friend ExactInt operator%(ExactInt a, ExactInt b) {
    if (b.v_ == 0) throw std::domain_error("ExactInt division by zero");
    if (b.v_ == -1) return ExactInt{};
    return from_rep(a.v_ % b.v_);
  }
  ExactInt operator-() const {
    if (v_ == kMin) throw OverflowError("ExactInt negation overflow");
    return from_rep(-v_);
  }

  ExactInt& operator+=(ExactInt o) { return *this = *this + o; }
  ExactInt& operator-=(ExactInt o) { return *this = *this - o; }
  ExactInt& operator*=(ExactInt o) { return *this = *this * o; }

  friend constexpr bool operator==(ExactInt a, ExactInt b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(ExactInt a, ExactInt b) { return a.v_ <=> b.v_; }

  constexpr bool is_zero() const { return v_ == 0; }
  constexpr int sign() const { return (v_ > 0) - (v_ < 0); }

  double to_double() const { return static_cast<double>(v_); }

  bool fits_int64() const {
    return v_ >= std::numeric_limits<std::int64_t>::min() && v_ <= std::numeric_limits<std::int64_t>::max();
  }
  std::int64_t to_int64() const {
    if (!fits_int64()) throw OverflowError("ExactInt value does not fit in 64 bits");
    return static_cast<std::int64_t>(v_);
  }

  std::string to_string() const {
    if (v_ == 0) return "0";
    bool neg = v_ < 0;
    // Work with the negative magnitude so MIN is representable.
    rep x = neg ? v_ : -v_;
    std::string s;
    while (x != 0) {
      s.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
      x /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
  }

  friend std::ostream& operator<<(std::ostream& os, ExactInt x) { return os << x.to_string(); }

private:
  static constexpr rep kMin = static_cast<rep>(static_cast<unsigned __int128>(1) << 127);
  rep v_ = 0;
};

inline ExactInt abs(ExactInt x) { return x.sign() < 0 ? -x : x; }

inline ExactInt gcd(ExactInt a, ExactInt b) {
  a = abs(a);
  b = abs(b);
  while (!b.is_zero()) {
    ExactInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact binomial coefficient via the multiplicative formula; each partial
// product C(n-k+i, i) is an integer so the division is exact.
inline ExactInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return ExactInt{0};
  k = std::min(k, n - k);
  ExactInt r{1};
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * ExactInt{n - k + i};
    r = r / ExactInt{i};
  }
  return r;
}

// Normalized rational: gcd(num, den) == 1 and den > 0.
class Rational {
public:
  Rational() = default;
  Rational(ExactInt n) : num_(n) {}
  Rational(int n) : num_(n) {}
  Rational(ExactInt n, ExactInt d) : num_(n), den_(d) {
    if (d.is_zero()) throw std::domain_error("Rational with zero denominator");
    normalize();
  }

  const ExactInt& num() const { return num_; }
  const ExactInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == ExactInt{1}; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    ExactInt g = gcd(a.den_, b.den_);
    ExactInt da = a.den_ / g;
    ExactInt db = b.den_ / g;
    return Rational(a.num_ * db + b.num_ * da, a.den_ * db);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first to keep intermediates small.
    ExactInt g1 = gcd(a.num_, b.den_);
    ExactInt g2 = gcd(b.num_, a.den_);
    if (g1.is_zero()) g1 = ExactInt{1};
    if (g2.is_zero()) g2 = ExactInt{1};
    return Rational((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

  double to_double() const { return num_.to_double() / den_.to_double(); }
  std::string to_string() const {
    return is_integer() ? num_.to_string() : num_.to_string() + "/" + den_.to_string();
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
  void normalize() {
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    ExactInt g = gcd(num_, den_);
    if (!g.is_zero() && g != ExactInt{1}) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  ExactInt num_{0};
  ExactInt den_{1};
};

}  // namespace oscchain
