/*
   Copyright 2026 The ffmoments Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FFMOMENTS_QUADVALUE_HPP
#define FFMOMENTS_QUADVALUE_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace ffm {

/// Exact element (a + b*sqrt(q)) / q^e of Q(sqrt q). Kept canonical by
/// removing common factors of q from (a, b) while e > 0, so equal values have
/// equal representations.
class QuadValue {
 public:
  using Int = boost::multiprecision::cpp_int;

  QuadValue() = default;
  explicit QuadValue(std::uint32_t q, Int a = 0, Int b = 0, std::uint32_t e = 0)
      : q_(q), a_(std::move(a)), b_(std::move(b)), e_(e) {
    if (q < 2) throw std::invalid_argument("QuadValue: q must be >= 2");
    normalize();
  }

  static QuadValue zero(std::uint32_t q) { return QuadValue(q); }
  static QuadValue one(std::uint32_t q) { return QuadValue(q, 1); }
  /// q^(-n/2) for n >= 0.
  static QuadValue inv_sqrt_power(std::uint32_t q, std::uint32_t n) {
    if (n % 2 == 0) return QuadValue(q, 1, 0, n / 2);
    return QuadValue(q, 0, 1, (n + 1) / 2);
  }

  std::uint32_t q() const { return q_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  std::uint32_t e() const { return e_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  friend QuadValue operator+(const QuadValue& x, const QuadValue& y) {
    check(x, y);
    if (x.e_ >= y.e_) {
      Int s = pow_q(x.q_, x.e_ - y.e_);
      return QuadValue(x.q_, x.a_ + y.a_ * s, x.b_ + y.b_ * s, x.e_);
    }
    return y + x;
  }
  friend QuadValue operator-(const QuadValue& x) { return QuadValue(x.q_, -x.a_, -x.b_, x.e_); }
  friend QuadValue operator-(const QuadValue& x, const QuadValue& y) { return x + (-y); }
  friend QuadValue operator*(const QuadValue& x, const QuadValue& y) {
    check(x, y);
    return QuadValue(x.q_, x.a_ * y.a_ + x.q_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.e_ + y.e_);
  }
  QuadValue& operator+=(const QuadValue& o) { return *this = *this + o; }
  QuadValue& operator*=(const QuadValue& o) { return *this = *this * o; }

  QuadValue pow(unsigned k) const {
    QuadValue r = one(q_), base = *this;
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  friend bool operator==(const QuadValue& x, const QuadValue& y) {
    return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_ && x.e_ == y.e_;
  }
  friend bool operator!=(const QuadValue& x, const QuadValue& y) { return !(x == y); }

  /// Value to roughly 100 significant digits.
  template <class Real = boost::multiprecision::cpp_bin_float_100>
  Real value() const {
    Real sq = boost::multiprecision::sqrt(Real(q_));
    Real num = Real(a_) + Real(b_) * sq;
    Real den = Real(pow_q(q_, e_));
    return num / den;
  }
  double to_double() const { return static_cast<double>(value()); }

  std::string to_string() const {
    return "(" + a_.str() + " + " + b_.str() + "*sqrt(" + std::to_string(q_) + "))/" + std::to_string(q_) + "^" +
           std::to_string(e_);
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadValue& v) { return os << v.to_string(); }

  static Int pow_q(std::uint32_t q, std::uint32_t n) { return boost::multiprecision::pow(Int(q), n); }

 private:
  static void check(const QuadValue& x, const QuadValue& y) {
    if (x.q_ != y.q_) throw std::invalid_argument("QuadValue: mismatched q");
  }
  void normalize() {
    if (a_ == 0 && b_ == 0) {
      e_ = 0;
      return;
    }
    while (e_ > 0 && a_ % q_ == 0 && b_ % q_ == 0) {
      a_ /= q_;
      b_ /= q_;
      --e_;
    }
  }

  std::uint32_t q_ = 0;
  Int a_ = 0, b_ = 0;
  std::uint32_t e_ = 0;
};

}  // namespace ffm

#endif  // FFMOMENTS_QUADVALUE_HPP
