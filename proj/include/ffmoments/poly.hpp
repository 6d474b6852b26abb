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

#ifndef FFMOMENTS_POLY_HPP
#define FFMOMENTS_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "field.hpp"

namespace ffm {

using BigInt = boost::multiprecision::cpp_int;

/// Dense polynomial over F_q, constant term first. Canonical: no trailing
/// zero coefficients, so the zero polynomial has an empty coefficient vector.
class FqPoly {
 public:
  FqPoly() = default;

  FqPoly(FieldParams field, std::vector<Residue> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    for (auto& a : c_) a %= field_.q();
    trim();
  }

  static FqPoly zero(const FieldParams& f) { return FqPoly(f, {}); }
  static FqPoly one(const FieldParams& f) { return FqPoly(f, {1}); }
  static FqPoly constant(const FieldParams& f, Residue c) { return FqPoly(f, {c}); }
  static FqPoly x(const FieldParams& f) { return FqPoly(f, {0, 1}); }
  static FqPoly monomial(const FieldParams& f, Residue c, std::size_t n) {
    std::vector<Residue> v(n + 1, 0);
    v[n] = c;
    return FqPoly(f, std::move(v));
  }

  const FieldParams& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  const std::vector<Residue>& coeffs() const { return c_; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Residue leading() const { return c_.empty() ? 0 : c_.back(); }
  Residue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  FqPoly monic() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no monic associate");
    return scaled(field_.inv(leading()));
  }

  FqPoly scaled(Residue s) const {
    std::vector<Residue> v(c_);
    for (auto& a : v) a = field_.mul(a, s);
    return FqPoly(field_, std::move(v));
  }

  FqPoly derivative() const {
    if (c_.size() <= 1) return zero(field_);
    std::vector<Residue> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = field_.mul(c_[i], static_cast<Residue>(i % q()));
    return FqPoly(field_, std::move(v));
  }

  Residue eval(Residue x) const {
    Residue r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, x), *it);
    return r;
  }

  friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    a.check_same(b);
    std::vector<Residue> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.coeff(i), b.coeff(i));
    return FqPoly(a.field_, std::move(v));
  }
  friend FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    a.check_same(b);
    std::vector<Residue> v(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.sub(a.coeff(i), b.coeff(i));
    return FqPoly(a.field_, std::move(v));
  }
  friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return zero(a.field_);
    const auto q = a.q();
    std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += std::uint64_t{a.c_[i]} * b.c_[j] % q;
    std::vector<Residue> v(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<Residue>(acc[i] % q);
    return FqPoly(a.field_, std::move(v));
  }
  FqPoly& operator+=(const FqPoly& o) { return *this = *this + o; }
  FqPoly& operator-=(const FqPoly& o) { return *this = *this - o; }
  FqPoly& operator*=(const FqPoly& o) { return *this = *this * o; }

  friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.q() == b.q() && a.c_ == b.c_; }
  friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

  /// Canonical text form: comma-separated coefficients, constant term first.
  /// The zero polynomial renders as "0".
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
    return s;
  }

  /// Accepts the canonical comma form ("1,2,0,1") or a human form
  /// ("x^3+2*x+1", "x^2 - 3x + 4"). Coefficients are reduced mod q.
  static FqPoly parse(const FieldParams& f, const std::string& text);

  friend std::ostream& operator<<(std::ostream& os, const FqPoly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check_same(const FqPoly& o) const {
    if (field_.q() != o.field_.q()) throw std::invalid_argument("polynomials over different fields");
  }

  FieldParams field_;
  std::vector<Residue> c_;
};

/// Euclidean division a = quot*b + rem with deg rem < deg b.
inline std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& F = a.field();
  if (a.degree() < b.degree()) return {FqPoly::zero(F), a};
  std::vector<Residue> r(a.coeffs());
  const int db = b.degree();
  std::vector<Residue> quot(a.degree() - db + 1, 0);
  const Residue lead_inv = F.inv(b.leading());
  const auto& bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    Residue c = F.mul(r[i], lead_inv);
    quot[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, bc[j]));
  }
  r.resize(db);
  return {FqPoly(F, std::move(quot)), FqPoly(F, std::move(r))};
}

inline FqPoly operator%(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).second; }
inline FqPoly operator/(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).first; }

/// Monic greatest common divisor.
inline FqPoly poly_gcd(FqPoly a, FqPoly b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    FqPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline FqPoly powmod(FqPoly base, std::uint64_t e, const FqPoly& mod) {
  FqPoly r = FqPoly::one(base.field()) % mod;
  base = base % mod;
  while (e) {
    if (e & 1) r = (r * base) % mod;
    e >>= 1;
    if (e) base = (base * base) % mod;
  }
  return r;
}

/// Exponentiation by a power of q given as an iterated Frobenius: base^(q^k) mod m.
inline FqPoly frobenius_power(FqPoly base, unsigned k, const FqPoly& mod) {
  for (unsigned i = 0; i < k; ++i) base = powmod(std::move(base), base.q(), mod);
  return base % mod;
}

inline bool is_squarefree(const FqPoly& f) {
  if (f.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  FqPoly d = f.derivative();
  // f' = 0 means f is a p-th power.
  if (d.is_zero()) return false;
  return poly_gcd(f, d).degree() == 0;
}

/// Distinct-degree test: f of degree n is irreducible iff gcd(x^(q^k) - x, f) = 1
/// for every 1 <= k <= n/2.
inline bool is_irreducible(const FqPoly& f) {
  if (f.is_zero() || f.degree() < 1) throw std::domain_error("is_irreducible: constant polynomial");
  const FqPoly m = f.monic();
  const int n = m.degree();
  if (n == 1) return true;
  const FqPoly x = FqPoly::x(m.field());
  FqPoly h = x % m;
  for (int k = 1; 2 * k <= n; ++k) {
    h = powmod(h, m.q(), m);
    if (poly_gcd(h - x, m).degree() != 0) return false;
  }
  return true;
}

inline int mobius(std::uint64_t n) {
  int r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

/// Number of monic irreducibles of degree d over F_q, (1/d) sum_{e|d} mu(e) q^(d/e).
inline BigInt count_irreducibles(std::uint64_t q, int d) {
  if (d <= 0) throw std::invalid_argument("count_irreducibles: degree must be >= 1");
  BigInt s = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = mobius(static_cast<std::uint64_t>(e));
    if (mu == 0) continue;
    BigInt t = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(d / e));
    s += mu > 0 ? t : BigInt(-t);
  }
  return s / d;
}

// --- enumeration of monic polynomials ------------------------------------
//
// The monic polynomial x^d + c_{d-1}x^{d-1} + ... + c_0 has in-degree index
// sum_i c_i q^i, so the constant term varies fastest. The global index in
// M_{<=N} offsets degree d by |M_{<d}| = (q^d - 1)/(q - 1).

inline std::uint64_t monic_count_below(std::uint64_t q, int d) { return (ipow(q, d) - 1) / (q - 1); }

inline FqPoly monic_from_index(const FieldParams& F, int d, std::uint64_t idx) {
  std::vector<Residue> v(d + 1);
  for (int i = 0; i < d; ++i) {
    v[i] = static_cast<Residue>(idx % F.q());
    idx /= F.q();
  }
  v[d] = 1;
  return FqPoly(F, std::move(v));
}

inline std::uint64_t index_in_degree(const FqPoly& f) {
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * f.q() + f.coeff(i);
  return idx;
}

inline std::uint64_t global_monic_index(const FqPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("global_monic_index: polynomial is not monic");
  return monic_count_below(f.q(), f.degree()) + index_in_degree(f);
}

/// All q^d monic polynomials of degree d, in index order; indexable and
/// splittable into contiguous ranges for parallel consumers.
class MonicRange {
 public:
  MonicRange(FieldParams F, int d) : MonicRange(F, d, 0, ipow(F.q(), static_cast<unsigned>(d))) {}
  MonicRange(FieldParams F, int d, std::uint64_t begin, std::uint64_t end)
      : F_(std::move(F)), d_(d), begin_(begin), end_(end) {
    if (d < 0) throw std::invalid_argument("MonicRange: negative degree");
  }

  int degree() const { return d_; }
  std::uint64_t size() const { return end_ - begin_; }
  std::uint64_t begin_index() const { return begin_; }
  std::uint64_t end_index() const { return end_; }
  FqPoly operator[](std::uint64_t i) const { return monic_from_index(F_, d_, begin_ + i); }

  /// Part k of `parts` contiguous, nearly equal slices.
  MonicRange partition(std::uint64_t k, std::uint64_t parts) const {
    const std::uint64_t n = size();
    const std::uint64_t lo = begin_ + n * k / parts, hi = begin_ + n * (k + 1) / parts;
    return MonicRange(F_, d_, lo, hi);
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = FqPoly;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = FqPoly;
    iterator(const MonicRange* r, std::uint64_t i) : r_(r), i_(i) {}
    FqPoly operator*() const { return monic_from_index(r_->F_, r_->d_, i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i_ != o.i_; }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const MonicRange* r_;
    std::uint64_t i_;
  };
  iterator begin() const { return {this, begin_}; }
  iterator end() const { return {this, end_}; }

 private:
  FieldParams F_;
  int d_;
  std::uint64_t begin_, end_;
};

inline MonicRange enumerate_monic(const FieldParams& F, int d) { return MonicRange(F, d); }

// --- parsing ---------------------------------------------------------------

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

inline std::int64_t parse_int(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (start == pos) throw std::invalid_argument("expected a number in polynomial '" + s + "'");
  return std::stoll(s.substr(start, pos - start));
}

}  // namespace detail

inline FqPoly FqPoly::parse(const FieldParams& F, const std::string& text) {
  const std::string s = detail::strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty polynomial text");
  std::vector<std::int64_t> acc;
  auto add_term = [&](std::size_t deg, std::int64_t c) {
    if (acc.size() <= deg) acc.resize(deg + 1, 0);
    acc[deg] += c;
  };
  if (s.find('x') == std::string::npos && s.find('X') == std::string::npos) {
    // comma form, possibly a single constant
    std::stringstream ss(s);
    std::string tok;
    std::size_t i = 0;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      bool negative = !tok.empty() && tok[0] == '-';
      if (negative) pos = 1;
      std::int64_t v = detail::parse_int(tok, pos);
      if (pos != tok.size()) throw std::invalid_argument("bad coefficient '" + tok + "'");
      add_term(i++, negative ? -v : v);
    }
  } else {
    std::size_t pos = 0;
    while (pos < s.size()) {
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
      }
      std::int64_t c = 1;
      bool have_coeff = false;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        c = detail::parse_int(s, pos);
        have_coeff = true;
        if (pos < s.size() && s[pos] == '*') ++pos;
      }
      std::size_t deg = 0;
      if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
        ++pos;
        deg = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          deg = static_cast<std::size_t>(detail::parse_int(s, pos));
        }
      } else if (!have_coeff) {
        throw std::invalid_argument("cannot parse polynomial '" + text + "'");
      }
      add_term(deg, sign * c);
      if (pos < s.size() && s[pos] != '+' && s[pos] != '-')
        throw std::invalid_argument("cannot parse polynomial '" + text + "'");
    }
  }
  std::vector<Residue> v(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) v[i] = F.reduce(acc[i]);
  return FqPoly(F, std::move(v));
}

}  // namespace ffm

#endif  // FFMOMENTS_POLY_HPP
