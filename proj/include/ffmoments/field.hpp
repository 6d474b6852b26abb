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

#ifndef FFMOMENTS_FIELD_HPP
#define FFMOMENTS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffm {

using Residue = std::uint32_t;

/// Largest supported characteristic; products of two residues fit in 32 bits.
inline constexpr std::uint32_t kMaxModulus = 1u << 15;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The prime field F_q. Holds inverse and Legendre tables; cheap to copy
/// (tables are shared and immutable).
class FieldParams {
 public:
  FieldParams() = default;

  explicit FieldParams(std::uint32_t q) : q_(q) {
    if (q < 5 || q >= kMaxModulus)
      throw std::invalid_argument("q must satisfy 5 <= q < 2^15, got " + std::to_string(q));
    if (!is_prime(q)) throw std::invalid_argument("q must be prime, got " + std::to_string(q));
    auto t = std::make_shared<Tables>();
    t->inv.assign(q, 0);
    t->legendre.assign(q, -1);
    t->legendre[0] = 0;
    for (std::uint32_t a = 1; a < q; ++a) {
      t->legendre[(a * a) % q] = 1;
      t->inv[a] = pow(a, q - 2);
    }
    tables_ = std::move(t);
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t residue_mod4() const { return q_ % 4; }
  bool valid() const { return q_ != 0; }

  /// Character machinery (Jacobi symbols, Gauss sums) assumes q = 1 (mod 4).
  void require_one_mod_four() const {
    if (q_ % 4 != 1) throw std::invalid_argument("q must be = 1 (mod 4), got " + std::to_string(q_));
  }

  Residue reduce(std::int64_t a) const {
    auto r = a % static_cast<std::int64_t>(q_);
    return static_cast<Residue>(r < 0 ? r + q_ : r);
  }
  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const { return (a * b) % q_; }
  Residue inv(Residue a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    return tables_->inv[a];
  }
  Residue pow(Residue a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a % q_;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    return static_cast<Residue>(r);
  }
  /// Quadratic character of F_q: 0, +1 or -1.
  int legendre(Residue a) const { return tables_->legendre[a % q_]; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) { return a.q_ == b.q_; }

 private:
  struct Tables {
    std::vector<Residue> inv;
    std::vector<int> legendre;
  };
  std::uint32_t q_ = 0;
  std::shared_ptr<const Tables> tables_;
};

/// q^n as an unsigned 64-bit integer; throws if it does not fit.
inline std::uint64_t ipow(std::uint64_t q, unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > UINT64_MAX / q) throw std::overflow_error("q^n overflows 64 bits");
    r *= q;
  }
  return r;
}

}  // namespace ffm

#endif  // FFMOMENTS_FIELD_HPP
