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

#ifndef FFMOMENTS_SIEVE_HPP
#define FFMOMENTS_SIEVE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace ffm {

/// Multiplicative sieve over every monic polynomial of degree <= N, addressed
/// by global monic index. For each f of degree >= 1 it stores the smallest
/// (by index) monic irreducible p dividing f and the cofactor f/p, which makes
/// completely multiplicative functions and divisor functions one pass each.
class MonicSieve {
 public:
  MonicSieve(const FieldParams& F, int max_degree) : F_(F), N_(max_degree) {
    if (max_degree < 0) throw std::invalid_argument("MonicSieve: negative degree");
    const std::uint64_t total = monic_count_below(F.q(), N_ + 1);
    if (total > (std::uint64_t{1} << 32) - 1) throw std::invalid_argument("MonicSieve: table too large");
    size_ = static_cast<std::uint32_t>(total);
    offsets_.resize(N_ + 2);
    for (int d = 0; d <= N_ + 1; ++d) offsets_[d] = monic_count_below(F.q(), d);
    factor_.assign(size_, 0);
    cofactor_.assign(size_, 0);
    exponent_.assign(size_, 0);

    const std::uint32_t q = F.q();
    std::vector<Residue> a(N_ + 1), b(N_ + 1), prod(N_ + 1);
    for (int dp = 1; dp <= N_; ++dp) {
      for (std::uint32_t pi = static_cast<std::uint32_t>(offsets_[dp]); pi < offsets_[dp + 1]; ++pi) {
        if (factor_[pi] != 0) continue;
        primes_.push_back(pi);
        factor_[pi] = pi;
        cofactor_[pi] = 0;
        decode(pi, dp, a);
        for (int dm = 0; dm + dp <= N_; ++dm) {
          const std::uint64_t count = offsets_[dm + 1] - offsets_[dm];
          for (std::uint64_t mi = 0; mi < count; ++mi) {
            const std::uint32_t m = static_cast<std::uint32_t>(offsets_[dm] + mi);
            decode(m, dm, b);
            // product of monic polynomials, coefficients below the leading one
            const int dd = dp + dm;
            std::fill(prod.begin(), prod.begin() + dd + 1, 0);
            for (int i = 0; i <= dp; ++i) {
              if (a[i] == 0) continue;
              for (int j = 0; j <= dm; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % q;
            }
            std::uint64_t idx = 0;
            for (int i = dd - 1; i >= 0; --i) idx = idx * q + prod[i];
            const std::uint32_t f = static_cast<std::uint32_t>(offsets_[dd] + idx);
            if (dm == 0 || factor_[f] != 0) continue;
            factor_[f] = pi;
            cofactor_[f] = m;
          }
        }
      }
    }
    for (std::uint32_t f = 1; f < size_; ++f) {
      const std::uint32_t c = cofactor_[f];
      exponent_[f] = static_cast<std::uint8_t>(c != 0 && factor_[c] == factor_[f] ? exponent_[c] + 1 : 1);
    }
  }

  const FieldParams& field() const { return F_; }
  int max_degree() const { return N_; }
  std::uint32_t size() const { return size_; }
  std::uint64_t offset(int d) const { return offsets_.at(d); }
  bool is_prime(std::uint32_t f) const { return f != 0 && factor_[f] == f; }
  std::uint32_t prime_factor(std::uint32_t f) const { return factor_[f]; }
  std::uint32_t cofactor(std::uint32_t f) const { return cofactor_[f]; }
  /// Multiplicity of prime_factor(f) in f.
  int exponent(std::uint32_t f) const { return exponent_[f]; }
  /// Indices of the monic irreducibles of degree <= N, ascending.
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  int degree_of(std::uint32_t f) const {
    int d = 0;
    while (offsets_[d + 1] <= f) ++d;
    return d;
  }
  FqPoly poly(std::uint32_t f) const {
    const int d = degree_of(f);
    return monic_from_index(F_, d, f - offsets_[d]);
  }

  /// d_k(f) for every index, from d_k(f) = d_k(f/p) * C(e+k-1,k-1) / C(e+k-2,k-1).
  std::vector<std::uint32_t> divisor_counts(int k) const {
    if (k < 1) throw std::invalid_argument("divisor_counts: k must be >= 1");
    std::vector<std::uint32_t> d(size_, 1);
    auto binom = [k](std::uint64_t e) {
      std::uint64_t r = 1;
      for (int i = 1; i < k; ++i) r = r * (e + static_cast<std::uint64_t>(i)) / static_cast<std::uint64_t>(i);
      return r;
    };
    for (std::uint32_t f = 1; f < size_; ++f) {
      const std::uint64_t e = exponent_[f];
      d[f] = static_cast<std::uint32_t>(d[cofactor_[f]] / binom(e - 1) * binom(e));
    }
    return d;
  }

 private:
  void decode(std::uint32_t idx, int d, std::vector<Residue>& out) const {
    std::uint64_t t = idx - offsets_[d];
    for (int i = 0; i < d; ++i) {
      out[i] = static_cast<Residue>(t % F_.q());
      t /= F_.q();
    }
    out[d] = 1;
  }

  FieldParams F_;
  int N_;
  std::uint32_t size_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> factor_, cofactor_;
  std::vector<std::uint8_t> exponent_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace ffm

#endif  // FFMOMENTS_SIEVE_HPP
