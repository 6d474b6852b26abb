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

#ifndef FFMOMENTS_MOMENTS_HPP
#define FFMOMENTS_MOMENTS_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "characters.hpp"
#include "lfunction.hpp"
#include "poly.hpp"
#include "quadvalue.hpp"
#include "sieve.hpp"

namespace ffm {

// --- the hyperelliptic ensemble --------------------------------------------

/// Square-free monic polynomials of degree d in enumeration order, as a
/// filtered, splittable view of the monic range.
class SquarefreeRange {
 public:
  SquarefreeRange(const FieldParams& F, int d) : base_(F, d) {
    if (d < 1) throw std::invalid_argument("SquarefreeRange: degree must be >= 1");
  }
  explicit SquarefreeRange(MonicRange base) : base_(std::move(base)) {}

  SquarefreeRange partition(std::uint64_t k, std::uint64_t parts) const { return SquarefreeRange(base_.partition(k, parts)); }
  const MonicRange& monic() const { return base_; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (const auto& f : base_)
      if (detail::squarefree_raw(f.coeffs(), f.field())) fn(f);
  }
  std::uint64_t count() const {
    std::uint64_t n = 0;
    for_each([&](const FqPoly&) { ++n; });
    return n;
  }
  std::vector<FqPoly> collect() const {
    std::vector<FqPoly> out;
    for_each([&](const FqPoly& f) { out.push_back(f); });
    return out;
  }

 private:
  MonicRange base_;
};

inline SquarefreeRange enumerate_H(const FieldParams& F, int d) { return SquarefreeRange(F, d); }

/// |H_n| = q^n - q^(n-1) for n >= 2, and q for n = 1.
inline BigInt ensemble_size(std::uint64_t q, int n) {
  if (n < 1) throw std::invalid_argument("ensemble_size: n must be >= 1");
  BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
  return n == 1 ? qn : qn - qn / q;
}

// --- moments ---------------------------------------------------------------

enum class Method { PointCount, CharSum, Afe };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::PointCount: return "pointcount";
    case Method::CharSum: return "charsum";
    case Method::Afe: return "afe";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "pointcount") return Method::PointCount;
  if (s == "charsum") return Method::CharSum;
  if (s == "afe") return Method::Afe;
  throw std::invalid_argument("unknown method '" + s + "' (expected pointcount, charsum or afe)");
}

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct MomentOptions {
  unsigned threads = 0;          ///< 0: hardware concurrency
  unsigned partitions = 0;       ///< 0: derived from the thread count
  double budget = 1e11;          ///< refuse runs estimated above this many field operations
  bool ignore_budget = false;
};

struct MomentResult {
  std::uint32_t q = 0;
  int g = 0;
  int k = 0;
  Method method = Method::PointCount;
  std::uint64_t ensemble_count = 0;
  QuadValue value_exact;
  double value_float = 0;
  unsigned partition_count = 0;
  std::int64_t runtime_ms = 0;
};

/// Estimated field operations of a moment run.
inline double estimated_cost(std::uint32_t q, int g, int kmax, Method m) {
  const double nD = std::pow(static_cast<double>(q), 2 * g + 1);
  if (m == Method::PointCount) {
    double per = (2.0 * g + 1) * (2.0 * g + 1);
    for (int r = 1; r <= g; ++r) per += std::pow(static_cast<double>(q), r);
    return nD * per;
  }
  const int N = m == Method::CharSum ? 2 * g : kmax * g;
  double monic = 0, primes = 0;
  for (int d = 0; d <= N; ++d) monic += std::pow(static_cast<double>(q), d);
  for (int d = 1; d <= N; ++d) primes += std::pow(static_cast<double>(q), d) / d;
  return nD * (monic + primes * N * N);
}

namespace detail {

/// Exact running sum of integers; small terms are gathered in a 128-bit
/// register that is flushed to a big integer well before it could overflow.
class ExactSum {
 public:
  void add(__int128 v) {
    small_ += v;
    if (small_ > kFlush || small_ < -kFlush) flush();
  }
  void add(const BigInt& v) { big_ += v; }
  BigInt total() const {
    BigInt t = big_;
    t += to_big(small_);
    return t;
  }

 private:
  static constexpr __int128 kFlush = static_cast<__int128>(1) << 120;
  static BigInt to_big(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
  }
  void flush() {
    big_ += to_big(small_);
    small_ = 0;
  }
  __int128 small_ = 0;
  BigInt big_ = 0;
};

/// Sums of L(1/2)^k numerators over a partition, L(1/2) = (a + b sqrt q)/q^g.
struct PowerSums {
  std::vector<int> ks;
  std::vector<ExactSum> A, B;
  std::uint64_t count = 0;

  explicit PowerSums(std::vector<int> k) : ks(std::move(k)), A(ks.size()), B(ks.size()) {}

  void add(std::uint32_t q, std::int64_t a, std::int64_t b) {
    ++count;
    const std::int64_t lim = std::int64_t{1} << 30;
    if (a > -lim && a < lim && b > -lim && b < lim) {
      const __int128 A1 = a, B1 = b, Q = q;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        __int128 x, y;
        switch (ks[i]) {
          case 1: x = A1; y = B1; break;
          case 2: x = A1 * A1 + Q * B1 * B1; y = 2 * A1 * B1; break;
          case 3: x = A1 * A1 * A1 + 3 * Q * A1 * B1 * B1; y = 3 * A1 * A1 * B1 + Q * B1 * B1 * B1; break;
          default: add_big(i, q, a, b); continue;
        }
        A[i].add(x);
        B[i].add(y);
      }
    } else {
      for (std::size_t i = 0; i < ks.size(); ++i) add_big(i, q, a, b);
    }
  }
  void add_big(std::size_t i, std::uint32_t q, const BigInt& a, const BigInt& b) {
    QuadValue v = QuadValue(q, a, b, 0).pow(static_cast<unsigned>(ks[i]));
    A[i].add(v.a());
    B[i].add(v.b());
  }
  void add_big(std::size_t i, std::uint32_t q, std::int64_t a, std::int64_t b) { add_big(i, q, BigInt(a), BigInt(b)); }
};

inline std::int64_t to_i64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw std::overflow_error("value exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

/// Run body(partition_index) over all partitions on a small thread pool and
/// rethrow the first failure.
template <class Body>
void run_partitions(unsigned partitions, unsigned threads, Body&& body) {
  std::atomic<unsigned> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      unsigned p = next.fetch_add(1);
      if (p >= partitions) return;
      try {
        body(p);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = partitions;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min(threads, partitions));
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Exact sums sum_{D in H_{2g+1}} L(1/2, chi_D)^k for every k in ks, from one
/// pass over the ensemble. The result does not depend on the partitioning.
inline std::vector<MomentResult> moments(std::uint32_t q, int g, const std::vector<int>& ks, Method method,
                                         const MomentOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  FieldParams F(q);
  F.require_one_mod_four();
  if (g < 1) throw std::invalid_argument("moments: g must be >= 1");
  if (ks.empty()) throw std::invalid_argument("moments: no exponents requested");
  int kmax = 0;
  for (int k : ks) {
    if (k < 1 || k > 3) throw std::invalid_argument("moments: k must be 1, 2 or 3");
    kmax = std::max(kmax, k);
  }
  const double cost = estimated_cost(q, g, kmax, method);
  if (!opts.ignore_budget && cost > opts.budget) {
    std::ostringstream os;
    os << "estimated " << cost << " field operations exceeds the budget of " << opts.budget
       << " (raise the budget or set ignore_budget)";
    throw BudgetExceeded(os.str());
  }
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  unsigned partitions = opts.partitions ? opts.partitions : threads * 4;

  const int deg = 2 * g + 1;
  const std::uint64_t blocks = ipow(q, static_cast<unsigned>(deg - 1));  // D sharing d_1..d_{2g}
  partitions = static_cast<unsigned>(std::min<std::uint64_t>(partitions, blocks));
  std::vector<detail::PowerSums> partial(partitions, detail::PowerSums(ks));
  // afe sums carry their own denominator
  std::vector<std::vector<detail::ExactSum>> afeA(partitions), afeB(partitions);

  std::unique_ptr<PointCounter> pc;
  std::unique_ptr<MonicSieve> sieve;
  std::vector<std::vector<std::uint32_t>> dk(4);
  if (method == Method::PointCount) {
    pc = std::make_unique<PointCounter>(F, g);
  } else if (method == Method::CharSum) {
    sieve = std::make_unique<MonicSieve>(F, 2 * g);
  } else {
    sieve = std::make_unique<MonicSieve>(F, kmax * g);
    for (int k : ks) dk[k] = sieve->divisor_counts(k);
  }
  // |c_n| <= C(2g, n) q^(n/2), so |a|, |b| <= 4^g q^g
  const bool small_values = (2.0 * g + std::log2(static_cast<double>(q)) * g) < 60;
  const std::uint32_t Eafe = static_cast<std::uint32_t>((kmax * g + 1) / 2);

  auto body = [&](unsigned part) {
    const std::uint64_t b0 = blocks * part / partitions, b1 = blocks * (part + 1) / partitions;
    auto& acc = partial[part];
    std::vector<Residue> coeffs(deg + 1, 0), high(deg, 0);
    coeffs[deg] = 1;
    std::vector<std::vector<std::int64_t>> traces;
    std::vector<std::int8_t> chi;
    std::unique_ptr<PointCounter::Block> block;
    if (pc) block = std::make_unique<PointCounter::Block>(*pc);
    if (method == Method::Afe) {
      afeA[part].resize(ks.size());
      afeB[part].resize(ks.size());
    }
    for (std::uint64_t blk = b0; blk < b1; ++blk) {
      std::uint64_t t = blk;
      for (int j = 1; j < deg; ++j) {
        high[j] = static_cast<Residue>(t % q);
        t /= q;
        coeffs[j] = high[j];
      }
      if (block) {
        block->set_high(high);
        block->traces(traces);
      }
      for (Residue c0 = 0; c0 < q; ++c0) {
        coeffs[0] = c0;
        if (!detail::squarefree_raw(coeffs, F)) continue;
        if (method == Method::PointCount) {
          auto c = detail::newton_from_traces(traces[c0], g);
          if (small_values) {
            auto [a, b] = central_value_from_half(q, g, c);
            acc.add(q, a, b);
          } else {
            auto [a, b] = central_value_numerators(detail::complete_by_symmetry(q, g, c));
            acc.add(q, detail::to_i64(a), detail::to_i64(b));
          }
        } else if (method == Method::CharSum) {
          FqPoly D(F, coeffs);
          auto c = charsum_coefficients(D, *sieve, 2 * g, chi);
          LPolynomial L{q, g, std::vector<BigInt>(c.begin(), c.end())};
          auto [a, b] = central_value_numerators(L);
          acc.add(q, detail::to_i64(a), detail::to_i64(b));
        } else {
          FqPoly D(F, coeffs);
          ++acc.count;
          character_values(D, *sieve, chi);
          for (std::size_t i = 0; i < ks.size(); ++i) {
            const int k = ks[i];
            const int N = k * g;
            const auto& d = dk[k];
            __int128 A = 0, B = 0;
            for (int n = 0; n <= N; ++n) {
              std::int64_t T = 0;
              for (std::uint64_t f = sieve->offset(n); f < sieve->offset(n + 1); ++f)
                T += chi[f] * static_cast<std::int64_t>(d[f]);
              const __int128 w = static_cast<__int128>(n <= N - 1 ? 2 : 1) * T;
              // common denominator q^Eafe for every k
              if (n % 2 == 0)
                A += w * static_cast<__int128>(ipow(q, Eafe - n / 2));
              else
                B += w * static_cast<__int128>(ipow(q, Eafe - (n + 1) / 2));
            }
            afeA[part][i].add(A);
            afeB[part][i].add(B);
          }
        }
      }
    }
  };
  detail::run_partitions(partitions, threads, body);

  std::vector<MomentResult> out;
  std::uint64_t count = 0;
  for (const auto& p : partial) count += p.count;
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    BigInt A = 0, B = 0;
    for (unsigned p = 0; p < partitions; ++p) {
      if (method == Method::Afe) {
        A += afeA[p][i].total();
        B += afeB[p][i].total();
      } else {
        A += partial[p].A[i].total();
        B += partial[p].B[i].total();
      }
    }
    MomentResult r;
    r.q = q;
    r.g = g;
    r.k = ks[i];
    r.method = method;
    r.ensemble_count = count;
    r.value_exact = method == Method::Afe ? QuadValue(q, A, B, Eafe)
                                          : QuadValue(q, A, B, static_cast<std::uint32_t>(ks[i] * g));
    r.value_float = r.value_exact.to_double();
    r.partition_count = partitions;
    r.runtime_ms = ms;
    out.push_back(std::move(r));
  }
  return out;
}

inline MomentResult moment(std::uint32_t q, int g, int k, Method method, const MomentOptions& opts = {}) {
  return moments(q, g, {k}, method, opts).front();
}

// --- character sums over the ensemble ------------------------------------

/// True iff every prime factor of C divides f (C | f^infinity).
inline bool divides_power_of(const FqPoly& C, const FqPoly& f) {
  FqPoly c = C;
  for (;;) {
    if (c.degree() == 0) return true;
    FqPoly g = poly_gcd(c, f);
    if (g.degree() == 0) return false;
    while ((c % g).is_zero() && g.degree() > 0) c = c / g;
  }
}

/// Both sides of sum_{D in H_{2g+1}} chi_f(D) = sum_{C | f^inf} [sum_{h in
/// M_{2g+1-2deg C}} chi_f(h) - q sum_{h in M_{2g-1-2deg C}} chi_f(h)],
/// with chi_f(h) = (f/h) and chi_1 = 1. Each side by enumeration.
inline std::pair<BigInt, BigInt> charsum_over_H(const FqPoly& f, int g) {
  if (!f.is_monic()) throw std::invalid_argument("charsum_over_H: f must be monic");
  if (g < 0) throw std::invalid_argument("charsum_over_H: g must be >= 0");
  const auto& F = f.field();
  F.require_one_mod_four();
  auto chi_f = [&](const FqPoly& h) { return chi(f, h); };
  BigInt lhs = 0;
  enumerate_H(F, 2 * g + 1).for_each([&](const FqPoly& D) { lhs += chi_f(D); });

  auto hsum = [&](int n) -> BigInt {
    if (n < 0) return 0;
    BigInt s = 0;
    for (const auto& h : enumerate_monic(F, n)) s += chi_f(h);
    return s;
  };
  BigInt rhs = 0;
  for (int dc = 0; 2 * dc <= 2 * g + 1; ++dc) {
    std::uint64_t ncs = 0;
    for (const auto& C : enumerate_monic(F, dc))
      if (divides_power_of(C, f)) ++ncs;
    if (ncs == 0) continue;
    rhs += BigInt(ncs) * (hsum(2 * g + 1 - 2 * dc) - BigInt(F.q()) * hsum(2 * g - 1 - 2 * dc));
  }
  return {lhs, rhs};
}

}  // namespace ffm

#endif  // FFMOMENTS_MOMENTS_HPP
