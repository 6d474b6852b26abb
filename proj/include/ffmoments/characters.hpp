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

#ifndef FFMOMENTS_CHARACTERS_HPP
#define FFMOMENTS_CHARACTERS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace ffm {

using Complex = std::complex<double>;

namespace detail {

/// In-place remainder of a modulo the monic polynomial b (raw coefficient
/// vectors, constant term first). Leaves a trimmed.
inline void reduce_mod_monic(std::vector<Residue>& a, const std::vector<Residue>& b, const FieldParams& F) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.back() == 0) a.pop_back();
  while (a.size() > db) {
    const Residue c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j < db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
    a.pop_back();
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
}

/// Jacobi symbol (a/b) for monic b of degree >= 1 by the reciprocity
/// recursion. Only valid for q = 1 (mod 4), where the reciprocity sign is +1.
/// Buffers are taken by value so callers may move scratch space in.
inline int jacobi_raw(std::vector<Residue> a, std::vector<Residue> b, const FieldParams& F) {
  int sign = 1;
  for (;;) {
    reduce_mod_monic(a, b, F);
    if (a.empty()) return 0;
    const Residue c = a.back();
    // (c/b) = legendre(c)^deg b for a constant c
    if (((b.size() - 1) & 1) && F.legendre(c) < 0) sign = -sign;
    if (a.size() == 1) return sign;
    const Residue ci = F.inv(c);
    for (auto& x : a) x = F.mul(x, ci);
    std::swap(a, b);
  }
}

}  // namespace detail

/// (A/P) for a monic irreducible P, by Euler's criterion: A^((|P|-1)/2) mod P,
/// evaluated as legendre(N(A)) where N(A) = prod_{i<deg P} A^(q^i) mod P lies in F_q.
inline int residue_symbol(const FqPoly& A, const FqPoly& P) {
  if (!P.is_monic() || P.degree() < 1) throw std::invalid_argument("residue_symbol: P must be monic of degree >= 1");
  if (!is_irreducible(P)) throw std::invalid_argument("residue_symbol: P is reducible");
  FqPoly a = A % P;
  if (a.is_zero()) return 0;
  FqPoly norm = a, frob = a;
  for (int i = 1; i < P.degree(); ++i) {
    frob = powmod(frob, P.q(), P);
    norm = (norm * frob) % P;
  }
  if (norm.degree() != 0) throw std::logic_error("residue_symbol: norm is not a constant");
  return P.field().legendre(norm.leading());
}

inline int jacobi_symbol(const FqPoly& A, const FqPoly& B) {
  B.field().require_one_mod_four();
  if (!B.is_monic() || B.degree() < 1) throw std::invalid_argument("jacobi_symbol: B must be monic of degree >= 1");
  if (A.q() != B.q()) throw std::invalid_argument("jacobi_symbol: polynomials over different fields");
  return detail::jacobi_raw(A.coeffs(), B.coeffs(), B.field());
}

/// chi_D(f) = (D/f), with chi_D(1) = 1.
inline int chi(const FqPoly& D, const FqPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("chi: f must be monic");
  if (f.degree() == 0) return 1;
  return jacobi_symbol(D, f);
}

/// Exponential e(a/f): with t = a mod f and n = deg f, the 1/x coefficient of
/// t/f in F_q((1/x)) is t_{n-1} (f monic), so e(a/f) = exp(2 pi i t_{n-1}/q).
inline Complex hayes_e(const FqPoly& numerator, const FqPoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("hayes_e: f must be monic of degree >= 1");
  const FqPoly t = numerator % f;
  const double angle = 2.0 * std::numbers::pi * t.coeff(static_cast<std::size_t>(f.degree() - 1)) / f.q();
  return std::polar(1.0, angle);
}

/// G(V, chi_f) = sum_{u mod f} (u/f) e(uV/f), summed literally.
inline Complex gauss_sum_bruteforce(const FqPoly& V, const FqPoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("gauss_sum: f must be monic of degree >= 1");
  const auto& F = f.field();
  const std::uint64_t n = ipow(F.q(), static_cast<unsigned>(f.degree()));
  Complex s = 0;
  for (std::uint64_t idx = 1; idx < n; ++idx) {
    std::vector<Residue> c(f.degree());
    std::uint64_t t = idx;
    for (auto& x : c) {
      x = static_cast<Residue>(t % F.q());
      t /= F.q();
    }
    FqPoly u(F, std::move(c));
    int ch = jacobi_symbol(u, f);
    if (ch != 0) s += static_cast<double>(ch) * hayes_e(u * V, f);
  }
  return s;
}

/// Gauss sums G(V, chi_f) for one modulus f and many V. The phase index
/// u -> coefficient of x^{n-1} in uV mod f is F_q-linear in u, so the
/// character values are bucketed by phase: G = sum_t S_t exp(2 pi i t/q).
class GaussSumTable {
 public:
  explicit GaussSumTable(const FqPoly& f) : f_(f) {
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("GaussSumTable: f must be monic of degree >= 1");
    f.field().require_one_mod_four();
    const auto& F = f.field();
    n_ = f.degree();
    size_ = ipow(F.q(), static_cast<unsigned>(n_));
    chi_.assign(size_, 0);
    std::vector<Residue> u(n_);
    for (std::uint64_t idx = 1; idx < size_; ++idx) {
      std::uint64_t t = idx;
      for (auto& x : u) {
        x = static_cast<Residue>(t % F.q());
        t /= F.q();
      }
      chi_[idx] = static_cast<std::int8_t>(detail::jacobi_raw(u, f.coeffs(), F));
    }
  }

  const FqPoly& modulus() const { return f_; }

  /// Sum of chi_f(u) over u with phase t, for t = 0..q-1.
  std::vector<std::int64_t> phase_buckets(const FqPoly& V) const {
    const auto& F = f_.field();
    const std::uint32_t q = F.q();
    // L[i] = coefficient of x^{n-1} in x^i V mod f
    std::vector<Residue> L(n_);
    FqPoly xi = V % f_;
    const FqPoly x = FqPoly::x(F);
    for (int i = 0; i < n_; ++i) {
      L[i] = xi.coeff(static_cast<std::size_t>(n_ - 1));
      xi = (xi * x) % f_;
    }
    std::vector<std::int64_t> S(q, 0);
    // enumerate u in index order, updating the phase incrementally
    std::vector<Residue> digits(n_, 0);
    Residue phase = 0;
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      S[phase] += chi_[idx];
      for (int i = 0; i < n_; ++i) {
        if (++digits[i] < q) {
          phase = F.add(phase, L[i]);
          break;
        }
        digits[i] = 0;
        // digit wrapped from q-1 to 0: subtract (q-1) L[i], i.e. add L[i]
        phase = F.add(phase, L[i]);
      }
    }
    return S;
  }

  Complex operator()(const FqPoly& V) const {
    const auto S = phase_buckets(V);
    const std::uint32_t q = f_.q();
    Complex g = 0;
    for (std::uint32_t t = 0; t < q; ++t)
      if (S[t]) g += static_cast<double>(S[t]) * std::polar(1.0, 2.0 * std::numbers::pi * t / q);
    return g;
  }

 private:
  FqPoly f_;
  int n_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::int8_t> chi_;
};

/// Monic irreducible factors with multiplicities.
using Factorization = std::vector<std::pair<FqPoly, int>>;

/// Trial division by monic polynomials of increasing degree. Composite
/// trial divisors never divide once their prime factors have been removed.
inline Factorization factor(const FqPoly& f) {
  if (!f.is_monic()) throw std::invalid_argument("factor: f must be monic");
  Factorization out;
  FqPoly rest = f;
  const auto& F = f.field();
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    const std::uint64_t count = ipow(F.q(), static_cast<unsigned>(d));
    for (std::uint64_t i = 0; i < count && 2 * d <= rest.degree(); ++i) {
      FqPoly p = monic_from_index(F, d, i);
      int e = 0;
      for (;;) {
        auto [quot, rem] = poly_divmod(rest, p);
        if (!rem.is_zero()) break;
        rest = std::move(quot);
        ++e;
      }
      if (e) out.emplace_back(p, e);
    }
  }
  if (rest.degree() >= 1) {
    bool merged = false;
    for (auto& [p, e] : out)
      if (p == rest) {
        ++e;
        merged = true;
      }
    if (!merged) out.emplace_back(rest, 1);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.degree() != b.first.degree() ? a.first.degree() < b.first.degree()
                                                : index_in_degree(a.first) < index_in_degree(b.first);
  });
  return out;
}

/// Throws unless fac is a factorization of f into distinct monic irreducibles.
inline void check_factorization(const FqPoly& f, const Factorization& fac) {
  FqPoly prod = FqPoly::one(f.field());
  for (std::size_t i = 0; i < fac.size(); ++i) {
    const auto& [p, e] = fac[i];
    if (e < 1 || !p.is_monic() || p.degree() < 1 || !is_irreducible(p))
      throw std::invalid_argument("inconsistent factorization: bad prime power");
    for (std::size_t j = 0; j < i; ++j)
      if (fac[j].first == p) throw std::invalid_argument("inconsistent factorization: repeated prime");
    for (int k = 0; k < e; ++k) prod *= p;
  }
  if (prod != f) throw std::invalid_argument("inconsistent factorization: product differs from f");
}

/// G(V, chi_{P^i}) with V = V_1 P^alpha, P not dividing V_1. V = 0 is treated
/// as alpha = infinity.
inline double gauss_sum_prime_power(const FqPoly& V, const FqPoly& P, int i) {
  const double normP = std::pow(static_cast<double>(P.q()), P.degree());
  int alpha = 0;
  FqPoly V1 = V;
  const bool v_zero = V.is_zero();
  if (!v_zero) {
    for (;;) {
      auto [quot, rem] = poly_divmod(V1, P);
      if (!rem.is_zero()) break;
      V1 = std::move(quot);
      ++alpha;
    }
  }
  if (v_zero || i <= alpha) {
    if (i % 2) return 0.0;
    return std::pow(normP, i) - std::pow(normP, i - 1);
  }
  if (i == alpha + 1) {
    if (i % 2 == 0) return -std::pow(normP, i - 1);
    return residue_symbol(V1, P) * std::pow(normP, i - 1) * std::sqrt(normP);
  }
  return 0.0;
}

/// Closed-form Gauss sum, multiplicative over the supplied factorization of f.
inline Complex gauss_sum_closed(const FqPoly& V, const FqPoly& f, const Factorization& fac) {
  f.field().require_one_mod_four();
  check_factorization(f, fac);
  double g = 1.0;
  for (const auto& [p, e] : fac) g *= gauss_sum_prime_power(V, p, e);
  return {g, 0.0};
}

inline Complex gauss_sum_closed(const FqPoly& V, const FqPoly& f) { return gauss_sum_closed(V, f, factor(f)); }

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// d_k(f) = prod over P^e || f of C(e+k-1, k-1).
inline std::uint64_t divisor_fn(int k, const Factorization& fac) {
  if (k < 1) throw std::invalid_argument("divisor_fn: k must be >= 1");
  std::uint64_t d = 1;
  for (const auto& pe : fac) d *= binomial(static_cast<std::uint64_t>(pe.second + k - 1), static_cast<std::uint64_t>(k - 1));
  return d;
}

inline std::uint64_t divisor_fn(int k, const FqPoly& f) { return divisor_fn(k, factor(f)); }

/// Both sides of the Poisson summation identity for sum_{g in M_m} chi_f(g),
/// chi_f(g) = (g/f). Returns {direct sum, Gauss-sum side}.
inline std::pair<double, double> poisson_sides(const FqPoly& f, int m) {
  if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("poisson_sides: f must be monic of degree >= 1");
  if (m < 0) throw std::invalid_argument("poisson_sides: m must be >= 0");
  const auto& F = f.field();
  const int n = f.degree();
  double lhs = 0;
  for (const auto& g : enumerate_monic(F, m)) lhs += jacobi_symbol(g, f);

  GaussSumTable G(f);
  const double scale = std::pow(static_cast<double>(F.q()), m - n);
  auto sum_degree = [&](int d) {
    Complex s = 0;
    if (d < 0) return s;
    for (const auto& V : enumerate_monic(F, d)) s += G(V);
    return s;
  };
  Complex rhs;
  if (n % 2 == 0) {
    Complex below = 0;
    for (int d = 0; d <= n - m - 2; ++d) below += sum_degree(d);
    rhs = scale * (G(FqPoly::zero(F)) + static_cast<double>(F.q() - 1) * below - sum_degree(n - m - 1));
  } else {
    rhs = scale * std::sqrt(static_cast<double>(F.q())) * sum_degree(n - m - 1);
  }
  return {lhs, rhs.real()};
}

}  // namespace ffm

#endif  // FFMOMENTS_CHARACTERS_HPP
