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

#ifndef FFMOMENTS_LFUNCTION_HPP
#define FFMOMENTS_LFUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "characters.hpp"
#include "ext_field.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "quadvalue.hpp"
#include "sieve.hpp"

namespace ffm {

/// Coefficients c_0..c_2g of L(u, chi_D) for D in H_{2g+1}.
struct LPolynomial {
  std::uint32_t q = 0;
  int g = 0;
  std::vector<BigInt> coeffs;

  /// c_{2g-n} = q^{g-n} c_n for 0 <= n <= g.
  bool satisfies_functional_equation() const {
    if (static_cast<int>(coeffs.size()) != 2 * g + 1) return false;
    for (int n = 0; n <= g; ++n)
      if (coeffs[2 * g - n] != boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(g - n)) * coeffs[n])
        return false;
    return true;
  }

  double horner(double u) const {
    double r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * u + static_cast<double>(*it);
    return r;
  }

  friend bool operator==(const LPolynomial& a, const LPolynomial& b) {
    return a.q == b.q && a.g == b.g && a.coeffs == b.coeffs;
  }
};

namespace detail {

/// gcd(D, D') has degree 0, on raw coefficients (no FqPoly allocation churn).
inline bool squarefree_raw(const std::vector<Residue>& d, const FieldParams& F) {
  const int n = static_cast<int>(d.size()) - 1;
  if (n <= 0) return true;
  std::vector<Residue> a(d), b(n);
  for (int i = 1; i <= n; ++i) b[i - 1] = F.mul(d[i], static_cast<Residue>(i % F.q()));
  while (!b.empty() && b.back() == 0) b.pop_back();
  if (b.empty()) return false;
  // Euclid; only the degree of the final nonzero remainder matters
  while (!b.empty()) {
    const Residue inv = F.inv(b.back());
    for (auto& x : b) x = F.mul(x, inv);
    reduce_mod_monic(a, b, F);
    std::swap(a, b);
  }
  return a.size() == 1;
}

inline int genus_of(const FqPoly& D) {
  if (!D.is_monic() || D.degree() < 1 || D.degree() % 2 == 0)
    throw std::invalid_argument("D must be monic of odd degree, got " + D.to_string());
  if (!is_squarefree(D)) throw std::invalid_argument("D must be square-free, got " + D.to_string());
  return (D.degree() - 1) / 2;
}

inline LPolynomial complete_by_symmetry(std::uint32_t q, int g, const std::vector<std::int64_t>& low) {
  LPolynomial L{q, g, std::vector<BigInt>(2 * g + 1)};
  for (int n = 0; n <= g; ++n) {
    L.coeffs[n] = low[n];
    L.coeffs[2 * g - n] = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(g - n)) * low[n];
  }
  return L;
}

/// Recover c_1..c_g from a_1..a_g via n c_n = sum_{r=1}^{n} a_r c_{n-r}.
inline std::vector<std::int64_t> newton_from_traces(const std::vector<std::int64_t>& a, int g) {
  std::vector<std::int64_t> c(g + 1, 0);
  c[0] = 1;
  for (int n = 1; n <= g; ++n) {
    std::int64_t s = 0;
    for (int r = 1; r <= n; ++r) s += a[r] * c[n - r];
    if (s % n != 0) throw std::logic_error("point-count recursion produced a non-integer coefficient");
    c[n] = s / n;
  }
  return c;
}

}  // namespace detail

/// chi_D(f) for every monic f of degree <= sieve.max_degree(), indexed by
/// global monic index: Jacobi symbols at the irreducibles, products elsewhere.
inline void character_values(const FqPoly& D, const MonicSieve& sieve, std::vector<std::int8_t>& out) {
  const auto& F = sieve.field();
  out.assign(sieve.size(), 0);
  out[0] = 1;
  std::vector<Residue> p;
  for (std::uint32_t f = 1; f < sieve.size(); ++f) {
    if (sieve.is_prime(f)) {
      FqPoly P = sieve.poly(f);
      out[f] = static_cast<std::int8_t>(detail::jacobi_raw(D.coeffs(), P.coeffs(), F));
    } else {
      out[f] = static_cast<std::int8_t>(out[sieve.prime_factor(f)] * out[sieve.cofactor(f)]);
    }
  }
}

/// c_n = sum_{f in M_n} chi_D(f) for n = 0..nmax (nmax <= sieve degree).
inline std::vector<std::int64_t> charsum_coefficients(const FqPoly& D, const MonicSieve& sieve, int nmax,
                                                      std::vector<std::int8_t>& scratch) {
  if (nmax > sieve.max_degree()) throw std::invalid_argument("charsum_coefficients: sieve too small");
  character_values(D, sieve, scratch);
  std::vector<std::int64_t> c(nmax + 1, 0);
  for (int n = 0; n <= nmax; ++n)
    for (std::uint64_t f = sieve.offset(n); f < sieve.offset(n + 1); ++f) c[n] += scratch[f];
  return c;
}

/// L-polynomial by direct character sums over M_n, n <= 2g, with the
/// degree bound c_{2g+1} = c_{2g+2} = 0 asserted.
inline LPolynomial l_coeffs_charsum(const FqPoly& D, const MonicSieve& sieve) {
  const int g = detail::genus_of(D);
  D.field().require_one_mod_four();
  std::vector<std::int8_t> scratch;
  auto c = charsum_coefficients(D, sieve, 2 * g + 2, scratch);
  if (c[2 * g + 1] != 0 || c[2 * g + 2] != 0)
    throw std::logic_error("character sums above degree 2g do not vanish for D = " + D.to_string());
  LPolynomial L{D.q(), g, std::vector<BigInt>(2 * g + 1)};
  for (int n = 0; n <= 2 * g; ++n) L.coeffs[n] = c[n];
  return L;
}

inline LPolynomial l_coeffs_charsum(const FqPoly& D) {
  const int g = detail::genus_of(D);
  MonicSieve sieve(D.field(), 2 * g + 2);
  return l_coeffs_charsum(D, sieve);
}

/// Tables for counting points of y^2 = D(x) over F_{q^r}, r = 1..g: the
/// quadratic character of each extension and the powers x^j, j <= 2g+1, of
/// every element, stored as coefficient vectors.
class PointCounter {
 public:
  PointCounter(const FieldParams& F, int g) : F_(F), g_(g) {
    F.require_one_mod_four();
    if (g < 0) throw std::invalid_argument("PointCounter: negative genus");
    const int deg = 2 * g + 1;
    for (int r = 1; r <= g; ++r) {
      Level L{ExtField(F, r), {}, {}};
      L.chi = L.field.character_table();
      const std::uint64_t n = L.field.size();
      L.powers.assign(n * deg * r, 0);
      for (std::uint64_t x = 0; x < n; ++x) {
        auto xe = L.field.element(x);
        auto p = xe;
        for (int j = 1; j <= deg; ++j) {
          std::copy(p.begin(), p.end(), L.powers.begin() + static_cast<std::ptrdiff_t>((x * deg + (j - 1)) * r));
          p = L.field.mul(p, xe);
        }
      }
      levels_.push_back(std::move(L));
    }
  }

  const FieldParams& field() const { return F_; }
  int genus() const { return g_; }

  /// a_r = sum_{x in F_{q^r}} chi(D(x)), r = 1..g (index 0 unused).
  std::vector<std::int64_t> traces(const FqPoly& D) const {
    if (D.degree() != 2 * g_ + 1) throw std::invalid_argument("PointCounter: degree mismatch");
    std::vector<std::int64_t> a(g_ + 1, 0);
    const int deg = 2 * g_ + 1;
    for (int r = 1; r <= g_; ++r) {
      const auto& L = levels_[r - 1];
      const std::uint64_t n = L.field.size();
      std::vector<Residue> v(r);
      for (std::uint64_t x = 0; x < n; ++x) {
        std::fill(v.begin(), v.end(), 0);
        v[0] = D.coeff(0);
        for (int j = 1; j <= deg; ++j) {
          const Residue dj = D.coeff(static_cast<std::size_t>(j));
          if (!dj) continue;
          const Residue* pw = &L.powers[(x * deg + (j - 1)) * r];
          for (int i = 0; i < r; ++i) v[i] = F_.add(v[i], F_.mul(dj, pw[i]));
        }
        a[r] += L.chi[L.field.index_of(v)];
      }
    }
    return a;
  }

  /// Incremental evaluation over a block of q consecutive D in enumeration
  /// order (same coefficients except the constant term). Keeps, for every
  /// extension element x, the value of D(x) - d_0 as (index with the
  /// constant coordinate cleared, constant coordinate).
  class Block {
   public:
    explicit Block(const PointCounter& pc) : pc_(pc) {
      for (const auto& L : pc.levels_) {
        const std::uint64_t n = L.field.size();
        const int r = L.field.degree();
        vals_.emplace_back(n * r, 0);
      }
      digits_.assign(2 * pc.g_ + 2, 0);
      digits_[2 * pc.g_ + 1] = 1;
      add_digit(2 * pc.g_ + 1, 1);
      rebuild_indices();
    }

    /// Set the non-constant coefficients d_1..d_{2g} (d_{2g+1} = 1).
    void set_high(const std::vector<Residue>& high) {
      for (int j = 1; j <= 2 * pc_.g_; ++j) {
        const Residue nd = high[j];
        if (nd != digits_[j]) {
          add_digit(j, pc_.F_.sub(nd, digits_[j]));
          digits_[j] = nd;
        }
      }
      rebuild_indices();
    }

    /// traces[t][r] for D with constant term t = 0..q-1.
    void traces(std::vector<std::vector<std::int64_t>>& out) const {
      const std::uint32_t q = pc_.F_.q();
      out.assign(q, std::vector<std::int64_t>(pc_.g_ + 1, 0));
      std::vector<std::int64_t> acc(q);
      for (std::size_t l = 0; l < pc_.levels_.size(); ++l) {
        const auto& L = pc_.levels_[l];
        std::fill(acc.begin(), acc.end(), 0);
        const auto& hi = hi_[l];
        const auto& c0 = c0_[l];
        const std::int8_t* chi = L.chi.data();
        for (std::size_t x = 0; x < hi.size(); ++x) {
          const std::int8_t* row = chi + hi[x];
          const std::uint32_t b = c0[x];
          for (std::uint32_t t = 0; t + b < q; ++t) acc[t] += row[b + t];
          for (std::uint32_t t = q - b; t < q; ++t) acc[t] += row[b + t - q];
        }
        for (std::uint32_t t = 0; t < q; ++t) out[t][l + 1] = acc[t];
      }
    }

   private:
    void add_digit(int j, Residue delta) {
      const int deg = 2 * pc_.g_ + 1;
      for (std::size_t l = 0; l < pc_.levels_.size(); ++l) {
        const auto& L = pc_.levels_[l];
        const int r = L.field.degree();
        const std::uint64_t n = L.field.size();
        auto& v = vals_[l];
        for (std::uint64_t x = 0; x < n; ++x) {
          const Residue* pw = &L.powers[(x * deg + (j - 1)) * r];
          Residue* vx = &v[x * r];
          for (int i = 0; i < r; ++i) vx[i] = pc_.F_.add(vx[i], pc_.F_.mul(delta, pw[i]));
        }
      }
    }
    void rebuild_indices() {
      const std::uint32_t q = pc_.F_.q();
      hi_.resize(pc_.levels_.size());
      c0_.resize(pc_.levels_.size());
      for (std::size_t l = 0; l < pc_.levels_.size(); ++l) {
        const int r = pc_.levels_[l].field.degree();
        const std::uint64_t n = pc_.levels_[l].field.size();
        hi_[l].resize(n);
        c0_[l].resize(n);
        const auto& v = vals_[l];
        for (std::uint64_t x = 0; x < n; ++x) {
          std::uint32_t idx = 0;
          for (int i = r - 1; i >= 1; --i) idx = idx * q + v[x * r + i];
          hi_[l][x] = idx * q;
          c0_[l][x] = v[x * r];
        }
      }
    }

    const PointCounter& pc_;
    std::vector<std::vector<Residue>> vals_;
    std::vector<std::vector<std::uint32_t>> hi_, c0_;
    std::vector<Residue> digits_;
  };

 private:
  struct Level {
    ExtField field;
    std::vector<std::int8_t> chi;
    std::vector<Residue> powers;
  };
  FieldParams F_;
  int g_;
  std::vector<Level> levels_;
};

inline LPolynomial l_coeffs_pointcount(const FqPoly& D, const PointCounter& pc) {
  const int g = detail::genus_of(D);
  if (pc.genus() != g || pc.field().q() != D.q()) throw std::invalid_argument("PointCounter built for another (q, g)");
  auto a = pc.traces(D);
  return detail::complete_by_symmetry(D.q(), g, detail::newton_from_traces(a, g));
}

inline LPolynomial l_coeffs_pointcount(const FqPoly& D) {
  const int g = detail::genus_of(D);
  PointCounter pc(D.field(), g);
  return l_coeffs_pointcount(D, pc);
}

/// (a, b) of L(1/2) = (a + b sqrt q)/q^g from c_0..c_g alone, completing the
/// upper half by c_{2g-n} = q^{g-n} c_n. Machine-integer fast path; callers
/// guarantee 4^g q^g fits comfortably in 63 bits.
inline std::pair<std::int64_t, std::int64_t> central_value_from_half(std::uint32_t q, int g,
                                                                     const std::vector<std::int64_t>& c) {
  std::int64_t a = 0, b = 0;
  std::int64_t qp[64];
  qp[0] = 1;
  for (int i = 1; i <= g; ++i) qp[i] = qp[i - 1] * q;
  for (int n = 0; n <= 2 * g; ++n) {
    const std::int64_t cn = n <= g ? c[n] : qp[n - g] * c[2 * g - n];
    if (n % 2 == 0)
      a += cn * qp[(2 * g - n) / 2];
    else
      b += cn * qp[(2 * g - n - 1) / 2];
  }
  return {a, b};
}

/// Numerator pair (a, b) with L(1/2) = (a + b sqrt q) / q^g.
inline std::pair<BigInt, BigInt> central_value_numerators(const LPolynomial& L) {
  BigInt a = 0, b = 0;
  const int g = L.g;
  for (int n = 0; n <= 2 * g; ++n) {
    if (n % 2 == 0)
      a += L.coeffs[n] * boost::multiprecision::pow(BigInt(L.q), static_cast<unsigned>((2 * g - n) / 2));
    else
      b += L.coeffs[n] * boost::multiprecision::pow(BigInt(L.q), static_cast<unsigned>((2 * g - n - 1) / 2));
  }
  return {a, b};
}

/// L(1/2, chi_D) = L(q^{-1/2}) exactly.
inline QuadValue l_value_half(const LPolynomial& L) {
  auto [a, b] = central_value_numerators(L);
  return QuadValue(L.q, a, b, static_cast<std::uint32_t>(L.g));
}

/// Right-hand side of the exact functional equation for L(1/2)^k:
/// sum over f in M_{<=kg} plus sum over M_{<=kg-1} of chi_D(f) d_k(f)/sqrt|f|.
inline QuadValue afe_value(const FqPoly& D, int k, const MonicSieve& sieve, const std::vector<std::uint32_t>& dk) {
  const int g = detail::genus_of(D);
  if (k < 1) throw std::invalid_argument("afe_value: k must be >= 1");
  const int N = k * g;
  if (sieve.max_degree() < N) throw std::invalid_argument("afe_value: sieve too small");
  std::vector<std::int8_t> chi;
  character_values(D, sieve, chi);
  const std::uint32_t q = D.q();
  const std::uint32_t E = static_cast<std::uint32_t>((N + 1) / 2);
  BigInt A = 0, B = 0;
  for (int n = 0; n <= N; ++n) {
    std::int64_t T = 0;
    for (std::uint64_t f = sieve.offset(n); f < sieve.offset(n + 1); ++f) T += chi[f] * static_cast<std::int64_t>(dk[f]);
    const int mult = n <= N - 1 ? 2 : 1;
    if (n % 2 == 0)
      A += BigInt(mult * T) * QuadValue::pow_q(q, E - n / 2);
    else
      B += BigInt(mult * T) * QuadValue::pow_q(q, E - (n + 1) / 2);
  }
  return QuadValue(q, A, B, E);
}

inline QuadValue afe_value(const FqPoly& D, int k) {
  const int g = detail::genus_of(D);
  MonicSieve sieve(D.field(), std::max(k * g, 0));
  return afe_value(D, k, sieve, sieve.divisor_counts(k));
}

/// Max over the roots u_i of L of | |u_i| sqrt(q) - 1 |, via Aberth iteration
/// in 50-digit arithmetic on the rescaled polynomial p(v) = L(v / sqrt q).
inline double check_rh_roots(const LPolynomial& L) {
  using R = boost::multiprecision::cpp_bin_float_50;
  struct C {
    R re, im;
    C operator+(const C& o) const { return {re + o.re, im + o.im}; }
    C operator-(const C& o) const { return {re - o.re, im - o.im}; }
    C operator*(const C& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    C operator/(const C& o) const {
      R den = o.re * o.re + o.im * o.im;
      return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
    }
    R abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
  };
  const int n = static_cast<int>(L.coeffs.size()) - 1;
  if (n < 1) throw std::invalid_argument("check_rh_roots: need g >= 1");
  if (L.coeffs[n] == 0) throw std::invalid_argument("check_rh_roots: vanishing leading coefficient");
  const R sq = boost::multiprecision::sqrt(R(L.q));
  std::vector<R> p(n + 1);
  R scale = 1;
  for (int i = 0; i <= n; ++i) {
    p[i] = R(L.coeffs[i]) / scale;
    scale *= sq;
  }
  auto eval = [&](const C& z, C& val, C& der) {
    val = {p[n], 0};
    der = {0, 0};
    for (int i = n - 1; i >= 0; --i) {
      der = der * z + val;
      val = val * z + C{p[i], 0};
    }
  };
  std::vector<C> z(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    double ang = 2 * pi * (i + 0.25) / n + 0.4;
    z[i] = {R(1.1 * std::cos(ang)), R(1.1 * std::sin(ang))};
  }
  const R tol = R("1e-40");
  bool converged = false;
  for (int it = 0; it < 2000 && !converged; ++it) {
    R maxstep = 0;
    for (int i = 0; i < n; ++i) {
      C val, der;
      eval(z[i], val, der);
      if (val.abs() == 0) continue;
      C w = val / der;
      C s{0, 0};
      for (int j = 0; j < n; ++j)
        if (j != i) s = s + C{1, 0} / (z[i] - z[j]);
      C step = w / (C{1, 0} - w * s);
      z[i] = z[i] - step;
      maxstep = std::max(maxstep, step.abs());
    }
    converged = maxstep < tol;
  }
  if (!converged) {
    // Multiple roots converge linearly; accept when residuals are tiny.
    for (int i = 0; i < n; ++i) {
      C val, der;
      eval(z[i], val, der);
      if (val.abs() > R("1e-30")) throw std::runtime_error("check_rh_roots: root finder did not converge");
    }
  }
  double dev = 0;
  for (const auto& r : z) dev = std::max(dev, static_cast<double>(boost::multiprecision::abs(r.abs() - R(1))));
  return dev;
}

}  // namespace ffm

#endif  // FFMOMENTS_LFUNCTION_HPP
