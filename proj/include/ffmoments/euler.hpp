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

#ifndef FFMOMENTS_EULER_HPP
#define FFMOMENTS_EULER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"
#include "jet.hpp"
#include "real.hpp"

namespace ffm {

/// Raised when a truncated product or sum does not settle to the requested
/// relative tolerance before its degree cap.
class CertificateFailure : public Error {
 public:
  using Error::Error;
};

struct Certificate {
  int degree = 0;        ///< highest prime degree included in the value
  double change = 0;     ///< relative change between degree-2 and degree
  double tail = 0;       ///< geometric extrapolation of the omitted terms
  bool passed = false;
};

template <class T>
struct Certified {
  T value;
  Certificate cert;
};

enum class Aggregate { product, sum };

struct EulerOptions {
  int max_degree = 0;        ///< 0: adaptive from the default start; otherwise fixed
  double tolerance = 1e-12;
  int sum_degree_cap = 4000;
  /// When false, a fixed-degree evaluation returns its value with
  /// cert.passed = false instead of throwing.
  bool require_certificate = true;
};

/// Starting truncation degree ceil(40 / log2 q), at least 4.
inline int default_euler_degree(std::uint64_t q) {
  const int n = static_cast<int>(std::ceil(40.0 / std::log2(static_cast<double>(q))));
  return std::max(4, n);
}

/// Log-aggregated products multiply each log factor by pi_q(d) ~ q^d / d, so
/// rounding in the factor is amplified by q^d; q^N <= 1e60 keeps that at
/// 1e-40 with 100-digit reals.
inline int product_degree_cap(std::uint64_t q) {
  return static_cast<int>(std::floor(60.0 / std::log10(static_cast<double>(q))));
}

namespace detail {

inline double magnitude(const Real& x) { return static_cast<double>(abs(x)); }
inline double magnitude(const Jet<Real>& j) {
  double m = 0;
  for (const auto& c : j.coeffs()) m = std::max(m, static_cast<double>(abs(c)));
  return m;
}
inline double magnitude(const BiJet<Real>& b) {
  double m = 0;
  for (int k = 0; k <= b.order(); ++k)
    for (const auto& c : b.component(k)) m = std::max(m, static_cast<double>(abs(c)));
  return m;
}

inline double relative_change(const Real& a, const Real& b) {
  const Real scale = abs(b);
  if (scale == 0) return static_cast<double>(abs(a));
  return static_cast<double>(abs(a - b) / scale);
}
/// Coefficientwise, each measured against max(|b_k|, |b_0|) so that
/// vanishing derivatives do not demand absolute zero.
inline double relative_change(const Jet<Real>& a, const Jet<Real>& b) {
  double worst = 0;
  const Real c0 = abs(b[0]);
  for (int k = 0; k <= b.order(); ++k) {
    Real scale = std::max(abs(b[k]), c0);
    Real d = abs(a[k] - b[k]);
    worst = std::max(worst, static_cast<double>(scale == 0 ? d : d / scale));
  }
  return worst;
}
inline double relative_change(const BiJet<Real>& a, const BiJet<Real>& b) {
  double worst = 0;
  const Real c0 = abs(b.coeff(0, 0));
  for (int k = 0; k <= b.order(); ++k) {
    for (int i = 0; i <= k; ++i) {
      Real scale = std::max(abs(b.component(k)[i]), c0);
      Real d = abs(a.component(k)[i] - b.component(k)[i]);
      worst = std::max(worst, static_cast<double>(scale == 0 ? d : d / scale));
    }
  }
  return worst;
}

inline bool finite(const Real& x) { return boost::multiprecision::isfinite(x); }
template <class J>
bool finite(const J& j) {
  return std::isfinite(magnitude(j));
}

}  // namespace detail

/// Degree-aggregated evaluation of prod_P factor(P) (as exp of
/// sum_d pi_q(d) log factor_d) or of sum_P term(P) (as sum_d pi_q(d) term_d).
/// `term(d, P)` receives |P| = q^d and returns the per-prime log factor or
/// summand; T is Real, Jet<Real> or BiJet<Real>.
///
/// Adaptive mode starts at default_euler_degree(q) and extends by 2 until the
/// values at N and N+2 agree to the tolerance. A fixed max_degree evaluates
/// exactly that truncation and certifies it against max_degree - 2.
template <class T, class Term>
Certified<T> euler_eval(std::uint64_t q, Term&& term, Aggregate kind, const EulerOptions& opt = {}) {
  PrimeCountTable pi(q);
  const bool fixed = opt.max_degree > 0;
  int target = fixed ? opt.max_degree : default_euler_degree(q) + 2;
  if (target < 4) throw std::invalid_argument("euler_eval: truncation degree must be >= 4");
  const int cap = fixed ? target : (kind == Aggregate::product ? product_degree_cap(q) : opt.sum_degree_cap);
  if (!fixed) target = std::min(target, cap);

  auto finish = [&](const T& s) -> T {
    if (kind == Aggregate::product) {
      using ffm::exp;
      using boost::multiprecision::exp;
      return exp(s);
    }
    return s;
  };

  std::vector<T> partial;  // partial[d-1] = sum through degree d
  std::vector<double> sizes;
  Real P = Real(1);
  auto extend_to = [&](int n) {
    for (int d = static_cast<int>(partial.size()) + 1; d <= n; ++d) {
      P *= Real(q);
      T t = term(d, P) * pi[d];
      if (!detail::finite(t)) {
        std::ostringstream os;
        os << "euler_eval: non-finite term at degree " << d;
        throw CertificateFailure(os.str());
      }
      sizes.push_back(detail::magnitude(t));
      partial.push_back(partial.empty() ? t : partial.back() + t);
    }
  };

  for (;;) {
    extend_to(target);
    const T hi = finish(partial[target - 1]);
    const T lo = finish(partial[target - 3]);
    Certificate cert;
    cert.degree = target;
    cert.change = detail::relative_change(lo, hi);
    const double a = sizes[target - 2], b = sizes[target - 1];
    const double rho = a > 0 ? b / a : 0.0;
    cert.tail = b == 0 ? 0.0 : (rho < 1 ? b * rho / (1 - rho) : std::numeric_limits<double>::infinity());
    cert.passed = cert.change < opt.tolerance;
    if (cert.passed || (fixed && !opt.require_certificate)) return {hi, cert};
    if (fixed || target + 2 > cap) {
      std::ostringstream os;
      os << "euler_eval: no convergence by degree " << target << " (relative change " << cert.change
         << ", tolerance " << opt.tolerance << ")";
      throw CertificateFailure(os.str());
    }
    target += 2;
  }
}

template <class Term>
Certified<Real> euler_product(std::uint64_t q, Term&& log_factor, const EulerOptions& opt = {}) {
  return euler_eval<Real>(q, std::forward<Term>(log_factor), Aggregate::product, opt);
}
template <class Term>
Certified<Real> euler_sum(std::uint64_t q, Term&& summand, const EulerOptions& opt = {}) {
  return euler_eval<Real>(q, std::forward<Term>(summand), Aggregate::sum, opt);
}

/// x^n for n >= 0 by repeated squaring (works for Real and jets alike).
template <class T>
T power(T base, long n, T one) {
  T r = one;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}
inline Real power(const Real& base, long n) {
  if (n < 0) return Real(1) / power(base, -n, Real(1));
  return power(base, n, Real(1));
}

}  // namespace ffm

#endif  // FFMOMENTS_EULER_HPP
