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

#ifndef FFMOMENTS_JET_HPP
#define FFMOMENTS_JET_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ffm {

/// Truncated Taylor expansion sum_{k<=m} c_k t^k about a fixed center. All
/// arithmetic is exact to order m; the center is bookkeeping only.
template <class T>
class Jet {
 public:
  Jet() : c_(1, T(0)) {}
  explicit Jet(int order, T constant = T(0)) : c_(static_cast<std::size_t>(order) + 1, T(0)) {
    if (order < 0) throw std::invalid_argument("Jet: negative order");
    c_[0] = constant;
  }

  /// The identity function t -> center + t.
  static Jet variable(const T& center, int order) {
    Jet j(order, center);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_[k]; }
  T& operator[](int k) { return c_[k]; }
  const std::vector<T>& coeffs() const { return c_; }

  /// k-th derivative at the center: k! c_k.
  T derivative(int k) const {
    T f = T(1);
    for (int i = 2; i <= k; ++i) f *= T(i);
    return f * c_[k];
  }

  Jet& operator+=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, const T& s) { return a += s; }
  friend Jet operator+(const T& s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, const T& s) { return a += T(-s); }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const T& s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, const T& s) { return a *= T(T(1) / s); }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check(b);
    Jet r(a.order());
    const int m = a.order();
    for (int i = 0; i <= m; ++i) {
      if (a.c_[i] == 0) continue;
      for (int j = 0; i + j <= m; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check(b);
    if (b.c_[0] == 0) throw std::domain_error("Jet: division by a jet with vanishing constant term");
    const int m = a.order();
    Jet r(m);
    const T inv = T(1) / b.c_[0];
    for (int k = 0; k <= m; ++k) {
      T s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s * inv;
    }
    return r;
  }
  friend Jet operator/(const T& s, const Jet& b) { return Jet(b.order(), s) / b; }

  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

 private:
  void check(const Jet& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("Jet: order mismatch");
  }
  std::vector<T> c_;
};

/// log(1 + E), from (1 + E) G' = E'.
template <class T>
Jet<T> log1p(const Jet<T>& e) {
  using std::log;
  const int m = e.order();
  Jet<T> g(m);
  const T f0 = T(1) + e[0];
  if (!(f0 > 0)) throw std::domain_error("Jet log: non-positive constant term");
  g[0] = log1p(e[0]);
  for (int k = 1; k <= m; ++k) {
    T s = T(k) * e[k];
    for (int j = 1; j < k; ++j) s -= T(j) * g[j] * e[k - j];
    g[k] = s / (T(k) * f0);
  }
  return g;
}

template <class T>
Jet<T> log(const Jet<T>& f) {
  using std::log;
  if (!(f[0] > 0)) throw std::domain_error("Jet log: non-positive constant term");
  Jet<T> e = f;
  e[0] = T(0);
  Jet<T> g = log1p(e / f[0]);
  g[0] = log(f[0]);
  return g;
}

/// exp F, from H' = F' H.
template <class T>
Jet<T> exp(const Jet<T>& f) {
  using std::exp;
  const int m = f.order();
  Jet<T> h(m);
  h[0] = exp(f[0]);
  for (int k = 1; k <= m; ++k) {
    T s = T(0);
    for (int j = 1; j <= k; ++j) s += T(j) * f[j] * h[k - j];
    h[k] = s / T(k);
  }
  return h;
}

/// Integer power, negative exponents through division.
template <class T>
Jet<T> powi(Jet<T> base, long n) {
  if (n < 0) return T(1) / powi(base, -n);
  Jet<T> r(base.order(), T(1));
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

/// Bivariate expansion truncated at total degree m, stored by homogeneous
/// components: comp[k][i] is the coefficient of x^i y^(k-i).
template <class T>
class BiJet {
 public:
  BiJet() : BiJet(0) {}
  explicit BiJet(int order, T constant = T(0)) : m_(order), comp_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("BiJet: negative order");
    for (int k = 0; k <= m_; ++k) comp_[k].assign(k + 1, T(0));
    comp_[0][0] = constant;
  }
  /// x -> cx + x (which = 0) or y -> cy + y (which = 1).
  static BiJet variable(int which, const T& center, int order) {
    BiJet b(order, center);
    if (order >= 1) b.comp_[1][which == 0 ? 1 : 0] = T(1);
    return b;
  }

  int order() const { return m_; }
  /// Coefficient of x^i y^j.
  const T& coeff(int i, int j) const { return comp_[i + j][i]; }
  T& coeff(int i, int j) { return comp_[i + j][i]; }
  /// d^i/dx^i d^j/dy^j at the center.
  T partial(int i, int j) const {
    T f = T(1);
    for (int a = 2; a <= i; ++a) f *= T(a);
    for (int a = 2; a <= j; ++a) f *= T(a);
    return f * coeff(i, j);
  }

  BiJet& operator+=(const BiJet& o) {
    check(o);
    for (int k = 0; k <= m_; ++k)
      for (int i = 0; i <= k; ++i) comp_[k][i] += o.comp_[k][i];
    return *this;
  }
  BiJet& operator-=(const BiJet& o) {
    check(o);
    for (int k = 0; k <= m_; ++k)
      for (int i = 0; i <= k; ++i) comp_[k][i] -= o.comp_[k][i];
    return *this;
  }
  BiJet& operator*=(const T& s) {
    for (auto& c : comp_)
      for (auto& x : c) x *= s;
    return *this;
  }
  BiJet& operator+=(const T& s) {
    comp_[0][0] += s;
    return *this;
  }
  friend BiJet operator+(BiJet a, const BiJet& b) { return a += b; }
  friend BiJet operator-(BiJet a, const BiJet& b) { return a -= b; }
  friend BiJet operator+(BiJet a, const T& s) { return a += s; }
  friend BiJet operator+(const T& s, BiJet a) { return a += s; }
  friend BiJet operator-(BiJet a, const T& s) { return a += T(-s); }
  friend BiJet operator-(const T& s, const BiJet& a) { return (-a) + s; }
  friend BiJet operator*(BiJet a, const T& s) { return a *= s; }
  friend BiJet operator*(const T& s, BiJet a) { return a *= s; }
  friend BiJet operator/(BiJet a, const T& s) { return a *= T(T(1) / s); }
  friend BiJet operator-(BiJet a) { return a *= T(-1); }

  friend BiJet operator*(const BiJet& a, const BiJet& b) {
    a.check(b);
    BiJet r(a.m_);
    for (int ka = 0; ka <= a.m_; ++ka)
      for (int kb = 0; ka + kb <= a.m_; ++kb) r.add_product(ka + kb, a.comp_[ka], b.comp_[kb], T(1));
    return r;
  }
  BiJet& operator*=(const BiJet& o) { return *this = *this * o; }

  friend BiJet operator/(const BiJet& a, const BiJet& b) {
    a.check(b);
    const T b0 = b.comp_[0][0];
    if (b0 == 0) throw std::domain_error("BiJet: division by a jet with vanishing constant term");
    BiJet r(a.m_);
    for (int k = 0; k <= a.m_; ++k) {
      std::vector<T> s = a.comp_[k];
      for (int j = 1; j <= k; ++j) sub_product(s, b.comp_[j], r.comp_[k - j]);
      for (auto& x : s) x /= b0;
      r.comp_[k] = std::move(s);
    }
    return r;
  }
  friend BiJet operator/(const T& s, const BiJet& b) { return BiJet(b.m_, s) / b; }

  /// Homogeneous component k as coefficients of x^i y^(k-i).
  const std::vector<T>& component(int k) const { return comp_[k]; }
  std::vector<T>& component(int k) { return comp_[k]; }

  /// out_k += s * a * b for homogeneous a (degree i) and b (degree k - i).
  void add_product(int k, const std::vector<T>& a, const std::vector<T>& b, const T& s) {
    const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    for (int i = 0; i <= da; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j <= db; ++j) comp_[k][i + j] += s * a[i] * b[j];
    }
  }
  static void sub_product(std::vector<T>& out, const std::vector<T>& a, const std::vector<T>& b) {
    const int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    for (int i = 0; i <= da; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j <= db; ++j) out[i + j] -= a[i] * b[j];
    }
  }

 private:
  void check(const BiJet& o) const {
    if (o.m_ != m_) throw std::invalid_argument("BiJet: order mismatch");
  }
  int m_;
  std::vector<std::vector<T>> comp_;
};

/// log(1 + E) by the Euler-operator recursion on homogeneous components:
/// k G_k (1 + E_0) = k E_k - sum_{j=1}^{k-1} j G_j E_{k-j}.
template <class T>
BiJet<T> log1p(const BiJet<T>& e) {
  const int m = e.order();
  BiJet<T> g(m);
  const T f0 = T(1) + e.component(0)[0];
  if (!(f0 > 0)) throw std::domain_error("BiJet log: non-positive constant term");
  g.component(0)[0] = log1p(e.component(0)[0]);
  for (int k = 1; k <= m; ++k) {
    std::vector<T> s = e.component(k);
    for (auto& x : s) x *= T(k);
    for (int j = 1; j < k; ++j) {
      std::vector<T> gj = g.component(j);
      for (auto& x : gj) x *= T(j);
      BiJet<T>::sub_product(s, gj, e.component(k - j));
    }
    for (auto& x : s) x /= T(k) * f0;
    g.component(k) = std::move(s);
  }
  return g;
}

template <class T>
BiJet<T> log(const BiJet<T>& f) {
  using std::log;
  const T f0 = f.component(0)[0];
  if (!(f0 > 0)) throw std::domain_error("BiJet log: non-positive constant term");
  BiJet<T> e = f / f0;
  e.component(0)[0] = T(0);
  BiJet<T> g = log1p(e);
  g.component(0)[0] = log(f0);
  return g;
}

/// exp F: k H_k = sum_{j=1}^{k} j F_j H_{k-j}.
template <class T>
BiJet<T> exp(const BiJet<T>& f) {
  using std::exp;
  const int m = f.order();
  BiJet<T> h(m);
  h.component(0)[0] = exp(f.component(0)[0]);
  for (int k = 1; k <= m; ++k) {
    for (int j = 1; j <= k; ++j) h.add_product(k, f.component(j), h.component(k - j), T(j) / T(k));
  }
  return h;
}

}  // namespace ffm

#endif  // FFMOMENTS_JET_HPP
