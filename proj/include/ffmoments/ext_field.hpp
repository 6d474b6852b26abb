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

#ifndef FFMOMENTS_EXT_FIELD_HPP
#define FFMOMENTS_EXT_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "poly.hpp"

namespace ffm {

/// F_{q^r} realised as F_q[x]/(m) with m the first monic irreducible of
/// degree r in enumeration order. Elements are coefficient vectors of length
/// r; they are also addressed by the integer index sum_i c_i q^i, which is
/// how lookup tables are keyed.
class ExtField {
 public:
  using Element = std::vector<Residue>;

  ExtField(const FieldParams& F, int r) : F_(F), r_(r) {
    if (r < 1) throw std::invalid_argument("ExtField: degree must be >= 1");
    size_ = ipow(F.q(), static_cast<unsigned>(r));
    if (size_ > (std::uint64_t{1} << 31)) throw std::invalid_argument("ExtField: q^r too large for table indexing");
    if (r == 1) {
      modulus_ = FqPoly::x(F);
    } else {
      for (std::uint64_t i = 0;; ++i) {
        FqPoly m = monic_from_index(F, r, i);
        if (is_irreducible(m)) {
          modulus_ = m;
          break;
        }
      }
    }
  }

  const FieldParams& base() const { return F_; }
  int degree() const { return r_; }
  std::uint64_t size() const { return size_; }
  const FqPoly& modulus() const { return modulus_; }

  std::uint32_t index_of(const Element& a) const {
    check(a);
    std::uint64_t idx = 0;
    for (int i = r_ - 1; i >= 0; --i) idx = idx * F_.q() + a[i];
    return static_cast<std::uint32_t>(idx);
  }
  Element element(std::uint64_t idx) const {
    Element a(r_);
    for (int i = 0; i < r_; ++i) {
      a[i] = static_cast<Residue>(idx % F_.q());
      idx /= F_.q();
    }
    return a;
  }
  Element from_base(Residue c) const {
    Element a(r_, 0);
    a[0] = c % F_.q();
    return a;
  }

  Element add(const Element& a, const Element& b) const {
    Element c(r_);
    for (int i = 0; i < r_; ++i) c[i] = F_.add(a[i], b[i]);
    return c;
  }

  Element mul(const Element& a, const Element& b) const {
    std::vector<std::uint64_t> t(2 * r_ - 1, 0);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < r_; ++j) t[i + j] += std::uint64_t{a[i]} * b[j];
    const auto& m = modulus_.coeffs();
    const std::uint64_t q = F_.q();
    for (int k = 2 * r_ - 2; k >= r_; --k) {
      std::uint64_t c = t[k] % q;
      if (c == 0) continue;
      // x^r = -(m_0 + ... + m_{r-1} x^{r-1})
      for (int j = 0; j < r_; ++j) t[k - r_ + j] += (q - c) * m[j];
    }
    Element out(r_);
    for (int i = 0; i < r_; ++i) out[i] = static_cast<Residue>(t[i] % q);
    return out;
  }

  Element pow(Element a, std::uint64_t e) const {
    Element r = from_base(1);
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }

  /// Quadratic character of F_{q^r}. Computed through the norm to F_q:
  /// a^((q^r-1)/2) = N(a)^((q-1)/2) with N(a) = a^(1+q+...+q^(r-1)).
  int quadratic_character(const Element& a) const {
    check(a);
    bool zero = true;
    for (auto c : a) zero = zero && c == 0;
    if (zero) return 0;
    Element norm = a, frob = a;
    for (int i = 1; i < r_; ++i) {
      frob = pow(frob, F_.q());
      norm = mul(norm, frob);
    }
    for (int i = 1; i < r_; ++i)
      if (norm[i] != 0) throw std::logic_error("ExtField: norm left the base field");
    return F_.legendre(norm[0]);
  }

  /// Polynomial representative of degree < r; anything else is not a reduced element.
  int quadratic_character(const FqPoly& a) const {
    if (a.q() != F_.q()) throw std::invalid_argument("ExtField: element over a different base field");
    if (a.degree() >= r_) throw std::invalid_argument("ExtField: element not reduced mod the modulus");
    Element e(r_, 0);
    for (int i = 0; i <= a.degree(); ++i) e[i] = a.coeff(i);
    return quadratic_character(e);
  }

  /// chi[idx] for every element index, built by squaring every element.
  std::vector<std::int8_t> character_table() const {
    std::vector<std::int8_t> chi(size_, -1);
    chi[0] = 0;
    for (std::uint64_t i = 1; i < size_; ++i) {
      Element a = element(i);
      chi[index_of(mul(a, a))] = 1;
    }
    return chi;
  }

 private:
  void check(const Element& a) const {
    if (static_cast<int>(a.size()) != r_) throw std::invalid_argument("ExtField: element has wrong length");
    for (auto c : a)
      if (c >= F_.q()) throw std::invalid_argument("ExtField: element coefficient not reduced mod q");
  }

  FieldParams F_;
  int r_;
  std::uint64_t size_ = 0;
  FqPoly modulus_;
};

inline int ext_quadratic_character(const ExtField& E, const ExtField::Element& a) {
  return E.quadratic_character(a);
}
inline int ext_quadratic_character(const ExtField& E, const FqPoly& a) { return E.quadratic_character(a); }

}  // namespace ffm

#endif  // FFMOMENTS_EXT_FIELD_HPP
