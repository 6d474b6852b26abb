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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "ffmoments/characters.hpp"

using namespace ffm;

namespace {

FqPoly P(const FieldParams& F, const char* s) { return FqPoly::parse(F, s); }

/// All polynomials (not only monic) of degree <= d, including zero.
std::vector<FqPoly> all_polys(const FieldParams& F, int d) {
  std::vector<FqPoly> out;
  const std::uint64_t n = ipow(F.q(), d + 1);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    std::vector<Residue> c(d + 1);
    std::uint64_t t = idx;
    for (auto& x : c) {
      x = static_cast<Residue>(t % F.q());
      t /= F.q();
    }
    out.emplace_back(F, std::move(c));
  }
  return out;
}

std::vector<FqPoly> monic_upto(const FieldParams& F, int lo, int hi) {
  std::vector<FqPoly> out;
  for (int d = lo; d <= hi; ++d)
    for (const auto& f : enumerate_monic(F, d)) out.push_back(f);
  return out;
}

}  // namespace

TEST(ResidueSymbol, Examples) {
  FieldParams F(5);
  FqPoly x = FqPoly::x(F);
  EXPECT_EQ(residue_symbol(x, x), 0);
  EXPECT_EQ(residue_symbol(P(F, "4"), x), 1);
  EXPECT_EQ(residue_symbol(P(F, "2"), x), -1);
  EXPECT_THROW(residue_symbol(P(F, "2"), P(F, "x^2-1")), std::invalid_argument);
  // a constant is a square modulo any even-degree prime
  EXPECT_EQ(residue_symbol(P(F, "2"), P(F, "x^2+2")), 1);
}

TEST(ResidueSymbol, MatchesEulerCriterionPower) {
  FieldParams F(5);
  for (const auto& p : monic_upto(F, 1, 3)) {
    if (!is_irreducible(p)) continue;
    const std::uint64_t e = (ipow(5, p.degree()) - 1) / 2;
    for (const auto& a : all_polys(F, 2)) {
      FqPoly r = powmod(a, e, p);
      int expect = r.is_zero() ? 0 : (r == FqPoly::one(F) ? 1 : -1);
      ASSERT_EQ(residue_symbol(a, p), expect) << a << " mod " << p;
    }
  }
}

TEST(Jacobi, TrivialCases) {
  FieldParams F(5);
  FqPoly B = P(F, "x^3+x+1");
  EXPECT_EQ(jacobi_symbol(B * P(F, "x+1"), B), 0);
  EXPECT_EQ(jacobi_symbol(P(F, "4"), B), 1);
  EXPECT_EQ(jacobi_symbol(P(F, "x"), P(F, "x^2")), 0);
  EXPECT_THROW(jacobi_symbol(P(F, "x"), P(F, "2x+1")), std::invalid_argument);
  EXPECT_THROW(jacobi_symbol(P(F, "x"), P(F, "1")), std::invalid_argument);
  FieldParams F7(7);
  EXPECT_THROW(jacobi_symbol(P(F7, "x"), P(F7, "x+1")), std::invalid_argument);
}

TEST(Jacobi, AgreesWithFactorizationOracle) {
  FieldParams F(5);
  auto As = all_polys(F, 3);
  auto Bs = monic_upto(F, 1, 3);
  std::map<std::uint64_t, std::vector<int>> symbol_table;  // prime index -> symbols over As
  for (const auto& B : Bs) {
    int expect_check = 0;
    auto fac = factor(B);
    for (const auto& [p, e] : fac) {
      auto key = global_monic_index(p);
      if (!symbol_table.count(key)) {
        std::vector<int> v;
        for (const auto& A : As) v.push_back(residue_symbol(A, p));
        symbol_table[key] = std::move(v);
      }
    }
    for (std::size_t i = 0; i < As.size(); ++i) {
      int expect = 1;
      for (const auto& [p, e] : fac)
        for (int k = 0; k < e; ++k) expect *= symbol_table[global_monic_index(p)][i];
      ASSERT_EQ(jacobi_symbol(As[i], B), expect) << As[i] << " / " << B;
      expect_check += expect != 0;
    }
    EXPECT_GT(expect_check, 0);
  }
}

TEST(Jacobi, ReciprocityExhaustive) {
  for (std::uint32_t q : {5u, 13u}) {
    FieldParams F(q);
    auto Ms = monic_upto(F, 1, 3);
    for (const auto& A : Ms)
      for (const auto& B : Ms) ASSERT_EQ(jacobi_symbol(A, B), jacobi_symbol(B, A)) << A << " " << B;
  }
}

TEST(Chi, TrivialModulusAndMultiplicativity) {
  FieldParams F(5);
  auto Ds = monic_upto(F, 3, 3);
  auto fs = monic_upto(F, 0, 2);
  for (const auto& D : Ds) {
    EXPECT_EQ(chi(D, FqPoly::one(F)), 1);
    for (const auto& f1 : fs)
      for (const auto& f2 : fs) ASSERT_EQ(chi(D, f1 * f2), chi(D, f1) * chi(D, f2));
  }
}

TEST(Chi, ZeroExactlyWhenNotCoprime) {
  FieldParams F(5);
  auto Ds = monic_upto(F, 1, 3);
  auto fs = monic_upto(F, 1, 3);
  for (const auto& D : Ds)
    for (const auto& f : fs) ASSERT_EQ(chi(D, f) == 0, poly_gcd(D, f).degree() > 0);
}

TEST(HayesE, Examples) {
  FieldParams F(5);
  FqPoly x = FqPoly::x(F);
  EXPECT_NEAR(std::abs(hayes_e(P(F, "x^2"), P(F, "x^2+1")) - 1.0), 0.0, 1e-15);
  Complex one = hayes_e(P(F, "3"), P(F, "x^2+1"));  // t_{1} = 0
  EXPECT_NEAR(one.real(), 1.0, 1e-15);
  EXPECT_NEAR(one.imag(), 0.0, 1e-15);
  Complex e2 = hayes_e(P(F, "2"), x);
  EXPECT_NEAR(e2.real(), std::cos(4 * std::numbers::pi / 5), 1e-15);
  EXPECT_NEAR(e2.imag(), std::sin(4 * std::numbers::pi / 5), 1e-15);
  EXPECT_THROW(hayes_e(x, P(F, "1")), std::invalid_argument);
  for (const auto& a : all_polys(F, 3)) EXPECT_NEAR(std::abs(hayes_e(a, P(F, "x^2+x+2"))), 1.0, 1e-14);
}

TEST(GaussSum, SpecialValues) {
  FieldParams F(5);
  FqPoly zero = FqPoly::zero(F);
  // f = (x+1)^2: phi(f) = 25 - 5
  Complex g = gauss_sum_bruteforce(zero, P(F, "x^2+2x+1"));
  EXPECT_NEAR(g.real(), 20.0, 1e-9);
  EXPECT_NEAR(g.imag(), 0.0, 1e-9);
  Complex g2 = gauss_sum_bruteforce(zero, P(F, "x^2+2"));
  EXPECT_NEAR(std::abs(g2), 0.0, 1e-9);
  // non-square modulus, real value
  for (const auto& V : monic_upto(F, 0, 2)) {
    Complex h = gauss_sum_bruteforce(V, P(F, "x^3+x+1"));
    EXPECT_LT(std::abs(h.imag()), 1e-6 * (1 + std::abs(h.real())));
  }
}

TEST(GaussSum, ClosedFormCases) {
  FieldParams F(5);
  FqPoly p = P(F, "x+1"), V1 = P(F, "x+3");
  // i = alpha + 1 even: -|P|^alpha
  EXPECT_NEAR(gauss_sum_closed(p * V1, p * p).real(), -5.0, 1e-12);
  EXPECT_NEAR(gauss_sum_bruteforce(p * V1, p * p).real(), -5.0, 1e-9);
  // i >= alpha + 2
  EXPECT_NEAR(gauss_sum_closed(V1, p * p * p).real(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum_bruteforce(V1, p * p * p)), 0.0, 1e-9);
  // inconsistent factorization
  EXPECT_THROW(gauss_sum_closed(V1, p * p, Factorization{{p, 1}}), std::invalid_argument);
  EXPECT_THROW(gauss_sum_closed(V1, p * p, Factorization{{p * p, 1}}), std::invalid_argument);
}

TEST(GaussSum, TableMatchesBruteforce) {
  FieldParams F(5);
  for (const auto& f : monic_upto(F, 1, 3)) {
    GaussSumTable G(f);
    for (const auto& V : all_polys(F, 2)) {
      Complex a = G(V), b = gauss_sum_bruteforce(V, f);
      ASSERT_NEAR(std::abs(a - b), 0.0, 1e-8) << V << " / " << f;
    }
  }
}

TEST(GaussSum, ClosedMatchesBruteforceSmallBox) {
  FieldParams F(5);
  for (const auto& f : monic_upto(F, 1, 3)) {
    GaussSumTable G(f);
    auto fac = factor(f);
    for (const auto& V : all_polys(F, 3)) {
      Complex brute = G(V), closed = gauss_sum_closed(V, f, fac);
      ASSERT_LT(std::abs(brute.imag()), 1e-6 * (1 + std::abs(brute.real())));
      ASSERT_NEAR(brute.real(), closed.real(), 1e-6 * (1 + std::abs(closed.real()))) << V << " / " << f;
    }
  }
}

TEST(GaussSum, MultiplicativeInModulus) {
  FieldParams F(13);
  FqPoly f = P(F, "x+2"), g = P(F, "x^2+x+6");
  ASSERT_EQ(poly_gcd(f, g), FqPoly::one(F));
  for (const auto& V : monic_upto(F, 0, 2)) {
    Complex lhs = gauss_sum_bruteforce(V, f * g);
    Complex rhs = gauss_sum_bruteforce(V, f) * gauss_sum_bruteforce(V, g);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-7);
  }
}

TEST(DivisorFn, Examples) {
  FieldParams F(5);
  FqPoly p = P(F, "x^2+2");
  EXPECT_EQ(divisor_fn(2, FqPoly::one(F)), 1u);
  EXPECT_EQ(divisor_fn(2, p * p), 3u);
  EXPECT_EQ(divisor_fn(3, p), 3u);
  EXPECT_EQ(divisor_fn(3, p * p), 6u);
  EXPECT_EQ(divisor_fn(1, p * p * P(F, "x")), 1u);
}

TEST(DivisorFn, MatchesPairCount) {
  FieldParams F(5);
  const int N = 5;
  const std::uint64_t total = monic_count_below(5, N + 1);
  std::vector<std::uint64_t> count(total, 0);
  for (int a = 0; a <= N; ++a)
    for (const auto& f1 : enumerate_monic(F, a))
      for (int b = 0; a + b <= N; ++b)
        for (const auto& f2 : enumerate_monic(F, b)) ++count[global_monic_index(f1 * f2)];
  for (int n = 0; n <= N; ++n)
    for (const auto& f : enumerate_monic(F, n)) ASSERT_EQ(count[global_monic_index(f)], divisor_fn(2, f)) << f;
}

TEST(Factor, RecoversPolynomial) {
  FieldParams F(5);
  for (const auto& f : monic_upto(F, 0, 5)) {
    auto fac = factor(f);
    EXPECT_NO_THROW(check_factorization(f, fac));
  }
}

TEST(Poisson, BothParitiesSmallBox) {
  FieldParams F(5);
  for (const auto& f : monic_upto(F, 1, 3))
    for (int m = 0; m <= 4; ++m) {
      auto [lhs, rhs] = poisson_sides(f, m);
      ASSERT_NEAR(lhs, rhs, 1e-6 * (1 + std::abs(lhs))) << f << " m=" << m;
    }
}
