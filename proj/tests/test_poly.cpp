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

#include <random>

#include "ffmoments/ext_field.hpp"
#include "ffmoments/poly.hpp"

using namespace ffm;

namespace {

FqPoly P(const FieldParams& F, const char* s) { return FqPoly::parse(F, s); }

FqPoly random_poly(const FieldParams& F, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> dist(0, F.q() - 1);
  std::vector<Residue> c(deg + 1);
  for (auto& x : c) x = dist(rng);
  if (deg >= 0 && c[deg] == 0) c[deg] = 1;
  return FqPoly(F, std::move(c));
}

}  // namespace

TEST(Field, RejectsBadModulus) {
  EXPECT_THROW(FieldParams(4), std::invalid_argument);
  EXPECT_THROW(FieldParams(9), std::invalid_argument);
  EXPECT_THROW(FieldParams(1u << 15), std::invalid_argument);
  EXPECT_NO_THROW(FieldParams(7));
  EXPECT_THROW(FieldParams(7).require_one_mod_four(), std::invalid_argument);
  EXPECT_NO_THROW(FieldParams(13).require_one_mod_four());
}

TEST(Field, InverseAndLegendre) {
  FieldParams F(13);
  for (Residue a = 1; a < 13; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  EXPECT_EQ(F.legendre(0), 0);
  EXPECT_EQ(F.legendre(4), 1);
  EXPECT_EQ(F.legendre(2), -1);
  EXPECT_THROW(F.inv(0), std::domain_error);
}

TEST(Poly, CanonicalForm) {
  FieldParams F(5);
  FqPoly a(F, {1, 2, 0, 0});
  EXPECT_EQ(a.degree(), 1);
  EXPECT_EQ(a.to_string(), "1,2");
  EXPECT_EQ(FqPoly::zero(F).degree(), -1);
  EXPECT_EQ(FqPoly::zero(F).to_string(), "0");
  EXPECT_EQ(FqPoly(F, {7, 5}).to_string(), "2");
  EXPECT_TRUE(P(F, "x^3+2*x+1").is_monic());
}

TEST(Poly, ParseForms) {
  FieldParams F(5);
  EXPECT_EQ(P(F, "1,2,0,1"), P(F, "x^3+2*x+1"));
  EXPECT_EQ(P(F, "x^2 - 1"), FqPoly(F, {4, 0, 1}));
  EXPECT_EQ(P(F, "3x^2+x"), FqPoly(F, {0, 1, 3}));
  EXPECT_EQ(P(F, "-x"), FqPoly(F, {0, 4}));
  EXPECT_EQ(P(F, "7"), FqPoly(F, {2}));
  EXPECT_EQ(P(F, "0"), FqPoly::zero(F));
  EXPECT_THROW(P(F, "x^"), std::invalid_argument);
  EXPECT_THROW(P(F, "1,,2"), std::invalid_argument);
  EXPECT_THROW(P(F, "y+1"), std::invalid_argument);
}

TEST(Poly, RoundTripRandom) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {5u, 13u}) {
    FieldParams F(q);
    for (int i = 0; i < 2000; ++i) {
      FqPoly f = random_poly(F, static_cast<int>(rng() % 12) - 1, rng);
      EXPECT_EQ(FqPoly::parse(F, f.to_string()), f);
    }
  }
}

TEST(Poly, DivmodExamples) {
  FieldParams F(5);
  auto [q1, r1] = poly_divmod(P(F, "x^2+1"), P(F, "x"));
  EXPECT_EQ(q1, P(F, "x"));
  EXPECT_EQ(r1, P(F, "1"));
  FqPoly f = P(F, "x^4+3x+2");
  auto [q2, r2] = poly_divmod(f, FqPoly::one(F));
  EXPECT_EQ(q2, f);
  EXPECT_TRUE(r2.is_zero());
  auto [q3, r3] = poly_divmod(P(F, "x^3+2x+1"), P(F, "x^2+3"));
  EXPECT_EQ(q3, P(F, "x"));
  EXPECT_EQ(r3, P(F, "4x+1"));
  EXPECT_THROW(poly_divmod(f, FqPoly::zero(F)), std::domain_error);
}

TEST(Poly, DivmodIdentityRandom) {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {5u, 13u}) {
    FieldParams F(q);
    for (int i = 0; i < 10000; ++i) {
      FqPoly a = random_poly(F, static_cast<int>(rng() % 10) - 1, rng);
      FqPoly b = random_poly(F, static_cast<int>(rng() % 6), rng);
      if (b.is_zero()) continue;
      auto [quot, rem] = poly_divmod(a, b);
      ASSERT_EQ(quot * b + rem, a);
      ASSERT_LT(rem.degree(), b.degree());
    }
  }
}

TEST(Poly, GcdExamples) {
  FieldParams F(5);
  EXPECT_EQ(poly_gcd(P(F, "2x^2+4"), FqPoly::zero(F)), P(F, "x^2+2"));
  EXPECT_EQ(poly_gcd(P(F, "x^2-1"), P(F, "x-1")), P(F, "x+4"));
  EXPECT_EQ(poly_gcd(P(F, "x^3+2x+1"), P(F, "x^2+3")), FqPoly::one(F));
  EXPECT_THROW(poly_gcd(FqPoly::zero(F), FqPoly::zero(F)), std::domain_error);
}

TEST(Poly, Squarefree) {
  FieldParams F(5);
  EXPECT_FALSE(is_squarefree(P(F, "x^2")));
  EXPECT_TRUE(is_squarefree(P(F, "x^3+x")));
  EXPECT_EQ(P(F, "x^3+x"), P(F, "x") * P(F, "x+2") * P(F, "x+3"));
  // f' = 0 in characteristic 5
  EXPECT_FALSE(is_squarefree(P(F, "x^5+1")));
  EXPECT_TRUE(is_squarefree(P(F, "3")));
  EXPECT_THROW(is_squarefree(FqPoly::zero(F)), std::domain_error);
  auto linear = enumerate_monic(F, 1);
  EXPECT_EQ(std::count_if(linear.begin(), linear.end(), [](const FqPoly& f) { return is_squarefree(f); }), 5);
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t count = 0;
    for (const auto& f : enumerate_monic(F, n)) count += is_squarefree(f);
    EXPECT_EQ(count, ipow(5, n) - ipow(5, n - 1)) << "n=" << n;
  }
}

TEST(Poly, IrreducibleExamples) {
  FieldParams F(5);
  EXPECT_TRUE(is_irreducible(P(F, "x+3")));
  EXPECT_TRUE(is_irreducible(P(F, "x^2-2")));
  EXPECT_FALSE(is_irreducible(P(F, "x^2-4")));
  EXPECT_THROW(is_irreducible(P(F, "3")), std::domain_error);
  int count = 0;
  for (const auto& f : enumerate_monic(F, 2)) count += is_irreducible(f);
  EXPECT_EQ(count, 10);
}

TEST(Poly, IrreducibleAgreesWithTrialDivision) {
  FieldParams F(5);
  std::vector<FqPoly> primes;
  for (int d = 1; d <= 6; ++d) {
    std::vector<FqPoly> found;
    for (const auto& f : enumerate_monic(F, d)) {
      bool prime = true;
      for (const auto& p : primes) {
        if (2 * p.degree() > d) break;
        if ((f % p).is_zero()) {
          prime = false;
          break;
        }
      }
      ASSERT_EQ(is_irreducible(f), prime) << f;
      if (prime) found.push_back(f);
    }
    EXPECT_EQ(BigInt(found.size()), count_irreducibles(5, d));
    primes.insert(primes.end(), found.begin(), found.end());
  }
}

TEST(Poly, CountIrreducibles) {
  EXPECT_EQ(count_irreducibles(5, 1), 5);
  EXPECT_EQ(count_irreducibles(5, 2), 10);
  EXPECT_EQ(count_irreducibles(5, 3), 40);
  EXPECT_THROW(count_irreducibles(5, 0), std::invalid_argument);
  for (std::uint64_t q : {5u, 13u, 17u}) {
    for (int n = 1; n <= 12; ++n) {
      BigInt s = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += d * count_irreducibles(q, d);
      EXPECT_EQ(s, boost::multiprecision::pow(BigInt(q), n)) << q << " " << n;
    }
  }
}

TEST(Poly, Enumeration) {
  FieldParams F(5);
  auto r0 = enumerate_monic(F, 0);
  ASSERT_EQ(r0.size(), 1u);
  EXPECT_EQ(r0[0], FqPoly::one(F));
  auto r1 = enumerate_monic(F, 1);
  ASSERT_EQ(r1.size(), 5u);
  for (Residue a = 0; a < 5; ++a) EXPECT_EQ(r1[a], FqPoly(F, {a, 1}));
  EXPECT_EQ(enumerate_monic(F, 3).size(), 125u);
  // partitions tile the range in order
  auto r3 = enumerate_monic(F, 3);
  std::uint64_t next = 0;
  for (std::uint64_t k = 0; k < 7; ++k) {
    auto part = r3.partition(k, 7);
    EXPECT_EQ(part.begin_index(), next);
    for (const auto& f : part) EXPECT_EQ(index_in_degree(f), next++);
  }
  EXPECT_EQ(next, 125u);
  EXPECT_EQ(global_monic_index(FqPoly::one(F)), 0u);
  EXPECT_EQ(global_monic_index(P(F, "x")), 1u);
  EXPECT_EQ(global_monic_index(P(F, "x^2")), 6u);
}

TEST(Poly, FormalDerivativeAndEval) {
  FieldParams F(5);
  EXPECT_EQ(P(F, "x^3+2x+1").derivative(), P(F, "3x^2+2"));
  EXPECT_TRUE(P(F, "x^5").derivative().is_zero());
  EXPECT_EQ(P(F, "x^3+2x+1").eval(2), (8 + 4 + 1) % 5u);
}

TEST(ExtField, ModulusAndCharacterExamples) {
  FieldParams F(5);
  ExtField E(F, 2);
  EXPECT_EQ(E.size(), 25u);
  EXPECT_TRUE(is_irreducible(E.modulus()));
  EXPECT_EQ(E.modulus(), P(F, "x^2+2"));  // first irreducible in index order
  EXPECT_EQ(ext_quadratic_character(E, E.from_base(0)), 0);
  EXPECT_EQ(ext_quadratic_character(E, E.from_base(1)), 1);
  EXPECT_EQ(ext_quadratic_character(E, E.from_base(2)), 1);
  EXPECT_THROW(ext_quadratic_character(E, P(F, "x^2")), std::invalid_argument);
  EXPECT_THROW(ext_quadratic_character(E, ExtField::Element{5, 0}), std::invalid_argument);
}

TEST(ExtField, CharacterMultiplicativeAndMatchesTable) {
  std::mt19937_64 rng(3);
  for (auto [q, r] : {std::pair{5u, 1}, {5u, 2}, {5u, 3}, {13u, 2}}) {
    FieldParams F(q);
    ExtField E(F, r);
    auto table = E.character_table();
    int squares = 0;
    for (auto c : table) squares += c == 1;
    EXPECT_EQ(squares, static_cast<int>((E.size() - 1) / 2));
    for (int i = 0; i < 300; ++i) {
      auto a = E.element(rng() % E.size()), b = E.element(rng() % E.size());
      int ca = ext_quadratic_character(E, a), cb = ext_quadratic_character(E, b);
      EXPECT_EQ(ca * cb, ext_quadratic_character(E, E.mul(a, b)));
      EXPECT_EQ(ca, table[E.index_of(a)]);
    }
  }
}

TEST(ExtField, EulerCriterionByPower) {
  FieldParams F(5);
  ExtField E(F, 3);
  for (std::uint64_t i = 1; i < E.size(); i += 7) {
    auto a = E.element(i);
    auto p = E.pow(a, (E.size() - 1) / 2);
    int expect = p == E.from_base(1) ? 1 : -1;
    EXPECT_EQ(ext_quadratic_character(E, a), expect);
  }
}
