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
#include <random>

#include "ffmoments/lfunction.hpp"
#include "ffmoments/moments.hpp"

using namespace ffm;

namespace {

FqPoly P(const FieldParams& F, const char* s) { return FqPoly::parse(F, s); }

LPolynomial make_L(std::uint32_t q, int g, std::vector<long> c) {
  LPolynomial L{q, g, {}};
  for (long x : c) L.coeffs.emplace_back(x);
  return L;
}

}  // namespace

TEST(QuadValue, NormalizationAndEquality) {
  QuadValue a(5, 25, 5, 2), b(5, 5, 1, 1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(QuadValue(5, 10, 0, 1), QuadValue(5, 2, 0, 0));
  EXPECT_EQ(QuadValue(5, 0, 0, 7).e(), 0u);
  EXPECT_EQ(QuadValue::inv_sqrt_power(5, 2), QuadValue(5, 1, 0, 1));
  // sqrt(5)^2 = 5
  QuadValue s(5, 0, 1, 0);
  EXPECT_EQ(s * s, QuadValue(5, 5));
  EXPECT_NEAR(QuadValue(5, 3, 2, 1).to_double(), (3 + 2 * std::sqrt(5.0)) / 5, 1e-15);
  EXPECT_THROW(QuadValue(5, 1) + QuadValue(13, 1), std::invalid_argument);
}

TEST(QuadValue, RingLawsRandomized) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  std::uniform_int_distribution<int> ed(0, 4);
  for (int i = 0; i < 500; ++i) {
    auto rnd = [&] {
      return QuadValue(13, dist(rng), dist(rng), static_cast<std::uint32_t>(ed(rng)));
    };
    QuadValue x = rnd(), y = rnd(), z = rnd();
    ASSERT_EQ((x + y) + z, x + (y + z));
    ASSERT_EQ((x * y) * z, x * (y * z));
    ASSERT_EQ(x * (y + z), x * y + x * z);
    ASSERT_EQ(x * y, y * x);
    ASSERT_EQ(x - x, QuadValue::zero(13));
    ASSERT_EQ(x.pow(3), x * x * x);
  }
}

TEST(LFunction, GenusZero) {
  FieldParams F(5);
  FqPoly D = P(F, "x+2");
  auto L1 = l_coeffs_charsum(D), L2 = l_coeffs_pointcount(D);
  ASSERT_EQ(L1.coeffs.size(), 1u);
  EXPECT_EQ(L1.coeffs[0], 1);
  EXPECT_EQ(L1, L2);
  EXPECT_EQ(l_value_half(L1), QuadValue::one(5));
  EXPECT_EQ(afe_value(D, 1), QuadValue::one(5));
}

TEST(LFunction, RejectsBadDiscriminants) {
  FieldParams F(5);
  EXPECT_THROW(l_coeffs_charsum(P(F, "x^2+2")), std::invalid_argument);
  EXPECT_THROW(l_coeffs_pointcount(P(F, "x^3")), std::invalid_argument);
  EXPECT_THROW(l_coeffs_pointcount(P(F, "2x^3+1")), std::invalid_argument);
  // degenerate: a square times a unit is never square-free
  EXPECT_THROW(l_coeffs_pointcount(P(F, "x") * P(F, "x+1") * P(F, "x+1")), std::invalid_argument);
}

TEST(LFunction, FirstCoefficientIsLegendreSum) {
  FieldParams F(5);
  for (const auto& D : enumerate_H(F, 3).collect()) {
    std::int64_t s = 0;
    for (Residue a = 0; a < 5; ++a) s += F.legendre(D.eval(F.neg(a)));
    auto L = l_coeffs_charsum(D);
    EXPECT_EQ(L.coeffs[1], s);
    EXPECT_EQ(l_coeffs_pointcount(D).coeffs[1], s);
  }
}

TEST(LFunction, HandExample) {
  FieldParams F(5);
  FqPoly D = P(F, "x^3+x");
  // x^3+x at x = 0..4: 0, 2, 0, 0, 3 -> legendre: 0, -1, 0, 0, -1
  auto L = l_coeffs_pointcount(D);
  EXPECT_EQ(L.coeffs[1], -2);
  EXPECT_EQ(L.coeffs[2], 5);
  EXPECT_EQ(L, l_coeffs_charsum(D));
  EXPECT_EQ(l_value_half(L), QuadValue(5, 10, -2, 1));
}

TEST(LFunction, DualRoutesAgreeGenusOneAndTwo) {
  FieldParams F(5);
  for (int g : {1, 2}) {
    MonicSieve sieve(F, 2 * g + 2);
    PointCounter pc(F, g);
    for (const auto& D : enumerate_H(F, 2 * g + 1).collect()) {
      auto a = l_coeffs_charsum(D, sieve), b = l_coeffs_pointcount(D, pc);
      ASSERT_EQ(a, b) << D;
      ASSERT_TRUE(a.satisfies_functional_equation()) << D;
    }
  }
}

TEST(LFunction, DualRoutesAgreeRandomGenusThree) {
  FieldParams F(5);
  MonicSieve sieve(F, 8);
  PointCounter pc(F, 3);
  std::mt19937_64 rng(99);
  int tested = 0;
  while (tested < 60) {
    FqPoly D = monic_from_index(F, 7, rng() % ipow(5, 7));
    if (!is_squarefree(D)) continue;
    ++tested;
    ASSERT_EQ(l_coeffs_charsum(D, sieve), l_coeffs_pointcount(D, pc)) << D;
  }
}

TEST(LFunction, BlockEvaluatorMatchesDirectTraces) {
  FieldParams F(13);
  PointCounter pc(F, 2);
  PointCounter::Block block(pc);
  std::mt19937_64 rng(4);
  std::vector<std::vector<std::int64_t>> tr;
  for (int it = 0; it < 20; ++it) {
    std::vector<Residue> high(5, 0);
    for (int j = 1; j <= 4; ++j) high[j] = static_cast<Residue>(rng() % 13);
    block.set_high(high);
    block.traces(tr);
    for (Residue c0 = 0; c0 < 13; c0 += 3) {
      std::vector<Residue> c(high);
      c[0] = c0;
      c.push_back(1);
      FqPoly D(F, c);
      ASSERT_EQ(tr[c0], pc.traces(D)) << D;
    }
  }
}

TEST(LFunction, CentralValue) {
  EXPECT_EQ(l_value_half(make_L(5, 0, {1})), QuadValue::one(5));
  // g = 1 with c2 = q: (2q + c1 sqrt q)/q = 2 + c1/sqrt q
  auto v = l_value_half(make_L(5, 1, {1, 3, 5}));
  EXPECT_EQ(v, QuadValue(5, 10, 3, 1));
  EXPECT_NEAR(v.to_double(), 2 + 3 / std::sqrt(5.0), 1e-15);
  FieldParams F(13);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    FqPoly D = monic_from_index(F, 5, rng() % ipow(13, 5));
    if (!is_squarefree(D)) continue;
    auto L = l_coeffs_pointcount(D);
    double h = L.horner(1 / std::sqrt(13.0));
    EXPECT_NEAR(l_value_half(L).to_double(), h, 1e-12 * std::max(1.0, std::abs(h)));
  }
}

TEST(LFunction, RiemannHypothesis) {
  EXPECT_LT(check_rh_roots(make_L(5, 1, {1, 0, 5})), 1e-30);
  FieldParams F(5);
  for (const auto& D : enumerate_H(F, 3).collect()) EXPECT_LT(check_rh_roots(l_coeffs_pointcount(D)), 1e-8) << D;
  // a repeated root: (1 + 5u^2)^2
  EXPECT_LT(check_rh_roots(make_L(5, 2, {1, 0, 10, 0, 25})), 1e-8);
  auto L = l_coeffs_pointcount(P(F, "x^5+x+3"));
  L.coeffs[1] += 3;
  EXPECT_GT(check_rh_roots(L), 1e-3);
}

TEST(LFunction, ApproximateFunctionalEquationIsExact) {
  FieldParams F(5);
  MonicSieve sieve(F, 3);
  auto d1 = sieve.divisor_counts(1), d2 = sieve.divisor_counts(2), d3 = sieve.divisor_counts(3);
  for (const auto& D : enumerate_H(F, 3).collect()) {
    QuadValue L = l_value_half(l_coeffs_pointcount(D));
    ASSERT_EQ(afe_value(D, 1, sieve, d1), L) << D;
    ASSERT_EQ(afe_value(D, 2, sieve, d2), L.pow(2)) << D;
    ASSERT_EQ(afe_value(D, 3, sieve, d3), L.pow(3)) << D;
  }
}

TEST(Sieve, FactorTableAndDivisorCounts) {
  FieldParams F(5);
  MonicSieve sieve(F, 5);
  std::uint64_t primes_by_degree[6] = {0};
  for (auto p : sieve.primes()) ++primes_by_degree[sieve.degree_of(p)];
  for (int d = 1; d <= 5; ++d) EXPECT_EQ(BigInt(primes_by_degree[d]), count_irreducibles(5, d));
  auto d3 = sieve.divisor_counts(3);
  for (std::uint32_t f = 1; f < sieve.size(); f += 37) {
    FqPoly poly = sieve.poly(f);
    EXPECT_EQ(sieve.poly(sieve.prime_factor(f)) * sieve.poly(sieve.cofactor(f)), poly);
    EXPECT_EQ(d3[f], divisor_fn(3, poly)) << poly;
  }
}

TEST(Ensemble, Counts) {
  for (std::uint32_t q : {5u, 13u}) {
    FieldParams F(q);
    for (int n = 1; n <= (q == 5 ? 6 : 4); ++n)
      EXPECT_EQ(BigInt(enumerate_H(F, n).count()), ensemble_size(q, n)) << q << " " << n;
  }
  EXPECT_EQ(ensemble_size(5, 3), 100);
  EXPECT_EQ(ensemble_size(5, 5), 2500);
  EXPECT_EQ(ensemble_size(5, 1), 5);
  // partitions tile the ensemble
  FieldParams F(5);
  auto H = enumerate_H(F, 5);
  std::uint64_t total = 0;
  for (int k = 0; k < 6; ++k) total += H.partition(k, 6).count();
  EXPECT_EQ(total, 2500u);
}

TEST(Moments, MethodsAgreeExactly) {
  MomentOptions opts;
  opts.threads = 1;
  for (int g : {1, 2}) {
    auto pc = moments(5, g, {1, 2, 3}, Method::PointCount, opts);
    auto cs = moments(5, g, {1, 2, 3}, Method::CharSum, opts);
    auto af = moments(5, g, {1, 2, 3}, Method::Afe, opts);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(pc[i].value_exact, cs[i].value_exact) << "g=" << g << " k=" << pc[i].k;
      EXPECT_EQ(pc[i].value_exact, af[i].value_exact) << "g=" << g << " k=" << pc[i].k;
      EXPECT_EQ(pc[i].ensemble_count, ensemble_size(5, 2 * g + 1));
    }
  }
}

TEST(Moments, MatchesPerDiscriminantSum) {
  FieldParams F(5);
  QuadValue s1 = QuadValue::zero(5), s3 = QuadValue::zero(5);
  for (const auto& D : enumerate_H(F, 3).collect()) {
    QuadValue L = l_value_half(l_coeffs_charsum(D));
    s1 += L;
    s3 += L.pow(3);
  }
  EXPECT_EQ(moment(5, 1, 1, Method::PointCount).value_exact, s1);
  EXPECT_EQ(moment(5, 1, 3, Method::PointCount).value_exact, s3);
}

TEST(Moments, PartitionInvariance) {
  QuadValue ref;
  for (unsigned parts : {1u, 4u, 16u}) {
    MomentOptions opts;
    opts.partitions = parts;
    opts.threads = parts > 1 ? 3 : 1;
    auto r = moment(5, 2, 2, Method::PointCount, opts);
    EXPECT_EQ(r.partition_count, parts);
    if (parts == 1)
      ref = r.value_exact;
    else
      EXPECT_EQ(r.value_exact, ref);
  }
}

TEST(Moments, Validation) {
  EXPECT_THROW(moment(7, 1, 1, Method::PointCount), std::invalid_argument);
  EXPECT_THROW(moment(5, 1, 4, Method::PointCount), std::invalid_argument);
  MomentOptions tight;
  tight.budget = 10;
  EXPECT_THROW(moment(5, 1, 1, Method::PointCount, tight), BudgetExceeded);
  tight.ignore_budget = true;
  EXPECT_NO_THROW(moment(5, 1, 1, Method::PointCount, tight));
  EXPECT_THROW(parse_method("fft"), std::invalid_argument);
}

TEST(FirstPoint, IdentityExhaustive) {
  FieldParams F(5);
  auto one = charsum_over_H(FqPoly::one(F), 1);
  EXPECT_EQ(one.first, ensemble_size(5, 3));
  EXPECT_EQ(one.second, ensemble_size(5, 3));
  for (int g : {1, 2})
    for (int d = 1; d <= 3; ++d)
      for (const auto& f : enumerate_monic(F, d)) {
        auto [lhs, rhs] = charsum_over_H(f, g);
        ASSERT_EQ(lhs, rhs) << f << " g=" << g;
      }
}
