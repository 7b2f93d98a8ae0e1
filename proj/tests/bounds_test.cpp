// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <hypaut/bounds.hpp>

namespace hypaut {
namespace {

TEST(FixedDimBound, Examples) {
  EXPECT_EQ(fixed_dim_bound(2, 4), 9);
  EXPECT_EQ(fixed_dim_bound(2, 5), 11);
  for (int d = 1; d <= 30; ++d) EXPECT_EQ(fixed_dim_bound(1, d), d / 2);
  EXPECT_THROW(fixed_dim_bound(0, 3), InvalidArgument);
  EXPECT_THROW(fixed_dim_bound(2, 0), InvalidArgument);
}

TEST(FixedDimBound, AltVariantUsesShiftedBinomial) {
  // (2, 4): 15 - binom(3, 2).
  EXPECT_EQ(fixed_dim_bound_alt(2, 4), big_binom(6, 2) - big_binom(4 - 2 + 2 - 1, 2));
  EXPECT_EQ(fixed_dim_bound_alt(2, 4), 12);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= 20; ++d) EXPECT_GT(fixed_dim_bound_alt(n, d), fixed_dim_bound(n, d));
  }
}

TEST(DiagonalDimBound, Examples) {
  EXPECT_EQ(diagonal_dim_bound(2, 4), Rational(10));
  EXPECT_EQ(diagonal_dim_bound(2, 10), Rational(77, 2));
  for (int d = 1; d <= 20; ++d) EXPECT_EQ(diagonal_dim_bound(1, d), Rational(d + 2, 2));
}

TEST(DiagonalThreshold, Examples) {
  EXPECT_EQ(diagonal_threshold(2, 4), 10);
  EXPECT_EQ(diagonal_threshold(2, 5), 12);
  EXPECT_EQ(diagonal_threshold(3, 3), 11);
  EXPECT_EQ(diagonal_threshold_alt(2, 4), 13);
}

TEST(NontrivialExponent, Examples) {
  EXPECT_EQ(nontrivial_exponent(2, 4), Rational(81, 4));
  EXPECT_EQ(nontrivial_exponent(2, 3), Rational(33, 2));
  EXPECT_EQ(nontrivial_exponent(3, 3), Rational(67, 2));
  EXPECT_EQ(aut_constant(2), Rational(3, 4));
  EXPECT_EQ(nontrivial_exponent_alt(2, 4), 21);
}

TEST(ZetaDensity, ExamplesAndMonotonicity) {
  EXPECT_EQ(zeta_density(2, 2), Rational(21, 64));
  EXPECT_EQ(zeta_density(1, 2), Rational(3, 8));
  EXPECT_EQ(zeta_density(2, 3), Rational(416, 729));
  for (int n = 1; n <= 5; ++n) {
    Rational prev = 0;
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11}) {
      const Rational z = zeta_density(n, q);
      EXPECT_GT(z, prev);
      EXPECT_LT(z, 1);
      EXPECT_GT(z, 0);
      prev = z;
      if (n > 1) {
        EXPECT_LT(z, zeta_density(n - 1, q));
      }
    }
  }
  EXPECT_THROW(zeta_density(2, 6), InvalidArgument);
}

TEST(ModuliEstimate, Examples) {
  const auto a = moduli_estimate(2, 4, 2);
  EXPECT_EQ(a.D, 7);
  EXPECT_EQ(a.leading, 64);
  const auto b = moduli_estimate(2, 5, 2);
  EXPECT_EQ(b.D, 13);
  EXPECT_EQ(b.leading, 4096);
  const auto c = moduli_estimate(3, 3, 2);
  EXPECT_EQ(c.D, 5);
  EXPECT_EQ(c.leading, 16);
  EXPECT_EQ(c.q_pow_D, 32);
  EXPECT_EQ(c.q_pow_D_minus_1, 16);
}

TEST(DeltaWindow, Examples) {
  const auto a = delta_window(2, 4, 2);
  ASSERT_TRUE(a.lower_exact && a.upper_exact);
  EXPECT_EQ(*a.lower_exact, Rational(-1));
  EXPECT_EQ(*a.upper_exact, Rational(2));
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9, 27}) {
    const auto w = delta_window(1, static_cast<int>(q), q);
    ASSERT_TRUE(w.lower_exact) << q;
    EXPECT_EQ(*w.lower_exact, Rational(-1));
    EXPECT_EQ(*w.upper_exact, Rational(2));
  }
  const auto c = delta_window(2, 16, 2);
  EXPECT_EQ(*c.lower_exact, Rational(0));
  EXPECT_EQ(*c.upper_exact, Rational(3));
  // log_4(8) = 3/2 exactly.
  EXPECT_EQ(*delta_window(1, 8, 4).log_q_d, Rational(3, 2));
  const auto irr = delta_window(2, 5, 2);
  EXPECT_FALSE(irr.log_q_d);
  EXPECT_NEAR(irr.upper - irr.lower, 3.0, 1e-12);
}

TEST(IdentityCheck, HoldsOnGrid) {
  EXPECT_THROW(identity_check(1, 3), InvalidArgument);
  for (int n = 2; n <= 6; ++n) {
    for (int d = 0; d <= 50; ++d) {
      const auto r = identity_check(n, d);
      EXPECT_TRUE(r.first && r.second) << n << "," << d;
    }
  }
}

TEST(Bounds, AsymptoticRatios) {
  for (int n = 1; n <= 3; ++n) {
    const Rational total(monomial_count(n, 200));
    const Rational r5 = Rational(fixed_dim_bound(n, 200)) / total;
    EXPECT_LE(abs(r5 - aut_constant(n)), Rational(1, 100)) << n;
    const Rational r7 = diagonal_dim_bound(n, 200) / total;
    EXPECT_LE(abs(r7 - Rational(1, 2)), Rational(1, 100)) << n;
  }
}

TEST(Bounds, FixedBoundBelowMonomialCount) {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 1; d <= 30; ++d) EXPECT_LT(fixed_dim_bound(n, d), monomial_count(n, d));
  }
}

TEST(LessThanQPow, ExactComparisons) {
  EXPECT_TRUE(less_than_q_pow(7, 2, Rational(3)));
  EXPECT_FALSE(less_than_q_pow(8, 2, Rational(3)));
  // 2^(5/2) = 5.65...
  EXPECT_TRUE(less_than_q_pow(5, 2, Rational(5, 2)));
  EXPECT_FALSE(less_than_q_pow(6, 2, Rational(5, 2)));
  EXPECT_TRUE(less_than_q_pow(0, 3, Rational(-1, 2)));
  EXPECT_FALSE(less_than_q_pow(1, 3, Rational(-1, 2)));
}

TEST(BoundReport, ContainsEveryField) {
  const auto r = bound_report(2, 4, 3);
  const Json j = to_json(r);
  for (const char* k : {"n", "d", "q", "monomials", "fixed_dim_bound", "fixed_dim_bound_alt", "diagonal_threshold",
                        "diagonal_threshold_alt", "diagonal_dim_bound", "C", "nontrivial_exponent",
                        "nontrivial_exponent_alt", "zeta_density", "moduli_dim", "moduli_leading", "delta_window",
                        "identity_sum", "identity_weighted_sum"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["fixed_dim_bound"], "9");
  EXPECT_EQ(j["moduli_dim"], 7);
  EXPECT_NE(to_table(r).find("fixed_dim_bound"), std::string::npos);
  EXPECT_EQ(to_csv(r).rfind("field,value\n", 0), 0U);
  const auto small = bound_report(1, 1, 2);
  EXPECT_FALSE(small.moduli);
  EXPECT_FALSE(small.delta);
  EXPECT_FALSE(small.identities);
}

}  // namespace
}  // namespace hypaut
