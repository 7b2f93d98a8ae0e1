// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <string>

#include <hypaut/census.hpp>
#include <hypaut/smooth.hpp>

#include "test_util.hpp"

namespace hypaut {
namespace {

std::string fermat(int n, int d) {
  std::string s;
  for (int i = 1; i <= n + 1; ++i) s += (i > 1 ? " + x" : "x") + std::to_string(i) + "^" + std::to_string(d);
  return s;
}

TEST(Saturation, Examples) {
  const auto v1 = is_smooth(parse_poly("x1^3 + x2^3 + x3^3", Field::make(2, 1), 2));
  EXPECT_TRUE(v1.smooth);
  EXPECT_EQ(v1.method, SmoothnessVerdict::Method::saturation);
  ASSERT_TRUE(v1.saturation_degree);
  EXPECT_TRUE(is_smooth(parse_poly("x1^2 + x2*x3", Field::make(5, 1), 2)).smooth);
  EXPECT_FALSE(is_smooth(parse_poly("x1^3 + x2^3 + x3^3", Field::make(3, 1), 2)).smooth);
  EXPECT_FALSE(is_smooth(parse_poly("x1^2*x2", Field::make(5, 1), 2)).smooth);
}

TEST(Saturation, ZeroPolynomialRejected) {
  const Field f = Field::make(2, 1);
  EXPECT_THROW(is_smooth(PolyVec(monomial_basis(2, 3), f)), InvalidArgument);
  EXPECT_THROW(is_smooth_points_oracle(PolyVec(monomial_basis(2, 3), f), 1), InvalidArgument);
}

TEST(PointOracle, Examples) {
  const auto v = is_smooth_points_oracle(parse_poly("x1^2*x2", Field::make(5, 1), 2), 1);
  EXPECT_FALSE(v.smooth);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(format_point(*v.witness), "(0:0:1)");
  const auto v2 = is_smooth_points_oracle(parse_poly("x1^2*x2", Field::make(2, 1), 2), 1);
  ASSERT_TRUE(v2.witness);
  EXPECT_EQ(format_point(*v2.witness), "(0:0:1)");
  const PointOracle o(Field::make(2, 1), 2, 3, 2);
  EXPECT_EQ(o.point_count(), 28U);
  EXPECT_FALSE(o.find(parse_poly("x1^3 + x2^3 + x3^3", Field::make(2, 1), 2).coeffs));
  const PointOracle o5(Field::make(5, 1), 2, 2, 1);
  EXPECT_EQ(o5.point_count(), 31U);
  EXPECT_FALSE(o5.find(parse_poly("x1^2 + x2*x3", Field::make(5, 1), 2).coeffs));
}

TEST(PointOracle, BudgetGuard) {
  EXPECT_THROW(PointOracle(Field::make(3, 1), 3, 3, 4, 1000), BudgetExceeded);
}

TEST(PointOracle, WitnessIsSingularPoint) {
  const Field f = Field::make(3, 1);
  const auto b = monomial_basis(2, 3);
  SplitMix64 g(4);
  for (int t = 0; t < 200; ++t) {
    const PolyVec p = testing::random_poly(b, f, g);
    if (p.is_zero()) continue;
    const auto v = is_smooth_points_oracle(p, 2);
    if (!v.witness) continue;
    const FieldEmbedding e(f, v.witness->field);
    PolyVec lifted(b, v.witness->field);
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) lifted.coeffs[i] = e(p.coeffs[i]);
    EXPECT_EQ(evaluate(lifted, v.witness->coords), Field::zero());
    for (const auto& part : partials(lifted)) EXPECT_EQ(evaluate(part, v.witness->coords), Field::zero());
  }
}

// Every nonzero plane cubic over F_2, against a witness search up to F_16.
TEST(Saturation, AgreesWithPointOracleOnAllPlaneCubicsOverF2) {
  const Field f = Field::make(2, 1);
  const SaturationTester sat(f, 2, 3);
  const PointOracle oracle(f, 2, 3, 4);
  const HypersurfaceIndexer ix(f, 10);
  std::vector<Elem> c(10);
  int smooth = 0;
  for (std::uint64_t id = 0; id < ix.size(); ++id) {
    ix.decode(id, c);
    const bool s = sat.test(c).smooth;
    EXPECT_EQ(s, !oracle.find(c).has_value()) << format_poly(PolyVec(sat.basis(), f, c));
    smooth += s;
  }
  EXPECT_EQ(smooth, 336);
}

TEST(Saturation, AgreesWithPointOracleOnRandomSamples) {
  for (auto [q, n, d, k] : {std::tuple{3, 2, 4, 2}, {2, 3, 3, 2}, {2, 2, 5, 4}, {5, 2, 3, 1}, {4, 2, 3, 2}}) {
    const Field f = Field::from_order(q);
    const SaturationTester sat(f, n, d);
    const PointOracle oracle(f, n, d, k);
    SplitMix64 g(q * 100 + n * 10 + d);
    for (int t = 0; t < 300; ++t) {
      const PolyVec p = testing::random_poly(sat.basis(), f, g);
      if (p.is_zero()) continue;
      const bool witness = oracle.find(p.coeffs).has_value();
      const bool s = sat.test(p).smooth;
      if (witness) {
        EXPECT_FALSE(s) << format_poly(p);
      }
      // Over these fields singular curves nearly always have a low-degree singular point;
      // the exhaustive test above covers the converse.
    }
  }
}

TEST(Saturation, InvariantUnderGroupActionAndScaling) {
  for (auto [q, n, d] : {std::tuple{2, 2, 4}, {3, 2, 3}, {4, 2, 3}, {2, 3, 3}, {5, 1, 4}}) {
    const Field f = Field::from_order(q);
    const auto b = monomial_basis(n, d);
    SplitMix64 g(q * 13 + d);
    for (int t = 0; t < 40; ++t) {
      const PolyVec p = testing::random_poly(b, f, g);
      if (p.is_zero()) continue;
      const bool s = is_smooth(p).smooth;
      EXPECT_EQ(is_smooth(substitute(p, testing::random_invertible(f, n, g))).smooth, s);
      EXPECT_EQ(is_smooth(scale(p, testing::random_unit(f, g))).smooth, s);
    }
  }
}

TEST(Saturation, FermatLaw) {
  for (std::uint64_t p : {2, 3, 5}) {
    const Field f = Field::make(p, 1);
    for (int n = 1; n <= 3; ++n) {
      for (int d = 2; d <= 8; ++d) {
        const bool expect = d % static_cast<int>(p) != 0;
        EXPECT_EQ(is_smooth(parse_poly(fermat(n, d), f, n)).smooth, expect) << "p=" << p << " n=" << n << " d=" << d;
      }
    }
  }
}

TEST(Saturation, DegreeOneIsAlwaysSmooth) {
  const Field f = Field::make(3, 1);
  EXPECT_TRUE(is_smooth(parse_poly("x1 + 2*x2", f, 2)).smooth);
}

TEST(Saturation, LowCapMissesSaturation) {
  // Below the regularity the ideal is not yet full, so a tiny cap reports singular.
  const Field f = Field::make(2, 1);
  const PolyVec p = parse_poly("x1^3 + x2^3 + x3^3", f, 2);
  const int e = *is_smooth(p).saturation_degree;
  EXPECT_TRUE(is_smooth(p, SaturationOptions{e}).smooth);
  if (e > 3) {
    EXPECT_FALSE(is_smooth(p, SaturationOptions{e - 1}).smooth);
  }
  EXPECT_THROW(SaturationTester(f, 2, 3, SaturationOptions{2}), InvalidArgument);
}

TEST(Classifier, AgreesWithSaturation) {
  const Field f = Field::make(3, 1);
  const SmoothClassifier cls(f, 2, 3);
  const SaturationTester sat(f, 2, 3);
  SplitMix64 g(8);
  for (int t = 0; t < 300; ++t) {
    const PolyVec p = testing::random_poly(sat.basis(), f, g);
    if (p.is_zero()) continue;
    EXPECT_EQ(cls.smooth(p.coeffs), sat.test(p).smooth);
  }
}

}  // namespace
}  // namespace hypaut
