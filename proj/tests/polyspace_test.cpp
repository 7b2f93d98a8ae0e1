// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <hypaut/numeric.hpp>
#include <hypaut/polyspace.hpp>

#include "test_util.hpp"

namespace hypaut {
namespace {

using testing::random_invertible;
using testing::random_poly;
using testing::random_unit;

TEST(MonomialBasis, Sizes) {
  EXPECT_EQ(monomial_basis(2, 3)->size(), 10U);
  EXPECT_EQ(monomial_basis(3, 3)->size(), 20U);
  EXPECT_EQ(monomial_basis(2, 4)->size(), 15U);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 12; ++d) EXPECT_EQ(monomial_basis(n, d)->size(), binom_u64(d + n, n)) << n << "," << d;
  }
}

TEST(MonomialBasis, OrderAndIndexing) {
  const auto b = monomial_basis(2, 2);
  const std::vector<std::vector<std::uint16_t>> expect = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    const auto e = b->exponents(i);
    EXPECT_EQ(std::vector<std::uint16_t>(e.begin(), e.end()), expect[i]);
    EXPECT_EQ(b->index_of(e), i);
  }
  const auto big = monomial_basis(3, 7);
  for (std::size_t i = 0; i < big->size(); ++i) {
    const auto e = big->exponents(i);
    int s = 0;
    for (auto x : e) s += x;
    EXPECT_EQ(s, 7);
    EXPECT_EQ(big->index_of(e), i);
  }
}

TEST(MonomialBasis, Errors) {
  EXPECT_THROW(monomial_basis(0, 3), InvalidArgument);
  EXPECT_THROW(monomial_basis(2, -1), InvalidArgument);
  EXPECT_THROW(monomial_basis(10, 40), BudgetExceeded);
}

TEST(Evaluate, Examples) {
  const Field f3 = Field::make(3, 1);
  const std::vector<Elem> e1 = {Elem{1}, Elem{0}, Elem{0}};
  EXPECT_EQ(evaluate(parse_poly("x1^3", f3, 2), e1), Elem{1});
  const std::vector<Elem> zero(3);
  EXPECT_EQ(evaluate(parse_poly("x1*x2*x3 + 2*x3^3", f3, 2), zero), Elem{0});
  const std::vector<Elem> pt = {Elem{1}, Elem{2}, Elem{1}};
  EXPECT_EQ(evaluate(parse_poly("x1*x2 + x3^2", f3, 2), pt), Elem{0});
}

TEST(Partials, Examples) {
  const Field f2 = Field::make(2, 1);
  const auto p1 = partials(parse_poly("x1^2", f2, 2));
  EXPECT_TRUE(p1[0].is_zero());
  const Field f5 = Field::make(5, 1);
  const auto p2 = partials(parse_poly("x1*x2", f5, 2));
  EXPECT_EQ(p2[0], parse_poly("x2", f5, 2));
  EXPECT_EQ(p2[1], parse_poly("x1", f5, 2));
  EXPECT_TRUE(p2[2].is_zero());
  const Field f3 = Field::make(3, 1);
  for (const auto& p : partials(parse_poly("x1^3 + x2^3 + x3^3", f3, 2))) EXPECT_TRUE(p.is_zero());
}

TEST(Substitute, Examples) {
  const Field f5 = Field::make(5, 1);
  const PolyVec f = parse_poly("x1^2", f5, 2);
  EXPECT_EQ(substitute(f, identity_elem(2)), f);
  const std::vector<int> swap = {1, 0, 2};
  EXPECT_EQ(substitute(f, permutation_elem(swap)), parse_poly("x2^2", f5, 2));
  const std::vector<Elem> diag = {Elem{2}, Elem{3}, Elem{1}};
  const PolyVec g = parse_poly("x1*x2", f5, 2);
  EXPECT_EQ(substitute(g, diagonal_elem(diag)), g);
  const std::vector<Elem> singular(9);
  EXPECT_THROW(substitute(g, GroupElem(2, singular)), InvalidArgument);
}

TEST(SubstitutionMatrix, IdentityAndPermutation) {
  const Field f3 = Field::make(3, 1);
  const auto b = monomial_basis(2, 3);
  EXPECT_EQ(substitution_matrix(f3, identity_elem(2), *b), MatrixFq::identity(f3, b->size()));
  const std::vector<int> perm = {2, 0, 1};
  const MatrixFq m = substitution_matrix(f3, permutation_elem(perm), *b);
  for (std::size_t c = 0; c < b->size(); ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < b->size(); ++r) {
      if (m(r, c) == Field::one()) ++ones;
      else EXPECT_EQ(m(r, c), Field::zero());
    }
    EXPECT_EQ(ones, 1);
  }
}

struct Case {
  std::uint64_t q;
  int n;
  int d;
};

class ActionProperties : public ::testing::TestWithParam<Case> {};

TEST_P(ActionProperties, MatrixAgreesWithSubstitution) {
  const auto [q, n, d] = GetParam();
  const Field f = Field::from_order(q);
  const auto b = monomial_basis(n, d);
  SplitMix64 g(q * 1000 + static_cast<std::uint64_t>(n * 10 + d));
  for (int t = 0; t < 15; ++t) {
    const PolyVec p = random_poly(b, f, g);
    const GroupElem A = random_invertible(f, n, g);
    const MatrixFq M = substitution_matrix(f, A, *b);
    EXPECT_EQ(M.apply(p.coeffs), substitute(p, A).coeffs);
  }
}

TEST_P(ActionProperties, CompositionInverseAndScaling) {
  const auto [q, n, d] = GetParam();
  const Field f = Field::from_order(q);
  const auto b = monomial_basis(n, d);
  SplitMix64 g(q * 7919 + static_cast<std::uint64_t>(n * 10 + d));
  for (int t = 0; t < 10; ++t) {
    const GroupElem A = random_invertible(f, n, g);
    const GroupElem B = random_invertible(f, n, g);
    const MatrixFq MA = substitution_matrix(f, A, *b);
    const MatrixFq MB = substitution_matrix(f, B, *b);
    EXPECT_EQ(substitution_matrix(f, multiply(f, A, B), *b), MB * MA);
    EXPECT_EQ(substitution_matrix(f, inverse(f, A), *b) * MA, MatrixFq::identity(f, b->size()));
    const PolyVec p = random_poly(b, f, g);
    EXPECT_EQ(substitute(substitute(p, A), B), substitute(p, multiply(f, A, B)));
    const Elem c = random_unit(f, g);
    EXPECT_EQ(substitute(p, scale(f, A, c)), scale(substitute(p, A), f.pow(c, d)));
  }
}

TEST_P(ActionProperties, EulerRelation) {
  const auto [q, n, d] = GetParam();
  if (d == 0) return;
  const Field f = Field::from_order(q);
  const auto top = monomial_basis(n, d);
  const auto lin = monomial_basis(n, 1);
  const auto low = monomial_basis(n, d - 1);
  const auto table = product_table(*lin, *low, *top);
  SplitMix64 g(q + 99);
  for (int t = 0; t < 10; ++t) {
    const PolyVec p = random_poly(top, f, g);
    const auto parts = partials(p);
    PolyVec sum(top, f);
    for (int v = 0; v <= n; ++v) {
      for (std::size_t j = 0; j < low->size(); ++j) {
        auto& slot = sum.coeffs[table[static_cast<std::size_t>(v) * low->size() + j]];
        slot = f.add(slot, parts[static_cast<std::size_t>(v)].coeffs[j]);
      }
    }
    EXPECT_EQ(sum, scale(p, f.from_int(d)));
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, ActionProperties,
                         ::testing::Values(Case{2, 1, 5}, Case{2, 2, 3}, Case{3, 2, 3}, Case{3, 2, 4}, Case{4, 2, 3},
                                           Case{5, 2, 5}, Case{2, 3, 4}, Case{9, 2, 2}, Case{7, 3, 3}, Case{8, 1, 6}));

TEST(PolyText, ParseAndFormat) {
  const Field f5 = Field::make(5, 1);
  const PolyVec p = parse_poly("3*x1^2*x2 + x3^3 + 2*x1*x2*x3", f5, 2);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(format_poly(p), "3*x1^2*x2 + 2*x1*x2*x3 + x3^3");
  EXPECT_EQ(parse_poly(format_poly(p), f5, 2), p);
  EXPECT_EQ(parse_poly("x1*x1 + 4*x1^2", f5, 1, 2).is_zero(), true);
  EXPECT_TRUE(parse_poly("0", f5, 2, 4).is_zero());
  const Field f9 = Field::make(3, 2);
  const PolyVec e = parse_poly("[0,1]*x1^2 + x2^2", f9, 1);
  EXPECT_EQ(parse_poly(format_poly(e), f9, 1), e);
}

TEST(PolyText, Errors) {
  const Field f5 = Field::make(5, 1);
  EXPECT_THROW(parse_poly("x1^2 + x2", f5, 2), InvalidArgument);
  EXPECT_THROW(parse_poly("x4^2", f5, 2), InvalidArgument);
  EXPECT_THROW(parse_poly("y1", f5, 2), InvalidArgument);
  EXPECT_THROW(parse_poly("", f5, 2), InvalidArgument);
  EXPECT_THROW(parse_poly("x1^2", f5, 2, 3), InvalidArgument);
}

}  // namespace
}  // namespace hypaut
