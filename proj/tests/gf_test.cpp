// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <hypaut/gf.hpp>
#include <hypaut/rng.hpp>

#include "test_util.hpp"

namespace hypaut {
namespace {

using testing::random_elem;
using testing::random_unit;

TEST(Field, PrimeFieldTwo) {
  const Field f = Field::make(2, 1);
  EXPECT_EQ(f.q(), 2U);
  EXPECT_EQ(f.generator(), Field::one());
  EXPECT_EQ(f.kind(), Field::Kind::binary_prime);
}

TEST(Field, FourElementsUsesTheOnlyIrreducibleQuadratic) {
  const Field f = Field::make(2, 2);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(f.pow(f.generator(), 3), Field::one());
  EXPECT_NE(f.generator(), Field::one());
}

TEST(Field, FiveHasGeneratorTwo) {
  const Field f = Field::make(5, 1);
  EXPECT_EQ(f.generator(), Elem{2});
  EXPECT_EQ(f.pow(Elem{2}, 2), Elem{4});
  EXPECT_EQ(f.pow(Elem{2}, 3), Elem{3});
}

TEST(Field, ModulusIsSmallestIrreducibleLowDegreeFirst) {
  // Over F_2, x^3 + x^2 + 1 = (1,0,1,1) precedes x^3 + x + 1 = (1,1,0,1).
  EXPECT_EQ(Field::make(2, 3).modulus(), (std::vector<std::uint32_t>{1, 0, 1, 1}));
  // Over F_3, x^2 + 1 is irreducible and (1,0,1) is the first candidate with c_0 != 0.
  EXPECT_EQ(Field::make(3, 2).modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, ModulusIsIrreducibleForSeveralFields) {
  for (auto [p, k] : {std::pair{2, 4}, {2, 5}, {3, 3}, {5, 2}, {7, 2}, {2, 8}}) {
    const Field f = Field::make(p, k);
    EXPECT_TRUE(detail::is_irreducible(f.modulus(), f.p())) << f.name();
  }
}

TEST(Field, Arithmetic) {
  const Field f5 = Field::make(5, 1);
  EXPECT_EQ(f5.mul(Elem{3}, Elem{4}), Elem{2});
  const Field f4 = Field::make(2, 2);
  const Elem x{2};  // coefficient vector (0, 1)
  EXPECT_EQ(f4.mul(x, x), Elem{3});  // x + 1
}

TEST(Field, InverseOfEveryUnit) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 256, 257}) {
    const Field f = Field::from_order(q);
    for (Elem a : f.units()) EXPECT_EQ(f.mul(a, f.inv(a)), Field::one()) << q << " " << a.code;
  }
}

TEST(Field, InverseOfZeroThrows) {
  const Field f = Field::make(3, 1);
  EXPECT_THROW(f.inv(Field::zero()), InvalidArgument);
  EXPECT_THROW(f.discrete_log(Field::zero()), InvalidArgument);
}

TEST(Field, ConstructionErrors) {
  EXPECT_THROW(Field::make(4, 1), InvalidArgument);
  EXPECT_THROW(Field::make(1, 1), InvalidArgument);
  EXPECT_THROW(Field::make(3, 0), InvalidArgument);
  EXPECT_THROW(Field::make(2, 40), BudgetExceeded);
  EXPECT_THROW(Field::from_order(6), InvalidArgument);
}

TEST(Field, DiscreteLogExamples) {
  const Field f5 = Field::make(5, 1);
  EXPECT_EQ(f5.discrete_log(Field::one()), 0U);
  EXPECT_EQ(f5.discrete_log(f5.generator()), 1U);
  EXPECT_EQ(f5.discrete_log(Elem{4}), 2U);
}

class FieldProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FieldProperties, LogExpFrobeniusAndOrder) {
  const Field f = Field::from_order(GetParam());
  SplitMix64 g(GetParam());
  for (int i = 0; i < 300; ++i) {
    const Elem a = random_unit(f, g);
    const Elem b = random_unit(f, g);
    const auto la = f.discrete_log(a);
    ASSERT_LT(la, f.q() - 1);
    EXPECT_EQ(f.pow(f.generator(), la), a);
    EXPECT_EQ(f.exp_generator(la), a);
    EXPECT_EQ(f.discrete_log(f.mul(a, b)), (static_cast<std::uint64_t>(la) + f.discrete_log(b)) % (f.q() - 1));
    EXPECT_EQ(f.pow(a, f.q() - 1), Field::one());
    EXPECT_EQ(f.pow(a, -1), f.inv(a));
    const Elem x = random_elem(f, g);
    const Elem y = random_elem(f, g);
    EXPECT_EQ(f.pow(f.add(x, y), f.p()), f.add(f.pow(x, f.p()), f.pow(y, f.p())));
    EXPECT_EQ(f.sub(f.add(x, y), y), x);
    EXPECT_EQ(f.add(x, f.neg(x)), Field::zero());
    EXPECT_EQ(f.mul(x, f.add(y, a)), f.add(f.mul(x, y), f.mul(x, a)));
  }
}

TEST_P(FieldProperties, GeneratorHasFullOrder) {
  const Field f = Field::from_order(GetParam());
  const std::uint64_t order = f.q() - 1;
  for (auto pr : detail::prime_divisors(order)) EXPECT_NE(f.pow(f.generator(), static_cast<std::int64_t>(order / pr)), Field::one());
}

TEST_P(FieldProperties, ParseFormatRoundTrip) {
  const Field f = Field::from_order(GetParam());
  SplitMix64 g(7);
  for (int i = 0; i < 50; ++i) {
    const Elem a = random_elem(f, g);
    EXPECT_EQ(f.parse(f.format(a)), a);
  }
}

// 65537 and 2^17 exceed the table limit and exercise the direct paths.
INSTANTIATE_TEST_SUITE_P(Orders, FieldProperties,
                         ::testing::Values(2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 81, 121, 128, 243, 256, 343,
                                           65537, 131072, 59049 * 3));

TEST(Field, ExtensionTextForm) {
  const Field f = Field::make(3, 2);
  EXPECT_EQ(f.format(Elem{1 + 2 * 3}), "[1,2]");
  EXPECT_EQ(f.parse("[1,2]"), Elem{7});
  EXPECT_EQ(f.parse("2"), Elem{2});
  EXPECT_THROW(f.parse("[1,2,0,1]"), InvalidArgument);
}

TEST(FieldEmbedding, IsARingHomomorphism) {
  for (auto [p, k, m] : {std::tuple{2, 1, 4}, {2, 2, 2}, {3, 1, 2}, {2, 2, 3}, {3, 2, 2}}) {
    const Field small = Field::make(p, k);
    const Field big = Field::make(p, k * m);
    const FieldEmbedding e(small, big);
    for (Elem a : small.elements()) {
      for (Elem b : small.elements()) {
        EXPECT_EQ(e(small.add(a, b)), big.add(e(a), e(b)));
        EXPECT_EQ(e(small.mul(a, b)), big.mul(e(a), e(b)));
      }
    }
    EXPECT_EQ(e(Field::one()), Field::one());
  }
}

}  // namespace
}  // namespace hypaut
