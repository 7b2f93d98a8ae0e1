// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include <hypaut/census.hpp>

#include "test_util.hpp"

namespace hypaut {
namespace {

RunOptions with(std::size_t shards, std::uint64_t samples = 0, std::uint64_t seed = 0) {
  RunOptions o;
  o.shards = shards;
  o.samples = samples;
  o.seed = seed;
  return o;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hypaut_test_" + name)).string();
}

TEST(Indexer, RoundTripAndCanonicalForm) {
  const Field f = Field::make(3, 1);
  const HypersurfaceIndexer ix(f, 4);
  EXPECT_EQ(ix.size(), 40U);
  EXPECT_EQ(HypersurfaceIndexer::count(2, 10), 1023);
  std::vector<Elem> c(4);
  for (std::uint64_t id = 0; id < ix.size(); ++id) {
    ix.decode(id, c);
    EXPECT_EQ(c[leading_position(c)], Field::one());
    EXPECT_EQ(ix.encode(c), id);
    std::vector<Elem> s = c;
    for (auto& x : s) x = f.mul(x, Elem{2});
    EXPECT_EQ(ix.id_of(s), id);
  }
  EXPECT_THROW(HypersurfaceIndexer(Field::make(3, 1), 21), BudgetExceeded);
}

TEST(Stabilizer, ContainsIdentityAndFermatPermutations) {
  const Field f = Field::make(2, 1);
  const auto s = stabilizer(parse_poly("x1^3 + x2^3 + x3^3", f, 2));
  const std::set<std::pair<GroupElem, Elem>> set(s.elements.begin(), s.elements.end());
  EXPECT_TRUE(set.count({identity_elem(2), Field::one()}));
  std::vector<int> perm = {0, 1, 2};
  do {
    EXPECT_TRUE(set.count({permutation_elem(perm), Field::one()}));
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_GE(s.order(), 6U);
}

TEST(Stabilizer, ClosedUnderCompositionWithMultiplicativeLambda) {
  for (auto [q, text] : {std::pair<std::uint64_t, const char*>{3, "x1^3 + x2^3 + x3^3 + x1*x2*x3"},
                         {4, "x1^3 + x2^3 + x3^3"}, {2, "x1^2*x2 + x2^2*x3 + x3^2*x1"}}) {
    const Field f = Field::from_order(q);
    const PolyVec p = parse_poly(text, f, 2);
    const auto s = stabilizer(p);
    std::set<GroupElem> mats;
    for (const auto& [A, l] : s.elements) {
      mats.insert(A);
      EXPECT_EQ(substitute(s.hypersurface, A), scale(s.hypersurface, l));
    }
    for (const auto& [A, la] : s.elements) {
      for (const auto& [B, lb] : s.elements) {
        const GroupElem AB = multiply(f, A, B);
        EXPECT_TRUE(mats.count(canonicalize(f, AB)));
        EXPECT_EQ(substitute(s.hypersurface, AB), scale(s.hypersurface, f.mul(la, lb)));
      }
    }
  }
}

TEST(Orbits, PartitionAndOrbitStabilizerOnPlaneCubicsOverF2) {
  const Field f = Field::make(2, 1);
  const auto orbits = list_orbits(f, 2, 3);
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;
  for (const auto& o : orbits) {
    total += o.size;
    const auto st = stabilizer(o.poly);
    EXPECT_EQ(o.size * st.order(), 168U) << format_poly(o.poly);
    if (o.smooth) {
      smooth += o.size;
      EXPECT_EQ(o.stabilizer, st.order());
    }
  }
  EXPECT_EQ(total, 1023U);
  EXPECT_EQ(smooth, 336U);
}

TEST(Orbits, ExplicitOrbitEnumerationMatchesPartition) {
  const Field f = Field::make(3, 1);
  const int n = 1;
  const int d = 4;
  const auto orbits = list_orbits(f, n, d);
  const HypersurfaceIndexer ix(f, 5);
  const auto group = enumerate_pgl(f, n);
  std::uint64_t covered = 0;
  for (const auto& o : orbits) {
    std::set<std::uint64_t> ids;
    for (const auto& A : group) ids.insert(ix.id_of(substitute(o.poly, A).coeffs));
    EXPECT_EQ(ids.size(), o.size);
    EXPECT_EQ(*ids.begin(), o.rep);
    covered += ids.size();
  }
  EXPECT_EQ(covered, ix.size());
}

TEST(CensusExhaustive, PlaneCubicsOverF2) {
  const auto r = census_exhaustive(Field::make(2, 1), 2, 3);
  EXPECT_EQ(r.total, 1023);
  EXPECT_EQ(*r.smooth, 336);
  EXPECT_EQ(*r.sum_aut, 1008);
  EXPECT_EQ(*r.nontrivial, 336);
  EXPECT_EQ(*r.groupoid * 168, Rational(336));
  EXPECT_EQ(*r.density, Rational(21, 64));
  EXPECT_EQ(*r.orbits, 6);
  EXPECT_EQ(*r.orbit_stabilizer_failures, 0);
  EXPECT_EQ(r.pgl_order, 168);
  EXPECT_GE(*r.average, 1);
  EXPECT_EQ(to_csv(r), std::string(kCensusCsvHeader) + "\n2,3,2,1023,336,1008,336,3,1,21,64,6,2,1,6,exhaustive,\n");
}

TEST(CensusExhaustive, AverageIsOneIffNoNontrivialAutomorphisms) {
  for (auto [n, d, q] : {std::tuple{1, 5, 3}, {1, 6, 2}, {1, 8, 2}, {2, 3, 2}, {1, 4, 5}}) {
    const auto r = census_exhaustive(Field::from_order(q), n, d);
    ASSERT_TRUE(r.average);
    EXPECT_GE(*r.average, 1);
    EXPECT_EQ(*r.average == 1, *r.nontrivial == 0);
  }
}

TEST(CensusGroupSide, DoubleCountingMatchesExhaustive) {
  for (auto [n, d, q] : {std::tuple{2, 3, 2}, {1, 4, 3}, {1, 6, 2}, {1, 5, 4}, {2, 2, 3}, {1, 3, 7}}) {
    const Field f = Field::from_order(q);
    const auto a = census_exhaustive(f, n, d);
    const auto b = census_group_side(f, n, d);
    EXPECT_EQ(*a.sum_aut, *b.sum_aut) << n << d << q;
    EXPECT_EQ(*a.smooth, *b.smooth);
    EXPECT_EQ(*a.orbits, *b.orbits);
    EXPECT_EQ(*a.groupoid, *b.groupoid);
    EXPECT_EQ(a.fixed->max_dim(), b.fixed->max_dim());
    EXPECT_EQ(a.fixed->tally, b.fixed->tally);
    EXPECT_EQ(a.fixed->pairs, b.fixed->pairs);
  }
}

TEST(FixedDimCensus, CountsNonScalarPairs) {
  const Field f = Field::make(2, 1);
  const auto c = fixed_dim_census(f, 2, 3);
  EXPECT_EQ(c.pairs, 167U);
  EXPECT_EQ(c.max_dim(), 6);
  // swap(x1, x3) fixes six cubics, beyond both the bound 4 and the threshold 5.
  EXPECT_EQ(c.bound_violations, 21U);
  EXPECT_EQ(c.threshold_violations, 21U);
  EXPECT_EQ(c.bound_alt_violations, 0U);
  EXPECT_EQ(c.diag_bound_violations, 0U);
  ASSERT_TRUE(c.first_threshold_violation);
  EXPECT_FALSE(is_diagonal(c.first_threshold_violation->A));
}

TEST(CensusSample, DeterministicAcrossThreadsAndShardOrder) {
  const Field f = Field::make(3, 1);
  RunOptions o;
  o.samples = 3000;
  o.seed = 42;
  o.shards = 16;
  const std::string ref = to_json(census_sample(f, 2, 4, o)).dump();
  o.threads = 3;
  EXPECT_EQ(to_json(census_sample(f, 2, 4, o)).dump(), ref);
  o.shard_order_seed = 99;
  EXPECT_EQ(to_json(census_sample(f, 2, 4, o)).dump(), ref);
  // The shard count only changes bookkeeping, not the tallies.
  o.shards = 7;
  EXPECT_EQ(to_csv(census_sample(f, 2, 4, o)), to_csv(census_sample(f, 2, 4, with(16, 3000, 42))));
  o.seed = 43;
  EXPECT_NE(to_csv(census_sample(f, 2, 4, o)), to_csv(census_sample(f, 2, 4, with(0, 3000, 42))));
}

TEST(CensusSample, ForcedEnumerationEqualsExhaustiveDensity) {
  const Field f = Field::make(2, 1);
  RunOptions o;
  o.samples = 5000;
  o.sample_stabilizers = true;
  const auto s = census_sample(f, 2, 3, o);
  ASSERT_TRUE(s.sample);
  EXPECT_TRUE(s.sample->enumerated);
  EXPECT_EQ(s.sample->samples, 1024U);
  const auto e = census_exhaustive(f, 2, 3);
  EXPECT_EQ(*s.density, *e.density);
  EXPECT_EQ(*s.average, *e.average);
}

TEST(CensusSample, EstimateIsNearTheExhaustiveDensity) {
  const Field f = Field::make(2, 1);
  const double exact = to_double(*census_exhaustive(f, 2, 4).density);
  RunOptions o;
  o.samples = 4000;
  o.seed = 7;
  const auto s = census_sample(f, 2, 4, o);
  const double p = to_double(*s.density);
  EXPECT_LE(std::abs(p - exact), 4 * std::sqrt(exact * (1 - exact) / 4000));
  EXPECT_LT(s.sample->wilson_low, p);
  EXPECT_GT(s.sample->wilson_high, p);
}

TEST(CensusSample, Errors) {
  EXPECT_THROW(census_sample(Field::make(2, 1), 2, 3, RunOptions{}), InvalidArgument);
}

TEST(Checkpoint, ResumeGivesTheSameReport) {
  const Field f = Field::make(2, 1);
  const std::string path = temp_path("resume.json");
  std::filesystem::remove(path);
  RunOptions o;
  o.shards = 8;
  o.checkpoint = path;
  o.only_shards = {1, 4, 6};
  const auto partial = census_exhaustive(f, 2, 4, o);
  EXPECT_FALSE(partial.complete);
  EXPECT_EQ(partial.shards_done, 3U);
  ASSERT_TRUE(std::filesystem::exists(path));
  const Json ck = Json::parse(read_file(path));
  EXPECT_EQ(ck["completed_shards"], Json::array({1, 4, 6}));
  o.only_shards.clear();
  const auto resumed = census_exhaustive(f, 2, 4, o);
  EXPECT_TRUE(resumed.complete);
  RunOptions plain;
  plain.shards = 8;
  EXPECT_EQ(to_json(resumed).dump(), to_json(census_exhaustive(f, 2, 4, plain)).dump());
  std::filesystem::remove(path);
}

TEST(Checkpoint, GroupSideAndSampleResume) {
  const Field f = Field::make(3, 1);
  const std::string path = temp_path("resume_group.json");
  std::filesystem::remove(path);
  RunOptions o;
  o.shards = 10;
  o.checkpoint = path;
  o.only_shards = {0, 9};
  census_group_side(f, 1, 4, o);
  o.only_shards.clear();
  const auto a = census_group_side(f, 1, 4, o);
  EXPECT_EQ(to_json(a).dump(), to_json(census_group_side(f, 1, 4, with(10))).dump());
  std::filesystem::remove(path);

  o.samples = 500;
  o.seed = 5;
  o.only_shards = {2};
  census_sample(f, 2, 3, o);
  o.only_shards.clear();
  const auto b = census_sample(f, 2, 3, o);
  EXPECT_EQ(to_json(b).dump(), to_json(census_sample(f, 2, 3, with(10, 500, 5))).dump());
  std::filesystem::remove(path);
}

TEST(Checkpoint, MismatchedParametersAreRejected) {
  const Field f = Field::make(2, 1);
  const std::string path = temp_path("mismatch.json");
  std::filesystem::remove(path);
  RunOptions o;
  o.shards = 4;
  o.checkpoint = path;
  o.only_shards = {0};
  census_exhaustive(f, 2, 3, o);
  o.shards = 5;
  EXPECT_THROW(census_exhaustive(f, 2, 3, o), InvalidArgument);
  o.shards = 4;
  EXPECT_THROW(census_exhaustive(f, 1, 3, o), InvalidArgument);
  write_file(path, "not json");
  EXPECT_THROW(census_exhaustive(f, 2, 3, o), Error);
  std::filesystem::remove(path);
}

TEST(Census, BudgetsAreEnforced) {
  const Field f = Field::make(3, 1);
  EXPECT_THROW(census_exhaustive(f, 2, 5), BudgetExceeded);
  RunOptions o;
  o.group_budget = 100;
  EXPECT_THROW(census_exhaustive(Field::make(2, 1), 2, 3, o), BudgetExceeded);
}

TEST(Verify, PlaneCubicsOverF2) {
  const auto log = verify_bounds(Field::make(2, 1), 2, 3);
  std::map<std::string, bool> status;
  for (const auto& c : log.checks) status[c.check] = c.pass;
  // A coordinate swap fixes a 6-dimensional space of cubics: above both the bound and the threshold.
  EXPECT_FALSE(status.at("fixed_dim_bound"));
  EXPECT_FALSE(status.at("diagonal_threshold"));
  for (const char* k : {"diagonal_dim_bound", "sandwich", "nontrivial_gap", "nontrivial_exponent", "burnside",
                        "orbit_stabilizer", "fixed_dim_bound_alt", "diagonal_threshold_alt", "nontrivial_exponent_alt"}) {
    EXPECT_TRUE(status.at(k)) << k;
  }
  EXPECT_FALSE(log.passed());
  const Json j = to_json(log);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["check"], "fixed_dim_bound");
  EXPECT_EQ(j[0]["status"], "fail");
  EXPECT_FALSE(j[0]["witness"].get<std::string>().empty());
}

TEST(Verify, QuarticsOverF3) {
  const auto log = verify_bounds(Field::make(3, 1), 2, 4);
  std::map<std::string, CheckRecord> by;
  for (const auto& c : log.checks) by[c.check] = c;
  EXPECT_TRUE(by.at("diagonal_dim_bound").pass);
  EXPECT_NE(by.at("fixed_dim_bound").detail.find("vs bound 9"), std::string::npos);
  EXPECT_TRUE(by.at("sandwich").pass);
  EXPECT_TRUE(by.at("burnside").pass);
}

}  // namespace
}  // namespace hypaut
