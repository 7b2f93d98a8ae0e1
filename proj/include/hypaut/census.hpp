// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_CENSUS_HPP
#define HYPAUT_CENSUS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "error.hpp"
#include "fixedspace.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "polyspace.hpp"
#include "rng.hpp"
#include "smooth.hpp"

namespace hypaut {

inline constexpr std::uint64_t kDefaultSpaceBudget = std::uint64_t{1} << 24;

/// Dense numbering of hypersurfaces, i.e. of nonzero coefficient vectors up to
/// scaling. A vector is canonical when its first nonzero coefficient is 1; the
/// canonical vectors with leading position i form block i of size q^{N-1-i}.
class HypersurfaceIndexer {
 public:
  HypersurfaceIndexer(Field field, std::size_t N, std::uint64_t budget = kDefaultSpaceBudget)
      : field_(std::move(field)), N_(N) {
    const BigInt total = count(field_.q(), N);
    if (total > budget) {
      throw BudgetExceeded("hypersurface space of size " + total.str() + " exceeds the space budget " +
                           std::to_string(budget));
    }
    offsets_.resize(N + 1);
    pow_.resize(N + 1);
    pow_[0] = 1;
    for (std::size_t i = 1; i <= N; ++i) pow_[i] = pow_[i - 1] * field_.q();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < N; ++i) {
      offsets_[i] = acc;
      acc += pow_[N - 1 - i];
    }
    offsets_[N] = acc;
    size_ = acc;
  }

  /// (q^N - 1)/(q - 1).
  static BigInt count(std::uint64_t q, std::size_t N) { return (big_pow(q, N) - 1) / (q - 1); }

  std::uint64_t size() const noexcept { return size_; }
  std::size_t length() const noexcept { return N_; }
  const Field& field() const noexcept { return field_; }

  void decode(std::uint64_t id, std::span<Elem> out) const {
    std::size_t lead = static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), id) - offsets_.begin()) - 1;
    std::uint64_t tail = id - offsets_[lead];
    std::fill(out.begin(), out.end(), Field::zero());
    out[lead] = Field::one();
    const std::uint32_t q = field_.q();
    for (std::size_t j = N_ - 1; j > lead; --j) {
      out[j] = Elem{static_cast<std::uint32_t>(tail % q)};
      tail /= q;
    }
  }

  /// Id of a canonical vector.
  std::uint64_t encode(std::span<const Elem> c) const {
    std::size_t lead = 0;
    while (c[lead] == Field::zero()) ++lead;
    std::uint64_t tail = 0;
    const std::uint32_t q = field_.q();
    for (std::size_t j = lead + 1; j < N_; ++j) tail = tail * q + c[j].code;
    return offsets_[lead] + tail;
  }

  /// Scales c in place so its first nonzero entry is 1; returns false for the zero vector.
  bool canonicalize(std::span<Elem> c) const {
    std::size_t lead = 0;
    while (lead < N_ && c[lead] == Field::zero()) ++lead;
    if (lead == N_) return false;
    if (c[lead] == Field::one()) return true;
    const Elem s = field_.inv(c[lead]);
    for (std::size_t j = lead; j < N_; ++j) c[j] = field_.mul(c[j], s);
    return true;
  }

  std::uint64_t id_of(std::span<const Elem> c) const {
    std::vector<Elem> t(c.begin(), c.end());
    if (!canonicalize(t)) throw InvalidArgument("the zero polynomial defines no hypersurface");
    return encode(t);
  }

 private:
  Field field_;
  std::size_t N_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint64_t> pow_;
};

/// M_A stored by columns with zeros dropped: column m is the image of monomial m.
class SparseAction {
 public:
  SparseAction(const Field& f, std::span<const Elem> dense, std::size_t N) : field_(f), N_(N) {
    start_.push_back(0);
    for (std::size_t m = 0; m < N; ++m) {
      for (std::size_t r = 0; r < N; ++r) {
        const Elem v = dense[r * N + m];
        if (v != Field::zero()) entries_.emplace_back(static_cast<std::uint32_t>(r), v);
      }
      start_.push_back(entries_.size());
    }
  }

  void apply(std::span<const Elem> f, std::span<Elem> out) const {
    std::fill(out.begin(), out.end(), Field::zero());
    for (std::size_t m = 0; m < N_; ++m) {
      const Elem c = f[m];
      if (c == Field::zero()) continue;
      for (std::size_t e = start_[m]; e < start_[m + 1]; ++e) {
        auto& slot = out[entries_[e].first];
        slot = field_.add(slot, c == Field::one() ? entries_[e].second : field_.mul(c, entries_[e].second));
      }
    }
  }

 private:
  Field field_;
  std::size_t N_;
  std::vector<std::size_t> start_;
  std::vector<std::pair<std::uint32_t, Elem>> entries_;
};

/// The canonical PGL representatives together with their substitution matrices.
class GroupTable {
 public:
  GroupTable(const Field& f, int n, int d, std::uint64_t budget = kDefaultGroupBudget)
      : field_(f), n_(n), d_(d), builder_(f, n, d) {
    elems_ = enumerate_pgl(f, n, budget);
    N_ = builder_.basis()->size();
    mats_.reserve(elems_.size() * N_ * N_);
    for (const auto& A : elems_) {
      const auto m = builder_.matrix(A.entries());
      mats_.insert(mats_.end(), m.begin(), m.end());
    }
  }

  std::size_t size() const noexcept { return elems_.size(); }
  std::size_t N() const noexcept { return N_; }
  const Field& field() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  const GroupElem& elem(std::size_t i) const noexcept { return elems_[i]; }
  std::span<const Elem> matrix(std::size_t i) const noexcept { return {mats_.data() + i * N_ * N_, N_ * N_}; }
  const SubstitutionBuilder& builder() const noexcept { return builder_; }

  /// lambda with f o A = lambda f for the canonical vector f, if any. Returns zero when A does not fix V(f).
  Elem multiplier(std::size_t i, std::span<const Elem> f, std::size_t lead) const {
    const Elem* M = mats_.data() + i * N_ * N_;
    auto row_dot = [&](std::size_t r) {
      const Elem* row = M + r * N_;
      Elem acc = Field::zero();
      for (std::size_t m = 0; m < N_; ++m) {
        if (f[m] != Field::zero() && row[m] != Field::zero()) acc = field_.add(acc, field_.mul(row[m], f[m]));
      }
      return acc;
    };
    const Elem lambda = row_dot(lead);
    if (lambda == Field::zero()) return Field::zero();
    for (std::size_t r = 0; r < N_; ++r) {
      if (r == lead) continue;
      if (row_dot(r) != field_.mul(lambda, f[r])) return Field::zero();
    }
    return lambda;
  }

 private:
  Field field_;
  int n_;
  int d_;
  SubstitutionBuilder builder_;
  std::size_t N_ = 0;
  std::vector<GroupElem> elems_;
  std::vector<Elem> mats_;
};

inline std::size_t leading_position(std::span<const Elem> f) {
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == Field::zero()) ++lead;
  return lead;
}

struct StabilizerResult {
  PolyVec hypersurface;  // canonical
  std::vector<std::pair<GroupElem, Elem>> elements;
  std::size_t order() const noexcept { return elements.size(); }
};

inline PolyVec canonical_poly(const PolyVec& f) {
  if (f.is_zero()) throw InvalidArgument("the zero polynomial defines no hypersurface");
  const Elem lead = f.coeffs[leading_position(f.coeffs)];
  return scale(f, f.field.inv(lead));
}

/// Aut(V(f)) inside PGL_{n+1}(F_q), as (canonical A, lambda) with f o A = lambda f.
inline StabilizerResult stabilizer(const PolyVec& f, std::uint64_t group_budget = kDefaultGroupBudget) {
  StabilizerResult res{canonical_poly(f), {}};
  const Field& F = f.field;
  const SubstitutionBuilder builder(F, f.n(), f.degree());
  const std::size_t N = f.coeffs.size();
  const auto& c = res.hypersurface.coeffs;
  const std::size_t lead = leading_position(c);
  std::vector<Elem> img(N);
  for_each_pgl(
      F, f.n(),
      [&](const GroupElem& A) {
        const auto M = builder.matrix(A.entries());
        for (std::size_t r = 0; r < N; ++r) {
          Elem acc = Field::zero();
          for (std::size_t m = 0; m < N; ++m) acc = F.add(acc, F.mul(M[r * N + m], c[m]));
          img[r] = acc;
        }
        const Elem lambda = img[lead];
        if (lambda == Field::zero()) return true;
        for (std::size_t r = 0; r < N; ++r) {
          if (img[r] != F.mul(lambda, c[r])) return true;
        }
        res.elements.emplace_back(A, lambda);
        return true;
      },
      group_budget);
  return res;
}

// ---------------------------------------------------------------------------
// Fixed-space dimensions over all non-scalar (A, lambda).

struct FixedWitness {
  std::uint64_t index = 0;  // position of A in the PGL enumeration
  GroupElem A;
  Elem lambda;
  std::size_t dim = 0;
};

struct FixedDimCensus {
  std::uint64_t pairs = 0;
  std::optional<FixedWitness> max;       // largest dim; ties go to the earliest A
  std::optional<FixedWitness> max_diag;  // same over diagonal A
  BigInt tally = 0;                      // sum of q^dim
  std::uint64_t bound_violations = 0;
  std::uint64_t bound_alt_violations = 0;
  std::uint64_t threshold_violations = 0;  // dim >= threshold with A not diagonal
  std::uint64_t threshold_alt_violations = 0;
  std::uint64_t diag_bound_violations = 0;
  std::optional<FixedWitness> first_bound_violation;
  std::optional<FixedWitness> first_threshold_violation;
  std::optional<FixedWitness> first_threshold_alt_violation;
  std::optional<FixedWitness> first_diag_bound_violation;

  int max_dim() const noexcept { return max ? static_cast<int>(max->dim) : -1; }
};

namespace detail {

inline void keep_max(std::optional<FixedWitness>& a, const std::optional<FixedWitness>& b) {
  if (!b) return;
  if (!a || b->dim > a->dim || (b->dim == a->dim && b->index < a->index)) a = b;
}

inline void keep_first(std::optional<FixedWitness>& a, const std::optional<FixedWitness>& b) {
  if (!b) return;
  if (!a || b->index < a->index) a = b;
}

inline void merge(FixedDimCensus& a, const FixedDimCensus& b) {
  a.pairs += b.pairs;
  keep_max(a.max, b.max);
  keep_max(a.max_diag, b.max_diag);
  a.tally += b.tally;
  a.bound_violations += b.bound_violations;
  a.bound_alt_violations += b.bound_alt_violations;
  a.threshold_violations += b.threshold_violations;
  a.threshold_alt_violations += b.threshold_alt_violations;
  a.diag_bound_violations += b.diag_bound_violations;
  keep_first(a.first_bound_violation, b.first_bound_violation);
  keep_first(a.first_threshold_violation, b.first_threshold_violation);
  keep_first(a.first_threshold_alt_violation, b.first_threshold_alt_violation);
  keep_first(a.first_diag_bound_violation, b.first_diag_bound_violation);
}

struct FixedLimits {
  std::size_t bound;
  std::size_t bound_alt;
  std::size_t threshold;
  std::size_t threshold_alt;
  BigInt twice_diag_bound;  // 2 * diagonal dimension bound, an integer

  FixedLimits(int n, int d)
      : bound(fixed_dim_bound(n, d).convert_to<std::size_t>()),
        bound_alt(fixed_dim_bound_alt(n, d).convert_to<std::size_t>()),
        threshold(diagonal_threshold(n, d).convert_to<std::size_t>()),
        threshold_alt(diagonal_threshold_alt(n, d).convert_to<std::size_t>()),
        twice_diag_bound(big_binom(d + n - 1, n - 1) + big_binom(d + n, n)) {}
};

inline void record_fixed(FixedDimCensus& c, const FixedLimits& lim, std::uint64_t q, std::uint64_t index,
                         const GroupElem& A, bool diagonal, Elem lambda, std::size_t dim) {
  const FixedWitness w{index, A, lambda, dim};
  ++c.pairs;
  c.tally += big_pow(q, dim);
  keep_max(c.max, w);
  if (diagonal) keep_max(c.max_diag, w);
  if (dim > lim.bound) {
    ++c.bound_violations;
    keep_first(c.first_bound_violation, w);
  }
  if (dim > lim.bound_alt) ++c.bound_alt_violations;
  if (!diagonal && dim >= lim.threshold) {
    ++c.threshold_violations;
    keep_first(c.first_threshold_violation, w);
  }
  if (!diagonal && dim >= lim.threshold_alt) {
    ++c.threshold_alt_violations;
    keep_first(c.first_threshold_alt_violation, w);
  }
  if (diagonal && BigInt(2 * dim) > lim.twice_diag_bound) {
    ++c.diag_bound_violations;
    keep_first(c.first_diag_bound_violation, w);
  }
}

// dim P^{A, lambda} for every unit lambda, from the substitution matrix of A.
inline void fixed_dims_of(const GroupTable& G, std::size_t i, const std::vector<Elem>& units, FixedDimCensus& out,
                          const FixedLimits& lim) {
  const GroupElem& A = G.elem(i);
  if (is_scalar(A)) return;
  const bool diag = is_diagonal(A);
  const std::size_t N = G.N();
  std::size_t remaining = N;
  for (Elem lambda : units) {
    // Eigenspaces for distinct lambda are independent, so their dimensions sum to at most N.
    const std::size_t dim = remaining == 0 ? 0 : detail::eigenspace_dim(G.field(), G.matrix(i), N, lambda);
    remaining -= dim;
    record_fixed(out, lim, G.field().q(), i, A, diag, lambda, dim);
  }
}

}  // namespace detail

struct RunOptions {
  int threads = 1;
  std::size_t shards = 0;  // 0: max(64, 8 * threads)
  std::vector<std::size_t> only_shards;  // empty: all shards
  std::uint64_t shard_order_seed = 0;    // nonzero: process shards in a shuffled order
  std::string checkpoint;
  std::uint64_t group_budget = kDefaultGroupBudget;
  std::uint64_t space_budget = kDefaultSpaceBudget;
  int e_max = 0;
  std::uint64_t screen_points = 200;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool sample_stabilizers = false;

  std::size_t shard_count() const { return shards > 0 ? shards : std::max<std::size_t>(64, 8 * static_cast<std::size_t>(std::max(threads, 1))); }
};

inline FixedDimCensus fixed_dim_census(const GroupTable& G, const RunOptions& opts = {}) {
  const detail::FixedLimits lim(G.n(), G.d());
  const auto units = G.field().units();
  const std::size_t shards = std::min(opts.shard_count(), std::max<std::size_t>(G.size(), 1));
  std::vector<FixedDimCensus> parts(shards);
  run_tasks(shards, opts.threads, [&](std::size_t s) {
    const auto [b, e] = shard_range(G.size(), shards, s);
    for (std::size_t i = b; i < e; ++i) detail::fixed_dims_of(G, i, units, parts[s], lim);
  });
  FixedDimCensus total;
  for (const auto& p : parts) detail::merge(total, p);
  return total;
}

inline FixedDimCensus fixed_dim_census(const Field& f, int n, int d, const RunOptions& opts = {}) {
  return fixed_dim_census(GroupTable(f, n, d, opts.group_budget), opts);
}

// ---------------------------------------------------------------------------
// Reports.

enum class CensusMode { exhaustive, group_side, sample };

inline std::string mode_name(CensusMode m) {
  switch (m) {
    case CensusMode::exhaustive:
      return "exhaustive";
    case CensusMode::group_side:
      return "group";
    case CensusMode::sample:
      return "sample";
  }
  return "?";
}

struct SampleInfo {
  std::uint64_t samples = 0;
  std::uint64_t smooth = 0;
  std::uint64_t seed = 0;
  bool enumerated = false;  // samples covered the whole space, so every vector was visited once
  double wilson_low = 0;
  double wilson_high = 0;
};

struct CensusReport {
  int n = 0;
  int d = 0;
  std::uint64_t q = 0;
  CensusMode mode = CensusMode::exhaustive;
  bool complete = true;
  std::size_t shards_done = 0;
  std::size_t shards_total = 0;
  BigInt total;  // hypersurfaces
  std::optional<BigInt> smooth;
  std::optional<BigInt> sum_aut;
  std::optional<BigInt> nontrivial;
  std::optional<Rational> average;
  std::optional<Rational> density;
  std::optional<BigInt> orbits;
  std::optional<Rational> groupoid;
  std::optional<FixedDimCensus> fixed;
  std::optional<BigInt> orbit_stabilizer_failures;
  std::optional<SampleInfo> sample;
  BigInt pgl_order;
  BigInt gl_order;
};

/// 95% Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

// ---------------------------------------------------------------------------
// Serialization of partial results and checkpoints.

namespace detail {

inline Json witness_json(const Field& f, const std::optional<FixedWitness>& w) {
  if (!w) return nullptr;
  return Json{{"index", w->index}, {"A", format_matrix(f, w->A)}, {"lambda", f.format(w->lambda)}, {"dim", w->dim}};
}

inline std::optional<FixedWitness> witness_from_json(const Field& f, const Json& j) {
  if (j.is_null()) return std::nullopt;
  FixedWitness w;
  w.index = j.at("index").get<std::uint64_t>();
  w.A = canonicalize(f, parse_matrix(j.at("A").get<std::string>(), f));
  w.lambda = f.parse(j.at("lambda").get<std::string>());
  w.dim = j.at("dim").get<std::size_t>();
  return w;
}

inline Json fixed_json(const Field& f, const FixedDimCensus& c) {
  return Json{{"pairs", c.pairs},
              {"max", witness_json(f, c.max)},
              {"max_diagonal", witness_json(f, c.max_diag)},
              {"tally", big_json(c.tally)},
              {"bound_violations", c.bound_violations},
              {"bound_alt_violations", c.bound_alt_violations},
              {"threshold_violations", c.threshold_violations},
              {"threshold_alt_violations", c.threshold_alt_violations},
              {"diagonal_bound_violations", c.diag_bound_violations},
              {"first_bound_violation", witness_json(f, c.first_bound_violation)},
              {"first_threshold_violation", witness_json(f, c.first_threshold_violation)},
              {"first_threshold_alt_violation", witness_json(f, c.first_threshold_alt_violation)},
              {"first_diagonal_bound_violation", witness_json(f, c.first_diag_bound_violation)}};
}

inline FixedDimCensus fixed_from_json(const Field& f, const Json& j) {
  FixedDimCensus c;
  c.pairs = j.at("pairs").get<std::uint64_t>();
  c.max = witness_from_json(f, j.at("max"));
  c.max_diag = witness_from_json(f, j.at("max_diagonal"));
  c.tally = big_from_json(j.at("tally"));
  c.bound_violations = j.at("bound_violations").get<std::uint64_t>();
  c.bound_alt_violations = j.at("bound_alt_violations").get<std::uint64_t>();
  c.threshold_violations = j.at("threshold_violations").get<std::uint64_t>();
  c.threshold_alt_violations = j.at("threshold_alt_violations").get<std::uint64_t>();
  c.diag_bound_violations = j.at("diagonal_bound_violations").get<std::uint64_t>();
  c.first_bound_violation = witness_from_json(f, j.at("first_bound_violation"));
  c.first_threshold_violation = witness_from_json(f, j.at("first_threshold_violation"));
  c.first_threshold_alt_violation = witness_from_json(f, j.at("first_threshold_alt_violation"));
  c.first_diag_bound_violation = witness_from_json(f, j.at("first_diagonal_bound_violation"));
  return c;
}

// Per-orbit tallies of the exhaustive census.
struct OrbitPartial {
  BigInt smooth = 0;  // hypersurfaces
  BigInt sum_aut = 0;
  BigInt nontrivial = 0;
  BigInt smooth_orbits = 0;
  BigInt orbit_stabilizer_failures = 0;
  Rational groupoid = 0;

  void merge(const OrbitPartial& o) {
    smooth += o.smooth;
    sum_aut += o.sum_aut;
    nontrivial += o.nontrivial;
    smooth_orbits += o.smooth_orbits;
    orbit_stabilizer_failures += o.orbit_stabilizer_failures;
    groupoid += o.groupoid;
  }
  Json to_json(const Field&) const {
    return Json{{"smooth", big_json(smooth)},
                {"sum_aut", big_json(sum_aut)},
                {"nontrivial", big_json(nontrivial)},
                {"smooth_orbits", big_json(smooth_orbits)},
                {"orbit_stabilizer_failures", big_json(orbit_stabilizer_failures)},
                {"groupoid", rational_json(groupoid)}};
  }
  static OrbitPartial from_json(const Field&, const Json& j) {
    OrbitPartial p;
    p.smooth = big_from_json(j.at("smooth"));
    p.sum_aut = big_from_json(j.at("sum_aut"));
    p.nontrivial = big_from_json(j.at("nontrivial"));
    p.smooth_orbits = big_from_json(j.at("smooth_orbits"));
    p.orbit_stabilizer_failures = big_from_json(j.at("orbit_stabilizer_failures"));
    p.groupoid = rational_from_json(j.at("groupoid"));
    return p;
  }
};

struct GroupPartial {
  BigInt identity_smooth = 0;
  BigInt sum_aut = 0;
  FixedDimCensus fixed;

  void merge(const GroupPartial& o) {
    identity_smooth += o.identity_smooth;
    sum_aut += o.sum_aut;
    detail::merge(fixed, o.fixed);
  }
  Json to_json(const Field& f) const {
    return Json{{"identity_smooth", big_json(identity_smooth)}, {"sum_aut", big_json(sum_aut)}, {"fixed", fixed_json(f, fixed)}};
  }
  static GroupPartial from_json(const Field& f, const Json& j) {
    GroupPartial p;
    p.identity_smooth = big_from_json(j.at("identity_smooth"));
    p.sum_aut = big_from_json(j.at("sum_aut"));
    p.fixed = fixed_from_json(f, j.at("fixed"));
    return p;
  }
};

struct SamplePartial {
  BigInt samples = 0;
  BigInt smooth = 0;
  BigInt sum_aut = 0;
  BigInt nontrivial = 0;

  void merge(const SamplePartial& o) {
    samples += o.samples;
    smooth += o.smooth;
    sum_aut += o.sum_aut;
    nontrivial += o.nontrivial;
  }
  Json to_json(const Field&) const {
    return Json{{"samples", big_json(samples)}, {"smooth", big_json(smooth)}, {"sum_aut", big_json(sum_aut)},
                {"nontrivial", big_json(nontrivial)}};
  }
  static SamplePartial from_json(const Field&, const Json& j) {
    SamplePartial p;
    p.samples = big_from_json(j.at("samples"));
    p.smooth = big_from_json(j.at("smooth"));
    p.sum_aut = big_from_json(j.at("sum_aut"));
    p.nontrivial = big_from_json(j.at("nontrivial"));
    return p;
  }
};

inline void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  write_file(tmp, text);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot replace checkpoint " + path + ": " + ec.message());
}

/// Runs the shards not yet completed (per the checkpoint), merging partials in a
/// fixed associative, commutative way so the result does not depend on order.
template <class Partial, class Work>
std::pair<Partial, std::size_t> run_sharded(const Field& field, const Json& params, std::size_t shards,
                                            const RunOptions& opts, Work&& work) {
  Partial merged;
  std::set<std::size_t> done;
  if (!opts.checkpoint.empty() && std::filesystem::exists(opts.checkpoint)) {
    Json ck;
    try {
      ck = Json::parse(read_file(opts.checkpoint));
    } catch (const Json::exception& e) {
      throw Error("unreadable checkpoint " + opts.checkpoint + ": " + e.what());
    }
    if (ck.at("params") != params) throw InvalidArgument("checkpoint " + opts.checkpoint + " was written for different parameters");
    for (const auto& s : ck.at("completed_shards")) done.insert(s.get<std::size_t>());
    merged = Partial::from_json(field, ck.at("partial"));
  }
  std::vector<std::size_t> todo;
  if (opts.only_shards.empty()) {
    for (std::size_t s = 0; s < shards; ++s) todo.push_back(s);
  } else {
    for (auto s : opts.only_shards) {
      if (s >= shards) throw InvalidArgument("shard index " + std::to_string(s) + " out of range");
      todo.push_back(s);
    }
    std::sort(todo.begin(), todo.end());
    todo.erase(std::unique(todo.begin(), todo.end()), todo.end());
  }
  std::erase_if(todo, [&](std::size_t s) { return done.count(s) > 0; });
  if (opts.shard_order_seed != 0) {
    SplitMix64 g(opts.shard_order_seed);
    std::shuffle(todo.begin(), todo.end(), g);
  }
  std::mutex mu;
  run_tasks(std::span<const std::size_t>(todo), opts.threads, [&](std::size_t s) {
    Partial p = work(s);
    std::lock_guard<std::mutex> lock(mu);
    merged.merge(p);
    done.insert(s);
    if (!opts.checkpoint.empty()) {
      Json ck{{"params", params}, {"completed_shards", Json(std::vector<std::size_t>(done.begin(), done.end()))},
              {"partial", merged.to_json(field)}};
      write_atomically(opts.checkpoint, ck.dump(1) + "\n");
    }
  });
  return {std::move(merged), done.size()};
}

inline Json run_params(int n, int d, std::uint64_t q, CensusMode mode, std::size_t shards, const RunOptions& o) {
  Json p{{"n", n}, {"d", d}, {"q", q}, {"mode", mode_name(mode)}, {"shards", shards}, {"e_max", o.e_max}};
  if (mode == CensusMode::sample) {
    p["samples"] = o.samples;
    p["seed"] = o.seed;
    p["stabilizers"] = o.sample_stabilizers;
  }
  return p;
}

inline void base_report(CensusReport& r, int n, int d, const Field& f, CensusMode mode) {
  r.n = n;
  r.d = d;
  r.q = f.q();
  r.mode = mode;
  r.total = HypersurfaceIndexer::count(f.q(), binom_u64(d + n, n));
  r.pgl_order = group_order(n, f.q(), GroupKind::PGL);
  r.gl_order = group_order(n, f.q(), GroupKind::GL);
}

// smooth hypersurfaces -> density of smooth polynomials among all q^N vectors.
inline Rational polynomial_density(const BigInt& smooth, std::uint64_t q, std::size_t N) {
  return Rational(smooth * (q - 1), big_pow(q, N));
}

inline int check_degree(int n, int d) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (d < 1) throw InvalidArgument("d must be at least 1");
  return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Orbits of PGL on hypersurfaces.

/// Union-find over all hypersurface ids, linking each id to its images under a
/// generating set of the group. Every orbit is represented by its smallest id.
class OrbitPartition {
 public:
  OrbitPartition(const HypersurfaceIndexer& ix, const SubstitutionBuilder& builder, const Field& f, int n) {
    if (ix.size() > std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("too many hypersurfaces for orbit storage");
    const std::size_t N = ix.length();
    std::vector<SparseAction> gens;
    for (const auto& g : gl_generators(f, n)) gens.emplace_back(f, builder.matrix(g.entries()), N);
    const auto M = static_cast<std::uint32_t>(ix.size());
    parent_.resize(M);
    std::iota(parent_.begin(), parent_.end(), 0U);
    std::vector<Elem> c(N);
    std::vector<Elem> img(N);
    for (std::uint32_t id = 0; id < M; ++id) {
      ix.decode(id, c);
      for (const auto& g : gens) {
        g.apply(c, img);
        ix.canonicalize(img);
        unite(id, static_cast<std::uint32_t>(ix.encode(img)));
      }
    }
    sizes_.assign(M, 0);
    for (std::uint32_t id = 0; id < M; ++id) {
      parent_[id] = find(id);
      ++sizes_[parent_[id]];
    }
    for (std::uint32_t id = 0; id < M; ++id) {
      if (parent_[id] == id) reps_.push_back(id);
    }
  }

  const std::vector<std::uint32_t>& reps() const noexcept { return reps_; }
  std::uint32_t orbit_size(std::uint32_t rep) const noexcept { return sizes_[rep]; }
  std::uint32_t rep_of(std::uint32_t id) const noexcept { return parent_[id]; }

 private:
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint32_t> reps_;
};

/// |Stab(f)| for a canonical vector f, counting canonical A with f o A = lambda f.
inline std::size_t stabilizer_order(const GroupTable& G, std::span<const Elem> f) {
  const std::size_t lead = leading_position(f);
  std::size_t order = 0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G.multiplier(i, f, lead) != Field::zero()) ++order;
  }
  return order;
}

struct OrbitRecord {
  std::uint64_t rep = 0;  // hypersurface id
  PolyVec poly;
  std::uint64_t size = 0;
  bool smooth = false;
  std::size_t stabilizer = 0;  // smooth orbits only
};

/// Every PGL-orbit of hypersurfaces with its smoothness and, for smooth orbits, stabilizer order.
inline std::vector<OrbitRecord> list_orbits(const Field& f, int n, int d, const RunOptions& opts = {}) {
  detail::check_degree(n, d);
  const GroupTable G(f, n, d, opts.group_budget);
  const HypersurfaceIndexer ix(f, G.N(), opts.space_budget);
  const OrbitPartition P(ix, G.builder(), f, n);
  const SmoothClassifier cls(f, n, d, ClassifierOptions{opts.e_max, opts.screen_points});
  std::vector<OrbitRecord> out(P.reps().size());
  const std::size_t shards = std::min(opts.shard_count(), std::max<std::size_t>(out.size(), 1));
  run_tasks(shards, opts.threads, [&](std::size_t s) {
    const auto [b, e] = shard_range(out.size(), shards, s);
    std::vector<Elem> c(G.N());
    for (std::size_t k = b; k < e; ++k) {
      const std::uint32_t rep = P.reps()[k];
      ix.decode(rep, c);
      OrbitRecord rec{rep, PolyVec(G.builder().basis(), f, c), P.orbit_size(rep), cls.smooth(c), 0};
      if (rec.smooth) rec.stabilizer = stabilizer_order(G, c);
      out[k] = std::move(rec);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Census modes.

/// Enumerates every hypersurface (orbit by orbit), classifies smoothness and computes stabilizers.
inline CensusReport census_exhaustive(const Field& f, int n, int d, const RunOptions& opts = {},
                                      const GroupTable* table = nullptr) {
  detail::check_degree(n, d);
  CensusReport r;
  detail::base_report(r, n, d, f, CensusMode::exhaustive);
  const std::size_t N = binom_u64(d + n, n);
  const HypersurfaceIndexer ix(f, N, opts.space_budget);  // budget check before the group tables
  std::optional<GroupTable> own;
  if (!table) table = &own.emplace(f, n, d, opts.group_budget);
  const GroupTable& G = *table;
  const OrbitPartition P(ix, G.builder(), f, n);
  const SmoothClassifier cls(f, n, d, ClassifierOptions{opts.e_max, opts.screen_points});
  const BigInt pgl = r.pgl_order;
  const std::size_t shards = opts.shard_count();
  const Json params = detail::run_params(n, d, f.q(), CensusMode::exhaustive, shards, opts);
  auto [part, done] = detail::run_sharded<detail::OrbitPartial>(f, params, shards, opts, [&](std::size_t s) {
    detail::OrbitPartial p;
    const auto [b, e] = shard_range(P.reps().size(), shards, s);
    std::vector<Elem> c(N);
    for (std::size_t k = b; k < e; ++k) {
      const std::uint32_t rep = P.reps()[k];
      ix.decode(rep, c);
      if (!cls.smooth(c)) continue;
      const std::uint64_t size = P.orbit_size(rep);
      const std::size_t stab = stabilizer_order(G, c);
      p.smooth += size;
      p.sum_aut += BigInt(size) * stab;
      if (stab > 1) p.nontrivial += size;
      p.smooth_orbits += 1;
      p.groupoid += Rational(1, stab);
      if (BigInt(size) * stab != pgl) p.orbit_stabilizer_failures += 1;
    }
    return p;
  });
  r.shards_done = done;
  r.shards_total = shards;
  r.complete = done == shards;
  r.smooth = part.smooth;
  r.sum_aut = part.sum_aut;
  r.nontrivial = part.nontrivial;
  if (part.smooth > 0) r.average = Rational(part.sum_aut, part.smooth);
  r.density = detail::polynomial_density(part.smooth, f.q(), N);
  r.orbits = part.smooth_orbits;
  r.groupoid = part.groupoid;
  r.orbit_stabilizer_failures = part.orbit_stabilizer_failures;
  r.fixed = fixed_dim_census(G, opts);
  return r;
}

/// Sum of |Aut| computed from the group side: for each canonical A and unit lambda,
/// the smooth hypersurfaces whose equations lie in P^{A,lambda}.
inline CensusReport census_group_side(const Field& f, int n, int d, const RunOptions& opts = {}) {
  detail::check_degree(n, d);
  CensusReport r;
  detail::base_report(r, n, d, f, CensusMode::group_side);
  const std::size_t N = binom_u64(d + n, n);
  const HypersurfaceIndexer ix(f, N, opts.space_budget);
  const GroupTable G(f, n, d, opts.group_budget);
  const SmoothClassifier cls(f, n, d, ClassifierOptions{opts.e_max, opts.screen_points});
  const detail::FixedLimits lim(n, d);
  const auto units = f.units();
  const auto elements = f.elements();
  // 0 unknown, 1 smooth, 2 singular; concurrent writers store the same value.
  std::vector<std::atomic<std::uint8_t>> memo(ix.size());
  auto smooth_id = [&](std::uint64_t id, std::span<const Elem> c) {
    std::uint8_t v = memo[id].load(std::memory_order_relaxed);
    if (v == 0) {
      v = cls.smooth(c) ? 1 : 2;
      memo[id].store(v, std::memory_order_relaxed);
    }
    return v == 1;
  };
  const std::size_t shards = std::min(opts.shard_count(), G.size());
  const Json params = detail::run_params(n, d, f.q(), CensusMode::group_side, shards, opts);
  auto [part, done] = detail::run_sharded<detail::GroupPartial>(f, params, shards, opts, [&](std::size_t s) {
    detail::GroupPartial p;
    const auto [b, e] = shard_range(G.size(), shards, s);
    std::vector<Elem> v(N);
    std::vector<std::uint32_t> digits;
    for (std::size_t i = b; i < e; ++i) {
      const GroupElem& A = G.elem(i);
      const bool scalar = is_scalar(A);
      const bool diag = is_diagonal(A);
      for (Elem lambda : units) {
        const Kernel K = detail::eigenspace_basis(f, G.matrix(i), N, lambda);
        if (!scalar) detail::record_fixed(p.fixed, lim, f.q(), i, A, diag, lambda, K.dim);
        // Canonical members: coefficient 1 on basis vector j, 0 before it, anything after.
        BigInt count = 0;
        for (std::size_t j = 0; j < K.dim; ++j) {
          v = K.basis[j];
          const std::size_t free = K.dim - 1 - j;
          digits.assign(free, 0);
          for (;;) {
            if (smooth_id(ix.encode(v), v)) count += 1;
            std::size_t pos = 0;
            while (pos < free) {
              const std::uint32_t old = digits[pos];
              const std::uint32_t nxt = old + 1 == f.q() ? 0 : old + 1;
              digits[pos] = nxt;
              const Elem delta = f.sub(elements[nxt], elements[old]);
              const auto& bv = K.basis[j + 1 + pos];
              for (std::size_t t = 0; t < N; ++t) {
                if (bv[t] != Field::zero()) v[t] = f.add(v[t], f.mul(delta, bv[t]));
              }
              if (nxt != 0) break;
              ++pos;
            }
            if (pos == free) break;
          }
        }
        p.sum_aut += count;
        if (scalar && lambda == Field::one()) p.identity_smooth += count;
      }
    }
    return p;
  });
  r.shards_done = done;
  r.shards_total = shards;
  r.complete = done == shards;
  r.smooth = part.identity_smooth;
  r.sum_aut = part.sum_aut;
  if (part.identity_smooth > 0) r.average = Rational(part.sum_aut, part.identity_smooth);
  r.density = detail::polynomial_density(part.identity_smooth, f.q(), N);
  if (r.complete) {
    // Burnside: orbits = (1/|G|) sum_g |Fix(g)|.
    if (part.sum_aut % r.pgl_order != 0) throw Error("orbit count from the group side is not an integer");
    r.orbits = part.sum_aut / r.pgl_order;
  }
  r.groupoid = Rational(part.identity_smooth, r.pgl_order);
  r.fixed = part.fixed;
  return r;
}

/// Smooth density from uniformly drawn coefficient vectors (the zero vector counts
/// as not smooth). When the request covers the whole space every vector is visited once instead.
inline CensusReport census_sample(const Field& f, int n, int d, const RunOptions& opts) {
  detail::check_degree(n, d);
  if (opts.samples < 1) throw InvalidArgument("samples must be at least 1");
  CensusReport r;
  detail::base_report(r, n, d, f, CensusMode::sample);
  const std::size_t N = binom_u64(d + n, n);
  const BigInt space = big_pow(f.q(), N);
  const bool enumerate = BigInt(opts.samples) >= space;
  std::optional<HypersurfaceIndexer> ix;
  if (enumerate) ix.emplace(f, N, opts.space_budget);
  std::optional<GroupTable> G;
  if (opts.sample_stabilizers) G.emplace(f, n, d, opts.group_budget);
  const SmoothClassifier cls(f, n, d, ClassifierOptions{opts.e_max, opts.screen_points});
  const std::uint64_t units = f.q() - 1;
  const std::uint64_t items = enumerate ? ix->size() : opts.samples;
  const std::size_t shards = std::min<std::size_t>(opts.shard_count(), items);
  const Json params = detail::run_params(n, d, f.q(), CensusMode::sample, shards, opts);
  auto [part, done] = detail::run_sharded<detail::SamplePartial>(f, params, shards, opts, [&](std::size_t s) {
    detail::SamplePartial p;
    const auto [b, e] = shard_range(items, shards, s);
    std::vector<Elem> c(N);
    for (std::uint64_t i = b; i < e; ++i) {
      // Enumeration visits each hypersurface once on behalf of its q - 1 equations.
      const std::uint64_t weight = enumerate ? units : 1;
      if (enumerate) {
        ix->decode(i, c);
      } else {
        SplitMix64 g = SplitMix64::stream(opts.seed, i);
        for (auto& x : c) x = Elem{static_cast<std::uint32_t>(g.below(f.q()))};
      }
      p.samples += weight;
      const std::size_t lead = leading_position(c);
      if (lead == N || !cls.smooth(c)) continue;
      p.smooth += weight;
      if (G) {
        const Elem s0 = f.inv(c[lead]);
        for (auto& x : c) x = f.mul(x, s0);
        const std::size_t stab = stabilizer_order(*G, c);
        p.sum_aut += BigInt(weight) * stab;
        if (stab > 1) p.nontrivial += weight;
      }
    }
    if (enumerate && s == 0) p.samples += 1;  // the zero vector
    return p;
  });
  r.shards_done = done;
  r.shards_total = shards;
  r.complete = done == shards;
  SampleInfo info;
  info.samples = part.samples.convert_to<std::uint64_t>();
  info.smooth = part.smooth.convert_to<std::uint64_t>();
  info.seed = opts.seed;
  info.enumerated = enumerate;
  std::tie(info.wilson_low, info.wilson_high) = wilson_interval(info.smooth, info.samples);
  r.sample = info;
  r.smooth = part.smooth;
  if (part.samples > 0) r.density = Rational(part.smooth, part.samples);
  if (G) {
    r.sum_aut = part.sum_aut;
    r.nontrivial = part.nontrivial;
    if (part.smooth > 0) r.average = Rational(part.sum_aut, part.smooth);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Verification of the dimension bounds and counting chain.

struct CheckRecord {
  std::string check;
  bool pass = false;
  bool informational = false;
  std::string witness;
  std::string detail;
};

struct VerificationLog {
  int n = 0;
  int d = 0;
  std::uint64_t q = 0;
  std::vector<CheckRecord> checks;
  FixedDimCensus fixed;
  CensusReport census;

  /// True when every non-informational check passed.
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass || c.informational; });
  }
};

namespace detail {

inline std::string describe(const Field& f, const std::optional<FixedWitness>& w) {
  if (!w) return "";
  return "A=" + format_matrix(f, w->A) + " lambda=" + f.format(w->lambda) + " dim=" + std::to_string(w->dim);
}

}  // namespace detail

inline VerificationLog verify_bounds(const Field& f, int n, int d, const RunOptions& opts = {}) {
  detail::check_degree(n, d);
  VerificationLog log;
  log.n = n;
  log.d = d;
  log.q = f.q();
  const std::size_t N = binom_u64(d + n, n);
  const HypersurfaceIndexer budget_probe(f, N, opts.space_budget);
  const GroupTable G(f, n, d, opts.group_budget);
  RunOptions inner = opts;
  inner.checkpoint.clear();
  inner.only_shards.clear();
  log.census = census_exhaustive(f, n, d, inner, &G);
  log.fixed = *log.census.fixed;
  const auto& fx = log.fixed;
  const auto& cs = log.census;
  const std::string maxs = std::to_string(fx.max_dim());

  const BigInt bound = fixed_dim_bound(n, d);
  log.checks.push_back({"fixed_dim_bound", fx.bound_violations == 0, false,
                        detail::describe(f, fx.bound_violations ? fx.first_bound_violation : fx.max),
                        "max dim " + maxs + " vs bound " + bound.str() + " over " + std::to_string(fx.pairs) +
                            " non-scalar pairs; " + std::to_string(fx.bound_violations) + " violations"});
  const BigInt thr = diagonal_threshold(n, d);
  log.checks.push_back({"diagonal_threshold", fx.threshold_violations == 0, false,
                        detail::describe(f, fx.first_threshold_violation),
                        "pairs with dim >= " + thr.str() + " and A not diagonal: " + std::to_string(fx.threshold_violations)});
  const Rational db = diagonal_dim_bound(n, d);
  log.checks.push_back({"diagonal_dim_bound", fx.diag_bound_violations == 0, false,
                        detail::describe(f, fx.diag_bound_violations ? fx.first_diag_bound_violation : fx.max_diag),
                        "max diagonal dim " + (fx.max_diag ? std::to_string(fx.max_diag->dim) : std::string("-")) +
                            " vs bound " + to_string(db)});
  const BigInt& S = *cs.smooth;
  const BigInt& sum = *cs.sum_aut;
  const BigInt& nt = *cs.nontrivial;
  const bool sandwich = S <= sum && sum <= S + fx.tally;
  log.checks.push_back({"sandwich", sandwich, false, "",
                        S.str() + " <= " + sum.str() + " <= " + S.str() + " + " + fx.tally.str()});
  log.checks.push_back({"nontrivial_gap", nt <= sum - S, false, "",
                        "nontrivial " + nt.str() + " <= sum_aut - smooth = " + BigInt(sum - S).str()});
  const Rational ex = nontrivial_exponent(n, d);
  log.checks.push_back({"nontrivial_exponent", less_than_q_pow(nt, f.q(), ex), false, "",
                        "nontrivial " + nt.str() + " < " + std::to_string(f.q()) + "^(" + to_string(ex) + ")"});
  log.checks.push_back({"burnside", *cs.groupoid * Rational(cs.pgl_order) == Rational(S), false, "",
                        "groupoid " + to_string(*cs.groupoid) + " * " + cs.pgl_order.str() + " vs smooth " + S.str()});
  log.checks.push_back({"orbit_stabilizer", *cs.orbit_stabilizer_failures == 0, false, "",
                        cs.orbits->str() + " smooth orbits, " + cs.orbit_stabilizer_failures->str() + " with |orbit|*|stab| != |PGL|"});

  const BigInt bound_alt = fixed_dim_bound_alt(n, d);
  log.checks.push_back({"fixed_dim_bound_alt", fx.bound_alt_violations == 0, true, detail::describe(f, fx.max),
                        "max dim " + maxs + " vs bound " + bound_alt.str()});
  log.checks.push_back({"diagonal_threshold_alt", fx.threshold_alt_violations == 0, true,
                        detail::describe(f, fx.first_threshold_alt_violation),
                        "pairs with dim >= " + diagonal_threshold_alt(n, d).str() +
                            " and A not diagonal: " + std::to_string(fx.threshold_alt_violations)});
  const BigInt ex_alt = nontrivial_exponent_alt(n, d);
  log.checks.push_back({"nontrivial_exponent_alt", nt < big_pow(f.q(), ex_alt.convert_to<std::uint64_t>()), true, "",
                        "nontrivial " + nt.str() + " < " + std::to_string(f.q()) + "^" + ex_alt.str()});
  return log;
}

// ---------------------------------------------------------------------------
// Output.

namespace detail {

inline std::string opt_str(const std::optional<BigInt>& v) { return v ? v->str() : ""; }
inline std::string num_str(const std::optional<Rational>& v) {
  return v ? boost::multiprecision::numerator(*v).str() : "";
}
inline std::string den_str(const std::optional<Rational>& v) {
  return v ? boost::multiprecision::denominator(*v).str() : "";
}

inline Json opt_big(const std::optional<BigInt>& v) { return v ? big_json(*v) : Json(nullptr); }
inline Json opt_rat(const std::optional<Rational>& v) { return v ? rational_json(*v) : Json(nullptr); }

}  // namespace detail

inline const char* kCensusCsvHeader =
    "n,d,q,total,smooth,sum_aut,nontrivial,average_num,average_den,density_num,density_den,orbits,groupoid_num,"
    "groupoid_den,max_fixed_dim,mode,seed";

inline std::string csv_row(const CensusReport& r) {
  std::ostringstream s;
  s << r.n << ',' << r.d << ',' << r.q << ',' << r.total << ',' << detail::opt_str(r.smooth) << ','
    << detail::opt_str(r.sum_aut) << ',' << detail::opt_str(r.nontrivial) << ',' << detail::num_str(r.average) << ','
    << detail::den_str(r.average) << ',' << detail::num_str(r.density) << ',' << detail::den_str(r.density) << ','
    << detail::opt_str(r.orbits) << ',' << detail::num_str(r.groupoid) << ',' << detail::den_str(r.groupoid) << ',';
  if (r.fixed && r.fixed->max) s << r.fixed->max->dim;
  s << ',' << mode_name(r.mode) << ',';
  if (r.sample) s << r.sample->seed;
  return s.str();
}

inline std::string to_csv(const CensusReport& r) { return std::string(kCensusCsvHeader) + "\n" + csv_row(r) + "\n"; }

inline Json to_json(const CensusReport& r) {
  const Field f = Field::from_order(r.q);
  Json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["q"] = r.q;
  j["mode"] = mode_name(r.mode);
  j["complete"] = r.complete;
  j["shards_done"] = r.shards_done;
  j["shards_total"] = r.shards_total;
  j["total"] = big_json(r.total);
  j["smooth"] = detail::opt_big(r.smooth);
  j["sum_aut"] = detail::opt_big(r.sum_aut);
  j["nontrivial"] = detail::opt_big(r.nontrivial);
  j["average"] = detail::opt_rat(r.average);
  j["density"] = detail::opt_rat(r.density);
  j["orbits"] = detail::opt_big(r.orbits);
  j["groupoid"] = detail::opt_rat(r.groupoid);
  j["max_fixed_dim"] = r.fixed && r.fixed->max ? Json(r.fixed->max->dim) : Json(nullptr);
  j["pgl_order"] = big_json(r.pgl_order);
  j["gl_order"] = big_json(r.gl_order);
  if (r.smooth && r.mode != CensusMode::sample) {
    j["smooth_over_pgl"] = rational_json(Rational(*r.smooth, r.pgl_order));
    j["smooth_over_gl"] = rational_json(Rational(*r.smooth, r.gl_order));
  }
  j["zeta_density"] = rational_json(zeta_density(r.n, r.q));
  if (r.orbit_stabilizer_failures) j["orbit_stabilizer_failures"] = big_json(*r.orbit_stabilizer_failures);
  if (r.fixed) j["fixed"] = detail::fixed_json(f, *r.fixed);
  if (r.sample) {
    j["seed"] = r.sample->seed;
    j["sample"] = Json{{"samples", r.sample->samples},
                       {"smooth", r.sample->smooth},
                       {"enumerated", r.sample->enumerated},
                       {"wilson95", Json::array({r.sample->wilson_low, r.sample->wilson_high})}};
  }
  return j;
}

inline Json to_json(const VerificationLog& log) {
  Json checks = Json::array();
  for (const auto& c : log.checks) {
    checks.push_back(Json{{"check", c.check},
                          {"status", c.pass ? "pass" : "fail"},
                          {"informational", c.informational},
                          {"witness", c.witness},
                          {"detail", c.detail}});
  }
  return checks;
}

inline std::string to_csv(const VerificationLog& log) {
  std::ostringstream s;
  s << "check,status,informational,witness,detail\n";
  auto quote = [](const std::string& x) {
    std::string o = "\"";
    for (char ch : x) {
      if (ch == '"') o += '"';
      o += ch;
    }
    return o + "\"";
  };
  for (const auto& c : log.checks) {
    s << c.check << ',' << (c.pass ? "pass" : "fail") << ',' << (c.informational ? "true" : "false") << ','
      << quote(c.witness) << ',' << quote(c.detail) << '\n';
  }
  return s.str();
}

}  // namespace hypaut

#endif  // HYPAUT_CENSUS_HPP
