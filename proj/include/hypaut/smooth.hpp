// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_SMOOTH_HPP
#define HYPAUT_SMOOTH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "linalg.hpp"
#include "polyspace.hpp"

namespace hypaut {

/// A projective point over F_{q^k}, first nonzero coordinate equal to 1.
struct Witness {
  int ext_degree = 1;
  Field field;  // F_{q^k}
  std::vector<Elem> coords;
};

struct SmoothnessVerdict {
  enum class Method { saturation, points };

  bool smooth = false;
  Method method = Method::saturation;
  std::optional<Witness> witness;
  /// First degree at which the Macaulay matrix had full rank (smooth verdicts only).
  std::optional<int> saturation_degree;
};

inline int default_e_max(int n, int d) { return (n + 2) * (d - 1) + 1; }

struct SaturationOptions {
  int e_max = 0;  // 0 selects default_e_max(n, d)
};

namespace detail {

// Sparse support of a coefficient vector.
using Sparse = std::vector<std::pair<std::uint32_t, Elem>>;

inline Sparse support(std::span<const Elem> v) {
  Sparse s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != Field::zero()) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  }
  return s;
}

// Partial-derivative map on raw coefficient vectors of degree d.
class PartialMap {
 public:
  PartialMap() = default;
  PartialMap(const Field& f, const MonomialBasis& top, const MonomialBasis& lower) : field_(f), vars_(top.vars()) {
    lower_size_ = lower.size();
    entries_.resize(top.size() * vars_);
    std::vector<std::uint16_t> e(vars_);
    for (std::size_t m = 0; m < top.size(); ++m) {
      const auto em = top.exponents(m);
      for (int v = 0; v < vars_; ++v) {
        Entry ent{0, Field::zero()};
        if (em[v] > 0) {
          ent.mult = f.from_int(em[v]);
          std::copy(em.begin(), em.end(), e.begin());
          --e[v];
          ent.target = static_cast<std::uint32_t>(lower.index_of(e));
        }
        entries_[m * vars_ + v] = ent;
      }
    }
  }

  /// out[v] = coefficients of df/dx_v.
  void apply(std::span<const Elem> f, std::vector<std::vector<Elem>>& out) const {
    out.assign(vars_, std::vector<Elem>(lower_size_));
    for (std::size_t m = 0; m < f.size(); ++m) {
      if (f[m] == Field::zero()) continue;
      for (int v = 0; v < vars_; ++v) {
        const Entry& ent = entries_[m * vars_ + v];
        if (ent.mult == Field::zero()) continue;
        auto& slot = out[v][ent.target];
        slot = field_.add(slot, field_.mul(ent.mult, f[m]));
      }
    }
  }

 private:
  struct Entry {
    std::uint32_t target;
    Elem mult;
  };
  Field field_;
  int vars_ = 0;
  std::size_t lower_size_ = 0;
  std::vector<Entry> entries_;
};

}  // namespace detail

/// Exact smoothness test over the algebraic closure.
///
/// With G = {f, df/dx_1, ..., df/dx_{n+1}}, V(f) is smooth iff the degree-e part of
/// the ideal (G) is all of S_e for some e <= e_max. S_e is spanned by the products
/// m * g (deg m = e - deg g); fullness is detected by rank.
class SaturationTester {
 public:
  SaturationTester(Field field, int n, int d, SaturationOptions opts = {})
      : field_(std::move(field)), n_(n), d_(d) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    if (d < 1) throw InvalidArgument("degree must be at least 1");
    e_max_ = opts.e_max > 0 ? opts.e_max : default_e_max(n, d);
    if (e_max_ < d) throw InvalidArgument("e_max must be at least the degree");
    for (int t = 0; t <= e_max_; ++t) bases_.push_back(monomial_basis(n, t));
    partial_map_ = detail::PartialMap(field_, *bases_[d], *bases_[d - 1]);
    f_tables_.resize(e_max_ + 1);
    p_tables_.resize(e_max_ + 1);
    for (int e = d; e <= e_max_; ++e) {
      f_tables_[e] = product_table(*bases_[e - d], *bases_[d], *bases_[e]);
      p_tables_[e] = product_table(*bases_[e - d + 1], *bases_[d - 1], *bases_[e]);
    }
    // Euler: sum_i x_i df/dx_i = d f, so f lies in the ideal of its partials when p does not divide d;
    // the f rows are then redundant and skipped.
    f_redundant_ = field_.from_int(d) != Field::zero();
  }

  int n() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  int e_max() const noexcept { return e_max_; }
  const Field& field() const noexcept { return field_; }
  const BasisPtr& basis() const noexcept { return bases_[d_]; }

  SmoothnessVerdict test(std::span<const Elem> f) const {
    if (f.size() != bases_[d_]->size()) throw InvalidArgument("coefficient vector has the wrong length");
    if (std::all_of(f.begin(), f.end(), [](Elem c) { return c == Field::zero(); })) {
      throw InvalidArgument("the zero polynomial defines no hypersurface");
    }
    Generators g = generators(f);
    SmoothnessVerdict out;
    out.method = SmoothnessVerdict::Method::saturation;
    const int e_lin = std::clamp((n_ + 1) * (d_ - 2) + 2, d_, e_max_);
    for (int e = d_; e <= e_lin; ++e) {
      if (full_at(g, e)) {
        out.smooth = true;
        out.saturation_degree = e;
        return out;
      }
    }
    if (e_lin == e_max_ || !full_at(g, e_max_)) return out;
    // Fullness is monotone in e: binary search for the first full degree.
    int lo = e_lin + 1;
    int hi = e_max_;
    while (lo < hi) {
      const int mid = lo + (hi - lo) / 2;
      if (full_at(g, mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    out.smooth = true;
    out.saturation_degree = lo;
    return out;
  }

  SmoothnessVerdict test(const PolyVec& f) const {
    if (!(f.field == field_) || f.n() != n_ || f.degree() != d_) {
      throw InvalidArgument("polynomial does not match the tester's field, n or d");
    }
    return test(std::span<const Elem>(f.coeffs));
  }

  /// Whether the Macaulay matrix in degree e has full rank.
  bool full_at_degree(std::span<const Elem> f, int e) const {
    if (e < d_ || e > e_max_) throw InvalidArgument("degree outside [d, e_max]");
    return full_at(generators(f), e);
  }

 private:
  struct Generators {
    detail::Sparse f;
    std::vector<detail::Sparse> partials;
  };

  Generators generators(std::span<const Elem> f) const {
    Generators g;
    g.f = detail::support(f);
    std::vector<std::vector<Elem>> parts;
    partial_map_.apply(f, parts);
    for (const auto& p : parts) {
      auto s = detail::support(p);
      if (!s.empty()) g.partials.push_back(std::move(s));
    }
    return g;
  }

  bool full_at(const Generators& g, int e) const {
    const std::size_t cols = bases_[e]->size();
    const std::size_t prow = bases_[e - d_ + 1]->size();
    const std::size_t frow = bases_[e - d_]->size();
    const bool use_f = !f_redundant_ || g.partials.empty();
    const std::size_t total_rows = prow * g.partials.size() + (use_f ? frow : 0);
    if (total_rows < cols) return false;
    RowEchelon ech(field_, cols);
    detail::Sparse row;
    const std::size_t lower_size = bases_[d_ - 1]->size();
    const auto& pt = p_tables_[e];
    for (const auto& part : g.partials) {
      for (std::size_t u = 0; u < prow; ++u) {
        row.clear();
        for (const auto& [j, c] : part) row.emplace_back(pt[u * lower_size + j], c);
        ech.insert_sparse(row);
        if (ech.full()) return true;
      }
    }
    if (use_f) {
      const std::size_t top_size = bases_[d_]->size();
      const auto& ft = f_tables_[e];
      for (std::size_t u = 0; u < frow; ++u) {
        row.clear();
        for (const auto& [j, c] : g.f) row.emplace_back(ft[u * top_size + j], c);
        ech.insert_sparse(row);
        if (ech.full()) return true;
      }
    }
    return ech.full();
  }

  Field field_;
  int n_;
  int d_;
  int e_max_;
  bool f_redundant_ = false;
  std::vector<BasisPtr> bases_;
  detail::PartialMap partial_map_;
  std::vector<std::vector<std::uint32_t>> f_tables_;
  std::vector<std::vector<std::uint32_t>> p_tables_;
};

inline constexpr std::uint64_t kDefaultPointBudget = 1000000;

/// Searches P^n(F_{q^k}), k = 1..k_max, for a common zero of f and its partials.
/// A witness proves singularity; finding none proves nothing on its own.
class PointOracle {
 public:
  PointOracle(Field field, int n, int d, int k_max, std::uint64_t budget = kDefaultPointBudget)
      : field_(std::move(field)), n_(n), d_(d) {
    if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
    if (d < 1) throw InvalidArgument("degree must be at least 1");
    top_ = monomial_basis(n, d);
    lower_ = monomial_basis(n, d - 1);
    partial_map_ = detail::PartialMap(field_, *top_, *lower_);
    std::uint64_t total = 0;
    for (int k = 1; k <= k_max; ++k) {
      const BigInt Q = big_pow(field_.q(), static_cast<std::uint64_t>(k));
      BigInt pts = 0;
      for (int i = 0; i <= n; ++i) pts += big_pow(Q.convert_to<std::uint64_t>(), static_cast<std::uint64_t>(i));
      if (Q > (BigInt(1) << 31) || pts + total > budget) {
        throw BudgetExceeded("point search over P^" + std::to_string(n) + "(F_" + Q.str() +
                             ") exceeds the point budget " + std::to_string(budget));
      }
      total += pts.convert_to<std::uint64_t>();
      Level lvl;
      lvl.k = k;
      lvl.big = k == 1 ? field_ : Field::make(field_.p(), field_.k() * k);
      lvl.embed = FieldEmbedding(field_, lvl.big);
      enumerate_points(lvl);
      levels_.push_back(std::move(lvl));
    }
  }

  int k_max() const noexcept { return static_cast<int>(levels_.size()); }

  std::uint64_t point_count() const noexcept {
    std::uint64_t c = 0;
    for (const auto& l : levels_) c += l.points.size() / static_cast<std::size_t>(n_ + 1);
    return c;
  }

  std::optional<Witness> find(std::span<const Elem> f, int k_limit = 0) const {
    std::vector<std::vector<Elem>> parts;
    partial_map_.apply(f, parts);
    for (const auto& lvl : levels_) {
      if (k_limit > 0 && lvl.k > k_limit) break;
      if (auto w = search(lvl, f, parts)) return w;
    }
    return std::nullopt;
  }

 private:
  struct Level {
    int k = 1;
    Field big;
    FieldEmbedding embed;
    std::vector<Elem> points;      // flattened, n+1 coordinates each
    std::vector<Elem> top_vals;    // monomial values, degree d
    std::vector<Elem> lower_vals;  // monomial values, degree d-1
  };

  static std::vector<Elem> monomial_values(const Field& F, const MonomialBasis& B, std::span<const Elem> pt) {
    const int v = B.vars();
    const int d = B.degree();
    std::vector<Elem> pw(static_cast<std::size_t>(v * (d + 1)));
    for (int i = 0; i < v; ++i) {
      pw[static_cast<std::size_t>(i * (d + 1))] = Field::one();
      for (int t = 1; t <= d; ++t) {
        pw[static_cast<std::size_t>(i * (d + 1) + t)] = F.mul(pw[static_cast<std::size_t>(i * (d + 1) + t - 1)], pt[i]);
      }
    }
    std::vector<Elem> out(B.size());
    for (std::size_t m = 0; m < B.size(); ++m) {
      const auto e = B.exponents(m);
      Elem x = Field::one();
      for (int i = 0; i < v; ++i) x = F.mul(x, pw[static_cast<std::size_t>(i * (d + 1) + e[i])]);
      out[m] = x;
    }
    return out;
  }

  // Ascending numeric order with x_1 most significant: (0:..:0:1) first.
  void enumerate_points(Level& lvl) const {
    const int v = n_ + 1;
    const std::uint32_t Q = lvl.big.q();
    std::vector<Elem> pt(static_cast<std::size_t>(v));
    for (int lead = v - 1; lead >= 0; --lead) {
      const int tail = v - 1 - lead;
      std::uint64_t count = 1;
      for (int i = 0; i < tail; ++i) count *= Q;
      for (std::uint64_t c = 0; c < count; ++c) {
        std::fill(pt.begin(), pt.end(), Field::zero());
        pt[lead] = Field::one();
        std::uint64_t r = c;
        for (int j = v - 1; j > lead; --j) {
          pt[j] = Elem{static_cast<std::uint32_t>(r % Q)};
          r /= Q;
        }
        lvl.points.insert(lvl.points.end(), pt.begin(), pt.end());
        auto tv = monomial_values(lvl.big, *top_, pt);
        auto lv = monomial_values(lvl.big, *lower_, pt);
        lvl.top_vals.insert(lvl.top_vals.end(), tv.begin(), tv.end());
        lvl.lower_vals.insert(lvl.lower_vals.end(), lv.begin(), lv.end());
      }
    }
  }

  std::optional<Witness> search(const Level& lvl, std::span<const Elem> f,
                                const std::vector<std::vector<Elem>>& parts) const {
    const std::size_t v = static_cast<std::size_t>(n_ + 1);
    const std::size_t npts = lvl.points.size() / v;
    const std::size_t N = top_->size();
    const std::size_t L = lower_->size();
    const Field& F = lvl.big;
    std::vector<Elem> fe(N);
    for (std::size_t i = 0; i < N; ++i) fe[i] = lvl.embed(f[i]);
    std::vector<std::vector<Elem>> pe(parts.size(), std::vector<Elem>(L));
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (std::size_t i = 0; i < L; ++i) pe[p][i] = lvl.embed(parts[p][i]);
    }
    for (std::size_t pi = 0; pi < npts; ++pi) {
      const Elem* tv = lvl.top_vals.data() + pi * N;
      Elem acc = Field::zero();
      for (std::size_t i = 0; i < N; ++i) {
        if (fe[i] != Field::zero()) acc = F.add(acc, F.mul(fe[i], tv[i]));
      }
      if (acc != Field::zero()) continue;
      const Elem* lv = lvl.lower_vals.data() + pi * L;
      bool all_zero = true;
      for (std::size_t p = 0; p < pe.size() && all_zero; ++p) {
        Elem s = Field::zero();
        for (std::size_t i = 0; i < L; ++i) {
          if (pe[p][i] != Field::zero()) s = F.add(s, F.mul(pe[p][i], lv[i]));
        }
        all_zero = s == Field::zero();
      }
      if (all_zero) {
        Witness w;
        w.ext_degree = lvl.k;
        w.field = lvl.big;
        w.coords.assign(lvl.points.begin() + static_cast<std::ptrdiff_t>(pi * v),
                        lvl.points.begin() + static_cast<std::ptrdiff_t>((pi + 1) * v));
        return w;
      }
    }
    return std::nullopt;
  }

  Field field_;
  int n_;
  int d_;
  BasisPtr top_;
  BasisPtr lower_;
  detail::PartialMap partial_map_;
  std::vector<Level> levels_;
};

inline SmoothnessVerdict is_smooth(const PolyVec& f, SaturationOptions opts = {}) {
  if (f.is_zero()) throw InvalidArgument("the zero polynomial defines no hypersurface");
  if (f.degree() < 1) throw InvalidArgument("degree must be at least 1");
  return SaturationTester(f.field, f.n(), f.degree(), opts).test(f);
}

/// One-sided verdict: smooth = true means "no singular point over F_{q^k}, k <= k_max".
inline SmoothnessVerdict is_smooth_points_oracle(const PolyVec& f, int k_max,
                                                 std::uint64_t budget = kDefaultPointBudget) {
  if (f.is_zero()) throw InvalidArgument("the zero polynomial defines no hypersurface");
  PointOracle oracle(f.field, f.n(), f.degree(), k_max, budget);
  SmoothnessVerdict v;
  v.method = SmoothnessVerdict::Method::points;
  v.witness = oracle.find(f.coeffs);
  v.smooth = !v.witness.has_value();
  return v;
}

struct ClassifierOptions {
  int e_max = 0;
  /// Cumulative number of projective points screened for a singular witness
  /// before falling back to saturation; 0 disables screening.
  std::uint64_t screen_points = 200;
};

/// Smoothness verdicts for bulk enumeration: a cheap witness search over small
/// extensions first (a witness proves singularity), then the saturation test.
class SmoothClassifier {
 public:
  SmoothClassifier(Field field, int n, int d, ClassifierOptions opts = {})
      : tester_(field, n, d, SaturationOptions{opts.e_max}) {
    int k = 0;
    std::uint64_t total = 0;
    while (opts.screen_points > 0) {
      const BigInt Q = big_pow(field.q(), static_cast<std::uint64_t>(k + 1));
      BigInt pts = 0;
      for (int i = 0; i <= n; ++i) pts += big_pow(Q.convert_to<std::uint64_t>(), static_cast<std::uint64_t>(i));
      if (Q > 65536 || pts + total > opts.screen_points) break;
      total += pts.convert_to<std::uint64_t>();
      ++k;
    }
    if (k > 0) oracle_.emplace(field, n, d, k, total);
  }

  bool smooth(std::span<const Elem> f) const {
    if (oracle_ && oracle_->find(f)) return false;
    return tester_.test(f).smooth;
  }

  const SaturationTester& tester() const noexcept { return tester_; }

 private:
  SaturationTester tester_;
  std::optional<PointOracle> oracle_;
};

inline std::string format_point(const Witness& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    if (i) s += ':';
    s += w.field.format(w.coords[i]);
  }
  return s + ")";
}

}  // namespace hypaut

#endif  // HYPAUT_SMOOTH_HPP
