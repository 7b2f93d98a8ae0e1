// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_CLI_HPP
#define HYPAUT_CLI_HPP

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bounds.hpp"
#include "census.hpp"
#include "error.hpp"
#include "fixedspace.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "io.hpp"
#include "polyspace.hpp"
#include "smooth.hpp"

namespace hypaut {

inline constexpr const char* kVersion = "hypaut 0.1.0";

namespace cli {

enum Exit : int { ok = 0, operational = 1, check_failed = 2 };

struct Config {
  int n = 2;
  int d = 3;
  std::uint64_t q = 2;
  std::string mode = "exhaustive";
  std::string format;
  std::string out;
  std::string poly;
  std::string matrix;
  std::string lambda = "1";
  std::string checkpoint;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::size_t shards = 0;
  std::optional<std::size_t> shard_index;
  std::uint64_t max_group = kDefaultGroupBudget;
  std::uint64_t max_space = kDefaultSpaceBudget;
  int e_max = 0;
  int k_max = 0;
  int threads = default_threads();
  bool basis = false;
  bool stabilizers = false;
};

inline RunOptions run_options(const Config& c) {
  RunOptions o;
  o.threads = c.threads;
  o.shards = c.shards;
  if (c.shard_index) o.only_shards = {*c.shard_index};
  o.checkpoint = c.checkpoint;
  o.group_budget = c.max_group;
  o.space_budget = c.max_space;
  o.e_max = c.e_max;
  o.samples = c.samples;
  o.seed = c.seed;
  o.sample_stabilizers = c.stabilizers;
  return o;
}

inline void emit(const Config& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
  }
}

inline std::string pick(const std::string& format, const std::string& fallback) { return format.empty() ? fallback : format; }

inline int cmd_bounds(const Config& c, std::ostream& out) {
  const BoundReport r = bound_report(c.n, c.d, c.q);
  const std::string fmt = pick(c.format, "json");
  if (fmt == "table") {
    emit(c, out, to_table(r));
  } else if (fmt == "csv") {
    emit(c, out, to_csv(r));
  } else {
    emit(c, out, to_json(r).dump(2) + "\n");
  }
  return ok;
}

inline int cmd_census(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const RunOptions o = run_options(c);
  CensusReport r;
  if (c.mode == "exhaustive") {
    r = census_exhaustive(f, c.n, c.d, o);
  } else if (c.mode == "group") {
    r = census_group_side(f, c.n, c.d, o);
  } else {
    r = census_sample(f, c.n, c.d, o);
  }
  emit(c, out, pick(c.format, "csv") == "json" ? to_json(r).dump(2) + "\n" : to_csv(r));
  return ok;
}

inline int cmd_stabilizer(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const PolyVec p = parse_poly(c.poly, f, c.n);
  const StabilizerResult s = stabilizer(p, c.max_group);
  if (pick(c.format, "json") == "csv") {
    std::string text = "A,lambda\n";
    for (const auto& [A, l] : s.elements) text += "\"" + format_matrix(f, A) + "\"," + f.format(l) + "\n";
    emit(c, out, text);
    return ok;
  }
  Json els = Json::array();
  for (const auto& [A, l] : s.elements) els.push_back(Json{{"A", format_matrix(f, A)}, {"lambda", f.format(l)}});
  Json j{{"poly", format_poly(s.hypersurface)}, {"n", c.n}, {"d", p.degree()}, {"q", c.q}, {"order", s.order()}, {"elements", els}};
  emit(c, out, j.dump(2) + "\n");
  return ok;
}

inline int cmd_orbits(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const auto orbits = list_orbits(f, c.n, c.d, run_options(c));
  if (pick(c.format, "csv") == "json") {
    Json arr = Json::array();
    for (const auto& o : orbits) {
      Json e{{"rep", format_poly(o.poly)}, {"size", o.size}, {"smooth", o.smooth}};
      e["stabilizer"] = o.smooth ? Json(o.stabilizer) : Json(nullptr);
      arr.push_back(e);
    }
    emit(c, out, arr.dump(2) + "\n");
    return ok;
  }
  std::ostringstream s;
  s << "rep,size,smooth,stabilizer\n";
  for (const auto& o : orbits) {
    s << '"' << format_poly(o.poly) << "\"," << o.size << ',' << (o.smooth ? "true" : "false") << ',';
    if (o.smooth) s << o.stabilizer;
    s << '\n';
  }
  emit(c, out, s.str());
  return ok;
}

inline int cmd_verify(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const VerificationLog log = verify_bounds(f, c.n, c.d, run_options(c));
  emit(c, out, pick(c.format, "json") == "csv" ? to_csv(log) : to_json(log).dump(2) + "\n");
  return log.passed() ? ok : check_failed;
}

// Largest extension degree whose point search fits the budget.
inline int witness_depth(std::uint64_t q, int n, int wanted) {
  std::uint64_t total = 0;
  int k = 0;
  while (k < wanted) {
    const BigInt Q = big_pow(q, static_cast<std::uint64_t>(k + 1));
    if (Q > 65536) break;
    BigInt pts = 0;
    for (int i = 0; i <= n; ++i) pts += big_pow(Q.convert_to<std::uint64_t>(), static_cast<std::uint64_t>(i));
    if (pts + total > kDefaultPointBudget) break;
    total += pts.convert_to<std::uint64_t>();
    ++k;
  }
  return k;
}

inline int cmd_smooth(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const PolyVec p = parse_poly(c.poly, f, c.n);
  const SmoothnessVerdict v = is_smooth(p, SaturationOptions{c.e_max});
  Json j{{"poly", format_poly(p)}, {"n", c.n}, {"d", p.degree()}, {"q", c.q}, {"smooth", v.smooth}, {"method", "saturation"}};
  j["saturation_degree"] = v.saturation_degree ? Json(*v.saturation_degree) : Json(nullptr);
  j["e_max"] = c.e_max > 0 ? c.e_max : default_e_max(c.n, p.degree());
  // A singular point over a small extension, when one exists.
  const int depth = c.k_max > 0 ? c.k_max : (v.smooth ? 0 : witness_depth(c.q, c.n, 4));
  if (depth > 0) {
    const SmoothnessVerdict w = is_smooth_points_oracle(p, depth);
    j["points_k_max"] = depth;
    if (w.witness) {
      j["witness"] = Json{{"point", format_point(*w.witness)}, {"field", w.witness->field.name()},
                          {"ext_degree", w.witness->ext_degree}};
    } else {
      j["witness"] = nullptr;
    }
  }
  if (pick(c.format, "json") == "csv") {
    std::ostringstream s;
    s << "smooth,saturation_degree,witness\n" << (v.smooth ? "true" : "false") << ',';
    if (v.saturation_degree) s << *v.saturation_degree;
    s << ',';
    if (j.contains("witness") && !j["witness"].is_null()) s << '"' << j["witness"]["point"].get<std::string>() << '"';
    s << '\n';
    emit(c, out, s.str());
  } else {
    emit(c, out, j.dump(2) + "\n");
  }
  return ok;
}

inline int cmd_fixed_dim(const Config& c, std::ostream& out) {
  const Field f = Field::from_order(c.q);
  const GroupElem A = parse_matrix(c.matrix, f);
  const Elem lambda = f.parse(c.lambda);
  const auto basis = monomial_basis(A.n(), c.d);
  const FixedSpaceRecord rec = fixed_space(f, A, lambda, basis, c.basis);
  if (pick(c.format, "json") == "csv") {
    std::ostringstream s;
    s << "A,lambda,d,dim\n\"" << format_matrix(f, A) << "\"," << f.format(lambda) << ',' << c.d << ',' << rec.dim << '\n';
    emit(c, out, s.str());
    return ok;
  }
  Json j{{"A", format_matrix(f, A)}, {"lambda", f.format(lambda)}, {"n", A.n()}, {"d", c.d}, {"q", c.q}, {"dim", rec.dim}};
  if (rec.basis) {
    Json b = Json::array();
    for (const auto& p : *rec.basis) b.push_back(format_poly(p));
    j["basis"] = b;
  }
  emit(c, out, j.dump(2) + "\n");
  return ok;
}

}  // namespace cli

/// Parses argv and dispatches; returns the process exit code. Exit 1 covers
/// usage, validation and budget errors; exit 2 a failed verification check.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  Config c;
  CLI::App app{"Automorphisms and smoothness of hypersurfaces over finite fields", "hypaut"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--threads", c.threads, "worker threads (default: available cores)")->check(CLI::PositiveNumber);

  auto add_ndq = [&](CLI::App* s, bool with_d) {
    s->add_option("--n", c.n, "projective dimension")->required()->check(CLI::PositiveNumber);
    if (with_d) s->add_option("--d", c.d, "degree")->required()->check(CLI::PositiveNumber);
    s->add_option("--q", c.q, "field order (prime power)")->required();
  };
  auto add_budgets = [&](CLI::App* s) {
    s->add_option("--max-group", c.max_group, "largest |PGL| to enumerate")->check(CLI::PositiveNumber);
    s->add_option("--max-space", c.max_space, "largest number of hypersurfaces to enumerate")->check(CLI::PositiveNumber);
    s->add_option("--e-max", c.e_max, "saturation degree cap (default (n+2)(d-1)+1)")->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* s, std::vector<std::string> allowed) {
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed));
    s->add_option("--out", c.out, "write output to this file");
  };

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds, thresholds and estimates");
  add_ndq(bounds, true);
  add_format(bounds, {"json", "table", "csv"});

  auto* census = app.add_subcommand("census", "hypersurface census");
  add_ndq(census, true);
  add_budgets(census);
  add_format(census, {"csv", "json"});
  census->add_option("--mode", c.mode, "census mode")->check(CLI::IsMember({"exhaustive", "group", "sample"}));
  census->add_option("--samples", c.samples, "sample count (sample mode)")->check(CLI::PositiveNumber);
  census->add_option("--seed", c.seed, "sampling seed");
  census->add_flag("--stabilizers", c.stabilizers, "compute stabilizers of sampled smooth hypersurfaces");
  census->add_option("--shards", c.shards, "number of shards")->check(CLI::PositiveNumber);
  census->add_option("--shard-index", c.shard_index, "run only this shard");
  census->add_option("--checkpoint", c.checkpoint, "checkpoint file (resumed when present)");

  auto* stab = app.add_subcommand("stabilizer", "automorphisms of V(f) in PGL");
  stab->add_option("--poly", c.poly, "homogeneous polynomial")->required();
  stab->add_option("--n", c.n, "projective dimension")->required()->check(CLI::PositiveNumber);
  stab->add_option("--q", c.q, "field order")->required();
  stab->add_option("--max-group", c.max_group, "largest |PGL| to enumerate")->check(CLI::PositiveNumber);
  add_format(stab, {"json", "csv"});

  auto* orbits = app.add_subcommand("orbits", "PGL-orbits of hypersurfaces");
  add_ndq(orbits, true);
  add_budgets(orbits);
  add_format(orbits, {"csv", "json"});

  auto* verify = app.add_subcommand("verify", "check the dimension bounds and counting chain");
  add_ndq(verify, true);
  add_budgets(verify);
  add_format(verify, {"json", "csv"});

  auto* smooth = app.add_subcommand("smooth", "smoothness of V(f)");
  smooth->add_option("--poly", c.poly, "homogeneous polynomial")->required();
  smooth->add_option("--n", c.n, "projective dimension")->required()->check(CLI::PositiveNumber);
  smooth->add_option("--q", c.q, "field order")->required();
  smooth->add_option("--e-max", c.e_max, "saturation degree cap")->check(CLI::PositiveNumber);
  smooth->add_option("--k-max", c.k_max, "also search singular points over F_{q^k}, k <= K")->check(CLI::PositiveNumber);
  add_format(smooth, {"json", "csv"});

  auto* fixed = app.add_subcommand("fixed-dim", "dimension of {f : f o A = lambda f}");
  fixed->add_option("--matrix", c.matrix, "matrix, rows separated by ';'")->required();
  fixed->add_option("--lambda", c.lambda, "multiplier (nonzero)");
  fixed->add_option("--n", c.n, "projective dimension (checked against the matrix)");
  fixed->add_option("--d", c.d, "degree")->required()->check(CLI::NonNegativeNumber);
  fixed->add_option("--q", c.q, "field order")->required();
  fixed->add_flag("--basis", c.basis, "print a basis");
  add_format(fixed, {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : operational;
  }

  try {
    if (c.shard_index && c.shards > 0 && *c.shard_index >= c.shards) throw InvalidArgument("--shard-index must be below --shards");
    if (c.shard_index && c.shards == 0) throw InvalidArgument("--shard-index needs --shards");
    if (*bounds) return cmd_bounds(c, out);
    if (*census) return cmd_census(c, out);
    if (*stab) return cmd_stabilizer(c, out);
    if (*orbits) return cmd_orbits(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*smooth) return cmd_smooth(c, out);
    if (*fixed) {
      if (fixed->count("--n") > 0 && c.n != parse_matrix(c.matrix, Field::from_order(c.q)).n()) {
        throw InvalidArgument("--n does not match the matrix size");
      }
      return cmd_fixed_dim(c, out);
    }
    err << app.help();
    return operational;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return operational;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return operational;
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<const char*> argv = {"hypaut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hypaut

#endif  // HYPAUT_CLI_HPP
