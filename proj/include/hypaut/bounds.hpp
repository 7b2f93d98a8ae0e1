// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_BOUNDS_HPP
#define HYPAUT_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "io.hpp"
#include "numeric.hpp"

namespace hypaut {

namespace detail {

inline void require_nd(int n, int d) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (d < 1) throw InvalidArgument("d must be at least 1");
}

inline void require_prime_power(std::uint64_t q) {
  if (q < 2 || prime_divisors(q).size() != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
}

inline BigInt pow_big(const BigInt& b, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Smallest r with v = r^t; returns (r, t).
inline std::pair<std::uint64_t, std::uint64_t> perfect_power_root(std::uint64_t v) {
  for (std::uint64_t t = 63; t >= 2; --t) {
    const auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(t))));
    for (std::uint64_t c = r > 1 ? r - 1 : 2; c <= r + 1; ++c) {
      if (c < 2) continue;
      BigInt x = 1;
      std::uint64_t i = 0;
      while (x < v && i < t) {
        x *= c;
        ++i;
      }
      if (i == t && x == v) return {c, t};
    }
  }
  return {v, 1};
}

}  // namespace detail

inline BigInt monomial_count(int n, int d) { return big_binom(d + n, n); }

/// binom(d+n, n) - binom(d - floor(d/2) + n, n).
inline BigInt fixed_dim_bound(int n, int d) {
  detail::require_nd(n, d);
  return big_binom(d + n, n) - big_binom(d - d / 2 + n, n);
}

/// Same shape with binom(d - floor(d/2) + n - 1, n), the exponent used when choosing r = floor(d/2) + 1.
inline BigInt fixed_dim_bound_alt(int n, int d) {
  detail::require_nd(n, d);
  return big_binom(d + n, n) - big_binom(d - d / 2 + n - 1, n);
}

inline BigInt diagonal_threshold(int n, int d) { return fixed_dim_bound(n, d) + 1; }
inline BigInt diagonal_threshold_alt(int n, int d) { return fixed_dim_bound_alt(n, d) + 1; }

/// (1/2) binom(d+n-1, n-1) + (1/2) binom(d+n, n).
inline Rational diagonal_dim_bound(int n, int d) {
  detail::require_nd(n, d);
  return Rational(big_binom(d + n - 1, n - 1) + big_binom(d + n, n), 2);
}

/// C = 1 - 1/2^n.
inline Rational aut_constant(int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  return Rational(1) - Rational(1, big_pow(2, static_cast<std::uint64_t>(n)));
}

inline Rational nontrivial_exponent(int n, int d) {
  detail::require_nd(n, d);
  return aut_constant(n) * Rational(big_binom(n + d, d)) + Rational((n + 1) * (n + 1));
}

/// binom(d+n, n) - binom(d - floor(d/2) + n - 1, n) + (n+1)^2.
inline BigInt nontrivial_exponent_alt(int n, int d) {
  return fixed_dim_bound_alt(n, d) + (n + 1) * (n + 1);
}

/// prod_{i=1}^{n+1} (1 - q^{-i}).
inline Rational zeta_density(int n, std::uint64_t q) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  detail::require_prime_power(q);
  Rational r = 1;
  for (int i = 1; i <= n + 1; ++i) r *= Rational(1) - Rational(1, big_pow(q, static_cast<std::uint64_t>(i)));
  return r;
}

struct ModuliEstimate {
  std::int64_t D = 0;
  BigInt q_pow_D;
  BigInt q_pow_D_minus_1;
  BigInt leading;  // q^D - q^{D-1}
};

inline ModuliEstimate moduli_estimate(int n, int d, std::uint64_t q) {
  detail::require_nd(n, d);
  detail::require_prime_power(q);
  ModuliEstimate m;
  const BigInt D = big_binom(d + n, n) - (n + 1) * (n + 1) + 1;
  m.D = D.convert_to<std::int64_t>();
  if (m.D < 1) throw InvalidArgument("moduli dimension is not positive for these parameters");
  m.q_pow_D = big_pow(q, static_cast<std::uint64_t>(m.D));
  m.q_pow_D_minus_1 = big_pow(q, static_cast<std::uint64_t>(m.D - 1));
  m.leading = m.q_pow_D - m.q_pow_D_minus_1;
  return m;
}

/// The open interval (log_q(d)/n - 2, 1 + log_q(d)/n).
struct DeltaWindow {
  double lower = 0;
  double upper = 0;
  std::optional<Rational> log_q_d;  // exact when d and q are powers of a common integer
  std::optional<Rational> lower_exact;
  std::optional<Rational> upper_exact;
};

inline DeltaWindow delta_window(int n, int d, std::uint64_t q) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (d < 2) throw InvalidArgument("d must be at least 2");
  detail::require_prime_power(q);
  DeltaWindow w;
  const auto [r, t] = detail::perfect_power_root(q);
  std::uint64_t s = 0;
  std::uint64_t x = static_cast<std::uint64_t>(d);
  while (x % r == 0) {
    x /= r;
    ++s;
  }
  if (x == 1) {
    w.log_q_d = Rational(s, t);
    w.lower_exact = *w.log_q_d / n - 2;
    w.upper_exact = *w.log_q_d / n + 1;
    w.lower = to_double(*w.lower_exact);
    w.upper = to_double(*w.upper_exact);
  } else {
    const double l = std::log(static_cast<double>(d)) / std::log(static_cast<double>(q)) / n;
    w.lower = l - 2;
    w.upper = l + 1;
  }
  return w;
}

struct IdentityCheck {
  bool first = false;   // sum_{k=0}^{d} binom(k+n-2, n-2) = binom(d+n-1, n-1)
  bool second = false;  // sum_{k=0}^{d} (k+n-1) binom(k+n-2, n-2) = (n-1) binom(d+n, n)
};

inline IdentityCheck identity_check(int n, int d) {
  if (n < 2) throw InvalidArgument("identity check needs n >= 2");
  if (d < 0) throw InvalidArgument("d must be nonnegative");
  BigInt s1 = 0;
  BigInt s2 = 0;
  for (int k = 0; k <= d; ++k) {
    const BigInt b = big_binom(k + n - 2, n - 2);
    s1 += b;
    s2 += BigInt(k + n - 1) * b;
  }
  return {s1 == big_binom(d + n - 1, n - 1), s2 == BigInt(n - 1) * big_binom(d + n, n)};
}

/// Exact test x < q^e for x >= 0 and rational e.
inline bool less_than_q_pow(const BigInt& x, std::uint64_t q, const Rational& e) {
  if (x < 0) return true;
  const BigInt num = boost::multiprecision::numerator(e);
  const auto den = boost::multiprecision::denominator(e).convert_to<std::uint64_t>();
  const BigInt lhs = detail::pow_big(x, den);
  if (num >= 0) return lhs < big_pow(q, num.convert_to<std::uint64_t>());
  return lhs * big_pow(q, BigInt(-num).convert_to<std::uint64_t>()) < 1;
}

struct BoundReport {
  int n = 0;
  int d = 0;
  std::uint64_t q = 0;
  BigInt monomials;
  BigInt fixed_dim;
  BigInt fixed_dim_alt;
  BigInt diag_threshold;
  BigInt diag_threshold_alt;
  Rational diag_dim;
  Rational C;
  Rational nontrivial_exp;
  BigInt nontrivial_exp_alt;
  Rational zeta;
  std::optional<ModuliEstimate> moduli;
  std::optional<DeltaWindow> delta;
  std::optional<IdentityCheck> identities;
};

inline BoundReport bound_report(int n, int d, std::uint64_t q) {
  detail::require_nd(n, d);
  detail::require_prime_power(q);
  BoundReport r;
  r.n = n;
  r.d = d;
  r.q = q;
  r.monomials = monomial_count(n, d);
  r.fixed_dim = fixed_dim_bound(n, d);
  r.fixed_dim_alt = fixed_dim_bound_alt(n, d);
  r.diag_threshold = diagonal_threshold(n, d);
  r.diag_threshold_alt = diagonal_threshold_alt(n, d);
  r.diag_dim = diagonal_dim_bound(n, d);
  r.C = aut_constant(n);
  r.nontrivial_exp = nontrivial_exponent(n, d);
  r.nontrivial_exp_alt = nontrivial_exponent_alt(n, d);
  r.zeta = zeta_density(n, q);
  if (big_binom(d + n, n) - (n + 1) * (n + 1) + 1 >= 1) r.moduli = moduli_estimate(n, d, q);
  if (d >= 2) r.delta = delta_window(n, d, q);
  if (n >= 2) r.identities = identity_check(n, d);
  return r;
}

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

// (key, value) pairs in report order.
inline std::vector<std::pair<std::string, Json>> bound_fields(const BoundReport& r) {
  std::vector<std::pair<std::string, Json>> f;
  f.emplace_back("n", r.n);
  f.emplace_back("d", r.d);
  f.emplace_back("q", r.q);
  f.emplace_back("monomials", big_json(r.monomials));
  f.emplace_back("fixed_dim_bound", big_json(r.fixed_dim));
  f.emplace_back("fixed_dim_bound_alt", big_json(r.fixed_dim_alt));
  f.emplace_back("diagonal_threshold", big_json(r.diag_threshold));
  f.emplace_back("diagonal_threshold_alt", big_json(r.diag_threshold_alt));
  f.emplace_back("diagonal_dim_bound", rational_json(r.diag_dim));
  f.emplace_back("C", rational_json(r.C));
  f.emplace_back("nontrivial_exponent", rational_json(r.nontrivial_exp));
  f.emplace_back("nontrivial_exponent_alt", big_json(r.nontrivial_exp_alt));
  f.emplace_back("zeta_density", rational_json(r.zeta));
  if (r.moduli) {
    f.emplace_back("moduli_dim", r.moduli->D);
    f.emplace_back("moduli_q_pow_D", big_json(r.moduli->q_pow_D));
    f.emplace_back("moduli_q_pow_D_minus_1", big_json(r.moduli->q_pow_D_minus_1));
    f.emplace_back("moduli_leading", big_json(r.moduli->leading));
  }
  if (r.delta) {
    Json w;
    w["lower"] = r.delta->lower;
    w["upper"] = r.delta->upper;
    if (r.delta->log_q_d) {
      w["log_q_d"] = rational_json(*r.delta->log_q_d);
      w["lower_exact"] = rational_json(*r.delta->lower_exact);
      w["upper_exact"] = rational_json(*r.delta->upper_exact);
    }
    f.emplace_back("delta_window", w);
  }
  if (r.identities) {
    f.emplace_back("identity_sum", r.identities->first);
    f.emplace_back("identity_weighted_sum", r.identities->second);
  }
  return f;
}

inline std::string display(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("num") && v.size() == 2) {
    const auto num = v["num"].get<std::string>();
    const auto den = v["den"].get<std::string>();
    return den == "1" ? num : num + "/" + den;
  }
  if (v.is_object()) {
    std::string s = "(" + fmt_double(v["lower"].get<double>()) + ", " + fmt_double(v["upper"].get<double>()) + ")";
    if (v.contains("lower_exact")) s += " exact (" + display(v["lower_exact"]) + ", " + display(v["upper_exact"]) + ")";
    return s;
  }
  return v.dump();
}

}  // namespace detail

inline Json to_json(const BoundReport& r) {
  Json j = Json::object();
  for (auto& [k, v] : detail::bound_fields(r)) j[k] = v;
  return j;
}

inline std::string to_table(const BoundReport& r) {
  const auto fields = detail::bound_fields(r);
  std::size_t w = 0;
  for (const auto& [k, v] : fields) w = std::max(w, k.size());
  std::ostringstream s;
  for (const auto& [k, v] : fields) s << std::left << std::setw(static_cast<int>(w + 2)) << k << detail::display(v) << '\n';
  return s.str();
}

inline std::string to_csv(const BoundReport& r) {
  std::ostringstream s;
  s << "field,value\n";
  for (const auto& [k, v] : detail::bound_fields(r)) s << k << ",\"" << detail::display(v) << "\"\n";
  return s.str();
}

}  // namespace hypaut

#endif  // HYPAUT_BOUNDS_HPP
