// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_GF_HPP
#define HYPAUT_GF_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace hypaut {

/// An element of F_{p^k}, encoded as the integer sum c_0 + c_1 p + ... + c_{k-1} p^{k-1}
/// of its polynomial-basis coordinates. Zero is code 0, one is code 1, and the
/// prime subfield is exactly the codes 0..p-1.
struct Elem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldLimits {
  /// Largest admissible field size.
  std::uint64_t max_q = std::uint64_t{1} << 31;
  /// Log/antilog tables are built up to this size; above it arithmetic is computed directly.
  std::uint64_t table_q = std::uint64_t{1} << 16;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

using Poly = std::vector<std::uint32_t>;  // coefficients low degree first

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = lead * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Irreducibility by trial division against every monic polynomial of degree <= k/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  if (k <= 1) return k == 1;
  if (f[0] == 0) return false;
  for (std::size_t deg = 1; deg <= k / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly g(deg + 1, 0);
      std::uint64_t r = t;
      for (std::size_t i = 0; i < deg; ++i) {
        g[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      g[deg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// The finite field F_{p^k} with a deterministic modulus and generator.
///
/// A Field is an immutable handle to shared tables; copies are cheap and may be
/// used from any number of threads.
class Field {
 public:
  enum class Kind { binary_prime, prime, binary_ext, odd_ext };

  Field() = default;

  /// Builds F_{p^k}. The modulus is the monic irreducible of degree k whose
  /// coefficient list (c_0, c_1, ..., c_{k-1}) is lexicographically smallest; the
  /// generator is the first element of full order in that same coefficient order.
  static Field make(std::uint64_t p, int k, const FieldLimits& limits = {}) {
    if (!detail::is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (k <= 0) throw InvalidArgument("extension degree must be positive");
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
      q *= p;
      if (q > limits.max_q) {
        throw BudgetExceeded("field size " + std::to_string(p) + "^" + std::to_string(k) +
                             " exceeds the configured limit " + std::to_string(limits.max_q));
      }
    }
    auto data = std::make_shared<Data>();
    data->p = static_cast<std::uint32_t>(p);
    data->k = k;
    data->q = static_cast<std::uint32_t>(q);
    data->pow_p.resize(static_cast<std::size_t>(k) + 1);
    data->pow_p[0] = 1;
    for (int i = 1; i <= k; ++i) data->pow_p[i] = data->pow_p[i - 1] * data->p;
    if (p == 2) {
      data->kind = k == 1 ? Kind::binary_prime : Kind::binary_ext;
    } else {
      data->kind = k == 1 ? Kind::prime : Kind::odd_ext;
    }
    data->modulus = find_modulus(data->p, k);

    Field f;
    f.d_ = data;
    data->generator = f.find_generator();
    data->has_tables = q <= limits.table_q;
    if (data->has_tables) f.build_tables(*data);
    return f;
  }

  /// Parses a prime power and builds the corresponding field.
  static Field from_order(std::uint64_t q, const FieldLimits& limits = {}) {
    if (q < 2) throw InvalidArgument("field order must be a prime power >= 2");
    const auto primes = detail::prime_divisors(q);
    if (primes.size() != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    int k = 0;
    for (std::uint64_t r = q; r > 1; r /= primes[0]) ++k;
    return make(primes[0], k, limits);
  }

  bool valid() const noexcept { return d_ != nullptr; }
  std::uint32_t p() const noexcept { return d_->p; }
  int k() const noexcept { return d_->k; }
  std::uint32_t q() const noexcept { return d_->q; }
  Kind kind() const noexcept { return d_->kind; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return d_->modulus; }
  Elem generator() const noexcept { return d_->generator; }
  bool has_tables() const noexcept { return d_->has_tables; }

  static constexpr Elem zero() noexcept { return Elem{0}; }
  static constexpr Elem one() noexcept { return Elem{1}; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    if (a.d_ == b.d_) return true;
    if (!a.d_ || !b.d_) return false;
    return a.d_->p == b.d_->p && a.d_->k == b.d_->k && a.d_->modulus == b.d_->modulus;
  }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const noexcept {
    const auto p = static_cast<std::int64_t>(d_->p);
    auto r = v % p;
    if (r < 0) r += p;
    return Elem{static_cast<std::uint32_t>(r)};
  }

  Elem from_coeffs(std::span<const std::int64_t> coeffs) const {
    if (coeffs.size() > static_cast<std::size_t>(d_->k)) {
      throw InvalidArgument("element has more coordinates than the extension degree");
    }
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) code += from_int(coeffs[i]).code * d_->pow_p[i];
    return Elem{code};
  }

  std::vector<std::uint32_t> coeffs(Elem a) const {
    std::vector<std::uint32_t> out(static_cast<std::size_t>(d_->k));
    std::uint32_t r = a.code;
    for (auto& c : out) {
      c = r % d_->p;
      r /= d_->p;
    }
    return out;
  }

  bool contains(Elem a) const noexcept { return a.code < d_->q; }

  Elem add(Elem a, Elem b) const noexcept {
    switch (d_->kind) {
      case Kind::binary_prime:
      case Kind::binary_ext:
        return Elem{a.code ^ b.code};
      case Kind::prime: {
        const std::uint32_t s = a.code + b.code;
        return Elem{s >= d_->p ? s - d_->p : s};
      }
      case Kind::odd_ext:
        if (!d_->add_small.empty()) return Elem{d_->add_small[a.code * d_->q + b.code]};
        return add_digits(a, b, false);
    }
    return Elem{};
  }

  Elem neg(Elem a) const noexcept {
    switch (d_->kind) {
      case Kind::binary_prime:
      case Kind::binary_ext:
        return a;
      case Kind::prime:
        return Elem{a.code == 0 ? 0 : d_->p - a.code};
      case Kind::odd_ext:
        return add_digits(Elem{0}, a, true);
    }
    return Elem{};
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a.code == 0 || b.code == 0) return Elem{0};
    if (d_->has_tables) return Elem{d_->exp[d_->log[a.code] + d_->log[b.code]]};
    return mul_slow(a, b);
  }

  Elem inv(Elem a) const {
    if (a.code == 0) throw InvalidArgument("inversion of zero");
    if (d_->has_tables) {
      const std::uint32_t l = d_->log[a.code];
      return Elem{d_->exp[l == 0 ? 0 : (d_->q - 1) - l]};
    }
    return pow_slow(a, d_->q - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^e for any integer e; negative exponents require a unit.
  Elem pow(Elem a, std::int64_t e) const {
    if (a.code == 0) {
      if (e < 0) throw InvalidArgument("negative power of zero");
      return e == 0 ? one() : zero();
    }
    const auto order = static_cast<std::int64_t>(d_->q - 1);
    std::int64_t r = e % order;
    if (r < 0) r += order;
    if (d_->has_tables) {
      const auto l = static_cast<std::uint64_t>(d_->log[a.code]) * static_cast<std::uint64_t>(r) % (d_->q - 1);
      return Elem{d_->exp[l]};
    }
    return pow_slow(a, static_cast<std::uint64_t>(r));
  }

  /// generator^e, e taken modulo q - 1.
  Elem exp_generator(std::uint64_t e) const {
    const std::uint64_t r = e % (d_->q - 1);
    if (d_->has_tables) return Elem{d_->exp[r]};
    return pow_slow(d_->generator, r);
  }

  /// The unique l in [0, q-2] with generator^l = a.
  std::uint32_t discrete_log(Elem a) const {
    if (a.code == 0) throw InvalidArgument("discrete logarithm of zero");
    if (d_->has_tables) return d_->log[a.code];
    return bsgs(a);
  }

  /// Small-field lookup tables (q <= 256), row-major q x q; empty otherwise.
  const std::vector<std::uint8_t>& mul_table() const noexcept { return d_->mul_small; }
  const std::vector<std::uint8_t>& add_table() const noexcept { return d_->add_small; }

  /// Text form: an integer in a prime field, "[c0,c1,...]" in an extension.
  std::string format(Elem a) const {
    if (d_->k == 1) return std::to_string(a.code);
    std::string s = "[";
    const auto c = coeffs(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c[i]);
    }
    s += ']';
    return s;
  }

  /// Accepts an integer (reduced into the prime subfield) or a bracketed coordinate tuple.
  Elem parse(std::string_view text) const {
    std::string t;
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t.empty()) throw InvalidArgument("empty field element");
    if (t.front() == '[') {
      if (t.back() != ']') throw InvalidArgument("unterminated field element '" + t + "'");
      std::vector<std::int64_t> c;
      std::string body = t.substr(1, t.size() - 2);
      std::size_t pos = 0;
      while (pos <= body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string part = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        c.push_back(parse_int(part));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return from_coeffs(c);
    }
    return from_int(parse_int(t));
  }

  /// Elements in code order 0, 1, ..., q-1.
  std::vector<Elem> elements() const {
    std::vector<Elem> out(d_->q);
    for (std::uint32_t i = 0; i < d_->q; ++i) out[i] = Elem{i};
    return out;
  }

  /// Nonzero elements in code order.
  std::vector<Elem> units() const {
    std::vector<Elem> out;
    out.reserve(d_->q - 1);
    for (std::uint32_t i = 1; i < d_->q; ++i) out.push_back(Elem{i});
    return out;
  }

  std::string name() const {
    return d_->k == 1 ? "F_" + std::to_string(d_->p) : "F_" + std::to_string(d_->q);
  }

 private:
  struct Data {
    std::uint32_t p = 0;
    int k = 0;
    std::uint32_t q = 0;
    Kind kind = Kind::prime;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> pow_p;
    Elem generator;
    bool has_tables = false;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint32_t> exp;  // length 2(q-1)
    std::vector<std::uint8_t> add_small;
    std::vector<std::uint8_t> mul_small;
  };

  static std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty coefficient");
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad integer '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("bad integer '" + s + "'");
    return v;
  }

  static std::vector<std::uint32_t> find_modulus(std::uint32_t p, int k) {
    if (k == 1) return {0, 1};
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    // Enumerate (c_0, ..., c_{k-1}) lexicographically with c_0 most significant.
    for (std::uint64_t t = 0; t < count; ++t) {
      detail::Poly f(static_cast<std::size_t>(k) + 1, 0);
      std::uint64_t r = t;
      for (int i = k - 1; i >= 0; --i) {
        f[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      f[k] = 1;
      if (detail::is_irreducible(f, p)) return f;
    }
    throw Error("no irreducible polynomial found");  // unreachable for prime p
  }

  Elem add_digits(Elem a, Elem b, bool negate_b) const noexcept {
    const std::uint32_t p = d_->p;
    std::uint32_t ra = a.code;
    std::uint32_t rb = b.code;
    std::uint32_t out = 0;
    for (int i = 0; i < d_->k; ++i) {
      const std::uint32_t da = ra % p;
      std::uint32_t db = rb % p;
      if (negate_b && db) db = p - db;
      ra /= p;
      rb /= p;
      out += ((da + db) % p) * d_->pow_p[i];
    }
    return Elem{out};
  }

  Elem mul_slow(Elem a, Elem b) const {
    const std::uint64_t p = d_->p;
    if (d_->k == 1) return Elem{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.code) * b.code % p)};
    const auto ca = coeffs(a);
    const auto cb = coeffs(b);
    detail::Poly prod(ca.size() + cb.size() - 1, 0);
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (!ca[i]) continue;
      for (std::size_t j = 0; j < cb.size(); ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p);
      }
    }
    const auto r = detail::poly_mod(std::move(prod), d_->modulus, d_->p);
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < r.size(); ++i) code += r[i] * d_->pow_p[i];
    return Elem{code};
  }

  Elem pow_slow(Elem a, std::uint64_t e) const {
    Elem result = one();
    Elem base = a;
    while (e) {
      if (e & 1U) result = mul_slow(result, base);
      base = mul_slow(base, base);
      e >>= 1U;
    }
    return result;
  }

  Elem find_generator() const {
    const std::uint64_t order = d_->q - 1;
    if (order == 1) return one();
    const auto primes = detail::prime_divisors(order);
    // Candidates in the same coordinate order as the modulus: c_0 most significant.
    for (std::uint64_t t = 0; t < d_->q; ++t) {
      std::uint32_t code = 0;
      std::uint64_t r = t;
      for (int i = d_->k - 1; i >= 0; --i) {
        code += static_cast<std::uint32_t>(r % d_->p) * d_->pow_p[i];
        r /= d_->p;
      }
      if (code == 0) continue;
      bool full = true;
      for (auto pr : primes) {
        if (pow_slow(Elem{code}, order / pr) == one()) {
          full = false;
          break;
        }
      }
      if (full) return Elem{code};
    }
    throw Error("no multiplicative generator found");  // unreachable
  }

  void build_tables(Data& data) const {
    const std::uint32_t n = data.q - 1;
    data.exp.assign(2 * static_cast<std::size_t>(n), 0);
    data.log.assign(data.q, 0);
    Elem x = one();
    for (std::uint32_t i = 0; i < n; ++i) {
      data.exp[i] = x.code;
      data.exp[i + n] = x.code;
      data.log[x.code] = i;
      x = mul_slow(x, data.generator);
    }
    if (data.q <= 256) {
      const std::uint32_t q = data.q;
      data.add_small.resize(static_cast<std::size_t>(q) * q);
      data.mul_small.resize(static_cast<std::size_t>(q) * q);
      for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
          data.add_small[a * q + b] = static_cast<std::uint8_t>(add_digits(Elem{a}, Elem{b}, false).code);
          data.mul_small[a * q + b] = static_cast<std::uint8_t>(
              (a == 0 || b == 0) ? 0 : data.exp[data.log[a] + data.log[b]]);
        }
      }
    }
  }

  std::uint32_t bsgs(Elem a) const {
    const std::uint64_t n = d_->q - 1;
    std::uint64_t m = 1;
    while (m * m < n) ++m;
    std::unordered_map<std::uint32_t, std::uint32_t> baby;
    Elem x = one();
    for (std::uint64_t j = 0; j < m; ++j) {
      baby.emplace(x.code, static_cast<std::uint32_t>(j));
      x = mul_slow(x, d_->generator);
    }
    const Elem step = pow_slow(inv(d_->generator), m);
    Elem gamma = a;
    for (std::uint64_t i = 0; i < m; ++i) {
      if (auto it = baby.find(gamma.code); it != baby.end()) {
        return static_cast<std::uint32_t>((i * m + it->second) % n);
      }
      gamma = mul_slow(gamma, step);
    }
    throw Error("discrete logarithm not found");  // unreachable for a nonzero element
  }

  std::shared_ptr<const Data> d_;
};

/// The inclusion F_{p^a} -> F_{p^b} (a | b) sending the small field's polynomial
/// variable to the smallest root of its modulus in the large field.
class FieldEmbedding {
 public:
  FieldEmbedding() = default;

  FieldEmbedding(Field small, Field big) : small_(std::move(small)), big_(std::move(big)) {
    if (small_.p() != big_.p() || big_.k() % small_.k() != 0) {
      throw InvalidArgument(small_.name() + " does not embed in " + big_.name());
    }
    if (small_.k() == 1) {
      root_ = Elem{0};
    } else {
      const auto& m = small_.modulus();
      bool found = false;
      for (std::uint32_t code = 0; code < big_.q() && !found; ++code) {
        Elem acc = Field::zero();
        for (std::size_t i = m.size(); i-- > 0;) {
          acc = big_.add(big_.mul(acc, Elem{code}), Elem{m[i]});
        }
        if (acc == Field::zero()) {
          root_ = Elem{code};
          found = true;
        }
      }
      if (!found) throw Error("modulus has no root in the extension");  // unreachable
    }
    if (small_.q() <= (1U << 16)) {
      table_.resize(small_.q());
      for (std::uint32_t c = 0; c < small_.q(); ++c) table_[c] = compute(Elem{c});
    }
  }

  Elem operator()(Elem a) const { return table_.empty() ? compute(a) : table_[a.code]; }

  const Field& small() const noexcept { return small_; }
  const Field& big() const noexcept { return big_; }

 private:
  Elem compute(Elem a) const {
    if (small_.k() == 1) return a;
    const auto c = small_.coeffs(a);
    Elem acc = Field::zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = big_.add(big_.mul(acc, root_), Elem{c[i]});
    return acc;
  }

  Field small_;
  Field big_;
  Elem root_;
  std::vector<Elem> table_;
};

}  // namespace hypaut

#endif  // HYPAUT_GF_HPP
