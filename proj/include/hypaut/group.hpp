// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_GROUP_HPP
#define HYPAUT_GROUP_HPP

#include <cctype>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "numeric.hpp"

namespace hypaut {

/// An invertible (n+1) x (n+1) matrix, row-major. A canonical element is the
/// unique scalar multiple of its PGL class whose first nonzero entry is 1.
class GroupElem {
 public:
  GroupElem() = default;
  GroupElem(int n, std::vector<Elem> entries, bool canonical = false)
      : n_(n), entries_(std::move(entries)), canonical_(canonical) {
    const auto v = static_cast<std::size_t>(n + 1);
    if (n < 1 || entries_.size() != v * v) throw InvalidArgument("group element has the wrong shape");
  }

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  bool canonical() const noexcept { return canonical_; }
  std::span<const Elem> entries() const noexcept { return entries_; }
  Elem operator()(int r, int c) const noexcept { return entries_[static_cast<std::size_t>(r * dim() + c)]; }

  friend bool operator==(const GroupElem& a, const GroupElem& b) noexcept {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  friend auto operator<=>(const GroupElem& a, const GroupElem& b) noexcept { return a.entries_ <=> b.entries_; }

 private:
  int n_ = 0;
  std::vector<Elem> entries_;
  bool canonical_ = false;
};

inline GroupElem identity_elem(int n) {
  const int v = n + 1;
  std::vector<Elem> e(static_cast<std::size_t>(v * v));
  for (int i = 0; i < v; ++i) e[static_cast<std::size_t>(i * v + i)] = Field::one();
  return GroupElem(n, std::move(e), true);
}

inline GroupElem diagonal_elem(std::span<const Elem> diag) {
  const int v = static_cast<int>(diag.size());
  std::vector<Elem> e(static_cast<std::size_t>(v * v));
  for (int i = 0; i < v; ++i) e[static_cast<std::size_t>(i * v + i)] = diag[i];
  return GroupElem(v - 1, std::move(e));
}

/// Permutation matrix sending x_i to x_{perm[i]} (0-based), so (f o P)(x) = f(x_perm).
inline GroupElem permutation_elem(std::span<const int> perm) {
  const int v = static_cast<int>(perm.size());
  std::vector<Elem> e(static_cast<std::size_t>(v * v));
  for (int i = 0; i < v; ++i) e[static_cast<std::size_t>(i * v + perm[i])] = Field::one();
  return GroupElem(v - 1, std::move(e), true);
}

inline Elem determinant(const Field& f, const GroupElem& a) {
  const int v = a.dim();
  std::vector<Elem> m(a.entries().begin(), a.entries().end());
  Elem det = Field::one();
  for (int c = 0; c < v; ++c) {
    int sel = c;
    while (sel < v && m[static_cast<std::size_t>(sel * v + c)] == Field::zero()) ++sel;
    if (sel == v) return Field::zero();
    if (sel != c) {
      for (int j = 0; j < v; ++j) std::swap(m[static_cast<std::size_t>(sel * v + j)], m[static_cast<std::size_t>(c * v + j)]);
      det = f.neg(det);
    }
    const Elem piv = m[static_cast<std::size_t>(c * v + c)];
    det = f.mul(det, piv);
    const Elem ip = f.inv(piv);
    for (int r = c + 1; r < v; ++r) {
      const Elem x = m[static_cast<std::size_t>(r * v + c)];
      if (x == Field::zero()) continue;
      const Elem factor = f.neg(f.mul(x, ip));
      for (int j = c; j < v; ++j) {
        auto& slot = m[static_cast<std::size_t>(r * v + j)];
        slot = f.add(slot, f.mul(factor, m[static_cast<std::size_t>(c * v + j)]));
      }
    }
  }
  return det;
}

inline bool is_invertible(const Field& f, const GroupElem& a) { return determinant(f, a) != Field::zero(); }

inline GroupElem canonicalize(const Field& f, const GroupElem& a) {
  const auto e = a.entries();
  std::size_t lead = 0;
  while (lead < e.size() && e[lead] == Field::zero()) ++lead;
  if (lead == e.size()) throw InvalidArgument("zero matrix has no canonical representative");
  const Elem s = f.inv(e[lead]);
  std::vector<Elem> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = f.mul(e[i], s);
  return GroupElem(a.n(), std::move(out), true);
}

inline GroupElem scale(const Field& f, const GroupElem& a, Elem c) {
  std::vector<Elem> out(a.entries().begin(), a.entries().end());
  for (auto& x : out) x = f.mul(x, c);
  return GroupElem(a.n(), std::move(out));
}

inline GroupElem multiply(const Field& f, const GroupElem& a, const GroupElem& b) {
  if (a.n() != b.n()) throw InvalidArgument("group elements of different size");
  const int v = a.dim();
  std::vector<Elem> out(static_cast<std::size_t>(v * v));
  for (int i = 0; i < v; ++i) {
    for (int k = 0; k < v; ++k) {
      const Elem x = a(i, k);
      if (x == Field::zero()) continue;
      for (int j = 0; j < v; ++j) {
        auto& slot = out[static_cast<std::size_t>(i * v + j)];
        slot = f.add(slot, f.mul(x, b(k, j)));
      }
    }
  }
  return GroupElem(a.n(), std::move(out));
}

inline GroupElem inverse(const Field& f, const GroupElem& a) {
  const int v = a.dim();
  const int w = 2 * v;
  std::vector<Elem> m(static_cast<std::size_t>(v * w));
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j) m[static_cast<std::size_t>(i * w + j)] = a(i, j);
    m[static_cast<std::size_t>(i * w + v + i)] = Field::one();
  }
  for (int c = 0; c < v; ++c) {
    int sel = c;
    while (sel < v && m[static_cast<std::size_t>(sel * w + c)] == Field::zero()) ++sel;
    if (sel == v) throw InvalidArgument("matrix is singular");
    if (sel != c) {
      for (int j = 0; j < w; ++j) std::swap(m[static_cast<std::size_t>(sel * w + j)], m[static_cast<std::size_t>(c * w + j)]);
    }
    const Elem ip = f.inv(m[static_cast<std::size_t>(c * w + c)]);
    for (int j = 0; j < w; ++j) m[static_cast<std::size_t>(c * w + j)] = f.mul(m[static_cast<std::size_t>(c * w + j)], ip);
    for (int r = 0; r < v; ++r) {
      if (r == c) continue;
      const Elem x = m[static_cast<std::size_t>(r * w + c)];
      if (x == Field::zero()) continue;
      const Elem factor = f.neg(x);
      for (int j = 0; j < w; ++j) {
        auto& slot = m[static_cast<std::size_t>(r * w + j)];
        slot = f.add(slot, f.mul(factor, m[static_cast<std::size_t>(c * w + j)]));
      }
    }
  }
  std::vector<Elem> out(static_cast<std::size_t>(v * v));
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j) out[static_cast<std::size_t>(i * v + j)] = m[static_cast<std::size_t>(i * w + v + j)];
  }
  return GroupElem(a.n(), std::move(out));
}

/// True when A is a scalar matrix (equivalently, canonical(A) = I).
inline bool is_scalar(const GroupElem& a) {
  const int v = a.dim();
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j) {
      if (i != j && a(i, j) != Field::zero()) return false;
      if (i == j && a(i, i) != a(0, 0)) return false;
    }
  }
  return a(0, 0) != Field::zero();
}

inline bool is_diagonal(const GroupElem& a) {
  const int v = a.dim();
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j) {
      if (i != j && a(i, j) != Field::zero()) return false;
    }
  }
  return true;
}

enum class GroupKind { GL, PGL };

/// |GL_{n+1}(F_q)| = prod_{i=0}^{n} (q^{n+1} - q^i), divided by q - 1 for PGL.
inline BigInt group_order(int n, std::uint64_t q, GroupKind which) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  const auto primes = detail::prime_divisors(q);
  if (q < 2 || primes.size() != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  const BigInt top = big_pow(q, static_cast<std::uint64_t>(n + 1));
  BigInt order = 1;
  for (int i = 0; i <= n; ++i) order *= top - big_pow(q, static_cast<std::uint64_t>(i));
  if (which == GroupKind::PGL) order /= (q - 1);
  return order;
}

inline constexpr std::uint64_t kDefaultGroupBudget = 100000;

/// Visits every canonical representative of PGL_{n+1}(F_q) once, in row-major
/// lexicographic order of entry codes. The visitor may return false to stop.
inline void for_each_pgl(const Field& f, int n, const std::function<bool(const GroupElem&)>& visit,
                         std::uint64_t budget = kDefaultGroupBudget) {
  const BigInt order = group_order(n, f.q(), GroupKind::PGL);
  if (order > budget) {
    throw BudgetExceeded("|PGL_" + std::to_string(n + 1) + "(F_" + std::to_string(f.q()) + ")| = " + order.str() +
                         " exceeds the group budget " + std::to_string(budget));
  }
  const int v = n + 1;
  const std::uint32_t q = f.q();
  std::uint64_t vec_count = 1;
  for (int i = 0; i < v; ++i) vec_count *= q;

  auto decode = [&](std::uint64_t code, Elem* out) {
    for (int j = v - 1; j >= 0; --j) {
      out[j] = Elem{static_cast<std::uint32_t>(code % q)};
      code /= q;
    }
  };
  auto encode = [&](const Elem* in) {
    std::uint64_t code = 0;
    for (int j = 0; j < v; ++j) code = code * q + in[j].code;
    return code;
  };

  // span[level] marks the vectors in the span of the first `level` rows.
  std::vector<std::vector<char>> span(static_cast<std::size_t>(v) + 1, std::vector<char>(vec_count, 0));
  std::vector<std::vector<std::uint64_t>> members(static_cast<std::size_t>(v) + 1);
  span[0][0] = 1;
  members[0] = {0};
  std::vector<Elem> entries(static_cast<std::size_t>(v * v));
  std::vector<Elem> tmp(static_cast<std::size_t>(v));
  std::vector<Elem> row(static_cast<std::size_t>(v));
  std::vector<Elem> sum(static_cast<std::size_t>(v));
  bool stop = false;

  std::function<void(int)> dfs = [&](int level) {
    if (stop) return;
    if (level == v) {
      if (!visit(GroupElem(n, entries, true))) stop = true;
      return;
    }
    for (std::uint64_t code = 0; code < vec_count && !stop; ++code) {
      if (span[level][code]) continue;
      decode(code, row.data());
      if (level == 0) {
        int lead = 0;
        while (lead < v && row[lead] == Field::zero()) ++lead;
        if (row[lead] != Field::one()) continue;
      }
      std::copy(row.begin(), row.end(), entries.begin() + level * v);
      auto& next = span[level + 1];
      auto& next_members = members[level + 1];
      std::fill(next.begin(), next.end(), 0);
      next_members.clear();
      for (auto m : members[level]) {
        decode(m, tmp.data());
        for (std::uint32_t c = 0; c < q; ++c) {
          for (int j = 0; j < v; ++j) sum[j] = f.add(tmp[j], f.mul(Elem{c}, row[j]));
          const auto sc = encode(sum.data());
          if (!next[sc]) {
            next[sc] = 1;
            next_members.push_back(sc);
          }
        }
      }
      dfs(level + 1);
    }
  };
  dfs(0);
}

inline std::vector<GroupElem> enumerate_pgl(const Field& f, int n, std::uint64_t budget = kDefaultGroupBudget) {
  std::vector<GroupElem> out;
  for_each_pgl(
      f, n,
      [&](const GroupElem& g) {
        out.push_back(g);
        return true;
      },
      budget);
  return out;
}

/// A generating set of GL_{n+1}(F_q): a transposition and a full cycle of the
/// coordinates, the transvections x_1 -> x_1 + b x_2 for b in the polynomial basis
/// of F_q over F_p, and diag(g, 1, ..., 1) with g the field generator.
inline std::vector<GroupElem> gl_generators(const Field& f, int n) {
  const int v = n + 1;
  std::vector<GroupElem> gens;
  std::vector<int> perm(static_cast<std::size_t>(v));
  for (int i = 0; i < v; ++i) perm[i] = i;
  std::swap(perm[0], perm[1]);
  gens.push_back(permutation_elem(perm));
  if (v > 2) {
    for (int i = 0; i < v; ++i) perm[i] = (i + 1) % v;
    gens.push_back(permutation_elem(perm));
  }
  std::uint32_t b = 1;
  for (int i = 0; i < f.k(); ++i, b *= f.p()) {
    const GroupElem id = identity_elem(n);
    std::vector<Elem> m(id.entries().begin(), id.entries().end());
    m[1] = Elem{b};
    gens.emplace_back(n, std::move(m));
  }
  if (f.q() > 2) {
    std::vector<Elem> diag(static_cast<std::size_t>(v), Field::one());
    diag[0] = f.generator();
    gens.push_back(diagonal_elem(diag));
  }
  return gens;
}

/// Matrix text form: rows separated by ';', entries by ',', entries in the field text form.
inline std::string format_matrix(const Field& f, const GroupElem& a) {
  std::string s;
  for (int i = 0; i < a.dim(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < a.dim(); ++j) {
      if (j) s += ',';
      s += f.format(a(i, j));
    }
  }
  return s;
}

inline GroupElem parse_matrix(std::string_view text, const Field& f) {
  std::vector<std::vector<Elem>> rows(1);
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    rows.back().push_back(f.parse(cur));
    cur.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (depth == 0 && ch == ',') {
      flush();
    } else if (depth == 0 && ch == ';') {
      flush();
      rows.emplace_back();
    } else {
      cur += ch;
    }
  }
  flush();
  const std::size_t v = rows.size();
  if (v < 2) throw InvalidArgument("matrix must be at least 2 x 2");
  std::vector<Elem> entries;
  for (const auto& r : rows) {
    if (r.size() != v) throw InvalidArgument("matrix text is not square");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  GroupElem g(static_cast<int>(v) - 1, std::move(entries));
  if (!is_invertible(f, g)) throw InvalidArgument("matrix is not invertible");
  return g;
}

}  // namespace hypaut

#endif  // HYPAUT_GROUP_HPP
