// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_POLYSPACE_HPP
#define HYPAUT_POLYSPACE_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "numeric.hpp"

namespace hypaut {

inline constexpr std::size_t kDefaultMaxBasis = 1U << 16;

/// Exponent tuples (j_1, ..., j_{n+1}) with sum d, in graded-lex order with
/// x_1 > x_2 > ... > x_{n+1}: x_1^d comes first and x_{n+1}^d last.
class MonomialBasis {
 public:
  MonomialBasis(int n, int d, std::size_t max_size = kDefaultMaxBasis) : n_(n), d_(d) {
    if (n < 1) throw InvalidArgument("projective dimension n must be at least 1");
    if (d < 0) throw InvalidArgument("degree must be nonnegative");
    const std::uint64_t size = binom_u64(d + n, n);
    if (size > max_size) {
      throw BudgetExceeded("monomial basis of size " + std::to_string(size) + " exceeds the limit " +
                           std::to_string(max_size));
    }
    size_ = static_cast<std::size_t>(size);
    exps_.reserve(size_ * vars());
    std::vector<std::uint16_t> cur(vars());
    generate(0, d, cur);
  }

  int n() const noexcept { return n_; }
  int degree() const noexcept { return d_; }
  int vars() const noexcept { return n_ + 1; }
  std::size_t size() const noexcept { return size_; }

  std::span<const std::uint16_t> exponents(std::size_t idx) const noexcept {
    return {exps_.data() + idx * vars(), static_cast<std::size_t>(vars())};
  }

  /// Position of an exponent tuple; the tuple must have the basis degree.
  std::size_t index_of(std::span<const std::uint16_t> e) const noexcept {
    std::size_t idx = 0;
    int rem = d_;
    const int v = vars();
    for (int i = 0; i + 1 < v; ++i) {
      const int m = v - i - 1;
      const int larger = rem - e[i];
      if (larger >= 1) idx += static_cast<std::size_t>(binom_u64(larger - 1 + m, m));
      rem -= e[i];
    }
    return idx;
  }

  friend bool operator==(const MonomialBasis& a, const MonomialBasis& b) noexcept {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  void generate(int pos, int rem, std::vector<std::uint16_t>& cur) {
    if (pos == vars() - 1) {
      cur[pos] = static_cast<std::uint16_t>(rem);
      exps_.insert(exps_.end(), cur.begin(), cur.end());
      return;
    }
    for (int j = rem; j >= 0; --j) {
      cur[pos] = static_cast<std::uint16_t>(j);
      generate(pos + 1, rem - j, cur);
    }
  }

  int n_;
  int d_;
  std::size_t size_ = 0;
  std::vector<std::uint16_t> exps_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

inline BasisPtr monomial_basis(int n, int d, std::size_t max_size = kDefaultMaxBasis) {
  return std::make_shared<const MonomialBasis>(n, d, max_size);
}

/// Index table for products of monomials: table[i * |b| + j] = index of a_i * b_j in c.
inline std::vector<std::uint32_t> product_table(const MonomialBasis& a, const MonomialBasis& b,
                                                const MonomialBasis& c) {
  if (a.n() != b.n() || c.n() != a.n() || c.degree() != a.degree() + b.degree()) {
    throw InvalidArgument("product table degrees are inconsistent");
  }
  std::vector<std::uint32_t> t(a.size() * b.size());
  std::vector<std::uint16_t> e(a.vars());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ea = a.exponents(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto eb = b.exponents(j);
      for (int v = 0; v < a.vars(); ++v) e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
      t[i * b.size() + j] = static_cast<std::uint32_t>(c.index_of(e));
    }
  }
  return t;
}

/// A homogeneous polynomial as its coefficient vector over a monomial basis.
struct PolyVec {
  BasisPtr basis;
  Field field;
  std::vector<Elem> coeffs;

  PolyVec() = default;
  PolyVec(BasisPtr b, Field f) : basis(std::move(b)), field(std::move(f)), coeffs(basis->size()) {}
  PolyVec(BasisPtr b, Field f, std::vector<Elem> c) : basis(std::move(b)), field(std::move(f)), coeffs(std::move(c)) {
    if (coeffs.size() != basis->size()) throw InvalidArgument("coefficient vector length does not match the basis");
  }

  int n() const noexcept { return basis->n(); }
  int degree() const noexcept { return basis->degree(); }

  bool is_zero() const noexcept {
    for (auto c : coeffs) {
      if (c.code) return false;
    }
    return true;
  }

  friend bool operator==(const PolyVec& a, const PolyVec& b) {
    return *a.basis == *b.basis && a.field == b.field && a.coeffs == b.coeffs;
  }
};

inline PolyVec scale(const PolyVec& f, Elem c) {
  PolyVec out = f;
  for (auto& x : out.coeffs) x = f.field.mul(x, c);
  return out;
}

/// Single-term polynomial c * x^e.
inline PolyVec monomial(const BasisPtr& basis, const Field& field, std::span<const std::uint16_t> e,
                        Elem c = Field::one()) {
  PolyVec f(basis, field);
  f.coeffs[basis->index_of(e)] = c;
  return f;
}

inline Elem evaluate(const PolyVec& f, std::span<const Elem> point) {
  if (point.size() != static_cast<std::size_t>(f.basis->vars())) {
    throw InvalidArgument("evaluation point has the wrong number of coordinates");
  }
  const Field& F = f.field;
  for (auto x : point) {
    if (!F.contains(x)) throw InvalidArgument("evaluation point is not in the polynomial's field");
  }
  Elem acc = Field::zero();
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == Field::zero()) continue;
    Elem term = f.coeffs[i];
    const auto e = f.basis->exponents(i);
    for (std::size_t v = 0; v < point.size(); ++v) term = F.mul(term, F.pow(point[v], e[v]));
    acc = F.add(acc, term);
  }
  return acc;
}

/// Formal partial derivatives df/dx_1, ..., df/dx_{n+1}; coefficients are multiplied by
/// the exponent reduced mod p.
inline std::vector<PolyVec> partials(const PolyVec& f) {
  if (f.degree() < 1) throw InvalidArgument("partials need degree >= 1");
  auto lower = monomial_basis(f.n(), f.degree() - 1);
  std::vector<PolyVec> out(f.basis->vars(), PolyVec(lower, f.field));
  std::vector<std::uint16_t> e(f.basis->vars());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == Field::zero()) continue;
    const auto ei = f.basis->exponents(i);
    for (int v = 0; v < f.basis->vars(); ++v) {
      if (ei[v] == 0) continue;
      const Elem mult = f.field.from_int(ei[v]);
      if (mult == Field::zero()) continue;
      std::copy(ei.begin(), ei.end(), e.begin());
      --e[v];
      auto& slot = out[v].coeffs[lower->index_of(e)];
      slot = f.field.add(slot, f.field.mul(mult, f.coeffs[i]));
    }
  }
  return out;
}

namespace detail {

// Dense product of homogeneous polynomials, with a local cache of product tables.
class PolyMultiplier {
 public:
  PolyMultiplier(Field f, int n) : f_(std::move(f)), n_(n) {}

  const BasisPtr& basis(int d) {
    if (auto it = bases_.find(d); it != bases_.end()) return it->second;
    return bases_.emplace(d, monomial_basis(n_, d)).first->second;
  }

  std::vector<Elem> multiply(int da, std::span<const Elem> a, int db, std::span<const Elem> b) {
    auto key = std::make_pair(da, db);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      it = tables_.emplace(key, product_table(*basis(da), *basis(db), *basis(da + db))).first;
    }
    const auto& t = it->second;
    std::vector<Elem> out(basis(da + db)->size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == Field::zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == Field::zero()) continue;
        auto& slot = out[t[i * b.size() + j]];
        slot = f_.add(slot, f_.mul(a[i], b[j]));
      }
    }
    return out;
  }

 private:
  Field f_;
  int n_;
  std::map<int, BasisPtr> bases_;
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> tables_;
};

}  // namespace detail

/// Precomputed tables for building the matrix of f -> f o A on degree-d forms.
///
/// Column m of the matrix holds the coefficients of the image of monomial m;
/// images are built degree by degree, peeling off the first variable of each
/// monomial (x^m = x_v * x^{m - e_v}).
class SubstitutionBuilder {
 public:
  SubstitutionBuilder(Field field, int n, int d, std::size_t max_basis = kDefaultMaxBasis)
      : field_(std::move(field)), n_(n), d_(d) {
    if (d < 0) throw InvalidArgument("degree must be nonnegative");
    for (int t = 0; t <= d; ++t) bases_.push_back(monomial_basis(n, t, max_basis));
    linear_times_.resize(d + 1);
    first_var_.resize(d + 1);
    quotient_.resize(d + 1);
    for (int t = 1; t <= d; ++t) {
      linear_times_[t] = product_table(*bases_[1], *bases_[t - 1], *bases_[t]);
      const auto& B = *bases_[t];
      first_var_[t].resize(B.size());
      quotient_[t].resize(B.size());
      std::vector<std::uint16_t> e(vars());
      for (std::size_t m = 0; m < B.size(); ++m) {
        const auto em = B.exponents(m);
        int v = 0;
        while (em[v] == 0) ++v;
        std::copy(em.begin(), em.end(), e.begin());
        --e[v];
        first_var_[t][m] = v;
        quotient_[t][m] = static_cast<std::uint32_t>(bases_[t - 1]->index_of(e));
      }
    }
  }

  int vars() const noexcept { return n_ + 1; }
  const BasisPtr& basis() const noexcept { return bases_[d_]; }
  const Field& field() const noexcept { return field_; }

  /// Row-major N x N matrix M with M * coeffs(f) = coeffs(f o A); A given row-major.
  std::vector<Elem> matrix(std::span<const Elem> a) const {
    const std::size_t v = vars();
    if (a.size() != v * v) throw InvalidArgument("matrix size does not match the number of variables");
    // img[m] for the current degree t: coefficient vectors of length |B_t|.
    std::vector<Elem> prev(1, Field::one());  // degree 0: the constant 1
    std::size_t prev_size = 1;
    for (int t = 1; t <= d_; ++t) {
      const std::size_t cur_size = bases_[t]->size();
      const std::size_t lower = bases_[t - 1]->size();
      std::vector<Elem> cur(cur_size * cur_size);
      const auto& lt = linear_times_[t];
      for (std::size_t m = 0; m < cur_size; ++m) {
        const int var = first_var_[t][m];
        const Elem* src = prev.data() + quotient_[t][m] * prev_size;
        Elem* dst = cur.data() + m * cur_size;
        for (std::size_t k = 0; k < v; ++k) {
          const Elem coef = a[var * v + k];  // x_var -> sum_k a[var][k] x_k
          if (coef == Field::zero()) continue;
          // The linear monomial x_k has index k in degree 1.
          for (std::size_t u = 0; u < lower; ++u) {
            if (src[u] == Field::zero()) continue;
            auto& slot = dst[lt[k * lower + u]];
            slot = field_.add(slot, field_.mul(coef, src[u]));
          }
        }
      }
      prev = std::move(cur);
      prev_size = cur_size;
    }
    // prev holds images column by column; transpose into row-major M.
    const std::size_t N = prev_size;
    std::vector<Elem> out(N * N);
    for (std::size_t m = 0; m < N; ++m) {
      for (std::size_t r = 0; r < N; ++r) out[r * N + m] = prev[m * N + r];
    }
    return out;
  }

 private:
  Field field_;
  int n_;
  int d_;
  std::vector<BasisPtr> bases_;
  std::vector<std::vector<std::uint32_t>> linear_times_;
  std::vector<std::vector<int>> first_var_;
  std::vector<std::vector<std::uint32_t>> quotient_;
};

/// f o A: the polynomial x -> f(Ax). Each (sum_k a_{i,k} x_k)^{j_i} is expanded by
/// repeated dense multiplication, independently of SubstitutionBuilder.
inline PolyVec substitute(const PolyVec& f, const GroupElem& A) {
  const int v = f.basis->vars();
  if (A.n() != f.n()) throw InvalidArgument("matrix size does not match the polynomial's variables");
  const Field& F = f.field;
  for (auto x : A.entries()) {
    if (!F.contains(x)) throw InvalidArgument("matrix entry is not in the polynomial's field");
  }
  if (!is_invertible(F, A)) throw InvalidArgument("substitution matrix is not invertible");
  const int d = f.degree();
  detail::PolyMultiplier mult(F, f.n());
  // powers[i][t] = (row i of A . x)^t in degree t.
  std::vector<std::vector<std::vector<Elem>>> powers(v, std::vector<std::vector<Elem>>(d + 1));
  for (int i = 0; i < v; ++i) {
    powers[i][0] = {Field::one()};
    if (d >= 1) {
      std::vector<Elem> lin(static_cast<std::size_t>(v));
      for (int k = 0; k < v; ++k) lin[k] = A(i, k);
      powers[i][1] = lin;
      for (int t = 2; t <= d; ++t) powers[i][t] = mult.multiply(t - 1, powers[i][t - 1], 1, lin);
    }
  }
  PolyVec out(f.basis, F);
  for (std::size_t idx = 0; idx < f.coeffs.size(); ++idx) {
    if (f.coeffs[idx] == Field::zero()) continue;
    const auto e = f.basis->exponents(idx);
    std::vector<Elem> acc = {f.coeffs[idx]};
    int deg = 0;
    for (int i = 0; i < v; ++i) {
      if (e[i] == 0) continue;
      acc = mult.multiply(deg, acc, e[i], powers[i][e[i]]);
      deg += e[i];
    }
    for (std::size_t r = 0; r < acc.size(); ++r) out.coeffs[r] = F.add(out.coeffs[r], acc[r]);
  }
  return out;
}

/// The matrix of f -> f o A on the monomial basis.
inline MatrixFq substitution_matrix(const Field& field, const GroupElem& A, const MonomialBasis& basis) {
  if (A.n() != basis.n()) throw InvalidArgument("matrix size does not match the basis variables");
  for (auto x : A.entries()) {
    if (!field.contains(x)) throw InvalidArgument("matrix entry is not in the field");
  }
  if (!is_invertible(field, A)) throw InvalidArgument("substitution matrix is not invertible");
  SubstitutionBuilder builder(field, basis.n(), basis.degree());
  return MatrixFq(field, basis.size(), basis.size(), builder.matrix(A.entries()));
}

// ---------------------------------------------------------------- text form

/// Polynomial text grammar:
///   poly  := "0" | term ("+" term)*
///   term  := coef | [coef "*"] var ("*" var)*
///   coef  := integer | "[" integer ("," integer)* "]"
///   var   := "x" index ["^" exponent]
/// Whitespace is ignored; repeated monomials are summed; all terms must share one degree.
inline PolyVec parse_poly(std::string_view text, const Field& field, int n) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw InvalidArgument("empty polynomial text");

  // Split on '+' outside brackets.
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  terms.push_back(cur);

  struct Term {
    Elem coef;
    std::vector<std::uint16_t> exps;
  };
  std::vector<Term> parsed;
  int degree = -1;
  for (const auto& t : terms) {
    if (t.empty()) throw InvalidArgument("empty term in '" + s + "'");
    std::vector<std::string> factors;
    depth = 0;
    cur.clear();
    for (char ch : t) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (ch == '*' && depth == 0) {
        factors.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    factors.push_back(cur);
    Term term{Field::one(), std::vector<std::uint16_t>(n + 1, 0)};
    bool have_coef = false;
    for (const auto& fac : factors) {
      if (fac.empty()) throw InvalidArgument("empty factor in term '" + t + "'");
      if (fac[0] == 'x') {
        const auto caret = fac.find('^');
        const std::string idx = fac.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        long var = 0;
        long ex = 1;
        try {
          std::size_t used = 0;
          var = std::stol(idx, &used);
          if (used != idx.size()) throw InvalidArgument("");
          if (caret != std::string::npos) {
            const std::string es = fac.substr(caret + 1);
            ex = std::stol(es, &used);
            if (used != es.size()) throw InvalidArgument("");
          }
        } catch (const std::exception&) {
          throw InvalidArgument("bad variable factor '" + fac + "'");
        }
        if (var < 1 || var > n + 1) {
          throw InvalidArgument("variable x" + std::to_string(var) + " out of range x1..x" + std::to_string(n + 1));
        }
        if (ex < 0) throw InvalidArgument("negative exponent in '" + fac + "'");
        term.exps[var - 1] = static_cast<std::uint16_t>(term.exps[var - 1] + ex);
      } else {
        if (have_coef) throw InvalidArgument("term '" + t + "' has two coefficients");
        term.coef = field.mul(term.coef, field.parse(fac));
        have_coef = true;
      }
    }
    int deg = 0;
    for (auto e : term.exps) deg += e;
    if (degree >= 0 && deg != degree) throw InvalidArgument("polynomial is not homogeneous");
    degree = deg;
    parsed.push_back(std::move(term));
  }
  auto basis = monomial_basis(n, degree);
  PolyVec f(basis, field);
  for (const auto& t : parsed) {
    auto& slot = f.coeffs[basis->index_of(t.exps)];
    slot = field.add(slot, t.coef);
  }
  return f;
}

/// Same as parse_poly over a known degree, allowing the zero polynomial.
inline PolyVec parse_poly(std::string_view text, const Field& field, int n, int d) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s == "0") return PolyVec(monomial_basis(n, d), field);
  auto f = parse_poly(s, field, n);
  if (f.degree() != d) throw InvalidArgument("polynomial has degree " + std::to_string(f.degree()) + ", expected " + std::to_string(d));
  return f;
}

inline std::string format_poly(const PolyVec& f) {
  std::string out;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    const Elem c = f.coeffs[i];
    if (c == Field::zero()) continue;
    if (!out.empty()) out += " + ";
    const auto e = f.basis->exponents(i);
    std::string mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += 'x' + std::to_string(v + 1);
      if (e[v] > 1) mono += '^' + std::to_string(e[v]);
    }
    if (mono.empty()) {
      out += f.field.format(c);
    } else if (c == Field::one()) {
      out += mono;
    } else {
      out += f.field.format(c) + '*' + mono;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace hypaut

#endif  // HYPAUT_POLYSPACE_HPP
