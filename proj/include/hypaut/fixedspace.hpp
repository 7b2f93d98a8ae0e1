// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_FIXEDSPACE_HPP
#define HYPAUT_FIXEDSPACE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "error.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "polyspace.hpp"

namespace hypaut {

/// The eigenspace {f in P_d : f o A = lambda f}.
struct FixedSpaceRecord {
  GroupElem A;
  Elem lambda;
  int d = 0;
  std::size_t dim = 0;
  std::optional<std::vector<PolyVec>> basis;
};

namespace detail {

// Rows of M - lambda I for a row-major N x N matrix M.
inline std::size_t eigenspace_dim(const Field& f, std::span<const Elem> m, std::size_t N, Elem lambda) {
  RowEchelon e(f, N);
  std::vector<Elem> row(N);
  const Elem nl = f.neg(lambda);
  for (std::size_t r = 0; r < N && !e.full(); ++r) {
    std::copy(m.begin() + static_cast<std::ptrdiff_t>(r * N), m.begin() + static_cast<std::ptrdiff_t>((r + 1) * N), row.begin());
    row[r] = f.add(row[r], nl);
    e.insert(row);
  }
  return N - e.rank();
}

inline Kernel eigenspace_basis(const Field& f, std::span<const Elem> m, std::size_t N, Elem lambda) {
  std::vector<Elem> data(m.begin(), m.end());
  const Elem nl = f.neg(lambda);
  for (std::size_t r = 0; r < N; ++r) data[r * N + r] = f.add(data[r * N + r], nl);
  return kernel(MatrixFq(f, N, N, std::move(data)));
}

}  // namespace detail

inline FixedSpaceRecord fixed_space(const Field& field, const GroupElem& A, Elem lambda, const BasisPtr& basis,
                                    bool want_basis) {
  if (lambda == Field::zero()) throw InvalidArgument("lambda must be nonzero");
  if (!field.contains(lambda)) throw InvalidArgument("lambda is not in the field");
  const MatrixFq M = substitution_matrix(field, A, *basis);
  const std::size_t N = basis->size();
  FixedSpaceRecord rec{A, lambda, basis->degree(), 0, std::nullopt};
  if (!want_basis) {
    rec.dim = detail::eigenspace_dim(field, M.data(), N, lambda);
    return rec;
  }
  Kernel k = detail::eigenspace_basis(field, M.data(), N, lambda);
  rec.dim = k.dim;
  std::vector<PolyVec> polys;
  polys.reserve(k.basis.size());
  for (auto& v : k.basis) polys.emplace_back(basis, field, std::move(v));
  rec.basis = std::move(polys);
  return rec;
}

/// Number of exponent tuples j with sum d and prod lambdas_i^{j_i} = lambda, by
/// dynamic programming over (variable, degree used, residue of sum j_i log lambda_i
/// modulo q - 1).
inline std::uint64_t diag_fixed_dim(const Field& field, std::span<const Elem> lambdas, Elem lambda, int d) {
  if (d < 0) throw InvalidArgument("degree must be nonnegative");
  if (lambdas.empty()) throw InvalidArgument("need at least one diagonal entry");
  if (lambda == Field::zero()) throw InvalidArgument("lambda must be nonzero");
  const std::uint32_t order = field.q() - 1;
  std::vector<std::uint32_t> logs;
  for (auto x : lambdas) {
    if (x == Field::zero()) throw InvalidArgument("diagonal entries must be nonzero");
    logs.push_back(field.discrete_log(x));
  }
  const std::uint32_t target = field.discrete_log(lambda);
  const std::size_t width = static_cast<std::size_t>(d + 1) * order;
  // ways[deg * order + res]
  std::vector<std::uint64_t> ways(width, 0);
  ways[0] = 1;
  for (auto l : logs) {
    std::vector<std::uint64_t> next(width, 0);
    for (int used = 0; used <= d; ++used) {
      for (std::uint32_t res = 0; res < order; ++res) {
        const std::uint64_t w = ways[static_cast<std::size_t>(used) * order + res];
        if (!w) continue;
        std::uint64_t r = res;
        for (int j = 0; used + j <= d; ++j) {
          next[static_cast<std::size_t>(used + j) * order + r] += w;
          r = (r + l) % order;
        }
      }
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(d) * order + target];
}

}  // namespace hypaut

#endif  // HYPAUT_FIXEDSPACE_HPP
