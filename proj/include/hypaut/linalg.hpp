// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HYPAUT_LINALG_HPP
#define HYPAUT_LINALG_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gf.hpp"

namespace hypaut {

/// Dense row-major matrix over a finite field.
class MatrixFq {
 public:
  MatrixFq() = default;
  MatrixFq(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixFq(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidArgument("matrix data size does not match its shape");
  }

  static MatrixFq identity(const Field& field, std::size_t n) {
    MatrixFq m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Field::one();
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> data() const noexcept { return data_; }

  std::vector<Elem> apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match matrix columns");
    std::vector<Elem> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Elem acc = Field::zero();
      for (std::size_t c = 0; c < cols_; ++c) acc = field_.add(acc, field_.mul((*this)(r, c), v[c]));
      out[r] = acc;
    }
    return out;
  }

  friend MatrixFq operator*(const MatrixFq& a, const MatrixFq& b) {
    if (a.cols_ != b.rows_ || !(a.field_ == b.field_)) throw InvalidArgument("matrix product shape or field mismatch");
    MatrixFq out(a.field_, a.rows_, b.cols_);
    const Field& f = a.field_;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Elem x = a(i, k);
        if (x == Field::zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(k, j)));
      }
    }
    return out;
  }

  friend bool operator==(const MatrixFq& a, const MatrixFq& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Incrementally maintained row echelon form. Rows are reduced against the
/// stored pivots on insertion; pivot rows are normalized to leading entry 1.
/// F_2 rows are bit-packed.
class RowEchelon {
 public:
  RowEchelon(Field field, std::size_t cols) : field_(std::move(field)), cols_(cols), pivot_row_(cols, -1) {
    binary_ = field_.kind() == Field::Kind::binary_prime;
    words_ = (cols_ + 63) / 64;
    work_bits_.resize(words_);
    work_.resize(cols_);
  }

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rank_; }
  bool full() const noexcept { return rank_ == cols_; }

  void clear() {
    rank_ = 0;
    std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
    bits_.clear();
    rows_.clear();
  }

  /// Inserts a dense row; returns true when the rank grows.
  bool insert(std::span<const Elem> row) {
    if (row.size() != cols_) throw InvalidArgument("row length does not match echelon width");
    if (full()) return false;
    if (binary_) {
      std::fill(work_bits_.begin(), work_bits_.end(), 0);
      for (std::size_t c = 0; c < cols_; ++c) {
        if (row[c].code) work_bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
      return reduce_bits();
    }
    for (std::size_t c = 0; c < cols_; ++c) work_[c] = row[c].code;
    return reduce_dense();
  }

  /// Inserts a row given as (column, value) pairs; repeated columns are summed.
  bool insert_sparse(std::span<const std::pair<std::uint32_t, Elem>> entries) {
    if (full()) return false;
    if (binary_) {
      std::fill(work_bits_.begin(), work_bits_.end(), 0);
      for (const auto& [c, v] : entries) {
        if (v.code) work_bits_[c >> 6] ^= std::uint64_t{1} << (c & 63);
      }
      return reduce_bits();
    }
    std::fill(work_.begin(), work_.end(), 0);
    for (const auto& [c, v] : entries) work_[c] = field_.add(Elem{work_[c]}, v).code;
    return reduce_dense();
  }

 private:
  bool reduce_bits() {
    std::size_t w = 0;
    while (w < words_) {
      if (work_bits_[w] == 0) {
        ++w;
        continue;
      }
      const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(work_bits_[w]));
      const int pr = pivot_row_[c];
      if (pr < 0) {
        pivot_row_[c] = static_cast<int>(rank_);
        bits_.insert(bits_.end(), work_bits_.begin(), work_bits_.end());
        ++rank_;
        return true;
      }
      const std::uint64_t* src = bits_.data() + static_cast<std::size_t>(pr) * words_;
      for (std::size_t j = w; j < words_; ++j) work_bits_[j] ^= src[j];
    }
    return false;
  }

  bool reduce_dense() {
    const std::uint32_t p = field_.p();
    const std::uint32_t q = field_.q();
    const auto& mt = field_.mul_table();
    const auto& at = field_.add_table();
    const Field::Kind kind = field_.kind();
    for (std::size_t c = 0; c < cols_; ++c) {
      const std::uint32_t lead = work_[c];
      if (lead == 0) continue;
      const int pr = pivot_row_[c];
      if (pr < 0) {
        const Elem scale = field_.inv(Elem{lead});
        for (std::size_t j = c; j < cols_; ++j) work_[j] = field_.mul(Elem{work_[j]}, scale).code;
        pivot_row_[c] = static_cast<int>(rank_);
        rows_.insert(rows_.end(), work_.begin(), work_.end());
        ++rank_;
        return true;
      }
      const std::uint32_t* src = rows_.data() + static_cast<std::size_t>(pr) * cols_;
      const std::uint32_t factor = field_.neg(Elem{lead}).code;  // work += factor * pivot row
      if (kind == Field::Kind::prime && !mt.empty()) {
        const std::uint8_t* m = mt.data() + static_cast<std::size_t>(factor) * q;
        for (std::size_t j = c; j < cols_; ++j) {
          const std::uint32_t s = work_[j] + m[src[j]];
          work_[j] = s >= p ? s - p : s;
        }
      } else if (kind == Field::Kind::binary_ext && !mt.empty()) {
        const std::uint8_t* m = mt.data() + static_cast<std::size_t>(factor) * q;
        for (std::size_t j = c; j < cols_; ++j) work_[j] ^= m[src[j]];
      } else if (!mt.empty()) {
        const std::uint8_t* m = mt.data() + static_cast<std::size_t>(factor) * q;
        for (std::size_t j = c; j < cols_; ++j) work_[j] = at[work_[j] * q + m[src[j]]];
      } else {
        for (std::size_t j = c; j < cols_; ++j) {
          work_[j] = field_.add(Elem{work_[j]}, field_.mul(Elem{factor}, Elem{src[j]})).code;
        }
      }
    }
    return false;
  }

  Field field_;
  std::size_t cols_;
  std::size_t rank_ = 0;
  bool binary_ = false;
  std::size_t words_ = 0;
  std::vector<int> pivot_row_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> work_bits_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> work_;
};

inline std::size_t rank(const MatrixFq& m) {
  RowEchelon e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows() && !e.full(); ++r) e.insert(m.row(r));
  return e.rank();
}

struct Kernel {
  std::size_t dim = 0;
  /// Reduced echelon basis: each vector has leading coordinate 1, leading
  /// positions strictly increase, and every vector vanishes at the others' leads.
  std::vector<std::vector<Elem>> basis;
};

namespace detail {

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(const Field& f, std::vector<std::vector<Elem>>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == Field::zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Elem s = f.inv(rows[r][c]);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.mul(rows[r][j], s);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == Field::zero()) continue;
      const Elem factor = f.neg(rows[i][c]);
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.add(rows[i][j], f.mul(factor, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace detail

/// Null space {v : M v = 0}.
inline Kernel kernel(const MatrixFq& m) {
  const Field& f = m.field();
  std::vector<std::vector<Elem>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
  const auto pivots = detail::rref(f, rows, m.cols());

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols());
    v[free] = Field::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(rows[i][free]);
    basis.push_back(std::move(v));
  }
  detail::rref(f, basis, m.cols());
  Kernel k;
  k.dim = basis.size();
  k.basis = std::move(basis);
  return k;
}

}  // namespace hypaut

#endif  // HYPAUT_LINALG_HPP
