#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include "gcoh/arith.hpp"

namespace gcoh {

using IntVector = std::vector<Integer>;

/// Dense row-major matrix over Z.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DomainError("ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    if (rows.empty()) return {};
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch in product");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += x * o(k, j);
      }
    return out;
  }

  IntVector operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw DomainError("matrix-vector shape mismatch");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool all_nonnegative() const {
    for (const auto& x : data_)
      if (x < 0) return false;
    return true;
  }
  bool all_positive() const {
    for (const auto& x : data_)
      if (x <= 0) return false;
    return !data_.empty();
  }

  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  bool operator==(const IntMatrix&) const = default;

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i == 0 ? "[" : ",[";
      for (std::size_t j = 0; j < cols_; ++j) out += (j == 0 ? "" : ",") + (*this)(i, j).str();
      out += "]";
    }
    return out + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Sparse matrix with small nonnegative entries, for large 0/1 incidence data.
class SparseIntMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t get(std::size_t r, std::size_t c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? 0 : it->second;
  }

  void set(std::size_t r, std::size_t c, std::int64_t value) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("sparse matrix index out of range");
    if (value == 0)
      entries_.erase({r, c});
    else
      entries_[{r, c}] = value;
  }

  const std::map<Key, std::int64_t>& entries() const { return entries_; }

  IntMatrix to_dense() const {
    IntMatrix out(rows_, cols_);
    for (const auto& [k, v] : entries_) out(k.first, k.second) = v;
    return out;
  }

  bool operator==(const SparseIntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Key, std::int64_t> entries_;
};

}  // namespace gcoh
