#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "kzm/error.hpp"
#include "kzm/rational.hpp"

namespace kzm {

// Dense row-major matrix. Used with Rational for exact work; complex dense
// algebra goes through Eigen (see complex_linalg.hpp).
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw ShapeError("matrix product " + a.shape() + " * " + b.shape());
    }
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw ShapeError("matrix-vector product " + shape() + " * " + std::to_string(v.size()));
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if ((*this)(i, k) != 0) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  bool operator==(const DenseMatrix& o) const = default;

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void check_same(const DenseMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError(std::string("matrix ") + op + " " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = DenseMatrix<Rational>;

inline RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

/// Largest |entry|; zero for an empty matrix.
inline Rational max_abs(const RationalMatrix& m) {
  Rational best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& x : m.row(r))
      if (abs(x) > best) best = abs(x);
  return best;
}

/// Kronecker product a (x) b.
template <typename T>
DenseMatrix<T> kronecker(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  DenseMatrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// Compressed sparse row operator, assembled from coordinate triplets.
// Duplicate coordinates are summed and explicit zeros dropped.
template <typename T>
class SparseOperator {
 public:
  struct Triplet {
    std::size_t row;
    std::size_t col;
    T value;
  };

  SparseOperator() = default;
  SparseOperator(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) : rows_(rows), cols_(cols) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    row_ptr_.assign(rows + 1, 0);
    for (std::size_t k = 0; k < triplets.size();) {
      const std::size_t r = triplets[k].row;
      const std::size_t c = triplets[k].col;
      if (r >= rows || c >= cols) throw ShapeError("sparse triplet out of range");
      T sum = triplets[k].value;
      std::size_t next = k + 1;
      while (next < triplets.size() && triplets[next].row == r && triplets[next].col == c) sum += triplets[next++].value;
      if (sum != 0) {
        col_idx_.push_back(c);
        values_.push_back(std::move(sum));
        ++row_ptr_[r + 1];
      }
      k = next;
    }
    for (std::size_t r = 0; r < rows; ++r) row_ptr_[r + 1] += row_ptr_[r];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  template <typename F>
  void for_each_in_row(std::size_t r, F&& f) const {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) f(col_idx_[k], values_[k]);
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw ShapeError("sparse apply: vector length mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out[r] += values_[k] * v[col_idx_[k]];
    return out;
  }

  DenseMatrix<T> apply(const DenseMatrix<T>& m) const {
    if (m.rows() != cols_) throw ShapeError("sparse apply: matrix shape mismatch");
    DenseMatrix<T> out(rows_, m.cols());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
        for (std::size_t j = 0; j < m.cols(); ++j) out(r, j) += values_[k] * m(col_idx_[k], j);
    return out;
  }

  DenseMatrix<T> densify() const {
    DenseMatrix<T> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out(r, col_idx_[k]) = values_[k];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<T> values_;
};

}  // namespace kzm
