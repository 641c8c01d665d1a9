// Dense matrices over the rationals with an exact rank computation.
//
// Rank does fraction-free elimination (Bareiss) on integers: each row is
// scaled by its common denominator first, then the one-step update
//   M(i,j) <- (M(r,c)*M(i,j) - M(i,c)*M(r,j)) / prev
// keeps every intermediate value an integer, with `prev` the previous pivot.
// Columns without a usable pivot are skipped, so the routine handles
// rectangular and rank-deficient input alike.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace easycat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_check(rows, cols)) {}

  static ExactMatrix identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  ExactMatrix transpose() const {
    ExactMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
  }

  ExactMatrix operator*(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
      throw std::invalid_argument("matrix product: inner dimensions " + std::to_string(cols_) +
                                  " and " + std::to_string(rhs.rows_) + " differ");
    }
    ExactMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int k = 0; k < cols_; ++k) {
        const Rational& v = at(r, k);
        if (v.is_zero()) continue;
        for (int c = 0; c < rhs.cols_; ++c) out.at(r, c) += v * rhs.at(k, c);
      }
    }
    return out;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static size_t size_check(int rows, int cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
    return static_cast<size_t>(rows) * static_cast<size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

inline ExactMatrix hconcat(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("hconcat: row counts " + std::to_string(a.rows()) + " and " +
                                std::to_string(b.rows()) + " differ");
  }
  ExactMatrix out(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    for (int c = 0; c < b.cols(); ++c) out.at(r, a.cols() + c) = b.at(r, c);
  }
  return out;
}

inline int rank(const ExactMatrix& m) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;

  const int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (int r = 0; r < rows; ++r) {
    Integer scale = 1;
    for (int c = 0; c < cols; ++c) scale = lcm(scale, denominator(m.at(r, c)));
    for (int c = 0; c < cols; ++c) {
      const Rational& v = m.at(r, c);
      a[r][c] = numerator(v) * (scale / denominator(v));
    }
  }

  Integer prev = 1;
  int pivot_row = 0;
  for (int c = 0; c < cols && pivot_row < rows; ++c) {
    int sel = -1;
    for (int r = pivot_row; r < rows; ++r) {
      if (!a[r][c].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;  // no pivot in this column
    std::swap(a[pivot_row], a[sel]);
    const std::vector<Integer>& p = a[pivot_row];
    for (int r = pivot_row + 1; r < rows; ++r) {
      std::vector<Integer>& row = a[r];
      const Integer factor = row[c];
      for (int j = 0; j < cols; ++j) {
        row[j] = (p[c] * row[j] - factor * p[j]) / prev;
      }
    }
    prev = p[c];
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace easycat
