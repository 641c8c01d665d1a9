#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "easycat/exact.hpp"

using namespace easycat;

namespace {

// Reference rank: plain Gaussian elimination over the rationals, no tricks.
int rank_by_row_reduction(ExactMatrix m) {
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (!m.at(i, c).is_zero()) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(sel, j));
    for (int i = r + 1; i < m.rows(); ++i) {
      if (m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c) / m.at(r, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

ExactMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  ExactMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = Rational(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rank of stock matrices") {
  CHECK(rank(ExactMatrix(0, 0)) == 0);
  CHECK(rank(ExactMatrix(3, 5)) == 0);
  CHECK(rank(ExactMatrix::identity(7)) == 7);

  ExactMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 4;  // second row is twice the first
  CHECK(rank(m) == 1);

  ExactMatrix frac(2, 3);
  frac.at(0, 0) = Rational(1, 2);
  frac.at(0, 1) = Rational(1, 3);
  frac.at(0, 2) = Rational(1, 6);
  frac.at(1, 0) = Rational(3, 2);
  frac.at(1, 1) = 1;
  frac.at(1, 2) = Rational(1, 2);  // row 1 = 3 * row 0
  CHECK(rank(frac) == 1);
}

TEST_CASE("rank agrees with straightforward row reduction") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    ExactMatrix m = random_matrix(rng, dim(rng), dim(rng));
    CHECK(rank(m) == rank_by_row_reduction(m));
  }
}

TEST_CASE("rank of a forced low-rank product") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<int> dim(1, 6);
    int inner = dim(rng);
    ExactMatrix a = random_matrix(rng, dim(rng), inner);
    ExactMatrix b = random_matrix(rng, inner, dim(rng));
    ExactMatrix prod = a * b;
    int r = rank(prod);
    CHECK(r <= inner);
    CHECK(r == rank_by_row_reduction(prod));
  }
}

TEST_CASE("rank is invariant under transpose") {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int trial = 0; trial < 100; ++trial) {
    ExactMatrix m = random_matrix(rng, dim(rng), dim(rng));
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("hconcat stacks columns side by side") {
  ExactMatrix a = ExactMatrix::identity(2);
  ExactMatrix b(2, 1);
  b.at(0, 0) = 5;
  b.at(1, 0) = 7;
  ExactMatrix c = hconcat(a, b);
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 3);
  CHECK(c.at(0, 2) == 5);
  CHECK(c.at(1, 2) == 7);
  CHECK(rank(c) == 2);                     // extra column adds nothing new
  CHECK(rank(hconcat(b, b)) == 1);
  CHECK_THROWS_AS(hconcat(a, ExactMatrix(3, 1)), std::invalid_argument);
}

TEST_CASE("spanning a column inside an image keeps the concatenated rank") {
  // columns of `a` span a plane; `v` lies on it, `w` does not
  ExactMatrix a(3, 2);
  a.at(0, 0) = 1;
  a.at(1, 1) = 1;
  ExactMatrix v(3, 1);
  v.at(0, 0) = 2;
  v.at(1, 0) = -3;
  ExactMatrix w(3, 1);
  w.at(2, 0) = 1;
  CHECK(rank(hconcat(a, v)) == rank(a));
  CHECK(rank(hconcat(a, w)) == rank(a) + 1);
}

TEST_CASE("matrix product checks dimensions") {
  CHECK_THROWS_AS(ExactMatrix(2, 3) * ExactMatrix(2, 3), std::invalid_argument);
  ExactMatrix i3 = ExactMatrix::identity(3);
  std::mt19937 rng(109);
  ExactMatrix m = random_matrix(rng, 3, 3);
  CHECK(i3 * m == m);
  CHECK(m * i3 == m);
}
