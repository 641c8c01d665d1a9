// Generator relations read off a two-coloured diagram.
//
// Fix a diagram p with k upper and l lower points and a symbol count n.  The
// row classes of `labeling.hpp` index sums of monomials in an n x n matrix u
// of noncommuting generators (emit_gr) or an n x d rectangle x (emit_sp_*).
// A white point contributes a plain generator, a black point a starred one,
// factors ordered left to right along the row.
//
// emit_gr produces, for classes i, j >= 1 and column labels c from upper
// class j, row labels c' from lower class i,
//   (i)    sum_{t in upper class i} u^w_{t_m c_m}
//              = sum_{t' in lower class j} u^w'_{c'_m t'_m},
//   (ii)   sum_{t in upper class i} u^w_{t_m c_m}   = 0  for inconsistent c,
//   (iii)  sum_{t' in lower class j} u^w'_{c'_m t'_m} = 0 for inconsistent c'.
//
// emit_sp_matrix keeps the summed tuple in row position on both sides and
// draws both column labels from the same class j, restricted to symbols <= d:
//   (i)    sum_{t in upper class i} x^w_{t_m c_m}
//              = sum_{t' in lower class i} x^w'_{t'_m c'_m},
//   (ii)   sum_{t in upper class i} x^w_{t_m c_m}   = 0  for inconsistent c,
//   (iii)  sum_{t' in lower class i} x^w'_{t'_m c'_m} = 0 for inconsistent c',
// skipping pairs (i, j) when class j has no member within [1, d].
//
// By default each family-(i) instance uses the least column labels of its
// class; `exhaustive` ranges over every admissible label pair instead.
// Duplicates (equal difference of sides, up to overall sign) are dropped,
// as are identities that hold formally.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "easycat/labeling.hpp"
#include "easycat/partition.hpp"

namespace easycat {

enum class SymbolKind : std::uint8_t { U, X };

struct Symbol {
  SymbolKind kind;
  int row;
  int col;
  bool star;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Product of generators, ordered; the empty monomial is the unit.
using Monomial = std::vector<Symbol>;

// Integer combination of monomials; sides of relations keep coefficient 1.
using FormalSum = std::map<Monomial, long long>;

enum class Family : std::uint8_t { Gr, SpMatrix, SpVector };

std::string family_name(Family f);

struct Provenance {
  std::string partition;  // text form of the source diagram
  Family family = Family::Gr;
  int part = 1;        // which of the three families above: 1, 2 or 3
  long long i = 0;     // summed class (left side), 0 when unused
  long long j = 0;     // column / right-hand class, 0 when unused
  std::optional<Tuple> gamma;        // upper-row labels, when the part has any
  std::optional<Tuple> gamma_prime;  // lower-row labels, when the part has any
};

struct Relation {
  FormalSum lhs, rhs;
  Provenance origin;
};

// lhs - rhs with the leading coefficient made positive; empty when the
// relation holds formally.
FormalSum normal_form(const Relation& r);

std::vector<Relation> emit_gr(const Partition& p, int n, bool exhaustive = false);
std::vector<Relation> emit_sp_matrix(const Partition& p, int n, int d, bool exhaustive = false);
std::vector<Relation> emit_sp_vector(const Partition& p, int n, bool exhaustive = false);

// Text: "1 = x(1,1)x(1,1)* + ..." (single-column x printed as "x(1)").
// Json: object with lhs/rhs term arrays and the provenance.
// LatexPicture: an aligned equation line.
std::string format_relation(const Relation& r, Style style = Style::Text);

// All relations: one line each (text), a JSON array, or one align* block.
std::string format_relations(const std::vector<Relation>& rels, Style style = Style::Text);

// One side of a relation: the sum over class `cls` of the given row with the
// fixed `labels` tuple in column position (summed_is_row) or row position.
FormalSum class_sum(const Partition& p, Side side, long long cls, const Tuple& labels,
                    SymbolKind kind, bool summed_is_row, int n);

using Cplx = std::complex<double>;
using CMatrix = std::vector<std::vector<Cplx>>;

// |lhs - rhs| when every generator u_{rc} / x_{rc} is replaced by m[r-1][c-1]
// (conjugated when starred) and the factors are multiplied as numbers.
double evaluate_relation(const Relation& r, const CMatrix& m);

// Value of one class sum without building the formal expression:
//   sum over t in the class of  prod_m  m[t_m][labels_m]   (summed_is_row)
//                               prod_m  m[labels_m][t_m]   (otherwise),
// each factor conjugated when its point is black.  Equals evaluating the
// matching side of an emitted relation, but runs in O(points * n) by
// splitting the sum over the blocks of the row.
Cplx sum_value(const Partition& p, Side side, long long cls, const Tuple& labels,
               const CMatrix& m, int n, bool summed_is_row);

}  // namespace easycat
