// Labelings of one row of a diagram by symbols 1..n.
//
// A tuple t in [n]^k is *consistent* for a row when it is constant on every
// block restricted to that row.  Consistent tuples fall into classes
// 1..n^(number of through blocks): reading off the common label of each
// through block (ordered by first appearance in the diagram, first block
// least significant) gives the base-n digits of (class - 1).  Inconsistent
// tuples form class 0.  Both rows of a diagram therefore decompose into the
// same number of classes, and a combined labeling of all points is constant
// on every block exactly when the two rows carry the same class >= 1.

#pragma once

#include <optional>
#include <vector>

#include "easycat/partition.hpp"

namespace easycat {

enum class Side { Upper, Lower };

using Tuple = std::vector<int>;  // symbols are 1-based

// Largest enumeration size enumerate_class/enumerate_inconsistent will
// attempt: EASYCAT_LABEL_CAP from the environment, else 10^7.
long long label_cap();

// Number of classes with index >= 1, i.e. n^(through blocks).  Throws
// std::overflow_error when that value does not fit in 63 bits.
long long class_count(const Partition& p, int n);

// Class of `t` for the given row: 0 when inconsistent, otherwise in
// [1, class_count].  Throws std::invalid_argument on a malformed tuple.
long long row_class(const Partition& p, Side side, const Tuple& t, int n);

// Per-block labels of class i, indexed by block id: the label a through
// block carries in class i, or 0 for blocks that are not through blocks.
std::vector<int> class_labels(const Partition& p, long long i, int n);

// Lexicographically least member of class i whose symbols all lie in
// [1, max_symbol]; nullopt when the class has no such member.  Class indices
// outside [1, class_count] throw std::out_of_range.
std::optional<Tuple> class_representative(const Partition& p, Side side, long long i, int n,
                                          int max_symbol);

// All members of class i (i >= 1) in lexicographic order.  Throws
// std::length_error when the class is larger than `cap`.
std::vector<Tuple> enumerate_class(const Partition& p, Side side, long long i, int n,
                                   long long cap = label_cap());

// All inconsistent tuples (class 0) in lexicographic order.  Throws
// std::length_error when [n]^k is larger than `cap`.
std::vector<Tuple> enumerate_inconsistent(const Partition& p, Side side, int n,
                                          long long cap = label_cap());

// 1 when the combined labeling (upper row `tu`, lower row `tl`) is constant
// on every block of the diagram, else 0.
int delta(const Partition& p, const Tuple& tu, const Tuple& tl);

}  // namespace easycat
