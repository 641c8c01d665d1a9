// Linear-algebra layer on top of the diagram calculus.
//
// Every partition p with k upper and l lower points induces a 0/1 matrix
// T_p of shape n^l x n^k: the entry at (t', t) is 1 exactly when the joint
// labeling (t upper, t' lower) is constant on every block of p.  Ranks of
// these matrices are computed exactly; concrete matrices (permutations,
// signed permutations, rotations) are checked against them numerically.
//
// On top of that sits the projective-partition lattice for a fixed word:
// the projective members p (p equal to its own reflection, p absorbing
// under self-composition) ordered by dominance, the rank recursion
//   rank_pp(p) = n^tb(p) - sum of rank_pp over strict minorants,
// and the induced dimension count for the span of degree-two
// coefficients.  The colinearity tables bound that dimension from above
// once selected product pairs are assumed proportional.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "easycat/category.hpp"
#include "easycat/exact.hpp"
#include "easycat/labeling.hpp"
#include "easycat/partition.hpp"
#include "easycat/relations.hpp"

namespace easycat {

// ---------------------------------------------------------------------------
// Transfer matrices

/// Sparse 0/1 matrix; `ones` lists the coordinates of the nonzero entries,
/// sorted by (row, col).  Tuple (t_1, .., t_k) over [n] maps to the index
/// sum_m (t_m - 1) * n^(m-1), i.e. the first position varies fastest.
struct TpMatrix {
  long long rows = 1;
  long long cols = 1;
  std::vector<std::pair<long long, long long>> ones;
};

/// Builds T_p over symbols [n].  Throws std::overflow_error when the
/// virtual size n^l * n^k exceeds `entry_guard`.
TpMatrix tp_matrix(const Partition& p, int n, long long entry_guard = 100'000'000);

/// Dense rational copy; refuses shapes above `dense_guard` entries.
ExactMatrix tp_dense(const TpMatrix& m, long long dense_guard = 1'000'000);

/// Exact rank of T_p (via the dense form).
int tp_rank(const Partition& p, int n);

/// Matrix Market coordinate text for a sparse 0/1 matrix.
std::string matrix_market(const TpMatrix& m);

// ---------------------------------------------------------------------------
// Concrete elements

enum class ElementClass : std::uint8_t {
  Permutation,
  SignedPermutation,
  GlobalSignPermutation,
  RotationSample,
  Custom,
};

struct ConcreteElement {
  CMatrix matrix;
  ElementClass cls = ElementClass::Custom;
};

/// Parameters for make_element; only the fields the class needs are read.
struct ElementParams {
  std::vector<int> perm;    // image list, 1-based: entry j is sigma(j)
  std::vector<int> signs;   // one of {-1, +1} per column
  int global_sign = 1;      // single sign in front of the whole matrix
  double angle = 0.0;       // rotation angle, RotationSample only (n = 2)
  CMatrix custom;           // Custom only
};

/// The matrix described by (cls, n, params):
///   Permutation           entry (sigma(j), j) = 1
///   SignedPermutation     entry (sigma(j), j) = signs[j]
///   GlobalSignPermutation global_sign times a permutation matrix
///   RotationSample        2x2 rotation by `angle`
///   Custom                params.custom verbatim (must be n x n)
/// Throws std::invalid_argument on malformed parameters.
ConcreteElement make_element(ElementClass cls, int n, const ElementParams& params);

/// Every element of the finite classes, in a fixed order: permutations
/// lexicographically by image list; signed permutations additionally by
/// sign pattern (all +1 first); global signs +1 before -1.  Throws for
/// RotationSample and Custom.
std::vector<ConcreteElement> all_elements(ElementClass cls, int n);

/// Seeded random element of Permutation / SignedPermutation /
/// GlobalSignPermutation / RotationSample (uniform angle).
ConcreteElement sample_element(ElementClass cls, int n, std::mt19937_64& rng);

/// Max-norm of T_p G - G' T_p where G tensors g over the upper word
/// (white factor g, black factor entrywise conjugate) and G' does the
/// same over the lower word.  g must be square and nonempty; the value
/// is computed entrywise from the block structure, so no n^k x n^k
/// matrix is ever materialised.  Exact zero when exact inputs commute.
double check_intertwiner(const Partition& p, const CMatrix& g,
                         long long entry_guard = 100'000'000);

// ---------------------------------------------------------------------------
// Projective lattice and dimension counts

struct ProjectiveLattice {
  std::vector<Colour> word;
  int n = 2;
  std::vector<Partition> nodes;  // sorted by encoding for determinism
  // strictly_below[q][p] holds when node q is a strict minorant of node p.
  std::vector<std::vector<bool>> strictly_below;
  // Unitary-equivalence classes of nodes (p ~ q when some member r of the
  // closure satisfies r* r = p and r r* = q, loops discarded), each class
  // listed by ascending node index, classes ordered by first node.
  std::vector<std::vector<std::size_t>> classes;
};

/// Collects the projective members of c on the given word and computes
/// dominance and equivalence.  Requires c.max_points() >= 2 * word size;
/// a dominance answer that differs between compose(q,p) and compose(p,q)
/// is reported as std::runtime_error (it would mean the closure is not
/// actually closed).
ProjectiveLattice projective_lattice(const Closure& c, const std::vector<Colour>& word, int n);

/// rank_pp per node: n^tb(node) minus the sum over strict minorants,
/// evaluated in dependency order.  A negative value throws
/// std::runtime_error naming the offending node.
std::vector<long long> rank_pp_table(const ProjectiveLattice& lat);

/// Sum of rank_pp(class representative)^2 over equivalence classes.
/// Members of one class must agree on rank_pp; a mismatch throws.
long long coeff_space_dim(const ProjectiveLattice& lat);

/// Rank of the horizontal concatenation (dimension of the joined column
/// span).  Rows must agree.
int subspace_join_rank(const std::vector<ExactMatrix>& mats);

// ---------------------------------------------------------------------------
// Colinearity bounds

/// One of the two worked degree-two cases.
///   o2plus: formal basis {1} and the 16 words o_rc o_r'c' over the 2x2
///           letters; relations are the eight orthogonality sums
///           sum_i o_{i k1} o_{i k2} = delta and the row analogue.
///   b3plus: formal basis of the 21 products of length at most two in the
///           2x2 corner letters b_rc; relations are the four displayed
///           consequences of the row/column sums and orthogonality.
/// `dropped` names the four words assumed proportional to their partner
/// (and therefore removable from any spanning set).
struct ColinearityCase {
  std::vector<std::string> basis;
  std::vector<std::vector<long long>> relation_rows;  // coefficients over basis
  std::vector<std::string> dropped;
};

ColinearityCase colinearity_case(const std::string& name);  // "o2plus" | "b3plus"

struct ColinearityReport {
  long long upper_bound = 0;    // kept basis size minus usable relation rank
  long long reference_dim = 0;  // coeff_space_dim of the matching lattice
  long long kept = 0;
  long long relation_rank = 0;
};

/// Computes the spanning bound for the named case.  With assume_colinear
/// the four dropped words leave the basis and only relations avoiding
/// them are counted; without it the full basis and all relations are
/// used (the result must then be at least reference_dim).
ColinearityReport colinearity_bound(const std::string& name, bool assume_colinear = true);

/// The closures behind the two cases: all noncrossing diagrams with
/// blocks of size at most two (b3plus; pair and singleton generators)
/// or exactly two (o2plus; pair generator), built to the given bound.
Closure fusion_closure(const std::string& name, int max_points = 4);

/// Lattice for the named case on the all-white length-two word
/// (n = 3 for b3plus, n = 2 for o2plus).
ProjectiveLattice fusion_lattice(const std::string& name);

}  // namespace easycat
