// Batch verification suites: concrete matrices against the relations and
// transfer maps induced by a corpus of generated diagrams.
//
// The corpus is drawn from closures of two stock generator sets plus one
// crossing seed, de-duplicated and strided down to a few hundred members.
// Each suite streams over (diagram, element) pairs, evaluates every induced
// relation through the factorized per-block path, and cross-checks a seeded
// subsample through the explicit formal-sum walk.  Suites fail fast: the
// first violation is reported with the diagram, the element, the relation
// and the residual.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "easycat/partition.hpp"
#include "easycat/relations.hpp"

namespace easycat {

/// Mixed corpus (a few hundred diagrams up to six points).
const std::vector<Partition>& verification_corpus();
/// Members whose blocks all have even size.
const std::vector<Partition>& even_block_corpus();
/// Members whose blocks all have size exactly two.
const std::vector<Partition>& pair_block_corpus();

struct SuiteCounterexample {
  std::string partition;
  std::string element;   // the matrix, row by row
  std::string relation;  // rendered relation or check description
  double residual = 0.0;
};

struct SuiteCheck {
  std::string case_name;
  double computed = 0.0;
  double expected = 0.0;
  bool match = false;
};

struct SuiteResult {
  std::string suite;
  int n = 0;
  std::uint64_t seed = 0;
  long long checks = 0;          // individual relation instances evaluated
  long long sampled_walks = 0;   // formal-sum evaluations cross-checked
  double max_residual = 0.0;
  bool pass = false;
  std::optional<SuiteCounterexample> counterexample;
  std::vector<SuiteCheck> detail;  // one aggregate per corpus diagram
};

/// Runs one of the named suites:
///   sN              generator relations of every corpus diagram against all
///                   permutation matrices of size n (exact zero residuals)
///   hN              even-block diagrams against signed permutations
///                   (exhaustive for n = 2, 100 seeded samples otherwise)
///   spN             coordinate relations of every corpus diagram against
///                   leading columns of permutation matrices (exact)
///   rotations       pair-block diagrams against 100 seeded 2x2 rotations,
///                   residual tolerance 1e-9 (n must be 2)
///   coaction-shadow seeded pairs (g, h) of 3x3 permutation and signed
///                   matrices; leading columns of h, and their images under
///                   g and g transpose, must satisfy the matching category
///                   relations exactly (n must be 3)
/// Unknown names or unsupported n throw std::invalid_argument.
SuiteResult run_suite(const std::string& suite, int n, std::uint64_t seed = 1);

/// JSON rendering: {"suite", "n", "seed", "checks", "sampled_walks",
/// "max_residual", "pass", "counterexample", "detail": [{case, computed,
/// expected, match}...]}.
std::string suite_report_json(const SuiteResult& result);

/// Largest residual over every default generator-relation instance of p when
/// the generator matrix is replaced by m (at least n x n entries).
double relation_defect(const Partition& p, const CMatrix& m, int n);

/// Largest residual over every default coordinate-relation instance of p at
/// the n x d rectangle x.  Throws std::invalid_argument when d < 1.
double column_defect(const Partition& p, const CMatrix& x, int n, int d);

/// The first-column sets of the two sign-extended permutation families
/// coincide while their two-column sets differ; reports the explicit
/// separating pair (first basis vector, negated second basis vector).
struct SeparationReport {
  bool first_columns_equal = false;
  bool two_columns_differ = false;
  bool separator_found = false;
  std::string separator;
};

SeparationReport example_separation();

}  // namespace easycat
