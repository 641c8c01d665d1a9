#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "easycat/category.hpp"
#include "easycat/numerics.hpp"
#include "easycat/verify.hpp"

using namespace easycat;

namespace {

bool blocks_all_even(const Partition& p) {
  for (const Block& b : p.blocks()) {
    if (b.size() % 2 != 0) return false;
  }
  return true;
}

bool blocks_all_pairs(const Partition& p) {
  for (const Block& b : p.blocks()) {
    if (b.size() != 2) return false;
  }
  return true;
}

CMatrix real_matrix(const std::vector<std::vector<double>>& rows) {
  CMatrix out(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out[r].assign(rows[r].begin(), rows[r].end());
  }
  return out;
}

}  // namespace

TEST_CASE("corpora are deduplicated, bounded and well typed") {
  const std::vector<Partition>& corpus = verification_corpus();
  CHECK(corpus.size() >= 200);
  CHECK(corpus.size() <= 400);

  std::set<std::string> keys;
  bool has_crossing = false;
  bool all_bounded = true;
  for (const Partition& p : corpus) {
    keys.insert(p.key());
    if (!is_noncrossing(p)) has_crossing = true;
    if (p.points() > 6) all_bounded = false;
  }
  CHECK(keys.size() == corpus.size());
  CHECK(has_crossing);
  CHECK(all_bounded);

  const std::vector<Partition>& even = even_block_corpus();
  CHECK(!even.empty());
  CHECK(even.size() <= 150);
  for (const Partition& p : even) CHECK(blocks_all_even(p));

  const std::vector<Partition>& pairs = pair_block_corpus();
  CHECK(pairs.size() >= 20);
  CHECK(pairs.size() <= 150);
  for (const Partition& p : pairs) CHECK(blocks_all_pairs(p));

  // The corpora are memoised: repeated access returns the same object.
  CHECK(&verification_corpus() == &corpus);
}

TEST_CASE("permutation suite holds exactly at n = 3") {
  const SuiteResult r = run_suite("sN", 3, 11);
  CHECK(r.pass);
  CHECK(r.suite == "sN");
  CHECK(r.n == 3);
  CHECK(r.max_residual == 0.0);
  CHECK(!r.counterexample.has_value());
  CHECK(r.checks > 10000);
  CHECK(r.sampled_walks == 2000);
  CHECK(r.detail.size() == verification_corpus().size());
  for (const SuiteCheck& c : r.detail) {
    CHECK(c.match);
    CHECK(c.computed == 0.0);
  }
}

TEST_CASE("signed suite holds exactly for the full n = 2 family") {
  const SuiteResult r = run_suite("hN", 2, 5);
  CHECK(r.pass);
  CHECK(r.max_residual == 0.0);
  CHECK(r.sampled_walks == 2000);
  CHECK(r.detail.size() == even_block_corpus().size());
}

TEST_CASE("signed suite holds exactly on sampled n = 3 elements") {
  const SuiteResult r = run_suite("hN", 3, 5);
  CHECK(r.pass);
  CHECK(r.max_residual == 0.0);
  CHECK(r.checks > 1000);
}

TEST_CASE("rotation suite stays within the float tolerance") {
  const SuiteResult r = run_suite("rotations", 2, 17);
  CHECK(r.pass);
  CHECK(r.max_residual <= 1e-9);
  CHECK(r.sampled_walks == 2000);
  CHECK(r.detail.size() == pair_block_corpus().size());
}

TEST_CASE("column suite holds exactly on permutation columns") {
  const SuiteResult r = run_suite("spN", 3, 23);
  CHECK(r.pass);
  CHECK(r.max_residual == 0.0);
  CHECK(r.sampled_walks == 2000);
  CHECK(r.detail.size() == verification_corpus().size());
}

TEST_CASE("coaction shadow suite holds exactly") {
  const SuiteResult r = run_suite("coaction-shadow", 3, 29);
  CHECK(r.pass);
  CHECK(r.max_residual == 0.0);
  CHECK(r.sampled_walks >= 1500);
  CHECK(!r.detail.empty());
  bool has_singleton_case = false;
  bool has_even_case = false;
  for (const SuiteCheck& c : r.detail) {
    if (c.case_name.rfind("S_glob(1) ", 0) == 0) has_singleton_case = true;
    if (c.case_name.rfind("H_loc(2,2) ", 0) == 0) has_even_case = true;
  }
  CHECK(has_singleton_case);
  CHECK(has_even_case);
}

TEST_CASE("suite runs are deterministic in everything but the seed") {
  const SuiteResult a = run_suite("hN", 3, 7);
  const SuiteResult b = run_suite("hN", 3, 7);
  CHECK(a.checks == b.checks);
  CHECK(a.sampled_walks == b.sampled_walks);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.detail.size() == b.detail.size());

  const SuiteResult c = run_suite("hN", 3, 8);
  CHECK(a.checks == c.checks);  // same corpus scan, different samples
  CHECK(c.pass);
}

TEST_CASE("suite dispatch validates names and symbol counts") {
  CHECK_THROWS_AS(run_suite("unknown", 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("rotations", 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("coaction-shadow", 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("sN", 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("sN", 9, 1), std::invalid_argument);
}

TEST_CASE("relation defect flags matrices that break a diagram") {
  const Partition hook = parse_partition("- / oA *A");

  // Rows of [[0,1],[1,1]] are not orthonormal: the inconsistent-label sum
  // for rows (1, 2) is 0*1 + 1*1 = 1.
  CHECK(relation_defect(hook, real_matrix({{0, 1}, {1, 1}}), 2) == 1.0);
  CHECK(relation_defect(hook, real_matrix({{0, 1}, {1, 0}}), 2) == 0.0);

  // An odd block detects a sign: with u = diag(-1, 1) the one-block sum over
  // three lower points is (-1)^3 = -1 against a left side of 1.
  const Partition triple = parse_partition("- / oA oA oA");
  CHECK(relation_defect(triple, real_matrix({{-1, 0}, {0, 1}}), 2) == 2.0);
  CHECK(relation_defect(triple, real_matrix({{1, 0}, {0, 1}}), 2) == 0.0);

  // The defect helpers surface malformed matrices as out_of_range.
  CHECK_THROWS_AS(relation_defect(hook, real_matrix({{1}}), 2), std::out_of_range);
}

TEST_CASE("column defect flags vectors that break a diagram") {
  const Partition hook = parse_partition("- / oA *A");
  CHECK(column_defect(hook, real_matrix({{1}, {1}}), 2, 1) == 1.0);  // norm 2, expected 1
  CHECK(column_defect(hook, real_matrix({{1}, {0}}), 2, 1) == 0.0);
  CHECK(column_defect(hook, real_matrix({{0}, {1}}), 2, 1) == 0.0);
  CHECK_THROWS_AS(column_defect(hook, real_matrix({{1}, {0}}), 2, 0), std::invalid_argument);
}

TEST_CASE("two-column separation of the sign-extended families") {
  const SeparationReport report = example_separation();
  CHECK(report.first_columns_equal);
  CHECK(report.two_columns_differ);
  CHECK(report.separator_found);
  CHECK(report.separator == "[[1, 0], [0, -1]]");

  // The separator matrix satisfies every even-block diagram but is not a
  // plain global sign times a permutation.
  const CMatrix sep = real_matrix({{1, 0}, {0, -1}});
  for (const Partition& p : even_block_corpus()) {
    CHECK(relation_defect(p, sep, 2) == 0.0);
  }
}

TEST_CASE("json report round-trips through a parser") {
  const SuiteResult r = run_suite("hN", 2, 3);
  const nlohmann::json j = nlohmann::json::parse(suite_report_json(r));
  CHECK(j["suite"] == "hN");
  CHECK(j["n"] == 2);
  CHECK(j["seed"] == 3);
  CHECK(j["pass"] == true);
  CHECK(j["counterexample"].is_null());
  CHECK(j["checks"].get<long long>() == r.checks);
  CHECK(j["detail"].size() == r.detail.size());
  CHECK(j["detail"][0].contains("case"));
  CHECK(j["detail"][0].contains("computed"));
  CHECK(j["detail"][0].contains("expected"));
  CHECK(j["detail"][0].contains("match"));

  SuiteResult failing;
  failing.suite = "sN";
  failing.n = 3;
  failing.checks = 1;
  failing.max_residual = 0.5;
  failing.pass = false;
  failing.counterexample = SuiteCounterexample{"oA / oA", "[[1]]", "1 = 0", 0.5};
  const nlohmann::json f = nlohmann::json::parse(suite_report_json(failing));
  CHECK(f["pass"] == false);
  CHECK(f["counterexample"]["partition"] == "oA / oA");
  CHECK(f["counterexample"]["residual"] == 0.5);
}
