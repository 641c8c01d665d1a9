#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "json.hpp"

#include "easycat/relations.hpp"

using namespace easycat;

namespace {

Partition random_partition(std::mt19937& rng, int max_points = 3) {
  std::uniform_int_distribution<int> row(0, max_points);
  const int k = row(rng), l = row(rng);
  std::vector<Colour> uc(k), lc(l);
  std::vector<int> ub(k), lb(l);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> id(0, std::max(1, k + l) - 1);
  for (int i = 0; i < k; ++i) {
    uc[i] = coin(rng) ? Colour::Black : Colour::White;
    ub[i] = id(rng);
  }
  for (int i = 0; i < l; ++i) {
    lc[i] = coin(rng) ? Colour::Black : Colour::White;
    lb[i] = id(rng);
  }
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

std::vector<Tuple> all_tuples(int len, int n) {
  std::vector<Tuple> out;
  Tuple t(len, 1);
  for (;;) {
    out.push_back(t);
    int m = len - 1;
    while (m >= 0 && t[m] == n) t[m--] = 1;
    if (m < 0) break;
    ++t[m];
  }
  return out;
}

// Rebuilds one side of a relation by scanning the whole tuple cube, with no
// shortcuts: sums a monomial for every tuple of the wanted class.
FormalSum side_by_scan(const Partition& p, Side side, long long cls, const Tuple& labels,
                       SymbolKind kind, bool summed_is_row, int n) {
  const int len = side == Side::Upper ? p.upper_size() : p.lower_size();
  FormalSum sum;
  for (const Tuple& t : all_tuples(len, n)) {
    if (row_class(p, side, t, n) != cls) continue;
    Monomial mono;
    for (int m = 0; m < len; ++m) {
      Colour c = side == Side::Upper ? p.upper_colour(m) : p.lower_colour(m);
      int row = summed_is_row ? t[m] : labels[m];
      int col = summed_is_row ? labels[m] : t[m];
      mono.push_back({kind, row, col, c == Colour::Black});
    }
    sum[mono] += 1;
  }
  return sum;
}

CMatrix permutation_matrix(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  CMatrix m(n, std::vector<Cplx>(n, 0.0));
  for (int c = 0; c < n; ++c) m[sigma[c]][c] = 1.0;
  return m;
}

CMatrix random_complex_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  CMatrix m(rows, std::vector<Cplx>(cols));
  for (auto& r : m)
    for (auto& v : r) v = Cplx(coef(rng), coef(rng));
  return m;
}

const char* kThreeBlock = "oA oA *B / *C *B oB";

}  // namespace

TEST_CASE("the strand produces no relations at all") {
  for (int n : {2, 3}) {
    CHECK(emit_gr(identity_strand(Colour::White), n).empty());
    CHECK(emit_gr(identity_strand(Colour::Black), n, true).empty());
    CHECK(emit_sp_matrix(identity_strand(Colour::White), n, n, true).empty());
  }
}

TEST_CASE("the white-black hook pins down a unitary row system") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  for (int n : {2, 3}) {
    auto rels = emit_gr(hook, n, true);
    // n sums equal to the unit, n(n-1) sums equal to zero
    CHECK(static_cast<int>(rels.size()) == n * n);
    int unit = 0, zero = 0;
    for (const Relation& r : rels) {
      if (r.rhs.empty()) {
        ++zero;
        CHECK(r.origin.part == 3);
      } else {
        ++unit;
        CHECK(r.origin.part == 1);
        CHECK(r.lhs == FormalSum{{{}, 1}});
      }
    }
    CHECK(unit == n);
    CHECK(zero == n * (n - 1));

    // jointly they say u u^* = 1: any permutation passes, a defect fails
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = (i + 1) % n;
    CMatrix g = permutation_matrix(sigma);
    for (const Relation& r : rels) CHECK(evaluate_relation(r, g) == 0.0);
    g[0][0] = 1.0;  // now two ones in row 0
    bool violated = false;
    for (const Relation& r : rels) violated |= evaluate_relation(r, g) > 0.5;
    CHECK(violated);
  }
  // default mode keeps one representative per class pair
  auto compact = emit_gr(hook, 3);
  int part1 = 0;
  for (const Relation& r : compact) part1 += r.origin.part == 1;
  CHECK(part1 == 1);
}

TEST_CASE("single-column relations of the hook") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  auto vec = emit_sp_vector(hook, 3);
  REQUIRE(vec.size() == 1);
  CHECK(format_relation(vec[0]) == "1 = x(1)x(1)* + x(2)x(2)* + x(3)x(3)*");
  CHECK(vec[0].origin.family == Family::SpVector);

  auto mat = emit_sp_matrix(hook, 3, 1);
  REQUIRE(mat.size() == 1);
  CHECK(format_relation(mat[0]) == "1 = x(1,1)x(1,1)* + x(2,1)x(2,1)* + x(3,1)x(3,1)*");

  // first column of a permutation satisfies it, a null column does not
  CMatrix x(3, std::vector<Cplx>(1, 0.0));
  x[1][0] = 1.0;
  CHECK(evaluate_relation(mat[0], x) == 0.0);
  x[1][0] = 0.0;
  CHECK(evaluate_relation(mat[0], x) == 1.0);
}

TEST_CASE("two columns of the hook system say the columns are orthonormal") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  for (int n : {2, 3}) {
    CHECK(emit_sp_matrix(hook, n, 2).size() == 3);
    auto rels = emit_sp_matrix(hook, n, 2, true);
    CHECK(rels.size() == 4);
    int unit = 0, zero = 0;
    for (const Relation& r : rels) (r.rhs.empty() ? zero : unit)++;
    CHECK(unit == 2);
    CHECK(zero == 2);

    // two distinct columns of the identity are orthonormal
    CMatrix x(n, std::vector<Cplx>(2, 0.0));
    x[0][0] = 1.0;
    x[1][1] = 1.0;
    for (const Relation& r : rels) CHECK(evaluate_relation(r, x) == 0.0);
    x[0][1] = 1.0;  // columns no longer orthogonal
    bool violated = false;
    for (const Relation& r : rels) violated |= evaluate_relation(r, x) > 0.5;
    CHECK(violated);
  }
}

TEST_CASE("the three-block diagram yields the catalogued family counts") {
  Partition p = parse_partition(kThreeBlock);
  auto rels = emit_sp_matrix(p, 2, 2, true);
  int parts[4] = {0, 0, 0, 0};
  for (const Relation& r : rels) parts[r.origin.part]++;
  CHECK(parts[1] == 16);
  CHECK(parts[2] == 8);
  CHECK(parts[3] == 8);
  CHECK(rels.size() == 32);

  // a part-(ii) instance: sum_t x(t,a)x(t,b)x(i,c)* = 0 with a != b
  for (const Relation& r : rels) {
    if (r.origin.part != 2) continue;
    REQUIRE(r.origin.gamma.has_value());
    CHECK((*r.origin.gamma)[0] != (*r.origin.gamma)[1]);
    CHECK(r.rhs.empty());
    CHECK(r.lhs.size() == 2);  // two summed tuples at n = 2
    for (const auto& [mono, coef] : r.lhs) {
      REQUIRE(mono.size() == 3);
      CHECK(mono[0].row == mono[1].row);  // both rows carry the summed symbol
      CHECK(!mono[0].star);
      CHECK(!mono[1].star);
      CHECK(mono[2].star);
    }
  }
  // a part-(iii) instance mirrors it on the lower row
  for (const Relation& r : rels) {
    if (r.origin.part != 3) continue;
    REQUIRE(r.origin.gamma_prime.has_value());
    CHECK((*r.origin.gamma_prime)[1] != (*r.origin.gamma_prime)[2]);
  }
}

TEST_CASE("class pairs without admissible labels are skipped") {
  Partition p = parse_partition("oA / oA *B");
  auto rels = emit_sp_matrix(p, 3, 1);
  CHECK(rels.size() == 3);  // only the all-ones label class survives d = 1
  for (const Relation& r : rels) CHECK(r.origin.j == 1);
}

TEST_CASE("every emitted side matches a whole-cube scan") {
  std::mt19937 rng(307);
  const int n = 2;
  for (int trial = 0; trial < 25; ++trial) {
    Partition p = random_partition(rng);
    for (bool exhaustive : {false, true}) {
      for (const Relation& r : emit_gr(p, n, exhaustive)) {
        const Provenance& o = r.origin;
        switch (o.part) {
          case 1:
            CHECK(r.lhs == side_by_scan(p, Side::Upper, o.i, *o.gamma, SymbolKind::U, true, n));
            CHECK(r.rhs ==
                  side_by_scan(p, Side::Lower, o.j, *o.gamma_prime, SymbolKind::U, false, n));
            break;
          case 2:
            CHECK(r.lhs == side_by_scan(p, Side::Upper, o.i, *o.gamma, SymbolKind::U, true, n));
            CHECK(r.rhs.empty());
            break;
          case 3:
            CHECK(r.lhs ==
                  side_by_scan(p, Side::Lower, o.j, *o.gamma_prime, SymbolKind::U, false, n));
            CHECK(r.rhs.empty());
            break;
        }
      }
      for (const Relation& r : emit_sp_matrix(p, n, n, exhaustive)) {
        const Provenance& o = r.origin;
        switch (o.part) {
          case 1:
            CHECK(r.lhs == side_by_scan(p, Side::Upper, o.i, *o.gamma, SymbolKind::X, true, n));
            CHECK(r.rhs ==
                  side_by_scan(p, Side::Lower, o.i, *o.gamma_prime, SymbolKind::X, true, n));
            break;
          case 2:
            CHECK(r.lhs == side_by_scan(p, Side::Upper, o.i, *o.gamma, SymbolKind::X, true, n));
            break;
          case 3:
            CHECK(r.lhs ==
                  side_by_scan(p, Side::Lower, o.i, *o.gamma_prime, SymbolKind::X, true, n));
            break;
        }
      }
    }
  }
}

TEST_CASE("zero families of the square system absorb the zero families of the rectangle") {
  // replacing u(r,c) by x(r,c) turns an upper-row zero sum into one for x;
  // replacing u(r,c) by x(c,r) does the same for the lower row
  std::mt19937 rng(311);
  const int n = 2;
  for (int trial = 0; trial < 25; ++trial) {
    Partition p = random_partition(rng);
    std::set<FormalSum> sp_forms;
    for (const Relation& r : emit_sp_matrix(p, n, n, true)) sp_forms.insert(normal_form(r));
    for (const Relation& r : emit_gr(p, n, true)) {
      if (r.origin.part == 1) continue;
      Relation image = r;
      FormalSum mapped;
      for (const auto& [mono, coef] : r.lhs) {
        Monomial m2;
        for (const Symbol& s : mono) {
          if (r.origin.part == 2) {
            m2.push_back({SymbolKind::X, s.row, s.col, s.star});
          } else {
            m2.push_back({SymbolKind::X, s.col, s.row, s.star});
          }
        }
        mapped[m2] += coef;
      }
      image.lhs = std::move(mapped);
      CHECK(sp_forms.count(normal_form(image)) == 1);
    }
  }
}

TEST_CASE("any permutation satisfies the square system of any diagram") {
  std::mt19937 rng(313);
  const int n = 3;
  std::vector<int> sigma{0, 1, 2};
  for (int trial = 0; trial < 15; ++trial) {
    Partition p = random_partition(rng);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    CMatrix g = permutation_matrix(sigma);
    for (const Relation& r : emit_gr(p, n, true)) {
      CHECK(evaluate_relation(r, g) == 0.0);  // exact: only 0/1 products
    }
  }
}

TEST_CASE("normal forms are signed consistently and vanish only for identities") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  auto rels = emit_gr(hook, 2, true);
  for (const Relation& r : rels) {
    FormalSum nf = normal_form(r);
    REQUIRE(!nf.empty());
    CHECK(nf.begin()->second > 0);
    Relation swapped{r.rhs, r.lhs, r.origin};
    CHECK(normal_form(swapped) == nf);  // sign rule hides the side order
    Relation idem{nf, {}, r.origin};
    CHECK(normal_form(idem) == nf);
  }
  Relation trivial{{{Monomial{}, 1}}, {{Monomial{}, 1}}, {}};
  CHECK(normal_form(trivial).empty());
}

TEST_CASE("factorized sums agree with direct summation") {
  std::mt19937 rng(317);
  const int n = 3;
  for (int trial = 0; trial < 40; ++trial) {
    Partition p = random_partition(rng);
    CMatrix m = random_complex_matrix(rng, n, n);
    long long r = class_count(p, n);
    std::uniform_int_distribution<long long> pick(1, r);
    long long cls = pick(rng);
    for (Side side : {Side::Upper, Side::Lower}) {
      const int len = side == Side::Upper ? p.upper_size() : p.lower_size();
      std::uniform_int_distribution<int> sym(1, n);
      Tuple labels(len);
      for (int& v : labels) v = sym(rng);
      for (bool rows : {true, false}) {
        Cplx direct = 0.0;
        for (const Tuple& t : all_tuples(len, n)) {
          if (row_class(p, side, t, n) != cls) continue;
          Cplx prod = 1.0;
          for (int pos = 0; pos < len; ++pos) {
            Colour c = side == Side::Upper ? p.upper_colour(pos) : p.lower_colour(pos);
            Cplx e = rows ? m[t[pos] - 1][labels[pos] - 1] : m[labels[pos] - 1][t[pos] - 1];
            prod *= (c == Colour::Black) ? std::conj(e) : e;
          }
          direct += prod;
        }
        Cplx fast = sum_value(p, side, cls, labels, m, n, rows);
        CHECK(std::abs(fast - direct) < 1e-9);
      }
    }
  }
}

TEST_CASE("factorized sums also agree with the formal side") {
  std::mt19937 rng(331);
  const int n = 2;
  for (int trial = 0; trial < 30; ++trial) {
    Partition p = random_partition(rng);
    CMatrix m = random_complex_matrix(rng, n, n);
    for (const Relation& r : emit_gr(p, n, false)) {
      if (r.origin.part != 1) continue;
      Cplx lhs = sum_value(p, Side::Upper, r.origin.i, *r.origin.gamma, m, n, true);
      Cplx rhs = sum_value(p, Side::Lower, r.origin.j, *r.origin.gamma_prime, m, n, false);
      Relation lhs_only{r.lhs, {}, r.origin};
      Relation rhs_only{r.rhs, {}, r.origin};
      CHECK(std::abs(std::abs(lhs) - evaluate_relation(lhs_only, m)) < 1e-9);
      CHECK(std::abs(std::abs(rhs) - evaluate_relation(rhs_only, m)) < 1e-9);
    }
  }
}

TEST_CASE("relation output formats") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  auto rels = emit_sp_matrix(hook, 2, 1);
  REQUIRE(rels.size() == 1);

  std::string text = format_relations(rels, Style::Text);
  CHECK(text == "1 = x(1,1)x(1,1)* + x(2,1)x(2,1)*\n");

  auto parsed = nlohmann::json::parse(format_relations(rels, Style::Json));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  const auto& rel = parsed[0];
  CHECK(rel["lhs"].size() == 1);
  CHECK(rel["lhs"][0]["coef"] == 1);
  CHECK(rel["lhs"][0]["mono"].empty());
  CHECK(rel["rhs"].size() == 2);
  CHECK(rel["rhs"][0]["mono"][0]["kind"] == "x");
  CHECK(rel["rhs"][0]["mono"][1]["star"] == true);
  CHECK(rel["provenance"]["partition"] == "- / oA *A");
  CHECK(rel["provenance"]["family"] == "sp_matrix");
  CHECK(rel["provenance"]["i"] == 1);
  CHECK(rel["provenance"]["gamma"].is_array());

  std::string tex = format_relations(rels, Style::LatexPicture);
  CHECK(tex.find("\\begin{align*}") == 0);
  CHECK(tex.find("x_{1,1}x_{1,1}^*") != std::string::npos);
  CHECK(tex.find("&=") != std::string::npos);
}

TEST_CASE("bad evaluation and emission inputs are reported") {
  Partition hook = pair_lower(Colour::White, Colour::Black);
  CHECK_THROWS_AS(emit_sp_matrix(hook, 2, 0), std::invalid_argument);
  auto rels = emit_sp_matrix(hook, 3, 1);
  REQUIRE(!rels.empty());
  CMatrix too_small(2, std::vector<Cplx>(1, 1.0));
  CHECK_THROWS_AS(evaluate_relation(rels[0], too_small), std::out_of_range);
  CHECK_THROWS_AS(class_sum(hook, Side::Lower, 1, {1}, SymbolKind::U, true, 2),
                  std::invalid_argument);
}
