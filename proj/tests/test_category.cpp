#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "easycat/category.hpp"

using namespace easycat;

namespace {

std::set<std::string> member_keys(const Closure& c) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < c.size(); ++i) out.insert(c.member_key(i));
  return out;
}

// Checks every recorded derivation against the reference operations.
void replay(const Closure& c) {
  std::set<std::string> seeds;
  for (const Partition& b : base_partitions()) seeds.insert(b.key());
  for (const Partition& g : c.generators()) seeds.insert(g.key());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Derivation& d = c.derivation(i);
    const Partition got = c.member(i);
    switch (d.op) {
      case ClosureOp::Seed:
        CHECK(seeds.count(got.key()) == 1);
        break;
      case ClosureOp::Involution:
        CHECK(involution(c.member(d.parent)) == got);
        break;
      case ClosureOp::Rotate:
        CHECK(rotate(c.member(d.parent), d.direction) == got);
        break;
      case ClosureOp::Tensor:
        CHECK(tensor(c.member(d.parent), c.member(d.coparent)) == got);
        break;
      case ClosureOp::Compose:
        CHECK(compose(c.member(d.parent), c.member(d.coparent)).partition == got);
        break;
    }
    CHECK(d.parent <= i);
    CHECK(d.coparent <= i);
  }
}

bool same_row_pairing_rule(const Partition& p) {
  for (const Block& b : p.blocks()) {
    if (b.size() != 2) return false;
    if (b.upper.size() == 2 && p.upper_colour(b.upper[0]) == p.upper_colour(b.upper[1]))
      return false;
    if (b.lower.size() == 2 && p.lower_colour(b.lower[0]) == p.lower_colour(b.lower[1]))
      return false;
    if (b.upper.size() == 1 && p.upper_colour(b.upper[0]) != p.lower_colour(b.lower[0]))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the bare closure at two points holds exactly the stock diagrams and the unit") {
  Closure c({}, {.max_points = 2});
  CHECK(c.size() == 7);
  std::set<std::string> keys = member_keys(c);
  CHECK(keys.count(Partition().key()) == 1);  // the empty diagram, closed off by loops
  for (const Partition& b : base_partitions()) CHECK(keys.count(b.key()) == 1);
  replay(c);
}

TEST_CASE("the bare closure consists of the colour-matched noncrossing pairings") {
  Closure c(preset_generators("O_loc", std::nullopt, std::nullopt), {.max_points = 4});
  std::set<std::string> expected;
  for (int pts = 0; pts <= 4; pts += 2) {  // odd point counts cannot be paired
    for (int k = 0; k <= pts; ++k) {
      const int l = pts - k;
      for (int mask = 0; mask < (1 << pts); ++mask) {
        std::vector<Colour> uc(k), lc(l);
        for (int i = 0; i < k; ++i) uc[i] = (mask >> i & 1) ? Colour::Black : Colour::White;
        for (int i = 0; i < l; ++i)
          lc[i] = (mask >> (k + i) & 1) ? Colour::Black : Colour::White;
        for (const Partition& p : enumerate_frame(uc, lc)) {
          if (is_noncrossing(p) && same_row_pairing_rule(p)) expected.insert(p.key());
        }
      }
    }
  }
  CHECK(member_keys(c) == expected);
  replay(c);
}

TEST_CASE("every member of a preset closure is derivable by the reference operations") {
  replay(Closure(preset_generators("S_glob", 1, std::nullopt), {.max_points = 5}));
  replay(Closure(preset_generators("Hp_loc", std::nullopt, std::nullopt), {.max_points = 5}));
  replay(Closure(preset_generators("H_loc", 2, 2), {.max_points = 5}));
}

TEST_CASE("closures with crossing generators replay as well") {
  Partition crossing = parse_partition("oA oB / oB oA");
  Closure c({crossing}, {.max_points = 4});
  CHECK(c.member_of(crossing));
  bool found_new_crossing = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Partition p = c.member(i);
    if (!is_noncrossing(p) && !(p == crossing)) found_new_crossing = true;
  }
  CHECK(found_new_crossing);
  replay(c);
}

TEST_CASE("a larger bound only adds members") {
  auto gens = preset_generators("S_glob", 1, std::nullopt);
  std::set<std::string> small = member_keys(Closure(gens, {.max_points = 4}));
  std::set<std::string> large = member_keys(Closure(gens, {.max_points = 6}));
  CHECK(small.size() < large.size());
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
}

TEST_CASE("more generators only add members") {
  std::set<std::string> b = member_keys(Closure(preset_generators("B_glob", 2, std::nullopt),
                                                {.max_points = 4}));
  std::set<std::string> s = member_keys(Closure(preset_generators("S_glob", 2, std::nullopt),
                                                {.max_points = 4}));
  CHECK(std::includes(s.begin(), s.end(), b.begin(), b.end()));
}

TEST_CASE("noncrossing generators never produce a crossing member") {
  Closure c(preset_generators("S_loc", 2, 2), {.max_points = 6});
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(is_noncrossing(c.member(i)));
}

TEST_CASE("the six stock diagrams sit inside every closure") {
  Closure c(preset_generators("Bp_glob", 1, std::nullopt), {.max_points = 4});
  for (const Partition& b : base_partitions()) CHECK(c.member_of(b));
}

TEST_CASE("membership answers carry the right caveats") {
  Closure c(preset_generators("O_glob", 2, std::nullopt), {.max_points = 4});
  CHECK(contains(c, pair_lower(Colour::White, Colour::White)).status == Containment::Yes);
  auto absent = contains(c, parse_partition("oA oB / oB oA"));
  CHECK(absent.status == Containment::NoWithinBound);
  CHECK(absent.note.find("4") != std::string::npos);
  auto too_big = contains(c, parse_partition("- / oA oA oB oB oC oC"));
  CHECK(too_big.status == Containment::Unknown);
  CHECK(too_big.note.find("6 points") != std::string::npos);
}

TEST_CASE("member order is by size then text") {
  Closure c(preset_generators("Hp_loc", std::nullopt, std::nullopt), {.max_points = 4});
  int last_points = -1;
  std::string last_text;
  for (std::uint32_t idx : c.sorted_order()) {
    Partition p = c.member(idx);
    std::string text = format_partition(p);
    if (p.points() == last_points) CHECK(last_text < text);
    CHECK(p.points() >= last_points);
    last_points = p.points();
    last_text = text;
  }
}

TEST_CASE("guards and bad input are rejected") {
  auto gens = preset_generators("S_glob", 1, std::nullopt);
  CHECK_THROWS_AS(Closure(gens, {.max_points = 6, .member_guard = 50}), std::length_error);
  CHECK_THROWS_AS(Closure({parse_partition("- / oA oA oB oB oC oC")}, {.max_points = 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Closure({}, {.max_points = 99}), std::invalid_argument);
}

TEST_CASE("generator diagram shapes") {
  CHECK(format_partition(one_block(3, Colour::White)) == "- / oA oA oA");
  CHECK(format_partition(one_block(0, Colour::White)) == "- / -");
  CHECK(format_partition(lower_singleton(Colour::Black)) == "- / *A");
  CHECK(format_partition(four_point_alternating()) == "- / oA *A oA *A");
  CHECK(format_partition(four_point_paired()) == "- / oA oA *A *A");
  CHECK(singleton_arch(0) == pair_lower(Colour::White, Colour::Black));
  CHECK(format_partition(singleton_arch(1)) == "- / oA oB *C *B");
  CHECK(format_partition(singleton_arch(2)) == "- / oA oB oC *D *E *C");
  CHECK(format_partition(alternating_arch()) == "- / oA *B oC *A");
}

TEST_CASE("preset parameter checking") {
  CHECK(preset_names().size() == 12);
  CHECK_THROWS_AS(preset_generators("X_loc", 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("O_loc", 2, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("H_loc", 2, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("H_loc", 3, 2), std::invalid_argument);  // 2 does not divide 3
  CHECK_THROWS_AS(preset_generators("H_loc", 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("H_loc", -2, 2), std::invalid_argument);
  CHECK_NOTHROW(preset_generators("H_loc", 4, 2));
  CHECK_NOTHROW(preset_generators("H_loc", 0, 0));
  CHECK_THROWS_AS(preset_generators("S_loc", 2, 1), std::invalid_argument);
  CHECK_NOTHROW(preset_generators("B_loc", 1, 1));
  CHECK_THROWS_AS(preset_generators("Bp_loc_half", 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("Bp_loc_half", 4, 3), std::invalid_argument);
  CHECK_NOTHROW(preset_generators("Bp_loc_half", 4, 4));
  CHECK_THROWS_AS(preset_generators("O_glob", 3, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(preset_generators("O_glob", 2, 2), std::invalid_argument);
  CHECK_NOTHROW(preset_generators("O_glob", 0, std::nullopt));
  CHECK_NOTHROW(preset_generators("S_glob", 3, std::nullopt));
  CHECK_THROWS_AS(preset_generators("B_glob", 3, std::nullopt), std::invalid_argument);

  auto h22 = preset_generators("H_loc", 2, 2);
  REQUIRE(h22.size() == 3);
  CHECK(format_partition(h22[0]) == "- / oA oA");
  CHECK(format_partition(h22[1]) == "- / oA oA *B *B");
  CHECK(format_partition(h22[2]) == "- / oA oA *A *A");
}

TEST_CASE("block stability matches the catalogue at small bounds") {
  auto stable = [](const std::string& name, std::optional<int> k, std::optional<int> l,
                   int bound) {
    Closure c(preset_generators(name, k, l), {.max_points = bound});
    return is_blockstable_up_to(c);
  };

  CHECK(stable("H_loc", 2, 2, 6).stable);
  CHECK_FALSE(stable("H_loc", 4, 2, 6).stable);
  CHECK(stable("S_glob", 1, std::nullopt, 5).stable);
  CHECK_FALSE(stable("S_glob", 2, std::nullopt, 5).stable);
  CHECK(stable("B_loc", 1, 1, 5).stable);
  CHECK_FALSE(stable("B_loc", 2, 2, 6).stable);
  CHECK(stable("O_glob", 2, std::nullopt, 6).stable);
  CHECK_FALSE(stable("O_glob", 4, std::nullopt, 6).stable);
  CHECK(stable("H_glob", 2, std::nullopt, 6).stable);
  CHECK_FALSE(stable("S_loc", 2, 2, 6).stable);
  CHECK_FALSE(stable("B_glob", 2, std::nullopt, 5).stable);
  CHECK(stable("Bp_glob", 1, std::nullopt, 5).stable);

  // a witness names a member, one of its blocks, and the missing restriction
  Closure c(preset_generators("S_glob", 2, std::nullopt), {.max_points = 5});
  auto result = is_blockstable_up_to(c);
  REQUIRE(result.witness.has_value());
  const BlockWitness& w = *result.witness;
  CHECK(c.member_of(w.member));
  CHECK(block_restrict(w.member, w.block_id) == w.restricted);
  CHECK_FALSE(c.member_of(w.restricted));
}

TEST_CASE("frame enumeration covers every grouping once") {
  using enum Colour;
  auto quad = enumerate_frame({}, {White, White, White, White});
  CHECK(quad.size() == 15);  // set partitions of four points
  std::set<std::string> distinct;
  for (const Partition& p : quad) distinct.insert(p.key());
  CHECK(distinct.size() == 15);
  CHECK(quad.front().block_count() == 1);  // all joined comes first

  CHECK(enumerate_frame({White, Black}, {Black, White}).size() == 15);
  CHECK(enumerate_frame({}, {}).size() == 1);
  CHECK(enumerate_frame({}, {Black}).size() == 1);
}
