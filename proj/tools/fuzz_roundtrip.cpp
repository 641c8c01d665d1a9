// Randomized round-trip checker for the partition core.  Builds random
// two-coloured partitions and verifies the serialization and operation
// invariants that every other layer silently relies on:
//
//   - key()        <-> from_key()        (binary form)
//   - format_text  <-> parse_partition   (text grammar)
//   - involution is an involution
//   - the left rotations invert each other
//   - composing with the identity row is neutral and erases no loops
//   - tensor preserves planarity exactly on planar factors
//
// Usage: fuzz_roundtrip [iterations] [seed]   (defaults 2000, 1)
// Exits 0 when all iterations hold, 1 with the offending diagram otherwise.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "easycat/partition.hpp"

using namespace easycat;

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Partition random_partition(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_pick(0, 4);
  const int k = size_pick(rng);
  const int l = size_pick(rng);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Colour> uc, lc;
  for (int i = 0; i < k; ++i) uc.push_back(coin(rng) ? Colour::White : Colour::Black);
  for (int i = 0; i < l; ++i) lc.push_back(coin(rng) ? Colour::White : Colour::Black);
  Dsu dsu(k + l);
  if (k + l > 1) {
    std::uniform_int_distribution<int> point(0, k + l - 1);
    std::uniform_int_distribution<int> merges(0, k + l);
    for (int m = merges(rng); m > 0; --m) dsu.unite(point(rng), point(rng));
  }
  std::vector<int> ub, lb;
  for (int i = 0; i < k; ++i) ub.push_back(dsu.find(i));
  for (int i = 0; i < l; ++i) lb.push_back(dsu.find(k + i));
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

// Identity diagram on the upper word of p: one strand per upper point.
Partition upper_identity(const Partition& p) {
  Partition id = identity_strand(Colour::White);
  bool first = true;
  for (int i = 0; i < p.upper_size(); ++i) {
    const Partition strand = identity_strand(p.upper_colour(i));
    id = first ? strand : tensor(id, strand);
    first = false;
  }
  if (first) {
    return Partition({}, {}, {}, {});
  }
  return id;
}

bool same(const Partition& a, const Partition& b) { return a.key() == b.key(); }

}  // namespace

int main(int argc, char** argv) {
  long long iterations = 2000;
  std::uint64_t seed = 1;
  if (argc > 1) iterations = std::atoll(argv[1]);
  if (argc > 2) seed = std::strtoull(argv[2], nullptr, 10);

  std::mt19937_64 rng(seed);
  for (long long it = 0; it < iterations; ++it) {
    const Partition p = random_partition(rng);
    const std::string text = format_partition(p);
    const auto blame = [&](const char* what) {
      std::cerr << "iteration " << it << ": " << what << " violated for \"" << text << "\"\n";
      return 1;
    };

    if (!same(Partition::from_key(p.key()), p)) return blame("key round trip");
    if (!same(parse_partition(text), p)) return blame("text round trip");
    if (!same(involution(involution(p)), p)) return blame("involution order two");

    if (p.upper_size() > 0) {
      const Partition down = rotate(p, Rotation::UpperLeftDown);
      if (!same(rotate(down, Rotation::LowerLeftUp), p)) return blame("left rotation inverse");
    }
    if (p.lower_size() > 0) {
      const Partition up = rotate(p, Rotation::LowerLeftUp);
      if (!same(rotate(up, Rotation::UpperLeftDown), p)) return blame("left rotation inverse");
    }

    const ComposeResult neutral = compose(p, upper_identity(p));
    if (!same(neutral.partition, p)) return blame("identity composition");
    if (neutral.loops != 0) return blame("identity composition loops");

    const Partition q = random_partition(rng);
    const bool planar = is_noncrossing(p) && is_noncrossing(q);
    if (is_noncrossing(tensor(p, q)) != planar) return blame("tensor planarity");
  }
  std::cout << iterations << " iterations clean (seed " << seed << ")\n";
  return 0;
}
