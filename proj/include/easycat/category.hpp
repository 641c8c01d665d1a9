// Saturation of diagram sets under the five structural operations.
//
// A Closure starts from the six stock diagrams plus the given generators and
// repeatedly applies reflection, the four rotations, horizontal tensoring and
// vertical composition, keeping every result with at most `max_points`
// points, until nothing new appears.  Members are stored in packed key form;
// each one records how it was first derived, so the whole run can be replayed
// against the reference operations.
//
// Twelve named generator presets are built in; see preset_generators.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "easycat/partition.hpp"

namespace easycat {

enum class ClosureOp : std::uint8_t { Seed, Involution, Rotate, Tensor, Compose };

struct Derivation {
  ClosureOp op = ClosureOp::Seed;
  std::uint32_t parent = 0;   // first (or only) operand, by insertion index
  std::uint32_t coparent = 0; // second operand: tensor right factor, compose top
  Rotation direction = Rotation::UpperLeftDown;  // only meaningful for Rotate
};

struct ClosureOptions {
  int max_points = 6;
  std::size_t member_guard = 1'000'000;  // abort if the member count passes this
};

class Closure {
 public:
  // Builds to a fixed point; throws std::length_error when the guard trips
  // and std::invalid_argument when a generator already exceeds max_points.
  Closure(std::vector<Partition> generators, ClosureOptions options = {});

  int max_points() const { return options_.max_points; }
  const std::vector<Partition>& generators() const { return generators_; }

  std::size_t size() const { return keys_.size(); }
  bool member_of(const Partition& p) const { return index_.count(p.key()) != 0; }

  // Members by insertion index (the order derivations refer to).
  Partition member(std::size_t idx) const { return Partition::from_key(keys_[idx]); }
  const std::string& member_key(std::size_t idx) const { return keys_[idx]; }
  const Derivation& derivation(std::size_t idx) const { return derivations_[idx]; }

  // Insertion indices sorted by (point count, text form): the output order.
  const std::vector<std::uint32_t>& sorted_order() const { return order_; }

 private:
  void add(std::string key, const Derivation& how);

  ClosureOptions options_;
  std::vector<Partition> generators_;
  std::vector<std::string> keys_;
  std::vector<Derivation> derivations_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> order_;
};

enum class Containment { Yes, NoWithinBound, Unknown };

struct ContainsResult {
  Containment status = Containment::Unknown;
  std::string note;  // caveat for the two negative outcomes
};

// Membership of p in the closure, qualified by the point bound: diagrams
// beyond the bound come back Unknown, absent ones NoWithinBound.
ContainsResult contains(const Closure& c, const Partition& p);

struct BlockWitness {
  Partition member;     // the diagram whose block escapes
  int block_id = 0;     // which block
  Partition restricted; // the missing one-block diagram
};

struct StabilityResult {
  bool stable = false;
  std::optional<BlockWitness> witness;  // first failure in output order
};

// Whether every block of every member, taken as a diagram of its own, is
// again a member.  A positive answer is only as strong as the point bound.
StabilityResult is_blockstable_up_to(const Closure& c);

// ---------------------------------------------------------------------------
// Stock generator diagrams

// One lower row of `size` points of one colour forming a single block.
Partition one_block(int size, Colour colour);

// "- / oA", "- / *A".
Partition lower_singleton(Colour colour);

// Four lower points in one block: colours o * o * or o o * *.
Partition four_point_alternating();
Partition four_point_paired();

// Lower row of length 2l+2: l white singletons, a white arch leg, l black
// singletons, then the black arch leg closing over them:
//
//   l = 1:   o   o   *   *        arch = {2, 4}
//            A   B   C   B
//
// l = 0 degenerates to the white-black hook.
Partition singleton_arch(int l);

// "- / oA *B oC *A": an arch over one black and one white singleton.
Partition alternating_arch();

// The twelve built-in generator families, in fixed order.
std::vector<std::string> preset_names();

// Generators for a named preset; k/l are the family parameters.  Throws
// std::invalid_argument for unknown names, missing/extra parameters, or
// parameter values outside the family's range.
std::vector<Partition> preset_generators(const std::string& name, std::optional<int> k,
                                         std::optional<int> l);

// Every diagram on the given coloured frame (all ways to group the points
// into blocks), in deterministic order.
std::vector<Partition> enumerate_frame(const std::vector<Colour>& upper,
                                       const std::vector<Colour>& lower);

}  // namespace easycat
