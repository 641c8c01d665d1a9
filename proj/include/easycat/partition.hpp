#pragma once

// Core diagram type: two-coloured set partitions of k upper and l lower
// points, plus the diagram operations (tensor, involution, composition,
// rotation) and serialization.
//
// Conventions used throughout:
//  - points are ordered U1 < ... < Uk < L1 < ... < Ll;
//  - block ids are canonical: numbered 0,1,2,... by the block's minimal point;
//  - the crossing test uses the circular order U1..Uk, Ll..L1;
//  - compose(q, p) stacks p on top of q (p's lower row is glued to q's upper
//    row), which matches reading a product "q after p" bottom-up;
//  - rotations move one extremal point to the other row on the same side and
//    flip its colour (white <-> black).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace easycat {

enum class Colour : std::uint8_t { White, Black };

inline char colour_char(Colour c) { return c == Colour::White ? 'o' : '*'; }
inline Colour colour_flip(Colour c) {
  return c == Colour::White ? Colour::Black : Colour::White;
}

/// One block of a partition, split into its upper-row and lower-row points
/// (0-based indices into the respective row).
struct Block {
  std::vector<int> upper;
  std::vector<int> lower;

  bool is_through() const { return !upper.empty() && !lower.empty(); }
  int size() const { return static_cast<int>(upper.size() + lower.size()); }
};

/// A two-coloured partition of k upper + l lower points.
///
/// The value is always kept in canonical form: block ids are consecutive
/// integers assigned by first appearance in point order, so structural
/// equality is plain field equality.  Instances are immutable after
/// construction; all operations return new values.
class Partition {
 public:
  /// The empty partition (k = l = 0, no blocks).
  Partition() = default;

  /// Builds a partition from per-point colours and per-point block ids.
  /// Ids may be arbitrary integers; only their equality pattern matters.
  /// Throws std::invalid_argument on size mismatch.
  Partition(std::vector<Colour> upper_colours, std::vector<Colour> lower_colours,
            const std::vector<int>& upper_blocks, const std::vector<int>& lower_blocks);

  int upper_size() const { return static_cast<int>(upper_col_.size()); }
  int lower_size() const { return static_cast<int>(lower_col_.size()); }
  int points() const { return upper_size() + lower_size(); }

  Colour upper_colour(int i) const { return upper_col_[i]; }
  Colour lower_colour(int i) const { return lower_col_[i]; }
  const std::vector<Colour>& upper_colours() const { return upper_col_; }
  const std::vector<Colour>& lower_colours() const { return lower_col_; }

  /// Canonical block id of the i-th upper / lower point.
  int upper_block(int i) const { return upper_blk_[i]; }
  int lower_block(int i) const { return lower_blk_[i]; }

  int block_count() const { return block_count_; }

  /// Blocks in canonical order (index == block id).
  std::vector<Block> blocks() const;

  /// Number of through-blocks (blocks touching both rows).
  int through_block_count() const;

  /// Ids of the through-blocks, ascending.  Canonical ids are assigned by
  /// minimal point, so this is also the "ordered by minimal point" order.
  std::vector<int> through_block_ids() const;

  bool operator==(const Partition& other) const = default;

  /// Compact byte encoding; lexicographic order on keys sorts first by total
  /// point count, then by row split, colours and block pattern.  Used as a
  /// deterministic set key by the closure engine.
  std::string key() const;

  /// Inverse of key().  Throws std::invalid_argument on malformed bytes.
  static Partition from_key(const std::string& key);

  /// Deterministic ordering consistent with key().
  bool operator<(const Partition& other) const { return key() < other.key(); }

 private:
  std::vector<Colour> upper_col_;
  std::vector<Colour> lower_col_;
  std::vector<int> upper_blk_;
  std::vector<int> lower_blk_;
  int block_count_ = 0;
};

// ---------------------------------------------------------------------------
// Serialization

enum class Style { Text, Json, LatexPicture };

/// Parses the whitespace-separated text form, e.g. "oA oA *B / *C *B oB".
/// Grammar: row "/" row; row is "-" (empty) or a list of points; a point is
/// 'o' or '*' immediately followed by an alphanumeric block label.
/// Throws std::invalid_argument with the offending token position.
Partition parse_partition(const std::string& text);

/// Renders a partition.  Text style round-trips through parse_partition
/// bit-exactly; json follows the documented schema; latex-picture emits a
/// best-effort standalone picture environment (not round-trippable).
std::string format_partition(const Partition& p, Style style = Style::Text);

// ---------------------------------------------------------------------------
// Diagram operations

/// Horizontal concatenation p (x) q: q's points are appended to the right of
/// p's, blocks stay disjoint.
Partition tensor(const Partition& p, const Partition& q);

/// Row swap: the upper row of the result is the lower row of p and vice
/// versa; colours and block membership are preserved.
Partition involution(const Partition& p);

struct ComposeResult {
  Partition partition;
  int loops = 0;  ///< middle-row-only components removed during gluing
};

/// Vertical composition q o p: p is stacked on top of q, p's lower row is
/// glued to q's upper row (the colour words must be identical), merged blocks
/// that end up entirely in the middle row are erased and counted as loops.
/// The result lives in P(upper word of p, lower word of q).
/// Throws std::invalid_argument reporting the first mismatching position.
ComposeResult compose(const Partition& q, const Partition& p);

enum class Rotation { UpperLeftDown, LowerLeftUp, UpperRightDown, LowerRightUp };

/// Parses one of "upper-left-down", "lower-left-up", "upper-right-down",
/// "lower-right-up".
std::optional<Rotation> rotation_from_name(const std::string& name);
std::string rotation_name(Rotation r);

/// Moves the designated extremal point to the other row on the same side,
/// flipping its colour; block membership is unchanged.
/// Throws std::invalid_argument when the source row is empty.
Partition rotate(const Partition& p, Rotation which);

/// True iff no two blocks interleave in the circular order U1..Uk, Ll..L1.
bool is_noncrossing(const Partition& p);

/// The partition consisting of block `block_id` of p alone, with its points
/// re-indexed consecutively and colours inherited.
///// Throws std::out_of_range for an invalid id.
Partition block_restrict(const Partition& p, int block_id);

// ---------------------------------------------------------------------------
// Stock diagrams

/// Single strand in P(1,1), both points coloured c.
Partition identity_strand(Colour c);

/// Pair block in P(0,2) with lower colours (c1, c2).
Partition pair_lower(Colour c1, Colour c2);

/// Pair block in P(2,0) with upper colours (c1, c2).
Partition pair_upper(Colour c1, Colour c2);

/// The six partitions every category contains: the two identity strands and
/// the four mixed-coloured pairs (the latter encode that the fundamental
/// matrix and its conjugate are unitaries).
std::vector<Partition> base_partitions();

}  // namespace easycat
