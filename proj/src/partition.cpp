#include "easycat/partition.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace easycat {

namespace {

// Renumbers arbitrary block ids to 0,1,2,... by first appearance scanning the
// upper row left to right, then the lower row.
void canonicalize_ids(std::vector<int>& upper, std::vector<int>& lower, int& count) {
  std::unordered_map<int, int> remap;
  remap.reserve(upper.size() + lower.size());
  int next = 0;
  auto visit = [&](std::vector<int>& row) {
    for (int& id : row) {
      auto [it, inserted] = remap.try_emplace(id, next);
      if (inserted) ++next;
      id = it->second;
    }
  };
  visit(upper);
  visit(lower);
  count = next;
}

// Excel-style block labels: A..Z, AA..AZ, ...
std::string block_label(int id) {
  std::string out;
  int v = id;
  do {
    out.insert(out.begin(), static_cast<char>('A' + v % 26));
    v = v / 26 - 1;
  } while (v >= 0);
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Partition::Partition(std::vector<Colour> upper_colours, std::vector<Colour> lower_colours,
                     const std::vector<int>& upper_blocks, const std::vector<int>& lower_blocks)
    : upper_col_(std::move(upper_colours)),
      lower_col_(std::move(lower_colours)),
      upper_blk_(upper_blocks),
      lower_blk_(lower_blocks) {
  if (upper_col_.size() != upper_blk_.size() || lower_col_.size() != lower_blk_.size()) {
    throw std::invalid_argument("partition: colour and block sequences differ in length");
  }
  canonicalize_ids(upper_blk_, lower_blk_, block_count_);
}

std::vector<Block> Partition::blocks() const {
  std::vector<Block> out(block_count_);
  for (int i = 0; i < upper_size(); ++i) out[upper_blk_[i]].upper.push_back(i);
  for (int i = 0; i < lower_size(); ++i) out[lower_blk_[i]].lower.push_back(i);
  return out;
}

int Partition::through_block_count() const {
  return static_cast<int>(through_block_ids().size());
}

std::vector<int> Partition::through_block_ids() const {
  std::vector<char> has_upper(block_count_, 0), has_lower(block_count_, 0);
  for (int b : upper_blk_) has_upper[b] = 1;
  for (int b : lower_blk_) has_lower[b] = 1;
  std::vector<int> out;
  for (int b = 0; b < block_count_; ++b) {
    if (has_upper[b] && has_lower[b]) out.push_back(b);
  }
  return out;
}

std::string Partition::key() const {
  std::string k;
  k.reserve(points() + 3);
  k.push_back(static_cast<char>(points()));
  k.push_back(static_cast<char>(upper_size()));
  auto encode = [&k](const std::vector<Colour>& col, const std::vector<int>& blk) {
    for (size_t i = 0; i < col.size(); ++i) {
      k.push_back(static_cast<char>((blk[i] << 1) | (col[i] == Colour::Black ? 1 : 0)));
    }
  };
  encode(upper_col_, upper_blk_);
  encode(lower_col_, lower_blk_);
  return k;
}

Partition Partition::from_key(const std::string& key) {
  if (key.size() < 2) throw std::invalid_argument("key too short");
  const int points = static_cast<unsigned char>(key[0]);
  const int k = static_cast<unsigned char>(key[1]);
  if (k > points || key.size() != static_cast<size_t>(points) + 2) {
    throw std::invalid_argument("key length does not match its header");
  }
  std::vector<Colour> uc(k), lc(points - k);
  std::vector<int> ub(k), lb(points - k);
  for (int i = 0; i < points; ++i) {
    const auto byte = static_cast<unsigned char>(key[2 + i]);
    Colour c = (byte & 1) ? Colour::Black : Colour::White;
    int b = byte >> 1;
    if (i < k) {
      uc[i] = c;
      ub[i] = b;
    } else {
      lc[i - k] = c;
      lb[i - k] = b;
    }
  }
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

// ---------------------------------------------------------------------------
// Parsing / formatting

Partition parse_partition(const std::string& text) {
  std::vector<std::string> tokens;
  {
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }
  auto fail = [&](size_t pos, const std::string& why) {
    std::ostringstream msg;
    msg << "parse error at token " << (pos + 1) << ": " << why;
    throw std::invalid_argument(msg.str());
  };

  size_t slash = tokens.size();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "/") {
      if (slash != tokens.size()) fail(i, "second '/' separator");
      slash = i;
    }
  }
  if (slash == tokens.size()) fail(tokens.size(), "missing '/' separator");

  std::vector<Colour> colours[2];
  std::vector<int> blocks[2];
  std::map<std::string, int> label_ids;

  auto parse_row = [&](size_t begin, size_t end, int row) {
    if (begin == end) fail(begin, "empty row must be written as '-'");
    if (tokens[begin] == "-") {
      if (end - begin != 1) fail(begin + 1, "'-' must stand alone in a row");
      return;
    }
    for (size_t i = begin; i < end; ++i) {
      const std::string& t = tokens[i];
      if (t == "-") fail(i, "'-' must stand alone in a row");
      if (t[0] != 'o' && t[0] != '*') fail(i, "point must start with 'o' or '*'");
      std::string label = t.substr(1);
      if (label.empty()) fail(i, "missing block id after colour");
      for (char c : label) {
        if (!std::isalnum(static_cast<unsigned char>(c))) fail(i, "block id must be alphanumeric");
      }
      auto [it, inserted] = label_ids.try_emplace(label, static_cast<int>(label_ids.size()));
      colours[row].push_back(t[0] == 'o' ? Colour::White : Colour::Black);
      blocks[row].push_back(it->second);
    }
  };
  parse_row(0, slash, 0);
  parse_row(slash + 1, tokens.size(), 1);
  return Partition(std::move(colours[0]), std::move(colours[1]), blocks[0], blocks[1]);
}

namespace {

std::string format_text(const Partition& p) {
  std::ostringstream out;
  auto row = [&](const std::vector<Colour>& col, auto block_of) {
    if (col.empty()) {
      out << '-';
      return;
    }
    for (size_t i = 0; i < col.size(); ++i) {
      if (i) out << ' ';
      out << colour_char(col[i]) << block_label(block_of(static_cast<int>(i)));
    }
  };
  row(p.upper_colours(), [&](int i) { return p.upper_block(i); });
  out << " / ";
  row(p.lower_colours(), [&](int i) { return p.lower_block(i); });
  return out.str();
}

std::string format_json(const Partition& p) {
  // Hand-rolled to keep this translation unit dependency-free; the schema is
  // {"upper":[{"colour":"o","block":0},...],"lower":[...]}.
  std::ostringstream out;
  auto row = [&](const std::vector<Colour>& col, auto block_of) {
    out << '[';
    for (size_t i = 0; i < col.size(); ++i) {
      if (i) out << ',';
      out << R"({"colour":")" << colour_char(col[i]) << R"(","block":)"
          << block_of(static_cast<int>(i)) << '}';
    }
    out << ']';
  };
  out << R"({"upper":)";
  row(p.upper_colours(), [&](int i) { return p.upper_block(i); });
  out << R"(,"lower":)";
  row(p.lower_colours(), [&](int i) { return p.lower_block(i); });
  out << '}';
  return out.str();
}

// Best-effort diagram: points on two rows, a horizontal bar per block at a
// depth staggered by block id, stubs connecting each point to its bar.
std::string format_latex(const Partition& p) {
  const int k = p.upper_size(), l = p.lower_size();
  const int width = std::max({k, l, 1}) + 1;
  std::ostringstream out;
  out << "\\setlength{\\unitlength}{10pt}%\n";
  out << "\\begin{picture}(" << width << ",5)\n";
  auto point = [&](int x, int y, Colour c) {
    out << "  \\put(" << x << ',' << y << "){\\circle" << (c == Colour::Black ? "*" : "")
        << "{0.35}}\n";
  };
  for (int i = 0; i < k; ++i) point(i + 1, 4, p.upper_colour(i));
  for (int i = 0; i < l; ++i) point(i + 1, 1, p.lower_colour(i));
  auto blocks = p.blocks();
  for (size_t b = 0; b < blocks.size(); ++b) {
    // bar depth staggered per block so nested blocks stay readable
    double depth = 2.0 + 0.3 * static_cast<double>(b % 4);
    double lo = 1e9, hi = -1e9;
    auto stub = [&](int x, int y_from) {
      double len = (y_from == 4) ? (4 - depth) : (depth - 1);
      out << "  \\put(" << x << ',' << (y_from == 4 ? depth : 1.0) << "){\\line(0,1){" << len
          << "}}\n";
      lo = std::min(lo, static_cast<double>(x));
      hi = std::max(hi, static_cast<double>(x));
    };
    for (int i : blocks[b].upper) stub(i + 1, 4);
    for (int i : blocks[b].lower) stub(i + 1, 1);
    if (hi > lo) {
      out << "  \\put(" << lo << ',' << depth << "){\\line(1,0){" << (hi - lo) << "}}\n";
    }
  }
  out << "\\end{picture}\n";
  return out.str();
}

}  // namespace

std::string format_partition(const Partition& p, Style style) {
  switch (style) {
    case Style::Text:
      return format_text(p);
    case Style::Json:
      return format_json(p);
    case Style::LatexPicture:
      return format_latex(p);
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Operations

Partition tensor(const Partition& p, const Partition& q) {
  std::vector<Colour> uc = p.upper_colours(), lc = p.lower_colours();
  uc.insert(uc.end(), q.upper_colours().begin(), q.upper_colours().end());
  lc.insert(lc.end(), q.lower_colours().begin(), q.lower_colours().end());
  const int shift = p.block_count();
  std::vector<int> ub, lb;
  ub.reserve(uc.size());
  lb.reserve(lc.size());
  for (int i = 0; i < p.upper_size(); ++i) ub.push_back(p.upper_block(i));
  for (int i = 0; i < q.upper_size(); ++i) ub.push_back(q.upper_block(i) + shift);
  for (int i = 0; i < p.lower_size(); ++i) lb.push_back(p.lower_block(i));
  for (int i = 0; i < q.lower_size(); ++i) lb.push_back(q.lower_block(i) + shift);
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

Partition involution(const Partition& p) {
  std::vector<int> ub, lb;
  for (int i = 0; i < p.lower_size(); ++i) ub.push_back(p.lower_block(i));
  for (int i = 0; i < p.upper_size(); ++i) lb.push_back(p.upper_block(i));
  return Partition(p.lower_colours(), p.upper_colours(), ub, lb);
}

ComposeResult compose(const Partition& q, const Partition& p) {
  const int mid = p.lower_size();
  if (mid != q.upper_size()) {
    throw std::invalid_argument("compose: glued rows have lengths " + std::to_string(mid) +
                                " and " + std::to_string(q.upper_size()));
  }
  for (int i = 0; i < mid; ++i) {
    if (p.lower_colour(i) != q.upper_colour(i)) {
      throw std::invalid_argument("compose: colour mismatch at glued position " +
                                  std::to_string(i + 1));
    }
  }

  // Node layout: p-upper | middle | q-lower.
  const int k = p.upper_size(), l = q.lower_size();
  UnionFind uf(k + mid + l);
  {
    // Link every point to the first point seen of its block, per factor.
    std::unordered_map<int, int> first;
    for (int i = 0; i < k; ++i) {
      auto [it, fresh] = first.try_emplace(p.upper_block(i), i);
      if (!fresh) uf.unite(i, it->second);
    }
    for (int i = 0; i < mid; ++i) {
      auto [it, fresh] = first.try_emplace(p.lower_block(i), k + i);
      if (!fresh) uf.unite(k + i, it->second);
    }
    first.clear();
    for (int i = 0; i < mid; ++i) {
      auto [it, fresh] = first.try_emplace(q.upper_block(i), k + i);
      if (!fresh) uf.unite(k + i, it->second);
    }
    for (int i = 0; i < l; ++i) {
      auto [it, fresh] = first.try_emplace(q.lower_block(i), k + mid + i);
      if (!fresh) uf.unite(k + mid + i, it->second);
    }
  }

  std::vector<int> ub(k), lb(l);
  std::vector<char> root_is_outer(k + mid + l, 0);
  for (int i = 0; i < k; ++i) {
    int r = uf.find(i);
    ub[i] = r;
    root_is_outer[r] = 1;
  }
  for (int i = 0; i < l; ++i) {
    int r = uf.find(k + mid + i);
    lb[i] = r;
    root_is_outer[r] = 1;
  }
  int loops = 0;
  for (int i = 0; i < mid; ++i) {
    int r = uf.find(k + i);
    if (!root_is_outer[r]) {
      root_is_outer[r] = 1;  // count each middle-only component once
      ++loops;
    }
  }
  return {Partition(p.upper_colours(), q.lower_colours(), ub, lb), loops};
}

std::optional<Rotation> rotation_from_name(const std::string& name) {
  if (name == "upper-left-down") return Rotation::UpperLeftDown;
  if (name == "lower-left-up") return Rotation::LowerLeftUp;
  if (name == "upper-right-down") return Rotation::UpperRightDown;
  if (name == "lower-right-up") return Rotation::LowerRightUp;
  return std::nullopt;
}

std::string rotation_name(Rotation r) {
  switch (r) {
    case Rotation::UpperLeftDown:
      return "upper-left-down";
    case Rotation::LowerLeftUp:
      return "lower-left-up";
    case Rotation::UpperRightDown:
      return "upper-right-down";
    case Rotation::LowerRightUp:
      return "lower-right-up";
  }
  throw std::logic_error("unreachable");
}

Partition rotate(const Partition& p, Rotation which) {
  const bool from_upper = (which == Rotation::UpperLeftDown || which == Rotation::UpperRightDown);
  const bool left = (which == Rotation::UpperLeftDown || which == Rotation::LowerLeftUp);
  if (from_upper ? p.upper_size() == 0 : p.lower_size() == 0) {
    throw std::invalid_argument("rotate: cannot rotate from an empty row");
  }

  std::vector<Colour> uc = p.upper_colours(), lc = p.lower_colours();
  std::vector<int> ub, lb;
  for (int i = 0; i < p.upper_size(); ++i) ub.push_back(p.upper_block(i));
  for (int i = 0; i < p.lower_size(); ++i) lb.push_back(p.lower_block(i));

  auto take = [](std::vector<Colour>& col, std::vector<int>& blk, bool front) {
    size_t at = front ? 0 : col.size() - 1;
    std::pair<Colour, int> moved{col[at], blk[at]};
    col.erase(col.begin() + at);
    blk.erase(blk.begin() + at);
    return moved;
  };
  auto put = [](std::vector<Colour>& col, std::vector<int>& blk, bool front,
                std::pair<Colour, int> moved) {
    size_t at = front ? 0 : col.size();
    col.insert(col.begin() + at, colour_flip(moved.first));
    blk.insert(blk.begin() + at, moved.second);
  };

  if (from_upper) {
    put(lc, lb, left, take(uc, ub, left));
  } else {
    put(uc, ub, left, take(lc, lb, left));
  }
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

bool is_noncrossing(const Partition& p) {
  const int k = p.upper_size(), l = p.lower_size();
  const int n = k + l;
  // circular position -> block id, walking U1..Uk then Ll..L1
  std::vector<int> owner(n);
  for (int i = 0; i < k; ++i) owner[i] = p.upper_block(i);
  for (int j = 0; j < l; ++j) owner[k + j] = p.lower_block(l - 1 - j);

  const int blocks = p.block_count();
  for (int a = 0; a < blocks; ++a) {
    for (int b = a + 1; b < blocks; ++b) {
      // Count maximal runs of a's and b's around the circle; four or more
      // alternating runs means the two blocks interleave.
      int runs = 0;
      int prev = -1, first = -1;
      for (int pos = 0; pos < n; ++pos) {
        int o = owner[pos];
        if (o != a && o != b) continue;
        if (first < 0) first = o;
        if (o != prev) ++runs;
        prev = o;
      }
      if (prev != -1 && runs > 1 && prev == first) --runs;  // cyclic wrap joins the ends
      if (runs >= 4) return false;
    }
  }
  return true;
}

Partition block_restrict(const Partition& p, int block_id) {
  if (block_id < 0 || block_id >= p.block_count()) {
    throw std::out_of_range("block_restrict: no block " + std::to_string(block_id));
  }
  std::vector<Colour> uc, lc;
  for (int i = 0; i < p.upper_size(); ++i) {
    if (p.upper_block(i) == block_id) uc.push_back(p.upper_colour(i));
  }
  for (int i = 0; i < p.lower_size(); ++i) {
    if (p.lower_block(i) == block_id) lc.push_back(p.lower_colour(i));
  }
  std::vector<int> ub(uc.size(), 0), lb(lc.size(), 0);
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

Partition identity_strand(Colour c) { return Partition({c}, {c}, {0}, {0}); }

Partition pair_lower(Colour c1, Colour c2) { return Partition({}, {c1, c2}, {}, {0, 0}); }

Partition pair_upper(Colour c1, Colour c2) { return Partition({c1, c2}, {}, {0, 0}, {}); }

std::vector<Partition> base_partitions() {
  using enum Colour;
  return {identity_strand(White),    identity_strand(Black),  pair_lower(White, Black),
          pair_lower(Black, White),  pair_upper(White, Black), pair_upper(Black, White)};
}

}  // namespace easycat
