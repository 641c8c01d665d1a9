#include "easycat/category.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace easycat {

namespace {

// The engine packs diagrams into Partition::key() byte strings and applies
// the structural operations directly on those bytes; small fixed-size scratch
// arrays keep the hot loop free of allocations.  30 points are plenty: the
// member guard trips long before such bounds become reachable in practice.
constexpr int kMaxEnginePoints = 30;

struct KeyView {
  const unsigned char* bytes;
  int points, k, l;
  const unsigned char* up() const { return bytes + 2; }
  const unsigned char* low() const { return bytes + 2 + k; }
};

KeyView view(const std::string& s) {
  const auto* b = reinterpret_cast<const unsigned char*>(s.data());
  return {b, b[0], b[1], b[0] - b[1]};
}

unsigned char* body(std::string& s) { return reinterpret_cast<unsigned char*>(s.data()) + 2; }

// Renumbers block ids by first appearance, in place.
void renumber(unsigned char* bytes, int count) {
  signed char remap[64];
  std::memset(remap, -1, sizeof remap);
  signed char next = 0;
  for (int i = 0; i < count; ++i) {
    signed char& id = remap[bytes[i] >> 1];
    if (id < 0) id = next++;
    bytes[i] = static_cast<unsigned char>((id << 1) | (bytes[i] & 1));
  }
}

std::string fresh_key(int points, int upper) {
  std::string out(static_cast<size_t>(points) + 2, '\0');
  out[0] = static_cast<char>(points);
  out[1] = static_cast<char>(upper);
  return out;
}

std::string involute_key(const std::string& s) {
  KeyView v = view(s);
  std::string out = fresh_key(v.points, v.l);
  unsigned char* o = body(out);
  std::memcpy(o, v.low(), v.l);
  std::memcpy(o + v.l, v.up(), v.k);
  renumber(o, v.points);
  return out;
}

std::string rotate_key(const std::string& s, Rotation dir) {
  KeyView v = view(s);
  const bool from_upper = (dir == Rotation::UpperLeftDown || dir == Rotation::UpperRightDown);
  const bool left = (dir == Rotation::UpperLeftDown || dir == Rotation::LowerLeftUp);
  std::string out = fresh_key(v.points, v.k + (from_upper ? -1 : 1));
  unsigned char* o = body(out);
  int at = 0;
  auto put = [&](unsigned char byte) { o[at++] = byte; };
  if (from_upper) {
    const unsigned char moved = v.up()[left ? 0 : v.k - 1] ^ 1;  // colour flips
    for (int i = left ? 1 : 0; i < (left ? v.k : v.k - 1); ++i) put(v.up()[i]);
    if (left) put(moved);
    for (int i = 0; i < v.l; ++i) put(v.low()[i]);
    if (!left) put(moved);
  } else {
    const unsigned char moved = v.low()[left ? 0 : v.l - 1] ^ 1;
    if (left) put(moved);
    for (int i = 0; i < v.k; ++i) put(v.up()[i]);
    if (!left) put(moved);
    for (int i = left ? 1 : 0; i < (left ? v.l : v.l - 1); ++i) put(v.low()[i]);
  }
  renumber(o, v.points);
  return out;
}

std::string tensor_key(const std::string& a, const std::string& b) {
  KeyView va = view(a), vb = view(b);
  std::string out = fresh_key(va.points + vb.points, va.k + vb.k);
  unsigned char* o = body(out);
  // left factor ids stay below 32, right factor ids get the high range
  int at = 0;
  for (int i = 0; i < va.k; ++i) o[at++] = va.up()[i];
  for (int i = 0; i < vb.k; ++i) o[at++] = static_cast<unsigned char>(vb.up()[i] + 64);
  for (int i = 0; i < va.l; ++i) o[at++] = va.low()[i];
  for (int i = 0; i < vb.l; ++i) o[at++] = static_cast<unsigned char>(vb.low()[i] + 64);
  renumber(o, at);
  return out;
}

// Composition bottom ∘ top; the caller guarantees the glued words agree.
std::string compose_key(const std::string& bottom, const std::string& top) {
  KeyView t = view(top), q = view(bottom);
  const int mid = t.l;  // == q.k
  const int nodes = t.k + mid + q.l;
  short parent[3 * kMaxEnginePoints];
  for (int i = 0; i < nodes; ++i) parent[i] = static_cast<short>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto link = [&](short first[], int block, int node) {
    if (first[block] < 0) {
      first[block] = static_cast<short>(node);
    } else {
      parent[find(node)] = static_cast<short>(find(first[block]));
    }
  };
  short first_top[kMaxEnginePoints], first_bot[kMaxEnginePoints];
  std::memset(first_top, -1, sizeof first_top);
  std::memset(first_bot, -1, sizeof first_bot);
  for (int i = 0; i < t.k; ++i) link(first_top, t.up()[i] >> 1, i);
  for (int i = 0; i < mid; ++i) link(first_top, t.low()[i] >> 1, t.k + i);
  for (int i = 0; i < mid; ++i) link(first_bot, q.up()[i] >> 1, t.k + i);
  for (int i = 0; i < q.l; ++i) link(first_bot, q.low()[i] >> 1, t.k + mid + i);

  std::string out = fresh_key(t.k + q.l, t.k);
  unsigned char* o = body(out);
  signed char remap[3 * kMaxEnginePoints];
  std::memset(remap, -1, sizeof remap);
  signed char next = 0;
  auto out_byte = [&](int node, unsigned char colour_bit) {
    signed char& id = remap[find(node)];
    if (id < 0) id = next++;
    return static_cast<unsigned char>((id << 1) | colour_bit);
  };
  for (int i = 0; i < t.k; ++i) o[i] = out_byte(i, t.up()[i] & 1);
  for (int i = 0; i < q.l; ++i) o[t.k + i] = out_byte(t.k + mid + i, q.low()[i] & 1);
  return out;
}

std::string row_word(const std::string& key, bool upper) {
  KeyView v = view(key);
  const unsigned char* row = upper ? v.up() : v.low();
  const int len = upper ? v.k : v.l;
  std::string w(static_cast<size_t>(len), '\0');
  for (int i = 0; i < len; ++i) w[i] = static_cast<char>('0' + (row[i] & 1));
  return w;
}

}  // namespace

Closure::Closure(std::vector<Partition> generators, ClosureOptions options)
    : options_(options), generators_(std::move(generators)) {
  if (options_.max_points < 0 || options_.max_points > kMaxEnginePoints) {
    throw std::invalid_argument("point bound must lie in [0, " +
                                std::to_string(kMaxEnginePoints) + "]");
  }
  for (const Partition& b : base_partitions()) {
    if (b.points() <= options_.max_points) add(b.key(), {ClosureOp::Seed, 0, 0, {}});
  }
  for (const Partition& g : generators_) {
    if (g.points() > options_.max_points) {
      throw std::invalid_argument("generator " + format_partition(g) + " has " +
                                  std::to_string(g.points()) + " points, above the bound of " +
                                  std::to_string(options_.max_points));
    }
    add(g.key(), {ClosureOp::Seed, 0, 0, {}});
  }

  std::unordered_map<std::string, std::vector<std::uint32_t>> by_upper_word, by_lower_word;
  std::vector<std::vector<std::uint32_t>> by_points(options_.max_points + 1);

  std::size_t processed = 0;  // everything below has been used as a frontier
  while (processed < keys_.size()) {
    const std::size_t round_end = keys_.size();
    for (std::size_t i = processed; i < round_end; ++i) {
      by_upper_word[row_word(keys_[i], true)].push_back(static_cast<std::uint32_t>(i));
      by_lower_word[row_word(keys_[i], false)].push_back(static_cast<std::uint32_t>(i));
      by_points[static_cast<unsigned char>(keys_[i][0])].push_back(
          static_cast<std::uint32_t>(i));
    }
    for (std::size_t i = processed; i < round_end; ++i) {
      const std::string key = keys_[i];  // keys_ may grow below
      const auto idx = static_cast<std::uint32_t>(i);
      KeyView v = view(key);

      add(involute_key(key), {ClosureOp::Involution, idx, 0, {}});
      if (v.k > 0) {
        add(rotate_key(key, Rotation::UpperLeftDown),
            {ClosureOp::Rotate, idx, 0, Rotation::UpperLeftDown});
        add(rotate_key(key, Rotation::UpperRightDown),
            {ClosureOp::Rotate, idx, 0, Rotation::UpperRightDown});
      }
      if (v.l > 0) {
        add(rotate_key(key, Rotation::LowerLeftUp),
            {ClosureOp::Rotate, idx, 0, Rotation::LowerLeftUp});
        add(rotate_key(key, Rotation::LowerRightUp),
            {ClosureOp::Rotate, idx, 0, Rotation::LowerRightUp});
      }

      // this member below any compatible top seen so far
      if (auto it = by_lower_word.find(row_word(key, true)); it != by_lower_word.end()) {
        for (std::uint32_t top : it->second) {
          add(compose_key(key, keys_[top]), {ClosureOp::Compose, idx, top, {}});
        }
      }
      // this member on top of strictly older bottoms (newer pairs come above)
      if (auto it = by_upper_word.find(row_word(key, false)); it != by_upper_word.end()) {
        for (std::uint32_t bottom : it->second) {
          if (bottom >= processed) break;
          add(compose_key(keys_[bottom], key), {ClosureOp::Compose, bottom, idx, {}});
        }
      }

      for (int pts = 0; pts + v.points <= options_.max_points; ++pts) {
        for (std::uint32_t other : by_points[pts]) {
          add(tensor_key(key, keys_[other]), {ClosureOp::Tensor, idx, other, {}});
          if (other < processed) {
            add(tensor_key(keys_[other], key), {ClosureOp::Tensor, other, idx, {}});
          }
        }
      }
    }
    processed = round_end;
  }

  order_.resize(keys_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<std::uint32_t>(i);
  std::vector<std::string> text(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) text[i] = format_partition(member(i));
  std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
    int pa = static_cast<unsigned char>(keys_[a][0]);
    int pb = static_cast<unsigned char>(keys_[b][0]);
    if (pa != pb) return pa < pb;
    return text[a] < text[b];
  });
}

void Closure::add(std::string key, const Derivation& how) {
  if (static_cast<unsigned char>(key[0]) > options_.max_points) return;
  auto [it, fresh] = index_.try_emplace(std::move(key), static_cast<std::uint32_t>(keys_.size()));
  if (!fresh) return;
  if (keys_.size() >= options_.member_guard) {
    throw std::length_error("closure passed " + std::to_string(options_.member_guard) +
                            " members at a point bound of " +
                            std::to_string(options_.max_points) +
                            "; raise the guard to keep going");
  }
  keys_.push_back(it->first);
  derivations_.push_back(how);
}

ContainsResult contains(const Closure& c, const Partition& p) {
  if (p.points() > c.max_points()) {
    return {Containment::Unknown, "the diagram has " + std::to_string(p.points()) +
                                      " points but the closure was only built up to " +
                                      std::to_string(c.max_points())};
  }
  if (c.member_of(p)) return {Containment::Yes, ""};
  return {Containment::NoWithinBound,
          "not reachable with at most " + std::to_string(c.max_points()) + " points"};
}

StabilityResult is_blockstable_up_to(const Closure& c) {
  for (std::uint32_t idx : c.sorted_order()) {
    Partition p = c.member(idx);
    for (int b = 0; b < p.block_count(); ++b) {
      Partition r = block_restrict(p, b);
      if (!c.member_of(r)) {
        return {false, BlockWitness{std::move(p), b, std::move(r)}};
      }
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Stock generator diagrams and presets

Partition one_block(int size, Colour colour) {
  if (size < 0) throw std::invalid_argument("block size must be nonnegative");
  return Partition({}, std::vector<Colour>(size, colour), {}, std::vector<int>(size, 0));
}

Partition lower_singleton(Colour colour) { return Partition({}, {colour}, {}, {0}); }

Partition four_point_alternating() {
  using enum Colour;
  return Partition({}, {White, Black, White, Black}, {}, {0, 0, 0, 0});
}

Partition four_point_paired() {
  using enum Colour;
  return Partition({}, {White, White, Black, Black}, {}, {0, 0, 0, 0});
}

Partition singleton_arch(int l) {
  if (l < 0) throw std::invalid_argument("arch width must be nonnegative");
  std::vector<Colour> colours;
  std::vector<int> blocks;
  for (int i = 0; i < l; ++i) {
    colours.push_back(Colour::White);
    blocks.push_back(i);
  }
  colours.push_back(Colour::White);
  blocks.push_back(l);
  for (int i = 0; i < l; ++i) {
    colours.push_back(Colour::Black);
    blocks.push_back(l + 1 + i);
  }
  colours.push_back(Colour::Black);
  blocks.push_back(l);
  return Partition({}, std::move(colours), {}, blocks);
}

Partition alternating_arch() {
  using enum Colour;
  return Partition({}, {White, Black, White, Black}, {}, {0, 1, 2, 0});
}

std::vector<std::string> preset_names() {
  return {"O_loc",      "Hp_loc",      "H_loc",  "S_loc",  "B_loc",  "Bp_loc_0",
          "Bp_loc_half", "O_glob",     "H_glob", "S_glob", "B_glob", "Bp_glob"};
}

namespace {

Partition tensor_power(const Partition& p, int e) {
  Partition out;  // zero points: the tensor unit
  for (int i = 0; i < e; ++i) out = tensor(out, p);
  return out;
}

[[noreturn]] void preset_error(const std::string& name, const std::string& why) {
  throw std::invalid_argument("preset " + name + ": " + why);
}

}  // namespace

std::vector<Partition> preset_generators(const std::string& name, std::optional<int> k,
                                         std::optional<int> l) {
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown preset " + name);
  }
  const bool local_pair = name == "H_loc" || name == "S_loc" || name == "B_loc" ||
                          name == "Bp_loc_0" || name == "Bp_loc_half";
  const bool global_single = name == "O_glob" || name == "H_glob" || name == "S_glob" ||
                             name == "B_glob" || name == "Bp_glob";
  if (local_pair) {
    if (!k || !l) preset_error(name, "takes two parameters (k, l)");
    if (*k < 0 || *l < 0) preset_error(name, "parameters must be nonnegative");
    if (*l == 0 ? *k != 0 : *k % *l != 0) preset_error(name, "l must divide k");
  } else if (global_single) {
    if (!k || l) preset_error(name, "takes a single parameter k");
    if (*k < 0) preset_error(name, "the parameter must be nonnegative");
  } else if (k || l) {
    preset_error(name, "takes no parameters");
  }
  auto not_one = [&](int v, const char* which) {
    if (v == 1) preset_error(name, std::string(which) + " = 1 lies outside the family");
  };
  auto even = [&](int v) {
    if (v % 2 != 0) preset_error(name, "the parameter must be even");
  };

  const Partition sw = lower_singleton(Colour::White);
  const Partition sb = lower_singleton(Colour::Black);
  const Partition pair_ww = pair_lower(Colour::White, Colour::White);
  const Partition pair_bb = pair_lower(Colour::Black, Colour::Black);

  if (name == "O_loc") return {};
  if (name == "Hp_loc") return {four_point_alternating()};
  if (name == "H_loc") {
    not_one(*k, "k");
    not_one(*l, "l");
    return {one_block(*k, Colour::White),
            tensor(one_block(*l, Colour::White), one_block(*l, Colour::Black)),
            four_point_paired()};
  }
  if (name == "S_loc") {
    not_one(*k, "k");
    not_one(*l, "l");
    return {tensor_power(sw, *k), singleton_arch(*l), four_point_alternating(), tensor(sw, sb)};
  }
  if (name == "B_loc") {
    return {tensor_power(sw, *k), singleton_arch(*l), tensor(sw, sb)};
  }
  if (name == "Bp_loc_0") {
    not_one(*k, "k");
    not_one(*l, "l");
    return {tensor_power(sw, *k), singleton_arch(*l), tensor(sw, sb), alternating_arch()};
  }
  if (name == "Bp_loc_half") {
    not_one(*k, "k");
    even(*l);
    if (*l == 0 || *l == 2) preset_error(name, "l must be an even number of at least 4");
    return {tensor_power(sw, *k), singleton_arch(*l), singleton_arch(*l / 2 + 1),
            singleton_arch(1), tensor(sw, sb)};
  }
  if (name == "O_glob") {
    even(*k);
    return {tensor_power(pair_ww, *k / 2), tensor(pair_ww, pair_bb)};
  }
  if (name == "H_glob") {
    even(*k);
    return {one_block(*k, Colour::White), four_point_alternating(), tensor(pair_ww, pair_bb)};
  }
  if (name == "S_glob") {
    return {tensor_power(sw, *k), four_point_alternating(), tensor(sw, sb),
            tensor(pair_ww, pair_bb)};
  }
  if (name == "B_glob") {
    even(*k);
    return {tensor_power(sw, *k), tensor(sw, sb), tensor(pair_ww, pair_bb)};
  }
  // Bp_glob
  return {tensor_power(sw, *k), singleton_arch(1), tensor(sw, sb), tensor(pair_ww, pair_bb)};
}

std::vector<Partition> enumerate_frame(const std::vector<Colour>& upper,
                                       const std::vector<Colour>& lower) {
  const int n = static_cast<int>(upper.size() + lower.size());
  std::vector<Partition> out;
  std::vector<int> assign(n, 0);
  auto emit = [&]() {
    std::vector<int> ub(assign.begin(), assign.begin() + upper.size());
    std::vector<int> lb(assign.begin() + upper.size(), assign.end());
    out.emplace_back(upper, lower, ub, lb);
  };
  if (n == 0) {
    emit();
    return out;
  }
  // restricted growth strings: assign[0] = 0, assign[i] <= 1 + max so far
  std::vector<int> prefix_max(n, 0);
  int pos = 0;
  for (;;) {
    if (pos == n) {
      emit();
      --pos;
    } else {
      prefix_max[pos] = pos == 0 ? -1 : std::max(prefix_max[pos - 1], assign[pos - 1]);
      assign[pos++] = 0;
      continue;
    }
    // advance the last position that can still grow
    while (pos >= 0 && assign[pos] > prefix_max[pos]) --pos;
    if (pos < 0) break;
    ++assign[pos];
    ++pos;
  }
  return out;
}

}  // namespace easycat
