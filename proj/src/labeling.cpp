#include "easycat/labeling.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace easycat {

namespace {

constexpr long long kDefaultCap = 10'000'000;

long long pow_checked(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 62) / base) {
      throw std::overflow_error("class count overflows: " + std::to_string(base) + "^" +
                                std::to_string(exp));
    }
    out *= base;
  }
  return out;
}

int row_length(const Partition& p, Side side) {
  return side == Side::Upper ? p.upper_size() : p.lower_size();
}

int row_block(const Partition& p, Side side, int pos) {
  return side == Side::Upper ? p.upper_block(pos) : p.lower_block(pos);
}

void check_tuple(const Partition& p, Side side, const Tuple& t, int n) {
  if (n < 1) throw std::invalid_argument("symbol count must be at least 1");
  if (static_cast<int>(t.size()) != row_length(p, side)) {
    throw std::invalid_argument("tuple has " + std::to_string(t.size()) + " entries, row has " +
                                std::to_string(row_length(p, side)) + " points");
  }
  for (int v : t) {
    if (v < 1 || v > n) {
      throw std::invalid_argument("symbol " + std::to_string(v) + " outside [1, " +
                                  std::to_string(n) + "]");
    }
  }
}

// Blocks meeting the row but confined to it, ordered by first point in the row.
std::vector<int> free_blocks(const Partition& p, Side side) {
  std::vector<char> is_through(p.block_count(), 0);
  for (int b : p.through_block_ids()) is_through[b] = 1;
  std::vector<int> out;
  std::vector<char> seen(p.block_count(), 0);
  for (int pos = 0; pos < row_length(p, side); ++pos) {
    int b = row_block(p, side, pos);
    if (!is_through[b] && !seen[b]) {
      seen[b] = 1;
      out.push_back(b);
    }
  }
  return out;
}

void check_class_index(const Partition& p, long long i, int n) {
  long long r = class_count(p, n);
  if (i < 1 || i > r) {
    throw std::out_of_range("class index " + std::to_string(i) + " outside [1, " +
                            std::to_string(r) + "]");
  }
}

}  // namespace

long long label_cap() {
  if (const char* env = std::getenv("EASYCAT_LABEL_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultCap;
}

long long class_count(const Partition& p, int n) {
  if (n < 1) throw std::invalid_argument("symbol count must be at least 1");
  return pow_checked(n, p.through_block_count());
}

long long row_class(const Partition& p, Side side, const Tuple& t, int n) {
  check_tuple(p, side, t, n);
  std::vector<int> value(p.block_count(), 0);
  for (size_t pos = 0; pos < t.size(); ++pos) {
    int& v = value[row_block(p, side, static_cast<int>(pos))];
    if (v == 0) {
      v = t[pos];
    } else if (v != t[pos]) {
      return 0;
    }
  }
  long long cls = 0, weight = 1;
  for (int b : p.through_block_ids()) {
    cls += static_cast<long long>(value[b] - 1) * weight;
    weight *= n;
  }
  return cls + 1;
}

std::vector<int> class_labels(const Partition& p, long long i, int n) {
  check_class_index(p, i, n);
  std::vector<int> label(p.block_count(), 0);
  long long rest = i - 1;
  for (int b : p.through_block_ids()) {
    label[b] = static_cast<int>(rest % n) + 1;
    rest /= n;
  }
  return label;
}

std::optional<Tuple> class_representative(const Partition& p, Side side, long long i, int n,
                                          int max_symbol) {
  if (max_symbol < 1) throw std::invalid_argument("symbol bound must be at least 1");
  check_class_index(p, i, n);
  std::vector<int> label = class_labels(p, i, n);
  for (int b : p.through_block_ids()) {
    if (label[b] > max_symbol) return std::nullopt;
  }
  Tuple t(row_length(p, side), 1);
  for (size_t pos = 0; pos < t.size(); ++pos) {
    int b = row_block(p, side, static_cast<int>(pos));
    if (label[b] > 0) t[pos] = label[b];
  }
  return t;
}

std::vector<Tuple> enumerate_class(const Partition& p, Side side, long long i, int n,
                                   long long cap) {
  check_class_index(p, i, n);
  std::vector<int> order = free_blocks(p, side);
  long long total = pow_checked(n, static_cast<int>(order.size()));
  if (total > cap) {
    throw std::length_error("class holds " + std::to_string(total) +
                            " tuples, above the cap of " + std::to_string(cap));
  }
  std::vector<int> label = class_labels(p, i, n);
  std::vector<int> wheel(order.size(), 1);
  std::vector<Tuple> out;
  out.reserve(static_cast<size_t>(total));
  for (;;) {
    for (size_t m = 0; m < order.size(); ++m) label[order[m]] = wheel[m];
    Tuple t(row_length(p, side));
    for (size_t pos = 0; pos < t.size(); ++pos) {
      t[pos] = label[row_block(p, side, static_cast<int>(pos))];
    }
    out.push_back(std::move(t));
    int m = static_cast<int>(order.size()) - 1;
    while (m >= 0 && wheel[m] == n) wheel[m--] = 1;
    if (m < 0) break;
    ++wheel[m];
  }
  return out;
}

std::vector<Tuple> enumerate_inconsistent(const Partition& p, Side side, int n, long long cap) {
  if (n < 1) throw std::invalid_argument("symbol count must be at least 1");
  const int len = row_length(p, side);
  long long total = pow_checked(n, len);
  if (total > cap) {
    throw std::length_error("row has " + std::to_string(total) +
                            " labelings, above the cap of " + std::to_string(cap));
  }
  std::vector<Tuple> out;
  Tuple t(len, 1);
  for (;;) {
    if (row_class(p, side, t, n) == 0) out.push_back(t);
    int m = len - 1;
    while (m >= 0 && t[m] == n) t[m--] = 1;
    if (m < 0) break;
    ++t[m];
  }
  return out;
}

int delta(const Partition& p, const Tuple& tu, const Tuple& tl) {
  int top = 0;
  for (int v : tu) top = std::max(top, v);
  for (int v : tl) top = std::max(top, v);
  check_tuple(p, Side::Upper, tu, std::max(top, 1));
  check_tuple(p, Side::Lower, tl, std::max(top, 1));
  std::vector<int> value(p.block_count(), 0);
  auto feed = [&](Side side, const Tuple& t) {
    for (size_t pos = 0; pos < t.size(); ++pos) {
      int& v = value[row_block(p, side, static_cast<int>(pos))];
      if (v == 0) {
        v = t[pos];
      } else if (v != t[pos]) {
        return false;
      }
    }
    return true;
  };
  return feed(Side::Upper, tu) && feed(Side::Lower, tl) ? 1 : 0;
}

}  // namespace easycat
