#include "easycat/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace easycat {

namespace {

long long checked_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 62) / std::max<long long>(base, 1))
      throw std::overflow_error("power " + std::to_string(base) + "^" + std::to_string(exp) +
                                " exceeds the supported range");
    out *= base;
  }
  return out;
}

long long tuple_index(const Tuple& t, int n) {
  long long idx = 0, weight = 1;
  for (int v : t) {
    idx += static_cast<long long>(v - 1) * weight;
    weight *= n;
  }
  return idx;
}

void check_square(const CMatrix& g) {
  if (g.empty()) throw std::invalid_argument("matrix must be nonempty");
  for (const auto& row : g)
    if (row.size() != g.size())
      throw std::invalid_argument("matrix must be square, got a row of length " +
                                  std::to_string(row.size()) + " in a matrix of " +
                                  std::to_string(g.size()));
}

std::vector<int> checked_perm(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation image list must have length " + std::to_string(n));
  std::vector<bool> seen(n, false);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v - 1])
      throw std::invalid_argument("image list is not a permutation of 1.." + std::to_string(n));
    seen[v - 1] = true;
  }
  return perm;
}

CMatrix zeros(int n) { return CMatrix(n, std::vector<Cplx>(n, Cplx(0.0, 0.0))); }

// Fisher-Yates with the raw generator, so the order does not depend on the
// standard library's distribution internals.
std::vector<int> random_images(int n, std::mt19937_64& rng) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  for (int i = n - 1; i > 0; --i)
    std::swap(images[i], images[rng() % static_cast<std::uint64_t>(i + 1)]);
  return images;
}

}  // namespace

// ---------------------------------------------------------------------------
// Transfer matrices

TpMatrix tp_matrix(const Partition& p, int n, long long entry_guard) {
  if (n < 1) throw std::invalid_argument("symbol bound must be at least 1");
  TpMatrix out;
  out.cols = checked_pow(n, p.upper_size());
  out.rows = checked_pow(n, p.lower_size());
  if (Integer(out.rows) * Integer(out.cols) > Integer(entry_guard))
    throw std::overflow_error("matrix of virtual size " + std::to_string(out.rows) + "x" +
                              std::to_string(out.cols) + " exceeds the entry guard of " +
                              std::to_string(entry_guard));
  const long long classes = class_count(p, n);
  for (long long i = 1; i <= classes; ++i) {
    const std::vector<Tuple> upper = enumerate_class(p, Side::Upper, i, n);
    const std::vector<Tuple> lower = enumerate_class(p, Side::Lower, i, n);
    for (const Tuple& tl : lower) {
      const long long r = tuple_index(tl, n);
      for (const Tuple& tu : upper) out.ones.emplace_back(r, tuple_index(tu, n));
    }
  }
  std::sort(out.ones.begin(), out.ones.end());
  return out;
}

ExactMatrix tp_dense(const TpMatrix& m, long long dense_guard) {
  if (Integer(m.rows) * Integer(m.cols) > Integer(dense_guard))
    throw std::overflow_error("dense form of size " + std::to_string(m.rows) + "x" +
                              std::to_string(m.cols) + " exceeds the guard of " +
                              std::to_string(dense_guard));
  ExactMatrix out(static_cast<int>(m.rows), static_cast<int>(m.cols));
  for (const auto& [r, c] : m.ones) out.at(static_cast<int>(r), static_cast<int>(c)) = 1;
  return out;
}

int tp_rank(const Partition& p, int n) { return rank(tp_dense(tp_matrix(p, n))); }

std::string matrix_market(const TpMatrix& m) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate integer general\n";
  os << m.rows << " " << m.cols << " " << m.ones.size() << "\n";
  for (const auto& [r, c] : m.ones) os << r + 1 << " " << c + 1 << " 1\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Concrete elements

ConcreteElement make_element(ElementClass cls, int n, const ElementParams& params) {
  if (n < 1) throw std::invalid_argument("element size must be at least 1");
  ConcreteElement out;
  out.cls = cls;
  switch (cls) {
    case ElementClass::Permutation: {
      const std::vector<int> perm = checked_perm(params.perm, n);
      out.matrix = zeros(n);
      for (int j = 0; j < n; ++j) out.matrix[perm[j] - 1][j] = 1.0;
      return out;
    }
    case ElementClass::SignedPermutation: {
      const std::vector<int> perm = checked_perm(params.perm, n);
      if (static_cast<int>(params.signs.size()) != n)
        throw std::invalid_argument("need one sign per column");
      out.matrix = zeros(n);
      for (int j = 0; j < n; ++j) {
        if (params.signs[j] != 1 && params.signs[j] != -1)
          throw std::invalid_argument("signs must be +1 or -1");
        out.matrix[perm[j] - 1][j] = params.signs[j];
      }
      return out;
    }
    case ElementClass::GlobalSignPermutation: {
      const std::vector<int> perm = checked_perm(params.perm, n);
      if (params.global_sign != 1 && params.global_sign != -1)
        throw std::invalid_argument("global sign must be +1 or -1");
      out.matrix = zeros(n);
      for (int j = 0; j < n; ++j) out.matrix[perm[j] - 1][j] = params.global_sign;
      return out;
    }
    case ElementClass::RotationSample: {
      if (n != 2) throw std::invalid_argument("rotation samples are 2x2 only");
      out.matrix = {{Cplx(std::cos(params.angle)), Cplx(-std::sin(params.angle))},
                    {Cplx(std::sin(params.angle)), Cplx(std::cos(params.angle))}};
      return out;
    }
    case ElementClass::Custom: {
      check_square(params.custom);
      if (static_cast<int>(params.custom.size()) != n)
        throw std::invalid_argument("custom matrix must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
      out.matrix = params.custom;
      return out;
    }
  }
  throw std::invalid_argument("unknown element class");
}

std::vector<ConcreteElement> all_elements(ElementClass cls, int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("exhaustive enumeration supports sizes 1..8, got " +
                                std::to_string(n));
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(images);
  } while (std::next_permutation(images.begin(), images.end()));

  std::vector<ConcreteElement> out;
  switch (cls) {
    case ElementClass::Permutation:
      for (const auto& perm : perms)
        out.push_back(make_element(cls, n, {.perm = perm}));
      return out;
    case ElementClass::SignedPermutation:
      for (const auto& perm : perms)
        for (int mask = 0; mask < (1 << n); ++mask) {
          std::vector<int> signs(n);
          for (int j = 0; j < n; ++j) signs[j] = (mask >> j & 1) ? -1 : 1;
          out.push_back(make_element(cls, n, {.perm = perm, .signs = signs}));
        }
      return out;
    case ElementClass::GlobalSignPermutation:
      for (int sign : {1, -1})
        for (const auto& perm : perms)
          out.push_back(make_element(cls, n, {.perm = perm, .global_sign = sign}));
      return out;
    default:
      throw std::invalid_argument("class is not finitely enumerable");
  }
}

ConcreteElement sample_element(ElementClass cls, int n, std::mt19937_64& rng) {
  switch (cls) {
    case ElementClass::Permutation:
      return make_element(cls, n, {.perm = random_images(n, rng)});
    case ElementClass::SignedPermutation: {
      ElementParams params{.perm = random_images(n, rng)};
      params.signs.resize(n);
      for (int j = 0; j < n; ++j) params.signs[j] = (rng() & 1) ? -1 : 1;
      return make_element(cls, n, params);
    }
    case ElementClass::GlobalSignPermutation: {
      ElementParams params{.perm = random_images(n, rng)};
      params.global_sign = (rng() & 1) ? -1 : 1;
      return make_element(cls, n, params);
    }
    case ElementClass::RotationSample: {
      const double angle =
          6.283185307179586 * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
      return make_element(cls, 2, {.angle = angle});
    }
    default:
      throw std::invalid_argument("class cannot be sampled");
  }
}

// ---------------------------------------------------------------------------
// Intertwiner residual

double check_intertwiner(const Partition& p, const CMatrix& g, long long entry_guard) {
  check_square(g);
  const int n = static_cast<int>(g.size());
  const int k = p.upper_size(), l = p.lower_size();
  const long long cols = checked_pow(n, k), rows = checked_pow(n, l);
  if (Integer(rows) * Integer(cols) > Integer(entry_guard))
    throw std::overflow_error("residual scan of virtual size " + std::to_string(rows) + "x" +
                              std::to_string(cols) + " exceeds the entry guard");

  // One factor per point: the plain matrix on a white point, its entrywise
  // conjugate on a black one.
  auto factor_up = [&](int row, int col, int m) {
    const Cplx v = g[row][col];
    return p.upper_colour(m) == Colour::Black ? std::conj(v) : v;
  };
  auto factor_low = [&](int row, int col, int m) {
    const Cplx v = g[row][col];
    return p.lower_colour(m) == Colour::Black ? std::conj(v) : v;
  };

  const std::vector<Block>& blocks = p.blocks();
  std::vector<int> t(k), tl(l);
  double residual = 0.0;
  for (long long ci = 0; ci < cols; ++ci) {
    long long rest = ci;
    for (int m = 0; m < k; ++m) {
      t[m] = static_cast<int>(rest % n);
      rest /= n;
    }
    for (long long ri = 0; ri < rows; ++ri) {
      rest = ri;
      for (int m = 0; m < l; ++m) {
        tl[m] = static_cast<int>(rest % n);
        rest /= n;
      }

      // Left product: the sparse matrix applied after the upper tensor
      // factor.  Per block, the summation variable is pinned by the lower
      // labels when the block reaches the lower row.
      Cplx left(1.0, 0.0);
      for (const Block& b : blocks) {
        if (left == Cplx(0.0, 0.0)) break;
        if (!b.lower.empty()) {
          const int v = tl[b.lower[0]];
          bool constant = true;
          for (int pos : b.lower)
            if (tl[pos] != v) constant = false;
          if (!constant) {
            left = 0.0;
            break;
          }
          for (int pos : b.upper) left *= factor_up(v, t[pos], pos);
        } else {
          Cplx sum(0.0, 0.0);
          for (int v = 0; v < n; ++v) {
            Cplx prod(1.0, 0.0);
            for (int pos : b.upper) prod *= factor_up(v, t[pos], pos);
            sum += prod;
          }
          left *= sum;
        }
      }

      // Right product: the lower tensor factor applied after the sparse
      // matrix; now the upper labels pin the summation variable.
      Cplx right(1.0, 0.0);
      for (const Block& b : blocks) {
        if (right == Cplx(0.0, 0.0)) break;
        if (!b.upper.empty()) {
          const int v = t[b.upper[0]];
          bool constant = true;
          for (int pos : b.upper)
            if (t[pos] != v) constant = false;
          if (!constant) {
            right = 0.0;
            break;
          }
          for (int pos : b.lower) right *= factor_low(tl[pos], v, pos);
        } else {
          Cplx sum(0.0, 0.0);
          for (int v = 0; v < n; ++v) {
            Cplx prod(1.0, 0.0);
            for (int pos : b.lower) prod *= factor_low(tl[pos], v, pos);
            sum += prod;
          }
          right *= sum;
        }
      }

      residual = std::max(residual, std::abs(left - right));
    }
  }
  return residual;
}

// ---------------------------------------------------------------------------
// Projective lattice

ProjectiveLattice projective_lattice(const Closure& c, const std::vector<Colour>& word, int n) {
  if (n < 1) throw std::invalid_argument("symbol bound must be at least 1");
  if (c.max_points() < 2 * static_cast<int>(word.size()))
    throw std::invalid_argument("closure bound " + std::to_string(c.max_points()) +
                                " is too small for a word of length " +
                                std::to_string(word.size()));
  ProjectiveLattice lat;
  lat.word = word;
  lat.n = n;

  for (std::size_t i = 0; i < c.size(); ++i) {
    Partition p = c.member(i);
    if (p.upper_colours() != word || p.lower_colours() != word) continue;
    if (!(involution(p) == p)) continue;
    if (!(compose(p, p).partition == p)) continue;
    lat.nodes.push_back(std::move(p));
  }
  std::sort(lat.nodes.begin(), lat.nodes.end());

  const std::size_t count = lat.nodes.size();
  lat.strictly_below.assign(count, std::vector<bool>(count, false));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (a == b) continue;
      const Partition& q = lat.nodes[a];
      const Partition& p = lat.nodes[b];
      const bool fwd = compose(q, p).partition == q;
      const bool bwd = compose(p, q).partition == q;
      if (fwd != bwd)
        throw std::runtime_error("dominance disagrees between the two composition orders for " +
                                 format_partition(q) + " under " + format_partition(p));
      lat.strictly_below[a][b] = fwd;
    }
  }

  // Unitary equivalence: r* r and r r* land on two nodes that represent the
  // same sector, for every member r living on the word.
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < count; ++i) index[lat.nodes[i].key()] = i;
  std::vector<std::size_t> root(count);
  std::iota(root.begin(), root.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    Partition r = c.member(i);
    if (r.upper_colours() != word || r.lower_colours() != word) continue;
    const Partition down = compose(involution(r), r).partition;
    const Partition up = compose(r, involution(r)).partition;
    auto it_down = index.find(down.key());
    auto it_up = index.find(up.key());
    if (it_down == index.end() || it_up == index.end())
      throw std::runtime_error("member " + format_partition(r) +
                               " folds onto a diagram outside the node set");
    root[find(it_down->second)] = find(it_up->second);
  }
  std::map<std::size_t, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < count; ++i) grouped[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> classes;
  for (auto& [_, members] : grouped) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  lat.classes = std::move(classes);
  return lat;
}

std::vector<long long> rank_pp_table(const ProjectiveLattice& lat) {
  const std::size_t count = lat.nodes.size();
  std::vector<long long> table(count, -1);
  std::vector<bool> in_progress(count, false);
  auto compute = [&](auto&& self, std::size_t i) -> long long {
    if (table[i] >= 0) return table[i];
    if (in_progress[i])
      throw std::runtime_error("dominance contains a cycle through " +
                               format_partition(lat.nodes[i]));
    in_progress[i] = true;
    long long value = checked_pow(lat.n, lat.nodes[i].through_block_count());
    for (std::size_t q = 0; q < count; ++q)
      if (lat.strictly_below[q][i]) value -= self(self, q);
    in_progress[i] = false;
    if (value < 0)
      throw std::runtime_error("negative sector rank at " + format_partition(lat.nodes[i]) +
                               ": the node set cannot be a valid lattice");
    return table[i] = value;
  };
  for (std::size_t i = 0; i < count; ++i) compute(compute, i);
  return table;
}

long long coeff_space_dim(const ProjectiveLattice& lat) {
  const std::vector<long long> table = rank_pp_table(lat);
  long long dim = 0;
  for (const auto& cls : lat.classes) {
    const long long rep = table[cls.front()];
    for (std::size_t i : cls)
      if (table[i] != rep)
        throw std::runtime_error("equivalent nodes " + format_partition(lat.nodes[cls.front()]) +
                                 " and " + format_partition(lat.nodes[i]) +
                                 " disagree on sector rank");
    dim += rep * rep;
  }
  return dim;
}

int subspace_join_rank(const std::vector<ExactMatrix>& mats) {
  if (mats.empty()) return 0;
  ExactMatrix joined = mats.front();
  for (std::size_t i = 1; i < mats.size(); ++i) joined = hconcat(joined, mats[i]);
  return rank(joined);
}

// ---------------------------------------------------------------------------
// Colinearity bounds

namespace {

// Letters of the 2x2 corner in a fixed order.
const std::array<const char*, 4> kLetters = {"11", "12", "21", "22"};

int letter(int r, int c) { return 2 * (r - 1) + (c - 1); }  // r, c in {1, 2}

}  // namespace

ColinearityCase colinearity_case(const std::string& name) {
  ColinearityCase out;
  if (name == "o2plus") {
    // Basis: the unit, then the 16 two-letter words.
    out.basis.push_back("1");
    for (const char* a : kLetters)
      for (const char* b : kLetters)
        out.basis.push_back(std::string("o") + a + "o" + b);
    auto word = [](int a, int b) { return 1 + 4 * a + b; };
    // Column sums o(i,k1) o(i,k2) and row sums o(k1,i) o(k2,i) equal the
    // unit on the diagonal and vanish otherwise.
    for (int k1 = 1; k1 <= 2; ++k1)
      for (int k2 = 1; k2 <= 2; ++k2) {
        std::vector<long long> col(out.basis.size(), 0), row(out.basis.size(), 0);
        for (int i = 1; i <= 2; ++i) {
          col[word(letter(i, k1), letter(i, k2))] += 1;
          row[word(letter(k1, i), letter(k2, i))] += 1;
        }
        if (k1 == k2) {
          col[0] -= 1;
          row[0] -= 1;
        }
        out.relation_rows.push_back(std::move(col));
        out.relation_rows.push_back(std::move(row));
      }
    out.dropped = {"o21o11", "o12o11", "o22o21", "o22o12"};
    return out;
  }
  if (name == "b3plus") {
    // Basis: unit, the four letters, then the 16 two-letter words.
    out.basis.push_back("1");
    for (const char* a : kLetters) out.basis.push_back(std::string("b") + a);
    for (const char* a : kLetters)
      for (const char* b : kLetters)
        out.basis.push_back(std::string("b") + a + "b" + b);
    auto one = [](int a) { return 1 + a; };
    auto word = [](int a, int b) { return 5 + 4 * a + b; };
    const int b11 = letter(1, 1), b12 = letter(1, 2), b21 = letter(2, 1), b22 = letter(2, 2);
    std::vector<long long> row(out.basis.size(), 0);

    // 2 b21 b22 + 2 b11 b12 + 1 + b11 b22 + b21 b12 - b11 - b12 - b21 - b22 = 0
    row.assign(out.basis.size(), 0);
    row[word(b21, b22)] = 2;
    row[word(b11, b12)] = 2;
    row[0] = 1;
    row[word(b11, b22)] = 1;
    row[word(b21, b12)] = 1;
    row[one(b11)] = row[one(b12)] = row[one(b21)] = row[one(b22)] = -1;
    out.relation_rows.push_back(row);

    // 2 b12 b22 + 2 b11 b21 + 1 + b11 b22 + b12 b21 - b11 - b12 - b21 - b22 = 0
    row.assign(out.basis.size(), 0);
    row[word(b12, b22)] = 2;
    row[word(b11, b21)] = 2;
    row[0] = 1;
    row[word(b11, b22)] = 1;
    row[word(b12, b21)] = 1;
    row[one(b11)] = row[one(b12)] = row[one(b21)] = row[one(b22)] = -1;
    out.relation_rows.push_back(row);

    // 2 b11 b11 + 2 b12 b12 - 2 b11 - 2 b12 + 2 b11 b12 = 0
    row.assign(out.basis.size(), 0);
    row[word(b11, b11)] = 2;
    row[word(b12, b12)] = 2;
    row[one(b11)] = row[one(b12)] = -2;
    row[word(b11, b12)] = 2;
    out.relation_rows.push_back(row);

    // 2 b22 b22 + 2 b21 b21 - 2 b22 - 2 b21 + 2 b21 b22 = 0
    row.assign(out.basis.size(), 0);
    row[word(b22, b22)] = 2;
    row[word(b21, b21)] = 2;
    row[one(b22)] = row[one(b21)] = -2;
    row[word(b21, b22)] = 2;
    out.relation_rows.push_back(row);

    out.dropped = {"b12b11", "b21b11", "b22b21", "b22b12"};
    return out;
  }
  throw std::invalid_argument("unknown case '" + name + "': expected o2plus or b3plus");
}

Closure fusion_closure(const std::string& name, int max_points) {
  if (name == "o2plus")
    return Closure({pair_lower(Colour::White, Colour::White)}, {.max_points = max_points});
  if (name == "b3plus")
    return Closure({pair_lower(Colour::White, Colour::White), lower_singleton(Colour::White)},
                   {.max_points = max_points});
  throw std::invalid_argument("unknown case '" + name + "': expected o2plus or b3plus");
}

ProjectiveLattice fusion_lattice(const std::string& name) {
  const int n = name == "o2plus" ? 2 : 3;
  return projective_lattice(fusion_closure(name), {Colour::White, Colour::White}, n);
}

ColinearityReport colinearity_bound(const std::string& name, bool assume_colinear) {
  const ColinearityCase data = colinearity_case(name);
  ColinearityReport report;
  report.reference_dim = coeff_space_dim(fusion_lattice(name));

  std::vector<bool> keep(data.basis.size(), true);
  if (assume_colinear) {
    for (const std::string& gone : data.dropped) {
      const auto it = std::find(data.basis.begin(), data.basis.end(), gone);
      if (it == data.basis.end()) throw std::logic_error("dropped word missing from basis");
      keep[it - data.basis.begin()] = false;
    }
  }
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) columns.push_back(i);
  report.kept = static_cast<long long>(columns.size());

  // A relation is usable only when it avoids every dropped word: a word that
  // is merely proportional to a kept one enters with an unknown scalar.
  std::vector<const std::vector<long long>*> usable;
  for (const auto& r : data.relation_rows) {
    bool clean = true;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (!keep[i] && r[i] != 0) clean = false;
    if (clean) usable.push_back(&r);
  }
  ExactMatrix rel(static_cast<int>(usable.size()), static_cast<int>(columns.size()));
  for (std::size_t r = 0; r < usable.size(); ++r)
    for (std::size_t c = 0; c < columns.size(); ++c)
      rel.at(static_cast<int>(r), static_cast<int>(c)) = (*usable[r])[columns[c]];
  report.relation_rank = rank(rel);
  report.upper_bound = report.kept - report.relation_rank;
  return report;
}

}  // namespace easycat
