#include "easycat/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "json.hpp"

#include "easycat/category.hpp"
#include "easycat/labeling.hpp"
#include "easycat/numerics.hpp"

namespace easycat {

namespace {

// ---------------------------------------------------------------------------
// Corpus assembly

void absorb(const Closure& closure, std::map<std::string, Partition>& seen) {
  for (std::size_t i = 0; i < closure.size(); ++i) {
    Partition member = closure.member(i);
    std::string key = member.key();
    seen.emplace(std::move(key), std::move(member));
  }
}

std::vector<Partition> closure_members(const Closure& closure) {
  std::map<std::string, Partition> seen;
  absorb(closure, seen);
  std::vector<Partition> out;
  out.reserve(seen.size());
  for (auto& [key, member] : seen) out.push_back(std::move(member));
  return out;
}

// Union of three saturated diagram sets: the singleton preset bounded at five
// points, the alternating-four-block preset bounded at six, and the closure
// of one crossing pairing bounded at four.  Key order puts small diagrams
// first, so striding keeps a spread of sizes.
const std::vector<Partition>& mixed_pool() {
  static const std::vector<Partition> pool = [] {
    std::map<std::string, Partition> seen;
    ClosureOptions opts;
    opts.max_points = 5;
    absorb(Closure(preset_generators("S_glob", 1, std::nullopt), opts), seen);
    opts.max_points = 6;
    absorb(Closure(preset_generators("Hp_loc", std::nullopt, std::nullopt), opts), seen);
    opts.max_points = 4;
    absorb(Closure({parse_partition("oA oB / oB oA")}, opts), seen);
    std::vector<Partition> out;
    out.reserve(seen.size());
    for (auto& [key, member] : seen) out.push_back(std::move(member));
    return out;
  }();
  return pool;
}

std::vector<Partition> stride_to(const std::vector<Partition>& pool, std::size_t cap) {
  if (pool.size() <= cap) return pool;
  const std::size_t step = (pool.size() + cap - 1) / cap;
  std::vector<Partition> out;
  out.reserve(cap);
  for (std::size_t i = 0; i < pool.size(); i += step) out.push_back(pool[i]);
  return out;
}

bool all_blocks_even(const Partition& p) {
  for (const Block& b : p.blocks()) {
    if (b.size() % 2 != 0) return false;
  }
  return true;
}

bool all_blocks_pairs(const Partition& p) {
  for (const Block& b : p.blocks()) {
    if (b.size() != 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_matrix(const CMatrix& m) {
  std::ostringstream out;
  out << std::setprecision(12) << '[';
  for (std::size_t r = 0; r < m.size(); ++r) {
    out << (r == 0 ? "[" : ", [");
    for (std::size_t c = 0; c < m[r].size(); ++c) {
      if (c != 0) out << ", ";
      const Cplx z = m[r][c];
      out << z.real();
      if (z.imag() != 0.0) out << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

void append_tuple(std::ostringstream& out, const Tuple& t) {
  out << '(';
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (m != 0) out << ", ";
    out << t[m];
  }
  out << ')';
}

// Text of the emitted relation matching a scanned instance.  Instances whose
// normal form was a duplicate (or held formally) are not in the emitted list;
// those come back as a structural description instead.
std::string instance_text(const Partition& p, int n, Family family, int d, int part, long long i,
                          long long j, const std::optional<Tuple>& gamma,
                          const std::optional<Tuple>& gamma_prime) {
  const std::vector<Relation> rels =
      family == Family::Gr ? emit_gr(p, n) : emit_sp_matrix(p, n, d);
  for (const Relation& r : rels) {
    const Provenance& o = r.origin;
    if (o.part == part && o.i == i && o.j == j && o.gamma == gamma &&
        o.gamma_prime == gamma_prime) {
      return format_relation(r);
    }
  }
  std::ostringstream out;
  out << family_name(family) << " part " << part << " classes (" << i << ", " << j << ")";
  if (gamma) {
    out << " upper labels ";
    append_tuple(out, *gamma);
  }
  if (gamma_prime) {
    out << " lower labels ";
    append_tuple(out, *gamma_prime);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Factorized relation scans

// Residual of one emitted relation recomputed from its provenance through the
// factorized class sums.
double gr_fast(const Partition& p, const Provenance& o, const CMatrix& m, int n) {
  switch (o.part) {
    case 1:
      return std::abs(sum_value(p, Side::Upper, o.i, *o.gamma, m, n, true) -
                      sum_value(p, Side::Lower, o.j, *o.gamma_prime, m, n, false));
    case 2:
      return std::abs(sum_value(p, Side::Upper, o.i, *o.gamma, m, n, true));
    case 3:
      return std::abs(sum_value(p, Side::Lower, o.j, *o.gamma_prime, m, n, false));
    default:
      throw std::logic_error("unreachable");
  }
}

double sp_fast(const Partition& p, const Provenance& o, const CMatrix& x, int n) {
  switch (o.part) {
    case 1:
      return std::abs(sum_value(p, Side::Upper, o.i, *o.gamma, x, n, true) -
                      sum_value(p, Side::Lower, o.i, *o.gamma_prime, x, n, true));
    case 2:
      return std::abs(sum_value(p, Side::Upper, o.i, *o.gamma, x, n, true));
    case 3:
      return std::abs(sum_value(p, Side::Lower, o.i, *o.gamma_prime, x, n, true));
    default:
      throw std::logic_error("unreachable");
  }
}

// Per-diagram data hoisted out of the element loop.
struct GrContext {
  Partition p;
  int n = 0;
  long long classes = 0;
  std::vector<Tuple> upper_rep, lower_rep;  // index class - 1
  std::vector<Tuple> upper_bad, lower_bad;  // inconsistent label tuples
};

GrContext gr_context(const Partition& p, int n) {
  GrContext ctx;
  ctx.p = p;
  ctx.n = n;
  ctx.classes = class_count(p, n);
  ctx.upper_rep.reserve(ctx.classes);
  ctx.lower_rep.reserve(ctx.classes);
  for (long long c = 1; c <= ctx.classes; ++c) {
    ctx.upper_rep.push_back(*class_representative(p, Side::Upper, c, n, n));
    ctx.lower_rep.push_back(*class_representative(p, Side::Lower, c, n, n));
  }
  ctx.upper_bad = enumerate_inconsistent(p, Side::Upper, n);
  ctx.lower_bad = enumerate_inconsistent(p, Side::Lower, n);
  return ctx;
}

struct SpContext {
  Partition p;
  int n = 0;
  int d = 1;
  long long classes = 0;
  std::vector<std::optional<Tuple>> upper_rep, lower_rep;  // least labels within [1, d]
  std::vector<Tuple> upper_bad, lower_bad;                 // inconsistent within [1, min(d, n)]
};

SpContext sp_context(const Partition& p, int n, int d) {
  if (d < 1) throw std::invalid_argument("column count must be at least 1");
  SpContext ctx;
  ctx.p = p;
  ctx.n = n;
  ctx.d = d;
  ctx.classes = class_count(p, n);
  const int bound = std::min(d, n);
  ctx.upper_rep.reserve(ctx.classes);
  ctx.lower_rep.reserve(ctx.classes);
  for (long long c = 1; c <= ctx.classes; ++c) {
    ctx.upper_rep.push_back(class_representative(p, Side::Upper, c, n, d));
    ctx.lower_rep.push_back(class_representative(p, Side::Lower, c, n, d));
  }
  ctx.upper_bad = enumerate_inconsistent(p, Side::Upper, bound);
  ctx.lower_bad = enumerate_inconsistent(p, Side::Lower, bound);
  return ctx;
}

// Shared accumulation state; `fail` captures the first violation.
struct Runner {
  SuiteResult result;
  double tol = 0.0;

  bool failed() const { return result.counterexample.has_value(); }

  void fail(const Partition& p, std::string element_text, std::string relation_text,
            double residual) {
    SuiteCounterexample ce;
    ce.partition = format_partition(p);
    ce.element = std::move(element_text);
    ce.relation = std::move(relation_text);
    ce.residual = residual;
    result.counterexample = std::move(ce);
  }
};

// Evaluates every default gr instance of the context diagram on m; returns
// false on the first residual above the tolerance.
bool scan_gr(Runner& run, const GrContext& ctx, const CMatrix& m, double& diagram_max) {
  auto check = [&](double res, int part, long long i, long long j, const Tuple* g,
                   const Tuple* gp) {
    ++run.result.checks;
    if (res > diagram_max) diagram_max = res;
    if (res > run.result.max_residual) run.result.max_residual = res;
    if (res <= run.tol) return true;
    run.fail(ctx.p, render_matrix(m),
             instance_text(ctx.p, ctx.n, Family::Gr, 1, part, i, j,
                           g ? std::optional<Tuple>(*g) : std::nullopt,
                           gp ? std::optional<Tuple>(*gp) : std::nullopt),
             res);
    return false;
  };
  for (long long i = 1; i <= ctx.classes; ++i) {
    const Tuple& gp = ctx.lower_rep[i - 1];
    for (long long j = 1; j <= ctx.classes; ++j) {
      const Tuple& g = ctx.upper_rep[j - 1];
      const Cplx lhs = sum_value(ctx.p, Side::Upper, i, g, m, ctx.n, true);
      const Cplx rhs = sum_value(ctx.p, Side::Lower, j, gp, m, ctx.n, false);
      if (!check(std::abs(lhs - rhs), 1, i, j, &g, &gp)) return false;
    }
  }
  for (long long i = 1; i <= ctx.classes; ++i) {
    for (const Tuple& g : ctx.upper_bad) {
      const double res = std::abs(sum_value(ctx.p, Side::Upper, i, g, m, ctx.n, true));
      if (!check(res, 2, i, 0, &g, nullptr)) return false;
    }
  }
  for (long long j = 1; j <= ctx.classes; ++j) {
    for (const Tuple& gp : ctx.lower_bad) {
      const double res = std::abs(sum_value(ctx.p, Side::Lower, j, gp, m, ctx.n, false));
      if (!check(res, 3, 0, j, nullptr, &gp)) return false;
    }
  }
  return true;
}

// Same for the coordinate family at an n x d rectangle.
bool scan_sp(Runner& run, const SpContext& ctx, const CMatrix& x, double& diagram_max) {
  auto check = [&](double res, int part, long long i, long long j, const Tuple* g,
                   const Tuple* gp) {
    ++run.result.checks;
    if (res > diagram_max) diagram_max = res;
    if (res > run.result.max_residual) run.result.max_residual = res;
    if (res <= run.tol) return true;
    run.fail(ctx.p, render_matrix(x),
             instance_text(ctx.p, ctx.n, Family::SpMatrix, ctx.d, part, i, j,
                           g ? std::optional<Tuple>(*g) : std::nullopt,
                           gp ? std::optional<Tuple>(*gp) : std::nullopt),
             res);
    return false;
  };
  for (long long j = 1; j <= ctx.classes; ++j) {
    if (!ctx.upper_rep[j - 1] || !ctx.lower_rep[j - 1]) continue;
    const Tuple& g = *ctx.upper_rep[j - 1];
    const Tuple& gp = *ctx.lower_rep[j - 1];
    for (long long i = 1; i <= ctx.classes; ++i) {
      const Cplx lhs = sum_value(ctx.p, Side::Upper, i, g, x, ctx.n, true);
      const Cplx rhs = sum_value(ctx.p, Side::Lower, i, gp, x, ctx.n, true);
      if (!check(std::abs(lhs - rhs), 1, i, j, &g, &gp)) return false;
    }
  }
  for (long long i = 1; i <= ctx.classes; ++i) {
    for (const Tuple& g : ctx.upper_bad) {
      const double res = std::abs(sum_value(ctx.p, Side::Upper, i, g, x, ctx.n, true));
      if (!check(res, 2, i, 0, &g, nullptr)) return false;
    }
    for (const Tuple& gp : ctx.lower_bad) {
      const double res = std::abs(sum_value(ctx.p, Side::Lower, i, gp, x, ctx.n, true));
      if (!check(res, 3, i, 0, nullptr, &gp)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Sampled formal-sum walks

std::vector<CMatrix> matrices_of(const std::vector<ConcreteElement>& elements) {
  std::vector<CMatrix> out;
  out.reserve(elements.size());
  for (const ConcreteElement& e : elements) out.push_back(e.matrix);
  return out;
}

CMatrix leading_columns(const CMatrix& m, int d) {
  CMatrix out(m.size(), std::vector<Cplx>(d));
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (int c = 0; c < d; ++c) out[r][c] = m[r][c];
  }
  return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  const std::size_t inner = b.size();
  CMatrix out(a.size(), std::vector<Cplx>(inner == 0 ? 0 : b[0].size()));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t k = 0; k < inner; ++k) {
      for (std::size_t c = 0; c < b[k].size(); ++c) out[r][c] += a[r][k] * b[k][c];
    }
  }
  return out;
}

CMatrix transposed(const CMatrix& a) {
  if (a.empty()) return {};
  CMatrix out(a[0].size(), std::vector<Cplx>(a.size()));
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a[r].size(); ++c) out[c][r] = a[r][c];
  }
  return out;
}

struct WalkSpec {
  Family family = Family::Gr;
  int d = 1;             // coordinate-family width
  double agree = 0.0;    // factorized vs formal agreement tolerance
  std::function<CMatrix(std::mt19937_64&)> draw;
};

// Re-evaluates `target` seeded (diagram, relation, element) triples through
// the explicit formal sums and cross-checks every value against the
// factorized path.
void sampled_walk(Runner& run, const std::vector<Partition>& corpus, const WalkSpec& spec, int n,
                  std::uint64_t seed, long long target) {
  if (run.failed() || corpus.empty()) return;
  std::mt19937_64 rng(seed ^ 0x5DEECE66DULL);
  std::vector<std::pair<const Partition*, std::vector<Relation>>> pool;
  std::set<std::string> chosen;
  for (int attempt = 0; attempt < 48 && pool.size() < 12; ++attempt) {
    const Partition& p = corpus[rng() % corpus.size()];
    if (!chosen.insert(p.key()).second) continue;
    std::vector<Relation> rels =
        spec.family == Family::Gr ? emit_gr(p, n) : emit_sp_matrix(p, n, spec.d);
    if (rels.empty() || rels.size() > 4000) continue;
    pool.emplace_back(&p, std::move(rels));
  }
  if (pool.empty()) return;
  for (long long walk = 0; walk < target; ++walk) {
    const auto& [p, rels] = pool[rng() % pool.size()];
    const Relation& rel = rels[rng() % rels.size()];
    const CMatrix m = spec.draw(rng);
    const double formal = evaluate_relation(rel, m);
    const double fast = spec.family == Family::Gr ? gr_fast(*p, rel.origin, m, n)
                                                  : sp_fast(*p, rel.origin, m, n);
    ++run.result.sampled_walks;
    if (formal > run.result.max_residual) run.result.max_residual = formal;
    if (formal > run.tol) {
      run.fail(*p, render_matrix(m), format_relation(rel), formal);
      return;
    }
    if (std::abs(formal - fast) > spec.agree) {
      run.fail(*p, render_matrix(m), "factorized/formal mismatch on " + format_relation(rel),
               std::abs(formal - fast));
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Suites

SuiteResult run_gr_suite(std::string name, int n, std::uint64_t seed,
                         const std::vector<Partition>& corpus,
                         const std::vector<CMatrix>& elements, double tol, WalkSpec spec,
                         long long walk_target) {
  Runner run;
  run.result.suite = std::move(name);
  run.result.n = n;
  run.result.seed = seed;
  run.tol = tol;
  for (const Partition& p : corpus) {
    const GrContext ctx = gr_context(p, n);
    double diagram_max = 0.0;
    bool ok = true;
    for (const CMatrix& m : elements) {
      if (!scan_gr(run, ctx, m, diagram_max)) {
        ok = false;
        break;
      }
    }
    run.result.detail.push_back({format_partition(p), diagram_max, 0.0, ok});
    if (!ok) return std::move(run.result);
  }
  sampled_walk(run, corpus, spec, n, seed, walk_target);
  run.result.pass = !run.failed();
  return std::move(run.result);
}

SuiteResult suite_permutations(int n, std::uint64_t seed) {
  WalkSpec spec;
  spec.draw = [n](std::mt19937_64& rng) {
    return sample_element(ElementClass::Permutation, n, rng).matrix;
  };
  return run_gr_suite("sN", n, seed, verification_corpus(),
                      matrices_of(all_elements(ElementClass::Permutation, n)), 0.0,
                      std::move(spec), 2000);
}

SuiteResult suite_signed(int n, std::uint64_t seed) {
  std::vector<CMatrix> elements;
  if (n == 2) {
    elements = matrices_of(all_elements(ElementClass::SignedPermutation, 2));
  } else {
    std::mt19937_64 rng(seed);
    elements.reserve(100);
    for (int t = 0; t < 100; ++t) {
      elements.push_back(sample_element(ElementClass::SignedPermutation, n, rng).matrix);
    }
  }
  WalkSpec spec;
  spec.draw = [n](std::mt19937_64& rng) {
    return sample_element(ElementClass::SignedPermutation, n, rng).matrix;
  };
  return run_gr_suite("hN", n, seed, even_block_corpus(), elements, 0.0, std::move(spec), 2000);
}

SuiteResult suite_rotations(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CMatrix> elements;
  elements.reserve(100);
  for (int t = 0; t < 100; ++t) {
    elements.push_back(sample_element(ElementClass::RotationSample, 2, rng).matrix);
  }
  WalkSpec spec;
  spec.agree = 1e-9;
  spec.draw = [](std::mt19937_64& r) {
    return sample_element(ElementClass::RotationSample, 2, r).matrix;
  };
  return run_gr_suite("rotations", 2, seed, pair_block_corpus(), elements, 1e-9, std::move(spec),
                      2000);
}

SuiteResult suite_columns(int n, std::uint64_t seed) {
  Runner run;
  run.result.suite = "spN";
  run.result.n = n;
  run.result.seed = seed;
  const std::vector<Partition>& corpus = verification_corpus();
  const std::vector<CMatrix> elements = matrices_of(all_elements(ElementClass::Permutation, n));
  std::vector<int> widths{1};
  if (n >= 2) widths.push_back(2);
  for (const Partition& p : corpus) {
    double diagram_max = 0.0;
    bool ok = true;
    for (const int d : widths) {
      const SpContext ctx = sp_context(p, n, d);
      for (const CMatrix& m : elements) {
        if (!scan_sp(run, ctx, leading_columns(m, d), diagram_max)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    run.result.detail.push_back({format_partition(p), diagram_max, 0.0, ok});
    if (!ok) return std::move(run.result);
  }
  for (const int d : widths) {
    WalkSpec spec;
    spec.family = Family::SpMatrix;
    spec.d = d;
    spec.draw = [n, d](std::mt19937_64& rng) {
      return leading_columns(sample_element(ElementClass::Permutation, n, rng).matrix, d);
    };
    sampled_walk(run, corpus, spec, n, seed + static_cast<std::uint64_t>(d), 1000);
    if (run.failed()) break;
  }
  run.result.pass = !run.failed();
  return std::move(run.result);
}

SuiteResult suite_coaction(std::uint64_t seed) {
  constexpr int kN = 3;
  Runner run;
  run.result.suite = "coaction-shadow";
  run.result.n = kN;
  run.result.seed = seed;

  struct ShadowCase {
    std::string label;
    ElementClass cls;
    std::vector<Partition> corpus;
    std::vector<std::array<SpContext, 2>> contexts;  // widths 1 and 2
  };
  ClosureOptions four;
  four.max_points = 4;
  std::vector<ShadowCase> cases;
  cases.push_back({"S_glob(1)", ElementClass::Permutation,
                   stride_to(closure_members(
                                 Closure(preset_generators("S_glob", 1, std::nullopt), four)),
                             60),
                   {}});
  cases.push_back({"H_loc(2,2)", ElementClass::SignedPermutation,
                   stride_to(closure_members(Closure(preset_generators("H_loc", 2, 2), four)),
                             60),
                   {}});
  for (ShadowCase& cs : cases) {
    cs.contexts.reserve(cs.corpus.size());
    for (const Partition& p : cs.corpus) {
      cs.contexts.push_back({sp_context(p, kN, 1), sp_context(p, kN, 2)});
    }
  }

  std::vector<std::vector<double>> per_diagram(cases.size());
  std::vector<std::vector<char>> touched(cases.size());
  for (std::size_t c = 0; c < cases.size(); ++c) {
    per_diagram[c].assign(cases[c].corpus.size(), 0.0);
    touched[c].assign(cases[c].corpus.size(), 0);
  }
  std::optional<std::pair<std::size_t, std::size_t>> failure_at;

  std::mt19937_64 rng(seed);
  for (int pair_idx = 0; pair_idx < 100 && !run.failed(); ++pair_idx) {
    for (std::size_t c = 0; c < cases.size() && !run.failed(); ++c) {
      ShadowCase& cs = cases[c];
      const CMatrix g = sample_element(cs.cls, kN, rng).matrix;
      const CMatrix h = sample_element(cs.cls, kN, rng).matrix;
      for (int d = 1; d <= 2 && !run.failed(); ++d) {
        const CMatrix x0 = leading_columns(h, d);
        const std::array<CMatrix, 3> variants{x0, matmul(g, x0), matmul(transposed(g), x0)};
        for (const CMatrix& x : variants) {
          for (std::size_t i = 0; i < cs.corpus.size(); ++i) {
            touched[c][i] = 1;
            if (!scan_sp(run, cs.contexts[i][d - 1], x, per_diagram[c][i])) {
              failure_at = {{c, i}};
              break;
            }
          }
          if (run.failed()) break;
        }
      }
    }
  }

  if (!run.failed()) {
    std::mt19937_64 wrng(seed ^ 0x9E3779B97F4A7C15ULL);
    std::map<std::tuple<std::size_t, std::size_t, int>, std::vector<Relation>> cache;
    const long long target = 2000;
    for (long long attempt = 0; attempt < 4 * target; ++attempt) {
      if (run.result.sampled_walks >= target || run.failed()) break;
      const std::size_t c = wrng() % cases.size();
      ShadowCase& cs = cases[c];
      const std::size_t i = wrng() % cs.corpus.size();
      const int d = 1 + static_cast<int>(wrng() % 2);
      auto [it, inserted] = cache.try_emplace(std::make_tuple(c, i, d));
      if (inserted) it->second = emit_sp_matrix(cs.corpus[i], kN, d);
      const std::vector<Relation>& rels = it->second;
      if (rels.empty()) continue;
      const CMatrix g = sample_element(cs.cls, kN, wrng).matrix;
      const CMatrix h = sample_element(cs.cls, kN, wrng).matrix;
      const CMatrix x0 = leading_columns(h, d);
      const int variant = static_cast<int>(wrng() % 3);
      const CMatrix x =
          variant == 0 ? x0 : variant == 1 ? matmul(g, x0) : matmul(transposed(g), x0);
      const Relation& rel = rels[wrng() % rels.size()];
      const double formal = evaluate_relation(rel, x);
      const double fast = sp_fast(cs.corpus[i], rel.origin, x, kN);
      ++run.result.sampled_walks;
      if (formal > run.result.max_residual) run.result.max_residual = formal;
      if (formal > run.tol) {
        run.fail(cs.corpus[i], render_matrix(x), format_relation(rel), formal);
        break;
      }
      if (std::abs(formal - fast) > 0.0) {
        run.fail(cs.corpus[i], render_matrix(x),
                 "factorized/formal mismatch on " + format_relation(rel),
                 std::abs(formal - fast));
        break;
      }
    }
  }

  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (std::size_t i = 0; i < cases[c].corpus.size(); ++i) {
      if (!touched[c][i]) continue;
      const bool here = failure_at && failure_at->first == c && failure_at->second == i;
      run.result.detail.push_back({cases[c].label + " " + format_partition(cases[c].corpus[i]),
                                   per_diagram[c][i], 0.0, !here});
    }
  }
  run.result.pass = !run.failed();
  return std::move(run.result);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public surface

const std::vector<Partition>& verification_corpus() {
  // Crossing diagrams are a small minority of the pool; stride them apart
  // from the rest so the corpus always keeps some of each.
  static const std::vector<Partition> corpus = [] {
    std::vector<Partition> plain, crossing;
    for (const Partition& p : mixed_pool()) {
      (is_noncrossing(p) ? plain : crossing).push_back(p);
    }
    std::vector<Partition> out = stride_to(plain, 360);
    const std::vector<Partition> extra = stride_to(crossing, 40);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  }();
  return corpus;
}

const std::vector<Partition>& even_block_corpus() {
  static const std::vector<Partition> corpus = [] {
    std::vector<Partition> kept;
    for (const Partition& p : mixed_pool()) {
      if (all_blocks_even(p)) kept.push_back(p);
    }
    return stride_to(kept, 150);
  }();
  return corpus;
}

const std::vector<Partition>& pair_block_corpus() {
  static const std::vector<Partition> corpus = [] {
    std::vector<Partition> kept;
    for (const Partition& p : mixed_pool()) {
      if (all_blocks_pairs(p)) kept.push_back(p);
    }
    return stride_to(kept, 150);
  }();
  return corpus;
}

SuiteResult run_suite(const std::string& suite, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("symbol count must be positive");
  if (suite == "sN") return suite_permutations(n, seed);
  if (suite == "hN") return suite_signed(n, seed);
  if (suite == "spN") return suite_columns(n, seed);
  if (suite == "rotations") {
    if (n != 2) throw std::invalid_argument("the rotation suite is specific to n = 2");
    return suite_rotations(seed);
  }
  if (suite == "coaction-shadow") {
    if (n != 3) throw std::invalid_argument("the coaction-shadow suite is specific to n = 3");
    return suite_coaction(seed);
  }
  throw std::invalid_argument("unknown suite '" + suite +
                              "' (expected sN, hN, spN, rotations or coaction-shadow)");
}

std::string suite_report_json(const SuiteResult& result) {
  nlohmann::json j{{"suite", result.suite},     {"n", result.n},
                   {"seed", result.seed},       {"checks", result.checks},
                   {"sampled_walks", result.sampled_walks},
                   {"max_residual", result.max_residual},
                   {"pass", result.pass}};
  if (result.counterexample) {
    const SuiteCounterexample& ce = *result.counterexample;
    j["counterexample"] = {{"partition", ce.partition},
                           {"element", ce.element},
                           {"relation", ce.relation},
                           {"residual", ce.residual}};
  } else {
    j["counterexample"] = nullptr;
  }
  nlohmann::json detail = nlohmann::json::array();
  for (const SuiteCheck& c : result.detail) {
    detail.push_back({{"case", c.case_name},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"match", c.match}});
  }
  j["detail"] = std::move(detail);
  return j.dump(2);
}

double relation_defect(const Partition& p, const CMatrix& m, int n) {
  Runner run;
  run.tol = std::numeric_limits<double>::infinity();
  const GrContext ctx = gr_context(p, n);
  double defect = 0.0;
  scan_gr(run, ctx, m, defect);
  return defect;
}

double column_defect(const Partition& p, const CMatrix& x, int n, int d) {
  Runner run;
  run.tol = std::numeric_limits<double>::infinity();
  const SpContext ctx = sp_context(p, n, d);
  double defect = 0.0;
  scan_sp(run, ctx, x, defect);
  return defect;
}

SeparationReport example_separation() {
  using Columns = std::vector<std::vector<long long>>;
  const auto snapshot = [](const CMatrix& m, int width) {
    Columns cols(width, std::vector<long long>(m.size()));
    for (std::size_t r = 0; r < m.size(); ++r) {
      for (int c = 0; c < width; ++c) cols[c][r] = std::llround(m[r][c].real());
    }
    return cols;
  };
  std::set<Columns> signed_one, signed_two, global_one, global_two;
  for (const ConcreteElement& e : all_elements(ElementClass::SignedPermutation, 2)) {
    signed_one.insert(snapshot(e.matrix, 1));
    signed_two.insert(snapshot(e.matrix, 2));
  }
  for (const ConcreteElement& e : all_elements(ElementClass::GlobalSignPermutation, 2)) {
    global_one.insert(snapshot(e.matrix, 1));
    global_two.insert(snapshot(e.matrix, 2));
  }
  SeparationReport report;
  report.first_columns_equal = signed_one == global_one;
  report.two_columns_differ = signed_two != global_two;
  const Columns separator{{1, 0}, {0, -1}};  // first basis vector, negated second
  report.separator_found =
      signed_two.count(separator) != 0 && global_two.count(separator) == 0;
  report.separator = "[[1, 0], [0, -1]]";
  return report;
}

}  // namespace easycat
