#include "easycat/relations.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace easycat {

namespace {

Colour point_colour(const Partition& p, Side side, int pos) {
  return side == Side::Upper ? p.upper_colour(pos) : p.lower_colour(pos);
}

int side_length(const Partition& p, Side side) {
  return side == Side::Upper ? p.upper_size() : p.lower_size();
}

// Members of a class whose symbols stay within [1, bound], in order.
std::vector<Tuple> class_members_bounded(const Partition& p, Side side, long long cls, int n,
                                         int bound) {
  std::vector<Tuple> all = enumerate_class(p, side, cls, n);
  if (bound >= n) return all;
  std::vector<Tuple> out;
  for (Tuple& t : all) {
    if (std::all_of(t.begin(), t.end(), [&](int v) { return v <= bound; })) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

// Sort for stable output, drop formal identities, then drop repeats.
void finalize(std::vector<Relation>& rels) {
  std::sort(rels.begin(), rels.end(), [](const Relation& a, const Relation& b) {
    const Provenance&x = a.origin, &y = b.origin;
    return std::tie(x.part, x.i, x.j, x.gamma, x.gamma_prime) <
           std::tie(y.part, y.i, y.j, y.gamma, y.gamma_prime);
  });
  std::vector<Relation> kept;
  std::set<FormalSum> seen;
  for (Relation& r : rels) {
    FormalSum nf = normal_form(r);
    if (nf.empty()) continue;
    if (seen.insert(std::move(nf)).second) kept.push_back(std::move(r));
  }
  rels = std::move(kept);
}

Provenance make_origin(const Partition& p, Family family, int part, long long i, long long j,
                       std::optional<Tuple> gamma, std::optional<Tuple> gamma_prime) {
  return {format_partition(p), family, part, i, j, std::move(gamma), std::move(gamma_prime)};
}

}  // namespace

FormalSum class_sum(const Partition& p, Side side, long long cls, const Tuple& labels,
                    SymbolKind kind, bool summed_is_row, int n) {
  if (static_cast<int>(labels.size()) != side_length(p, side)) {
    throw std::invalid_argument("label tuple has " + std::to_string(labels.size()) +
                                " entries, row has " + std::to_string(side_length(p, side)));
  }
  FormalSum sum;
  for (const Tuple& t : enumerate_class(p, side, cls, n)) {
    Monomial mono;
    mono.reserve(t.size());
    for (size_t m = 0; m < t.size(); ++m) {
      int row = summed_is_row ? t[m] : labels[m];
      int col = summed_is_row ? labels[m] : t[m];
      mono.push_back({kind, row, col, point_colour(p, side, static_cast<int>(m)) == Colour::Black});
    }
    sum[std::move(mono)] += 1;
  }
  return sum;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Gr:
      return "gr";
    case Family::SpMatrix:
      return "sp_matrix";
    case Family::SpVector:
      return "sp_vector";
  }
  throw std::logic_error("unreachable");
}

FormalSum normal_form(const Relation& r) {
  FormalSum diff = r.lhs;
  for (const auto& [mono, coef] : r.rhs) {
    auto it = diff.try_emplace(mono, 0).first;
    if ((it->second -= coef) == 0) diff.erase(it);
  }
  if (!diff.empty() && diff.begin()->second < 0) {
    for (auto& [mono, coef] : diff) coef = -coef;
  }
  return diff;
}

std::vector<Relation> emit_gr(const Partition& p, int n, bool exhaustive) {
  const long long r = class_count(p, n);
  std::vector<Relation> out;
  for (long long i = 1; i <= r; ++i) {
    std::vector<Tuple> gamma_primes =
        exhaustive ? enumerate_class(p, Side::Lower, i, n)
                   : std::vector<Tuple>{*class_representative(p, Side::Lower, i, n, n)};
    for (long long j = 1; j <= r; ++j) {
      std::vector<Tuple> gammas =
          exhaustive ? enumerate_class(p, Side::Upper, j, n)
                     : std::vector<Tuple>{*class_representative(p, Side::Upper, j, n, n)};
      for (const Tuple& gamma : gammas) {
        FormalSum lhs = class_sum(p, Side::Upper, i, gamma, SymbolKind::U, true, n);
        for (const Tuple& gp : gamma_primes) {
          FormalSum rhs = class_sum(p, Side::Lower, j, gp, SymbolKind::U, false, n);
          out.push_back({lhs, std::move(rhs), make_origin(p, Family::Gr, 1, i, j, gamma, gp)});
        }
      }
    }
  }
  for (long long i = 1; i <= r; ++i) {
    for (const Tuple& gamma : enumerate_inconsistent(p, Side::Upper, n)) {
      out.push_back({class_sum(p, Side::Upper, i, gamma, SymbolKind::U, true, n),
                     {},
                     make_origin(p, Family::Gr, 2, i, 0, gamma, std::nullopt)});
    }
  }
  for (long long j = 1; j <= r; ++j) {
    for (const Tuple& gp : enumerate_inconsistent(p, Side::Lower, n)) {
      out.push_back({class_sum(p, Side::Lower, j, gp, SymbolKind::U, false, n),
                     {},
                     make_origin(p, Family::Gr, 3, 0, j, std::nullopt, gp)});
    }
  }
  finalize(out);
  return out;
}

std::vector<Relation> emit_sp_matrix(const Partition& p, int n, int d, bool exhaustive) {
  if (d < 1) throw std::invalid_argument("column count must be at least 1");
  const long long r = class_count(p, n);
  const int bound = std::min(d, n);
  std::vector<Relation> out;
  for (long long j = 1; j <= r; ++j) {
    std::vector<Tuple> gammas, gamma_primes;
    if (exhaustive) {
      gammas = class_members_bounded(p, Side::Upper, j, n, bound);
      gamma_primes = class_members_bounded(p, Side::Lower, j, n, bound);
    } else {
      auto g = class_representative(p, Side::Upper, j, n, d);
      auto gp = class_representative(p, Side::Lower, j, n, d);
      if (g) gammas.push_back(*g);
      if (gp) gamma_primes.push_back(*gp);
    }
    if (gammas.empty() || gamma_primes.empty()) continue;  // class j has no labels within [1, d]
    for (long long i = 1; i <= r; ++i) {
      for (const Tuple& gamma : gammas) {
        FormalSum lhs = class_sum(p, Side::Upper, i, gamma, SymbolKind::X, true, n);
        for (const Tuple& gp : gamma_primes) {
          FormalSum rhs = class_sum(p, Side::Lower, i, gp, SymbolKind::X, true, n);
          out.push_back(
              {lhs, std::move(rhs), make_origin(p, Family::SpMatrix, 1, i, j, gamma, gp)});
        }
      }
    }
  }
  for (long long i = 1; i <= r; ++i) {
    for (const Tuple& gamma : enumerate_inconsistent(p, Side::Upper, bound)) {
      out.push_back({class_sum(p, Side::Upper, i, gamma, SymbolKind::X, true, n),
                     {},
                     make_origin(p, Family::SpMatrix, 2, i, 0, gamma, std::nullopt)});
    }
    for (const Tuple& gp : enumerate_inconsistent(p, Side::Lower, bound)) {
      out.push_back({class_sum(p, Side::Lower, i, gp, SymbolKind::X, true, n),
                     {},
                     make_origin(p, Family::SpMatrix, 3, i, 0, std::nullopt, gp)});
    }
  }
  finalize(out);
  return out;
}

std::vector<Relation> emit_sp_vector(const Partition& p, int n, bool exhaustive) {
  std::vector<Relation> out = emit_sp_matrix(p, n, 1, exhaustive);
  for (Relation& r : out) r.origin.family = Family::SpVector;
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string monomial_text(const Monomial& mono, bool vector_display) {
  std::string out;
  for (const Symbol& s : mono) {
    out += (s.kind == SymbolKind::U) ? 'u' : 'x';
    out += '(';
    out += std::to_string(s.row);
    if (!vector_display) {
      out += ',';
      out += std::to_string(s.col);
    }
    out += ')';
    if (s.star) out += '*';
  }
  return out;
}

std::string monomial_latex(const Monomial& mono, bool vector_display) {
  std::string out;
  for (const Symbol& s : mono) {
    out += (s.kind == SymbolKind::U) ? 'u' : 'x';
    out += "_{";
    out += std::to_string(s.row);
    if (!vector_display) {
      out += ',';
      out += std::to_string(s.col);
    }
    out += '}';
    if (s.star) out += "^*";
  }
  return out;
}

std::string sum_text(const FormalSum& sum, bool vector_display, bool latex) {
  if (sum.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coef] : sum) {
    if (first) {
      if (coef < 0) out += '-';
      first = false;
    } else {
      out += (coef < 0) ? " - " : " + ";
    }
    long long mag = coef < 0 ? -coef : coef;
    std::string body = latex ? monomial_latex(mono, vector_display)
                             : monomial_text(mono, vector_display);
    if (body.empty()) body = "1";
    if (mag != 1) {
      out += std::to_string(mag);
      if (body != "1") out += body;
    } else {
      out += body;
    }
  }
  return out;
}

nlohmann::json sum_json(const FormalSum& sum) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coef] : sum) {
    nlohmann::json factors = nlohmann::json::array();
    for (const Symbol& s : mono) {
      factors.push_back({{"kind", s.kind == SymbolKind::U ? "u" : "x"},
                         {"row", s.row},
                         {"col", s.col},
                         {"star", s.star}});
    }
    terms.push_back({{"coef", coef}, {"mono", std::move(factors)}});
  }
  return terms;
}

nlohmann::json relation_json(const Relation& r) {
  nlohmann::json prov{{"partition", r.origin.partition},
                      {"family", family_name(r.origin.family)},
                      {"part", r.origin.part},
                      {"i", r.origin.i},
                      {"j", r.origin.j}};
  prov["gamma"] = r.origin.gamma ? nlohmann::json(*r.origin.gamma) : nlohmann::json();
  prov["gamma_prime"] =
      r.origin.gamma_prime ? nlohmann::json(*r.origin.gamma_prime) : nlohmann::json();
  return {{"lhs", sum_json(r.lhs)}, {"rhs", sum_json(r.rhs)}, {"provenance", std::move(prov)}};
}

}  // namespace

std::string format_relation(const Relation& r, Style style) {
  const bool vec = r.origin.family == Family::SpVector;
  switch (style) {
    case Style::Text:
      return sum_text(r.lhs, vec, false) + " = " + sum_text(r.rhs, vec, false);
    case Style::Json:
      return relation_json(r).dump();
    case Style::LatexPicture:
      return sum_text(r.lhs, vec, true) + " &= " + sum_text(r.rhs, vec, true) + " \\\\";
  }
  throw std::logic_error("unreachable");
}

std::string format_relations(const std::vector<Relation>& rels, Style style) {
  switch (style) {
    case Style::Text: {
      std::string out;
      for (const Relation& r : rels) {
        out += format_relation(r, Style::Text);
        out += '\n';
      }
      return out;
    }
    case Style::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const Relation& r : rels) arr.push_back(relation_json(r));
      return arr.dump() + "\n";
    }
    case Style::LatexPicture: {
      std::string out = "\\begin{align*}\n";
      for (const Relation& r : rels) {
        out += format_relation(r, Style::LatexPicture);
        out += '\n';
      }
      out += "\\end{align*}\n";
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Numeric evaluation

namespace {

Cplx entry_at(const CMatrix& m, int row, int col, bool star) {
  if (row < 1 || static_cast<size_t>(row) > m.size() || col < 1 ||
      static_cast<size_t>(col) > m[row - 1].size()) {
    throw std::out_of_range("matrix entry (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside the given matrix");
  }
  Cplx v = m[row - 1][col - 1];
  return star ? std::conj(v) : v;
}

Cplx sum_of(const FormalSum& sum, const CMatrix& m) {
  Cplx total = 0.0;
  for (const auto& [mono, coef] : sum) {
    Cplx prod = 1.0;
    for (const Symbol& s : mono) prod *= entry_at(m, s.row, s.col, s.star);
    total += static_cast<double>(coef) * prod;
  }
  return total;
}

}  // namespace

double evaluate_relation(const Relation& r, const CMatrix& m) {
  return std::abs(sum_of(r.lhs, m) - sum_of(r.rhs, m));
}

Cplx sum_value(const Partition& p, Side side, long long cls, const Tuple& labels,
               const CMatrix& m, int n, bool summed_is_row) {
  if (static_cast<int>(labels.size()) != side_length(p, side)) {
    throw std::invalid_argument("label tuple has " + std::to_string(labels.size()) +
                                " entries, row has " + std::to_string(side_length(p, side)));
  }
  std::vector<int> fixed = class_labels(p, cls, n);
  Cplx total = 1.0;
  const auto blocks = p.blocks();
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
    const std::vector<int>& pts = side == Side::Upper ? blocks[b].upper : blocks[b].lower;
    if (pts.empty()) continue;
    auto factor = [&](int v) {
      Cplx prod = 1.0;
      for (int pos : pts) {
        bool star = point_colour(p, side, pos) == Colour::Black;
        prod *= summed_is_row ? entry_at(m, v, labels[pos], star)
                              : entry_at(m, labels[pos], v, star);
      }
      return prod;
    };
    if (fixed[b] > 0) {
      total *= factor(fixed[b]);
    } else {
      Cplx acc = 0.0;
      for (int v = 1; v <= n; ++v) acc += factor(v);
      total *= acc;
    }
  }
  return total;
}

}  // namespace easycat
