// Command-line front end for the diagram calculus library: diagram
// operations, row-labeling decomposition, relation emission, closure and
// blockstability queries, transfer matrices, verification suites, and the
// two worked projective-lattice cases.
//
// Exit codes: 0 success, 1 a requested check failed, 2 usage error.
// Diagnostics go to stderr; stdout is byte-deterministic for fixed flags
// (the --seed flag is part of the input).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "easycat/category.hpp"
#include "easycat/labeling.hpp"
#include "easycat/numerics.hpp"
#include "easycat/partition.hpp"
#include "easycat/relations.hpp"
#include "easycat/verify.hpp"

using namespace easycat;

namespace {

constexpr int kUnset = std::numeric_limits<int>::min();

std::optional<int> opt_of(int v) {
  if (v == kUnset) return std::nullopt;
  return v;
}

Style style_of(const std::string& format) {
  if (format == "json") return Style::Json;
  if (format == "latex") return Style::LatexPicture;
  return Style::Text;
}

nlohmann::json partition_json(const Partition& p) {
  return nlohmann::json::parse(format_partition(p, Style::Json));
}

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(t[i]);
  }
  out += ")";
  return out;
}

// JSON generator files hold an array whose elements are either partition
// objects ({"upper":[{"colour":"o","block":0},...],"lower":[...]}) or
// strings in the text grammar.
Partition partition_from_json(const nlohmann::json& item) {
  if (item.is_string()) return parse_partition(item.get<std::string>());
  if (!item.is_object() || !item.contains("upper") || !item.contains("lower")) {
    throw std::invalid_argument(
        "partition JSON must be a string or {\"upper\":[...],\"lower\":[...]}");
  }
  auto row = [](const nlohmann::json& arr, std::vector<Colour>& colours,
                std::vector<int>& blocks) {
    if (!arr.is_array()) throw std::invalid_argument("partition rows must be arrays");
    for (const nlohmann::json& pt : arr) {
      const std::string c = pt.at("colour").get<std::string>();
      if (c != "o" && c != "*") {
        throw std::invalid_argument("colour must be \"o\" or \"*\", got \"" + c + "\"");
      }
      colours.push_back(c == "o" ? Colour::White : Colour::Black);
      blocks.push_back(pt.at("block").get<int>());
    }
  };
  std::vector<Colour> uc, lc;
  std::vector<int> ub, lb;
  row(item.at("upper"), uc, ub);
  row(item.at("lower"), lc, lb);
  return Partition(std::move(uc), std::move(lc), ub, lb);
}

std::vector<Partition> load_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open generator file '" + path + "'");
  nlohmann::json doc;
  in >> doc;
  if (!doc.is_array()) throw std::invalid_argument("generator file must hold a JSON array");
  std::vector<Partition> out;
  out.reserve(doc.size());
  for (const nlohmann::json& item : doc) out.push_back(partition_from_json(item));
  return out;
}

struct PresetSpec {
  std::string name;
  std::optional<int> k, l;
};

// Accepts "NAME" or "NAME(a)" or "NAME(a,b)".
PresetSpec split_preset(const std::string& text) {
  PresetSpec spec;
  const std::size_t open = text.find('(');
  if (open == std::string::npos) {
    spec.name = text;
    return spec;
  }
  if (text.empty() || text.back() != ')') {
    throw std::invalid_argument("preset '" + text + "' is missing the closing ')'");
  }
  spec.name = text.substr(0, open);
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  inner.erase(std::remove(inner.begin(), inner.end(), ' '), inner.end());
  if (inner.empty()) return spec;
  std::stringstream pieces(inner);
  std::string piece;
  std::vector<int> params;
  while (std::getline(pieces, piece, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(piece, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != piece.size()) {
      throw std::invalid_argument("preset parameter '" + piece + "' is not an integer");
    }
    params.push_back(value);
  }
  if (params.size() > 2) throw std::invalid_argument("presets take at most two parameters");
  if (!params.empty()) spec.k = params[0];
  if (params.size() == 2) spec.l = params[1];
  return spec;
}

std::vector<Partition> preset_from_spec(const std::string& text, std::optional<int> k,
                                        std::optional<int> l) {
  PresetSpec spec = split_preset(text);
  if ((spec.k && k) || (spec.l && l)) {
    throw std::invalid_argument("preset parameters given both inline and as flags");
  }
  if (k) spec.k = k;
  if (l) spec.l = l;
  return preset_generators(spec.name, spec.k, spec.l);
}

std::vector<Partition> resolve_generators(const std::string& preset, const std::string& gens_file,
                                          std::optional<int> k, std::optional<int> l) {
  if (preset.empty() == gens_file.empty()) {
    throw std::invalid_argument("give exactly one of --preset NAME or --gens FILE");
  }
  if (!gens_file.empty()) {
    if (k || l) throw std::invalid_argument("--k/--l apply to presets only");
    return load_generator_file(gens_file);
  }
  return preset_from_spec(preset, k, l);
}

// ---------------------------------------------------------------------------
// Verbs

int run_op(const std::string& kind, const std::string& p_text, const std::string& q_text,
           bool has_q, const std::string& dir_name, const std::string& format) {
  const Style style = style_of(format);
  const Partition p = parse_partition(p_text);
  const bool needs_q = kind == "tensor" || kind == "compose";
  if (needs_q && !has_q) {
    throw std::invalid_argument("op " + kind + " needs two partitions");
  }
  if (!needs_q && has_q) {
    throw std::invalid_argument("op " + kind + " takes a single partition");
  }
  if (kind == "involute") {
    std::cout << format_partition(involution(p), style) << '\n';
    return 0;
  }
  if (kind == "rotate") {
    if (dir_name.empty()) {
      throw std::invalid_argument(
          "op rotate needs --dir "
          "upper-left-down|lower-left-up|upper-right-down|lower-right-up");
    }
    const std::optional<Rotation> dir = rotation_from_name(dir_name);
    if (!dir) throw std::invalid_argument("unknown rotation '" + dir_name + "'");
    std::cout << format_partition(rotate(p, *dir), style) << '\n';
    return 0;
  }
  const Partition q = parse_partition(q_text);
  if (kind == "tensor") {
    std::cout << format_partition(tensor(p, q), style) << '\n';
    return 0;
  }
  // compose P Q stacks Q on top of P (Q's lower row glues to P's upper row).
  const ComposeResult result = compose(p, q);
  if (result.loops > 0) std::cerr << "loops erased: " << result.loops << '\n';
  if (style == Style::Json) {
    const nlohmann::json out{{"partition", partition_json(result.partition)},
                             {"loops", result.loops}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << format_partition(result.partition, style) << '\n';
  }
  return 0;
}

int run_decompose(const std::string& p_text, int n, bool has_list, long long list_class,
                  const std::string& format) {
  const Partition p = parse_partition(p_text);
  const long long classes = class_count(p, n);
  const int tb = p.through_block_count();
  auto tuples_of = [&](Side side) {
    return list_class == 0 ? enumerate_inconsistent(p, side, n)
                           : enumerate_class(p, side, list_class, n);
  };
  if (format == "json") {
    nlohmann::json out{
        {"partition", format_partition(p)}, {"n", n}, {"classes", classes}, {"tb", tb}};
    if (has_list) {
      out["class"] = list_class;
      out["upper"] = tuples_of(Side::Upper);
      out["lower"] = tuples_of(Side::Lower);
    }
    std::cout << out.dump() << '\n';
    return 0;
  }
  std::cout << "classes = " << classes << '\n';
  std::cout << "tb = " << tb << '\n';
  if (has_list) {
    for (const Side side : {Side::Upper, Side::Lower}) {
      std::cout << (side == Side::Upper ? "upper" : "lower") << " class " << list_class << ":\n";
      for (const Tuple& t : tuples_of(side)) std::cout << "  " << tuple_text(t) << '\n';
    }
  }
  return 0;
}

int run_relations(const std::string& p_text, int n, bool has_d, int d, const std::string& family,
                  bool exhaustive, const std::string& format) {
  const Partition p = parse_partition(p_text);
  std::vector<Relation> rels;
  if (family == "gr") {
    if (has_d) throw std::invalid_argument("--d applies to the sp family only");
    rels = emit_gr(p, n, exhaustive);
  } else if (has_d) {
    rels = emit_sp_matrix(p, n, d, exhaustive);
  } else {
    rels = emit_sp_vector(p, n, exhaustive);
  }
  std::cout << format_relations(rels, style_of(format));
  return 0;
}

int run_closure(const std::vector<Partition>& gens, int max_points, const std::string& format) {
  ClosureOptions opts;
  opts.max_points = max_points;
  const Closure c(gens, opts);
  const std::vector<std::uint32_t>& order = c.sorted_order();
  if (format == "json") {
    if (order.empty()) {
      std::cout << "[]\n";
      return 0;
    }
    std::cout << "[\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::cout << format_partition(c.member(order[i]), Style::Json)
                << (i + 1 < order.size() ? ",\n" : "\n");
    }
    std::cout << "]\n";
  } else {
    for (const std::uint32_t idx : order) std::cout << format_partition(c.member(idx)) << '\n';
  }
  return 0;
}

int run_blockstable(const std::vector<Partition>& gens, int max_points,
                    const std::string& format) {
  ClosureOptions opts;
  opts.max_points = max_points;
  const Closure c(gens, opts);
  const StabilityResult verdict = is_blockstable_up_to(c);
  if (format == "json") {
    nlohmann::json out{{"bound", max_points}, {"stable", verdict.stable}};
    if (verdict.witness) {
      out["witness"] = {{"member", format_partition(verdict.witness->member)},
                        {"block", verdict.witness->block_id},
                        {"restricted", format_partition(verdict.witness->restricted)}};
    } else {
      out["witness"] = nullptr;
    }
    std::cout << out.dump() << '\n';
  } else if (verdict.stable) {
    std::cout << "stable up to " << max_points << " points\n";
  } else {
    const BlockWitness& w = *verdict.witness;
    std::cout << "unstable: member " << format_partition(w.member) << " block " << w.block_id
              << " restricts to " << format_partition(w.restricted)
              << " which is not a member within " << max_points << " points\n";
  }
  return 0;
}

int run_tp(const std::string& p_text, int n, bool want_rank, const std::string& format) {
  const Partition p = parse_partition(p_text);
  if (want_rank) {
    const int rank = tp_rank(p, n);
    if (format == "json") {
      const nlohmann::json out{{"partition", format_partition(p)}, {"n", n}, {"rank", rank}};
      std::cout << out.dump() << '\n';
    } else {
      std::cout << rank << '\n';
    }
    return 0;
  }
  const TpMatrix m = tp_matrix(p, n);
  if (format == "json") {
    nlohmann::json ones = nlohmann::json::array();
    for (const auto& [row, col] : m.ones) ones.push_back({row, col});  // 0-based
    const nlohmann::json out{{"partition", format_partition(p)},
                             {"n", n},
                             {"rows", m.rows},
                             {"cols", m.cols},
                             {"ones", ones}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << matrix_market(m);
  }
  return 0;
}

int run_verify(const std::string& suite, int n, std::uint64_t seed, bool json_report) {
  const SuiteResult r = run_suite(suite, n, seed);
  if (json_report) {
    std::cout << suite_report_json(r) << '\n';
  } else {
    std::cout << "suite " << r.suite << " (n = " << r.n << ", seed = " << r.seed << ")\n";
    std::cout << "diagrams: " << r.detail.size() << '\n';
    std::cout << "checks: " << r.checks << '\n';
    std::cout << "sampled walks: " << r.sampled_walks << '\n';
    std::cout << "max residual: " << r.max_residual << '\n';
    if (r.counterexample) {
      const SuiteCounterexample& ce = *r.counterexample;
      std::cout << "counterexample partition: " << ce.partition << '\n';
      std::cout << "counterexample element: " << ce.element << '\n';
      std::cout << "counterexample relation: " << ce.relation << '\n';
      std::cout << "counterexample residual: " << ce.residual << '\n';
    }
    std::cout << "result: " << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  return r.pass ? 0 : 1;
}

int run_fusion(const std::string& case_name, const std::string& format) {
  const ProjectiveLattice lat = fusion_lattice(case_name);
  const std::vector<long long> ranks = rank_pp_table(lat);
  const long long dim = coeff_space_dim(lat);
  const ColinearityReport bound = colinearity_bound(case_name);
  const long long expected = case_name == "b3plus" ? 14 : 10;
  const bool match = dim == expected;
  std::string word;
  for (const Colour c : lat.word) word += colour_char(c);
  if (format == "json") {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
      nodes.push_back({{"partition", format_partition(lat.nodes[i])}, {"rank_pp", ranks[i]}});
    }
    const nlohmann::json out{
        {"case", case_name},
        {"n", lat.n},
        {"word", word},
        {"nodes", nodes},
        {"classes", lat.classes},
        {"colinearity",
         {{"bound", bound.upper_bound}, {"reference", bound.reference_dim}}},
        {"dim", dim},
        {"expected", expected},
        {"match", match}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "case " << case_name << " (n = " << lat.n << ", word " << word << ")\n";
    std::cout << "nodes:\n";
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
      std::cout << "  " << format_partition(lat.nodes[i]) << "  rank_pp " << ranks[i] << '\n';
    }
    std::cout << "equivalence classes:";
    for (const std::vector<std::size_t>& cls : lat.classes) {
      std::cout << " [";
      for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i != 0) std::cout << ' ';
        std::cout << cls[i];
      }
      std::cout << ']';
    }
    std::cout << '\n';
    std::cout << "colinearity bound = " << bound.upper_bound << " (reference "
              << bound.reference_dim << ")\n";
    std::cout << "dim = " << dim << " (expected " << expected << ") "
              << (match ? "OK" : "MISMATCH") << '\n';
  }
  return match ? 0 : 1;
}

int run_presets(const std::string& name, std::optional<int> k, std::optional<int> l,
                const std::string& format) {
  if (name.empty()) {
    if (k || l) throw std::invalid_argument("--k/--l need a preset name");
    const std::vector<std::string> names = preset_names();
    if (format == "json") {
      std::cout << nlohmann::json(names).dump() << '\n';
    } else {
      for (const std::string& preset : names) std::cout << preset << '\n';
    }
    return 0;
  }
  const std::vector<Partition> gens = preset_from_spec(name, k, l);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const Partition& g : gens) arr.push_back(partition_json(g));
    std::cout << arr.dump() << '\n';
  } else {
    for (const Partition& g : gens) std::cout << format_partition(g) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "diagram calculus workbench: two-coloured partition operations, induced relations,\n"
      "category closures, transfer matrices and verification suites"};
  app.require_subcommand(1);

  long long label_cap_flag = 0;
  app.add_option("--label-cap", label_cap_flag,
                 "override the tuple-enumeration guard (EASYCAT_LABEL_CAP)")
      ->check(CLI::PositiveNumber);

  auto* op_cmd = app.add_subcommand("op", "apply one diagram operation");
  std::string op_kind, op_p, op_q, op_dir, op_format = "text";
  op_cmd->add_option("kind", op_kind, "tensor|compose|involute|rotate")
      ->required()
      ->check(CLI::IsMember({"tensor", "compose", "involute", "rotate"}));
  op_cmd->add_option("p", op_p, "first partition (text grammar)")->required();
  op_cmd->add_option("q", op_q, "second partition (tensor right factor / compose top)");
  op_cmd->add_option("--dir", op_dir,
                     "rotation direction: upper-left-down|lower-left-up|"
                     "upper-right-down|lower-right-up");
  op_cmd->add_option("--format", op_format, "text|json|latex (default text)")
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* dec_cmd = app.add_subcommand("decompose", "row-labeling class decomposition");
  std::string dec_p, dec_format = "text";
  int dec_n = 0;
  long long dec_list = -1;
  dec_cmd->add_option("p", dec_p, "partition (text grammar)")->required();
  dec_cmd->add_option("--n", dec_n, "symbol count")->required()->check(CLI::PositiveNumber);
  CLI::Option* dec_list_opt =
      dec_cmd->add_option("--list", dec_list, "print the members of this class (0 = inconsistent)");
  dec_cmd->add_option("--format", dec_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* rel_cmd = app.add_subcommand("relations", "emit the relation family induced by a diagram");
  std::string rel_p, rel_family, rel_format = "text";
  int rel_n = 0, rel_d = 0;
  bool rel_exhaustive = false;
  rel_cmd->add_option("p", rel_p, "partition (text grammar)")->required();
  rel_cmd->add_option("--n", rel_n, "symbol count")->required()->check(CLI::PositiveNumber);
  CLI::Option* rel_d_opt =
      rel_cmd->add_option("--d", rel_d, "column count (sp family; omit for the vector case)")
          ->check(CLI::PositiveNumber);
  rel_cmd->add_option("--family", rel_family, "gr|sp")
      ->required()
      ->check(CLI::IsMember({"gr", "sp"}));
  rel_cmd->add_flag("--exhaustive", rel_exhaustive,
                    "all label choices instead of least representatives");
  rel_cmd->add_option("--format", rel_format, "text|json|latex (default text)")
      ->check(CLI::IsMember({"text", "json", "latex"}));

  auto* clo_cmd = app.add_subcommand("closure", "saturate generators and dump the members");
  std::string clo_preset, clo_gens, clo_format = "text";
  int clo_k = kUnset, clo_l = kUnset, clo_max = 6;
  clo_cmd->add_option("--preset", clo_preset, "named generator family, e.g. H_loc(2,2)");
  clo_cmd->add_option("--gens", clo_gens, "JSON file with an array of partitions");
  clo_cmd->add_option("--k", clo_k, "first preset parameter");
  clo_cmd->add_option("--l", clo_l, "second preset parameter");
  clo_cmd->add_option("--max-points", clo_max, "point bound (default 6)")
      ->check(CLI::Range(2, 30));
  clo_cmd->add_option("--format", clo_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* bs_cmd = app.add_subcommand("blockstable", "block stability of a closure");
  std::string bs_preset, bs_gens, bs_format = "text";
  int bs_k = kUnset, bs_l = kUnset, bs_max = 6;
  bs_cmd->add_option("--preset", bs_preset, "named generator family, e.g. H_loc(2,2)");
  bs_cmd->add_option("--gens", bs_gens, "JSON file with an array of partitions");
  bs_cmd->add_option("--k", bs_k, "first preset parameter");
  bs_cmd->add_option("--l", bs_l, "second preset parameter");
  bs_cmd->add_option("--max-points", bs_max, "point bound (default 6)")->check(CLI::Range(2, 30));
  bs_cmd->add_option("--format", bs_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* tp_cmd = app.add_subcommand("tp", "transfer matrix of a diagram");
  std::string tp_p, tp_format = "text";
  int tp_n = 0;
  bool tp_want_rank = false;
  tp_cmd->add_option("p", tp_p, "partition (text grammar)")->required();
  tp_cmd->add_option("--n", tp_n, "symbol count")->required()->check(CLI::PositiveNumber);
  tp_cmd->add_flag("--rank", tp_want_rank, "print the exact rank instead of the matrix");
  tp_cmd->add_option("--format", tp_format, "text|json (default text; text is Matrix Market)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* ver_cmd = app.add_subcommand("verify", "run a numeric verification suite");
  std::string ver_suite, ver_report, ver_format = "text";
  int ver_n = 0;
  std::uint64_t ver_seed = 1;
  ver_cmd->add_option("--suite", ver_suite, "sN|hN|spN|rotations|coaction-shadow")
      ->required()
      ->check(CLI::IsMember({"sN", "hN", "spN", "rotations", "coaction-shadow"}));
  ver_cmd->add_option("--n", ver_n, "symbol count")->required()->check(CLI::PositiveNumber);
  ver_cmd->add_option("--seed", ver_seed, "sample seed (default 1)");
  ver_cmd->add_option("--report", ver_report, "json: per-check report")
      ->check(CLI::IsMember({"json"}));
  ver_cmd->add_option("--format", ver_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* fus_cmd = app.add_subcommand("fusion", "worked projective-lattice cases");
  std::string fus_case, fus_format = "text";
  fus_cmd->add_option("--case", fus_case, "b3plus|o2plus")
      ->required()
      ->check(CLI::IsMember({"b3plus", "o2plus"}));
  fus_cmd->add_option("--format", fus_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  auto* pre_cmd = app.add_subcommand("presets", "list named generator families");
  std::string pre_name, pre_format = "text";
  int pre_k = kUnset, pre_l = kUnset;
  pre_cmd->add_option("name", pre_name, "show this preset's generators");
  pre_cmd->add_option("--k", pre_k, "first preset parameter");
  pre_cmd->add_option("--l", pre_l, "second preset parameter");
  pre_cmd->add_option("--format", pre_format, "text|json (default text)")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (label_cap_flag > 0) {
    setenv("EASYCAT_LABEL_CAP", std::to_string(label_cap_flag).c_str(), 1);
  }

  try {
    if (op_cmd->parsed()) {
      return run_op(op_kind, op_p, op_q, op_cmd->count("q") > 0, op_dir, op_format);
    }
    if (dec_cmd->parsed()) {
      return run_decompose(dec_p, dec_n, dec_list_opt->count() > 0, dec_list, dec_format);
    }
    if (rel_cmd->parsed()) {
      return run_relations(rel_p, rel_n, rel_d_opt->count() > 0, rel_d, rel_family,
                           rel_exhaustive, rel_format);
    }
    if (clo_cmd->parsed()) {
      return run_closure(resolve_generators(clo_preset, clo_gens, opt_of(clo_k), opt_of(clo_l)),
                         clo_max, clo_format);
    }
    if (bs_cmd->parsed()) {
      return run_blockstable(resolve_generators(bs_preset, bs_gens, opt_of(bs_k), opt_of(bs_l)),
                             bs_max, bs_format);
    }
    if (tp_cmd->parsed()) return run_tp(tp_p, tp_n, tp_want_rank, tp_format);
    if (ver_cmd->parsed()) {
      return run_verify(ver_suite, ver_n, ver_seed, ver_report == "json" || ver_format == "json");
    }
    if (fus_cmd->parsed()) return run_fusion(fus_case, fus_format);
    if (pre_cmd->parsed()) return run_presets(pre_name, opt_of(pre_k), opt_of(pre_l), pre_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
