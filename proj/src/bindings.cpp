// Python module wrapping the main library operations: partition parsing and
// the four diagram operations, row-labeling queries, relation emission as
// rendered text, closure membership and blockstability, transfer-matrix
// ranks, the verification suites, and the worked fusion cases.
//
// The surface stays deliberately thin: partitions cross the boundary as a
// bound class, anything structured beyond that travels as text, JSON, or
// plain lists, so the Python side never depends on internal layouts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "easycat/category.hpp"
#include "easycat/labeling.hpp"
#include "easycat/numerics.hpp"
#include "easycat/partition.hpp"
#include "easycat/relations.hpp"
#include "easycat/verify.hpp"

namespace py = pybind11;
using namespace easycat;

namespace {

Side side_of(const std::string& s) {
  if (s == "upper") return Side::Upper;
  if (s == "lower") return Side::Lower;
  throw std::invalid_argument("side must be 'upper' or 'lower', got '" + s + "'");
}

std::vector<std::string> texts(const std::vector<Relation>& rels) {
  std::vector<std::string> out;
  out.reserve(rels.size());
  for (const Relation& r : rels) out.push_back(format_relation(r));
  return out;
}

Closure make_closure(const std::string& preset, int max_points, std::optional<int> k,
                     std::optional<int> l) {
  ClosureOptions opts;
  opts.max_points = max_points;
  return Closure(preset_generators(preset, k, l), opts);
}

}  // namespace

PYBIND11_MODULE(easycat, m) {
  m.doc() =
      "Diagram calculus for two-coloured set partitions: operations, induced "
      "relations, category closures, transfer matrices and verification suites.";

  py::class_<Partition>(m, "Partition")
      .def(py::init([](const std::string& text) { return parse_partition(text); }),
           py::arg("text"), "Parse the text grammar, e.g. '- / oA *A'.")
      .def("upper_size", &Partition::upper_size)
      .def("lower_size", &Partition::lower_size)
      .def("points", &Partition::points)
      .def("through_blocks", &Partition::through_block_count)
      .def("is_noncrossing", [](const Partition& p) { return is_noncrossing(p); })
      .def("to_json", [](const Partition& p) { return format_partition(p, Style::Json); })
      .def("__str__", [](const Partition& p) { return format_partition(p); })
      .def("__repr__",
           [](const Partition& p) { return "Partition(\"" + format_partition(p) + "\")"; })
      .def(
          "__eq__", [](const Partition& a, const Partition& b) { return a.key() == b.key(); },
          py::is_operator())
      .def("__hash__", [](const Partition& p) { return py::hash(py::str(p.key())); });

  m.def("parse", &parse_partition, py::arg("text"), "Alias for Partition(text).");

  // diagram operations
  m.def("tensor", &tensor, py::arg("p"), py::arg("q"), "Horizontal concatenation p (x) q.");
  m.def("involute", &involution, py::arg("p"), "Reflection across the horizontal axis.");
  m.def(
      "compose",
      [](const Partition& p, const Partition& q) {
        const ComposeResult r = compose(p, q);
        return std::make_pair(r.partition, r.loops);
      },
      py::arg("p"), py::arg("q"),
      "Stack q on top of p (q's lower row glues to p's upper row); returns "
      "(partition, erased_loops).");
  m.def(
      "rotate",
      [](const Partition& p, const std::string& direction) {
        const std::optional<Rotation> dir = rotation_from_name(direction);
        if (!dir) throw std::invalid_argument("unknown rotation '" + direction + "'");
        return rotate(p, *dir);
      },
      py::arg("p"), py::arg("direction"),
      "direction: upper-left-down | lower-left-up | upper-right-down | lower-right-up");

  // row labeling
  m.def(
      "class_count", [](const Partition& p, int n) { return class_count(p, n); }, py::arg("p"),
      py::arg("n"));
  m.def(
      "enumerate_class",
      [](const Partition& p, const std::string& side, long long i, int n) {
        return enumerate_class(p, side_of(side), i, n);
      },
      py::arg("p"), py::arg("side"), py::arg("i"), py::arg("n"),
      "All row labelings of class i (1-based), sorted.");
  m.def(
      "enumerate_inconsistent",
      [](const Partition& p, const std::string& side, int n) {
        return enumerate_inconsistent(p, side_of(side), n);
      },
      py::arg("p"), py::arg("side"), py::arg("n"), "Class-0 labelings, sorted.");
  m.def(
      "delta",
      [](const Partition& p, const std::vector<int>& tu, const std::vector<int>& tl) {
        return delta(p, tu, tl);
      },
      py::arg("p"), py::arg("upper"), py::arg("lower"),
      "1 when the joint labeling is constant on every block, else 0.");

  // induced relations, rendered as text
  m.def(
      "relations_gr",
      [](const Partition& p, int n, bool exhaustive) { return texts(emit_gr(p, n, exhaustive)); },
      py::arg("p"), py::arg("n"), py::arg("exhaustive") = false);
  m.def(
      "relations_sp",
      [](const Partition& p, int n, std::optional<int> d, bool exhaustive) {
        return texts(d ? emit_sp_matrix(p, n, *d, exhaustive) : emit_sp_vector(p, n, exhaustive));
      },
      py::arg("p"), py::arg("n"), py::arg("d") = std::nullopt, py::arg("exhaustive") = false,
      "With d: the d-column family; without: the single-vector family.");

  // categories
  m.def("preset_names", &preset_names);
  m.def(
      "closure_members",
      [](const std::string& preset, int max_points, std::optional<int> k, std::optional<int> l) {
        const Closure c = make_closure(preset, max_points, k, l);
        std::vector<std::string> out;
        for (const std::uint32_t idx : c.sorted_order()) {
          out.push_back(format_partition(c.member(idx)));
        }
        return out;
      },
      py::arg("preset"), py::arg("max_points") = 6, py::arg("k") = std::nullopt,
      py::arg("l") = std::nullopt, "Members of the saturated closure, in canonical order.");
  m.def(
      "blockstable",
      [](const std::string& preset, int max_points, std::optional<int> k, std::optional<int> l) {
        const Closure c = make_closure(preset, max_points, k, l);
        const StabilityResult v = is_blockstable_up_to(c);
        py::dict out;
        out["stable"] = v.stable;
        if (v.witness) {
          py::dict w;
          w["member"] = format_partition(v.witness->member);
          w["block"] = v.witness->block_id;
          w["restricted"] = format_partition(v.witness->restricted);
          out["witness"] = w;
        } else {
          out["witness"] = py::none();
        }
        return out;
      },
      py::arg("preset"), py::arg("max_points") = 6, py::arg("k") = std::nullopt,
      py::arg("l") = std::nullopt);

  // transfer matrices
  m.def(
      "tp_rank", [](const Partition& p, int n) { return tp_rank(p, n); }, py::arg("p"),
      py::arg("n"), "Exact rank of T_p; equals n^tb(p).");
  m.def(
      "matrix_market_text",
      [](const Partition& p, int n) { return matrix_market(tp_matrix(p, n)); }, py::arg("p"),
      py::arg("n"));

  // verification suites and worked fusion cases
  m.def(
      "run_suite",
      [](const std::string& suite, int n, std::uint64_t seed) {
        return suite_report_json(run_suite(suite, n, seed));
      },
      py::arg("suite"), py::arg("n"), py::arg("seed") = 1,
      "Runs sN | hN | spN | rotations | coaction-shadow and returns the JSON report.");
  m.def(
      "fusion_dim",
      [](const std::string& name) { return coeff_space_dim(fusion_lattice(name)); },
      py::arg("case_name"), "Degree-two coefficient dimension for b3plus or o2plus.");
  m.def(
      "colinearity",
      [](const std::string& name) {
        const ColinearityReport r = colinearity_bound(name);
        return std::make_pair(r.upper_bound, r.reference_dim);
      },
      py::arg("case_name"), "(upper bound, reference dimension) for b3plus or o2plus.");
}
