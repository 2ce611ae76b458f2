#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "spinmix/density.hpp"
#include "spinmix/depmat.hpp"
#include "spinmix/error.hpp"
#include "spinmix/glauber.hpp"
#include "spinmix/graph.hpp"
#include "spinmix/io.hpp"
#include "spinmix/mixbounds.hpp"
#include "spinmix/norms.hpp"

namespace py = pybind11;
using namespace spinmix;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix to_matrix(const Rows& rows) {
  const std::size_t n = rows.size();
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw Error(ErrorKind::NotSquare, "every row needs " + std::to_string(n) + " entries");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Matrix(n, std::move(flat));
}

Rows to_rows(const Matrix& m) {
  Rows out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

NormKind norm_kind(const std::string& name, const std::optional<std::vector<double>>& weights) {
  if (name == "one") return NormKind::one();
  if (name == "two") return NormKind::two();
  if (name == "infinity") return NormKind::infinity();
  if (name == "frobenius") return NormKind::frobenius();
  if (name == "max_one_inf") return NormKind::max_one_inf();
  if (name == "weighted_one") {
    if (!weights) throw Error(ErrorKind::InvalidArgument, "weighted_one needs weights");
    return NormKind::weighted_one(*weights);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown norm '" + name + "'");
}

UpdateRule update_rule(bool scan, const std::optional<std::vector<std::size_t>>& order, std::size_t n) {
  if (!scan) return RandomUpdate{};
  return Scan{order ? ScanOrder(*order) : ScanOrder::identity(n)};
}

ChainSpec coloring_spec(const Graph& g, int q, bool scan, const std::optional<std::vector<std::size_t>>& order,
                        std::uint64_t seed) {
  return ChainSpec{ColoringSystem{g, q}, update_rule(scan, order, g.num_vertices()), seed};
}

ChainSpec facilitated_spec(std::size_t n, double delta, bool scan,
                           const std::optional<std::vector<std::size_t>>& order, std::uint64_t seed) {
  return ChainSpec{FacilitatedSystem{n, delta}, update_rule(scan, order, n), seed};
}

py::list tv_series(const std::vector<TVReport>& reports) {
  py::list out;
  for (const auto& r : reports) {
    py::dict d;
    d["t"] = r.t;
    d["tv"] = r.tv;
    d["statespace"] = r.statespace;
    out.append(d);
  }
  return out;
}

py::dict coupling_dict(const CouplingStats& s) {
  py::dict d;
  d["mean_hamming"] = s.mean_hamming;
  d["var_hamming"] = s.var_hamming;
  d["coalesced_frac"] = s.coalesced_frac;
  d["coupling_times"] = s.coupling_times;
  d["trials"] = s.trials;
  d["seed"] = s.seed;
  if (!s.mean_weighted.empty()) {
    d["mean_weighted"] = s.mean_weighted;
    d["var_weighted"] = s.var_weighted;
  }
  return d;
}

py::dict best_dict(const BestCertificate& b) {
  py::dict d;
  d["norms"] = py::dict(py::arg("one") = b.norms.one, py::arg("infinity") = b.norms.infinity,
                        py::arg("two") = b.norms.two, py::arg("lambda") = b.norms.lambda);
  d["best"] = to_python(b.best);
  d["random"] = b.random ? to_python(*b.random) : py::none();
  d["scan"] = b.scan ? to_python(*b.scan) : py::none();
  py::list cands;
  for (const auto& c : b.candidates) cands.append(to_python(c));
  d["candidates"] = cands;
  d["used_weighted_route"] = b.used_weighted_route;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dependency-matrix norms, densities and mixing-time certificates for Glauber dynamics";

  static py::exception<Error> error_type(m, "SpinmixError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init<std::size_t, std::vector<Graph::Edge>>(), py::arg("n"), py::arg("edges"),
           "Vertices 0..n-1; edges as (u, v) pairs, 0-indexed.")
      .def_static("from_text", &parse_graph, py::arg("text"), py::arg("multigraph") = false,
                  "Edge-list text with 1-indexed vertices.")
      .def_static("path", &Graph::path)
      .def_static("cycle", &Graph::cycle)
      .def_static("complete", &Graph::complete)
      .def_static("star", &Graph::star)
      .def_static("petersen", &Graph::petersen)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("edges", &Graph::edges)
      .def_property_readonly("degrees", &Graph::degrees)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def("adjacency", [](const Graph& g) { return to_rows(g.adjacency()); })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) + ", edges=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("parse_matrix", [](const std::string& text) { return to_rows(parse_matrix(text)); }, py::arg("text"));

  m.def(
      "matrix_norm",
      [](const Rows& r, const std::string& kind, std::optional<std::vector<double>> weights) {
        return matrix_norm(to_matrix(r), norm_kind(kind, weights));
      },
      py::arg("r"), py::arg("kind") = "one", py::arg("weights") = py::none());
  m.def(
      "spectral_radius", [](const Rows& r) { return to_python(spectral_radius(to_matrix(r))); }, py::arg("r"));
  m.def(
      "numerical_radius", [](const Rows& r) { return numerical_radius(to_matrix(r)); }, py::arg("r"));
  m.def(
      "perron_left_vector", [](const Rows& r) { return to_python(perron_left_vector(to_matrix(r))); },
      py::arg("r"));
  m.def(
      "is_irreducible", [](const Rows& r) { return is_irreducible(to_matrix(r)); }, py::arg("r"));

  m.def(
      "coloring_dependency", [](const Graph& g, int q) { return to_rows(coloring_dependency(g, q).matrix()); },
      py::arg("graph"), py::arg("q"));
  m.def(
      "facilitated_dependency",
      [](std::size_t n, double delta) { return to_rows(facilitated_dependency(n, delta).matrix()); }, py::arg("n"),
      py::arg("delta"));
  m.def(
      "random_update_matrix",
      [](const Rows& r) { return to_rows(random_update_matrix(DependencyMatrix(to_matrix(r)))); }, py::arg("r"));
  m.def(
      "scan_update_matrix",
      [](const Rows& r, std::optional<std::vector<std::size_t>> order) {
        const DependencyMatrix d(to_matrix(r));
        return to_rows(order ? scan_update_matrix(d, ScanOrder(*order)) : scan_update_matrix(d));
      },
      py::arg("r"), py::arg("order") = py::none());

  m.def(
      "max_density", [](const Graph& g) { return to_python(max_density(g)); }, py::arg("graph"),
      "Witness vertices are reported 1-indexed, as in graph files.");
  m.def(
      "kappa_matrix", [](const Rows& r) { return to_python(kappa_matrix(to_matrix(r))); }, py::arg("r"));
  m.def(
      "decompose", [](const Graph& g) { return to_python(decompose(g)); }, py::arg("graph"));
  m.def(
      "decompose_matrix", [](const Rows& r) { return to_python(decompose(to_matrix(r))); }, py::arg("r"));

  m.def(
      "random_update_time",
      [](const std::string& variant, double mu, std::size_t n, double constant, double eps,
         std::optional<double> eta) {
        const RandomVariant v = variant == "L17"   ? RandomVariant::L17
                                : variant == "C21" ? RandomVariant::C21
                                : variant == "L1"  ? RandomVariant::L1
                                                   : throw Error(ErrorKind::InvalidArgument, "unknown variant");
        return to_python(random_update_time(v, mu, n, constant, eps, eta));
      },
      py::arg("variant"), py::arg("mu"), py::arg("n"), py::arg("constant"), py::arg("eps"),
      py::arg("eta") = py::none());
  m.def(
      "scan_time",
      [](const std::string& variant, double mu, std::size_t n, double constant, double eps,
         std::optional<double> eta) {
        const ScanVariant v = variant == "L22"   ? ScanVariant::L22
                              : variant == "C25" ? ScanVariant::C25
                              : variant == "C26" ? ScanVariant::C26
                              : variant == "C27" ? ScanVariant::C27
                              : variant == "L2"  ? ScanVariant::L2
                                                 : throw Error(ErrorKind::InvalidArgument, "unknown variant");
        return to_python(scan_time(v, mu, n, constant, eps, eta));
      },
      py::arg("variant"), py::arg("mu"), py::arg("n"), py::arg("constant"), py::arg("eps"),
      py::arg("eta") = py::none());
  m.def(
      "improved_scan_time",
      [](double lambda, std::size_t n, double eps, double eta) {
        return to_python(improved_scan_time(lambda, n, eps, eta));
      },
      py::arg("lam"), py::arg("n"), py::arg("eps"), py::arg("eta"));
  m.def("spectral_density_bound", &spectral_density_bound, py::arg("kappa"), py::arg("alpha"));
  m.def(
      "best_certificate", [](const Rows& r, double eps) { return best_dict(best_certificate(DependencyMatrix(to_matrix(r)), eps)); },
      py::arg("r"), py::arg("eps"));
  m.def(
      "coloring_certificates",
      [](const Graph& g, int q, double eps) {
        py::list out;
        for (const auto& c : coloring_certificates(g, q, eps)) out.append(to_python(c));
        return out;
      },
      py::arg("graph"), py::arg("q"), py::arg("eps"));

  m.def(
      "exact_tv_coloring",
      [](const Graph& g, int q, std::size_t horizon, bool scan, std::optional<std::vector<std::size_t>> order,
         std::size_t cap) { return tv_series(exact_tv(coloring_spec(g, q, scan, order, 0), horizon, cap)); },
      py::arg("graph"), py::arg("q"), py::arg("horizon"), py::arg("scan") = false, py::arg("order") = py::none(),
      py::arg("cap") = kDefaultStateCap);
  m.def(
      "exact_tv_facilitated",
      [](std::size_t n, double delta, std::size_t horizon, bool scan, std::size_t cap) {
        return tv_series(exact_tv(facilitated_spec(n, delta, scan, std::nullopt, 0), horizon, cap));
      },
      py::arg("n"), py::arg("delta"), py::arg("horizon"), py::arg("scan") = false,
      py::arg("cap") = kDefaultStateCap);
  m.def(
      "coupled_run_coloring",
      [](const Graph& g, int q, const State& x0, const State& y0, std::size_t steps, std::size_t trials,
         std::uint64_t seed, bool scan, std::size_t threads) {
        CouplingOptions opts;
        opts.trials = trials;
        opts.threads = threads;
        const ChainSpec spec = coloring_spec(g, q, scan, std::nullopt, seed);
        CouplingStats s;
        {
          py::gil_scoped_release release;
          s = coupled_run(spec, x0, y0, steps, opts);
        }
        return coupling_dict(s);
      },
      py::arg("graph"), py::arg("q"), py::arg("x0"), py::arg("y0"), py::arg("steps"), py::arg("trials"),
      py::arg("seed"), py::arg("scan") = false, py::arg("threads") = 1);
  m.def(
      "influence_matrix_exact",
      [](const Graph& g, int q, std::size_t cap) { return to_rows(influence_matrix_exact(g, q, cap)); },
      py::arg("graph"), py::arg("q"), py::arg("cap") = kDefaultStateCap);
  m.def(
      "delta_contraction_check",
      [](const Graph& g, int q, std::size_t trials, bool scan, std::uint64_t seed) {
        const auto rep = delta_contraction_check(coloring_spec(g, q, scan, std::nullopt, seed), trials);
        return py::dict(py::arg("passed") = rep.passed, py::arg("trials") = rep.trials,
                        py::arg("max_violation_site") = rep.max_violation_site,
                        py::arg("max_violation_random") = rep.max_violation_random,
                        py::arg("max_violation_scan") = rep.max_violation_scan);
      },
      py::arg("graph"), py::arg("q"), py::arg("trials"), py::arg("scan") = false, py::arg("seed") = 0);
}
