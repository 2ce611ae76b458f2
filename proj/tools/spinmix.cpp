// spinmix: mixing-time certificates for Glauber dynamics.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinmix/density.hpp"
#include "spinmix/depmat.hpp"
#include "spinmix/error.hpp"
#include "spinmix/glauber.hpp"
#include "spinmix/io.hpp"
#include "spinmix/mixbounds.hpp"
#include "spinmix/norms.hpp"
#include "spinmix/rng.hpp"

using namespace spinmix;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kParse = 2, kNoCertificate = 3 };

constexpr const char* kFacilitated = "facilitated";
constexpr std::size_t kVerifyEnumerationLimit = 20;

struct Options {
  std::string input;
  std::optional<int> q;
  std::optional<double> eps;
  std::optional<double> eta;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> steps;
  std::optional<std::string> order;  // scan when set, random update otherwise
  std::string format = "json";
  bool multigraph = false;
  std::optional<std::string> cls;
  std::size_t threads = 1;
  std::optional<std::string> out;
  std::size_t n = 20;
  std::optional<double> delta;
  bool exact = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either a graph, a matrix, or the facilitated model.
struct Input {
  std::optional<Graph> graph;
  std::optional<Matrix> matrix;
  bool facilitated = false;
  std::size_t n = 0;
  double delta = 0.0;
};

double default_delta(std::size_t n) { return 1.0 / 3.0 - 4.0 / (3.0 * (static_cast<double>(n) - 2.0)); }

Input load(const Options& o) {
  Input in;
  if (o.input == kFacilitated) {
    if (o.n <= 3) throw UsageError("facilitated model needs --n > 3");
    in.facilitated = true;
    in.n = o.n;
    in.delta = o.delta.value_or(default_delta(o.n));
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw UsageError("--delta must lie in (0,1)");
    return in;
  }
  const std::string text = read_file(o.input);
  if (looks_like_matrix(text)) {
    in.matrix = parse_matrix(text);
    in.n = in.matrix->size();
  } else {
    in.graph = parse_graph(text, o.multigraph);
    in.n = in.graph->num_vertices();
  }
  return in;
}

ClassParams parse_class(const std::string& spec, const Graph& g) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  auto arg = [&]() {
    if (colon == std::string::npos) throw UsageError("--class " + kind + " needs a parameter, e.g. " + kind + ":1");
    try {
      return std::stoi(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("bad --class parameter in '" + spec + "'");
    }
  };
  if (kind == "nonregular") return class_params(ClassParams::NonregularConnected{g.max_degree()});
  if (kind == "forest") return class_params(ClassParams::Forest{});
  if (kind == "treewidth") return class_params(ClassParams::TreeWidth{arg()});
  if (kind == "planar") return class_params(ClassParams::Planar{});
  if (kind == "genus") return class_params(ClassParams::Genus{arg()});
  throw UsageError("unknown --class '" + spec + "'");
}

ScanOrder parse_order(const std::string& s, std::size_t n) {
  if (s == "identity") return ScanOrder::identity(n);
  std::vector<std::size_t> order;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto field = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t v = 0;
    try {
      v = std::stoul(field);
    } catch (const std::exception&) {
      throw UsageError("bad --order entry '" + field + "'");
    }
    if (v == 0) throw UsageError("--order is 1-indexed");
    order.push_back(v - 1);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (order.size() != n) throw UsageError("--order must list all " + std::to_string(n) + " sites");
  return ScanOrder(std::move(order));
}

DependencyMatrix dependency_of(const Input& in, const Options& o) {
  if (in.facilitated) return facilitated_dependency(in.n, in.delta);
  if (in.matrix) return DependencyMatrix(*in.matrix);
  if (!o.q) throw UsageError("graph inputs need --q");
  return coloring_dependency(*in.graph, *o.q);
}

void emit(const json& j, const Options& o) {
  const std::string text = j.dump(2) + "\n";
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) throw UsageError("cannot write '" + *o.out + "'");
    f << text;
  } else {
    std::cout << text;
  }
}

json norms_report(const Matrix& r) {
  json j;
  j["n"] = r.size();
  j["one"] = matrix_norm(r, NormKind::one());
  j["infinity"] = matrix_norm(r, NormKind::infinity());
  j["two"] = matrix_norm(r, NormKind::two());
  j["frobenius"] = matrix_norm(r, NormKind::frobenius());
  const auto s = spectral_radius(r);
  j["lambda"] = s.lambda;
  j["spectral"] = s;
  j["nu"] = numerical_radius(r);
  if (is_irreducible(r)) j["perron"] = perron_left_vector(r);
  return j;
}

int cmd_norms(const Options& o) {
  const Input in = load(o);
  Matrix r;
  if (in.graph && !o.q) {
    r = in.graph->adjacency();
  } else {
    r = dependency_of(in, o).matrix();
  }
  emit(norms_report(r), o);
  return kOk;
}

int cmd_density(const Options& o) {
  const Input in = load(o);
  json j;
  Decomposition d;
  if (in.graph) {
    j = max_density(*in.graph);
    d = decompose(*in.graph);
  } else {
    const Matrix r = dependency_of(in, o).matrix();
    j = kappa_matrix(r);
    d = decompose(r);
  }
  j["decomposition"] = d;
  emit(j, o);
  return kOk;
}

int cmd_bounds(const Options& o) {
  if (!o.eps) throw UsageError("bounds needs --eps");
  const Input in = load(o);
  std::vector<Certificate> certs;
  if (in.graph) {
    if (!o.q) throw UsageError("graph inputs need --q");
    ColoringOptions opts;
    opts.eta = o.eta;
    if (o.cls) opts.cls = parse_class(*o.cls, *in.graph);
    certs = coloring_certificates(*in.graph, *o.q, *o.eps, opts);
  } else {
    const auto best = best_certificate(dependency_of(in, o), *o.eps);
    certs = best.candidates;
  }
  if (certs.empty()) throw Error(ErrorKind::NoCertificate, "no certificate applies");
  // Finite-n certificates rank ahead of asymptotic ones.
  const auto best = std::min_element(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) {
    if (a.asymptotic != b.asymptotic) return !a.asymptotic;
    return a.site_updates() < b.site_updates();
  });
  json j;
  j["certificates"] = certs;
  j["best"] = *best;
  emit(j, o);
  return kOk;
}

std::vector<int> greedy_coloring(const Graph& g, int q) {
  std::vector<int> x(g.num_vertices(), -1);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const auto legal = legal_colors(x, g, q, v);
    if (legal.empty()) throw Error(ErrorKind::NoLegalColor, "greedy colouring failed");
    x[v] = legal.front();
  }
  return x;
}

int cmd_simulate(const Options& o) {
  if (!o.seed || !o.steps || (!o.trials && !o.exact))
    throw UsageError("simulate needs --seed, --steps and --trials");
  const Input in = load(o);
  if (in.matrix) throw UsageError("simulate needs a graph or the facilitated model");
  ChainSpec spec;
  spec.seed = *o.seed;
  State x0, y0;
  if (in.facilitated) {
    spec.system = FacilitatedSystem{in.n, in.delta};
    x0.assign(in.n, 0);
    y0.assign(in.n, 1);
  } else {
    if (!o.q) throw UsageError("graph inputs need --q");
    spec.system = ColoringSystem{*in.graph, *o.q};
    x0 = greedy_coloring(*in.graph, *o.q);
    y0 = x0;
    // A colour rotation keeps the start proper and disagrees everywhere.
    for (int& c : y0) c = (c + 1) % *o.q;
  }
  if (o.order) spec.update = Scan{parse_order(*o.order, in.n)};
  if (spec.connectivity_warning()) std::cerr << "warning: q < Delta + 2, heat-bath chain may be reducible\n";

  std::string csv;
  if (o.exact) {
    csv = tv_csv(exact_tv(spec, *o.steps));
  } else {
    CouplingOptions copts;
    copts.trials = *o.trials;
    copts.threads = o.threads;
    csv = coupling_csv(coupled_run(spec, x0, y0, *o.steps, copts));
  }
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) throw UsageError("cannot write '" + *o.out + "'");
    f << csv;
  } else {
    std::cout << csv;
  }
  return kOk;
}

struct CheckList {
  json items = json::array();
  bool all = true;

  void add(const std::string& name, bool passed, json value = nullptr) {
    items.push_back({{"check", name}, {"passed", passed}, {"value", value}});
    all = all && passed;
  }
};

void verify_matrix(const Matrix& r, CheckList& checks) {
  const double lambda = spectral_radius(r).lambda;
  const double one = matrix_norm(r, NormKind::one());
  const double inf = matrix_norm(r, NormKind::infinity());
  const double two = matrix_norm(r, NormKind::two());
  checks.add("lambda <= ||R||_1", lambda <= one + 1e-9, lambda);
  checks.add("lambda <= ||R||_inf", lambda <= inf + 1e-9, inf);
  checks.add("lambda <= ||R||_2", lambda <= two + 1e-9, two);
  const double nu = numerical_radius(r);
  checks.add("lambda <= nu <= ||R||_2", lambda <= nu + 1e-9 && nu <= two + 1e-9, nu);
  const double scan = spectral_radius(scan_update_matrix(DependencyMatrix(r))).lambda;
  checks.add("lambda(R_scan) <= lambda(R)", scan <= lambda + 1e-8, scan);
  if (r.is_symmetric()) {
    const auto k = kappa_matrix(r);
    const double bound = spectral_density_bound(k.value.to_double(), one);
    checks.add("lambda <= 2 sqrt(kappa (alpha - kappa))", lambda <= bound + 1e-8, bound);
    const auto d = decompose(r);
    checks.add("||B||_1 = kappa", d.col_max == d.kappa, d.col_max);
    checks.add("||B||_inf = alpha - kappa", d.row_max == d.alpha - d.kappa, d.row_max);
  }
  if (is_irreducible(r)) {
    const auto p = perron_left_vector(r);
    const auto rep = check_scan_domination(DependencyMatrix(r), p.w, p.mu + std::max(0.0, p.slack));
    checks.add("w R_scan <= lambda w", rep.holds, rep.max_violation);
  }
}

int cmd_verify(const Options& o) {
  const Input in = load(o);
  CheckList checks;
  json j;
  if (in.facilitated) {
    const auto r = facilitated_dependency(in.n, in.delta);
    const double one = matrix_norm(r.matrix(), NormKind::one());
    const double inf = matrix_norm(r.matrix(), NormKind::infinity());
    const double two = matrix_norm(r.matrix(), NormKind::two());
    const double lambda = spectral_radius(r.matrix()).lambda;
    checks.add("||R||_1 >= 1", one >= 1.0, one);
    checks.add("||R||_inf >= 1", inf >= 1.0, inf);
    checks.add("||R||_2 >= 1", two >= 1.0, two);
    checks.add("lambda(R) < 1", lambda < 1.0, lambda);
    bool exists = false;
    try {
      const auto best = best_certificate(r, o.eps.value_or(0.25));
      exists = true;
      j["certificate"] = best.best;
      checks.add("weighted route used", best.used_weighted_route);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCertificate) throw;
    }
    checks.add("certificate exists", exists);
    j["n"] = in.n;
    j["delta"] = in.delta;
    verify_matrix(r.matrix(), checks);
  } else if (in.matrix) {
    verify_matrix(*in.matrix, checks);
  } else {
    const Graph& g = *in.graph;
    const auto dens = max_density(g);
    if (g.num_vertices() <= kVerifyEnumerationLimit) {
      const double brute = kappa_matrix_enumerate(g.adjacency());
      checks.add("max density matches enumeration", std::fabs(brute - dens.value.to_double()) <= 1e-12,
                 dens.value);
    }
    const auto dec = decompose(g);
    checks.add("orientation realises kappa", dec.col_max == dec.kappa, dec.col_max);
    const double lg = spectral_radius(g.adjacency()).lambda;
    const double bound = spectral_density_bound(dens.value.to_double(), g.max_degree());
    checks.add("lambda(G) <= 2 sqrt(kappa (Delta - kappa))", lg <= bound + 1e-8, bound);
    if (o.q) {
      const int q = *o.q;
      const auto r = coloring_dependency(g, q);
      verify_matrix(r.matrix(), checks);
      try {
        const Matrix exact = influence_matrix_exact(g, q);
        bool ok = true;
        for (std::size_t i = 0; i < g.num_vertices(); ++i)
          for (std::size_t jj = 0; jj < g.num_vertices(); ++jj) ok = ok && exact(i, jj) <= r(i, jj) + 1e-12;
        checks.add("exact influence <= 1/(q - d_j)", ok);
        ChainSpec spec{ColoringSystem{g, q}, Scan{ScanOrder::identity(g.num_vertices())}, o.seed.value_or(0)};
        const auto rep = delta_contraction_check(spec, o.trials.value_or(100));
        checks.add("delta contraction", rep.passed,
                   json{{"site", rep.max_violation_site}, {"random", rep.max_violation_random},
                        {"scan", rep.max_violation_scan}});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::CapExceeded && e.kind() != ErrorKind::StateSpaceTooLarge) throw;
        j["skipped"] = "exact enumeration exceeds cap";
      }
    }
  }
  j["checks"] = checks.items;
  j["all_passed"] = checks.all;
  emit(j, o);
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::SelfLoop:
    case ErrorKind::NegativeEntry:
    case ErrorKind::NotSquare:
    case ErrorKind::IrrationalEntries:
      return kParse;
    case ErrorKind::NoCertificate:
    case ErrorKind::QTooSmall:
    case ErrorKind::MuOutOfRange:
    case ErrorKind::DeltaTooSmall:
    case ErrorKind::KappaExceedsHalfAlpha:
    case ErrorKind::BoundsMismatch:
    case ErrorKind::NoLegalColor:
      return kNoCertificate;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixing-time certificates for Glauber dynamics"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "graph edge list, matrix (CSV/JSON), or 'facilitated'")->required();
    sub->add_option("--q", o.q, "number of colours");
    sub->add_option("--eps", o.eps, "target total variation");
    sub->add_option("--eta", o.eta, "perturbation for the improved scan bound");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--trials", o.trials, "coupled trials, or random functions for verify");
    sub->add_option("--steps", o.steps, "horizon");
    sub->add_option("--order", o.order, "scan order: identity or a 1-indexed permutation");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--multigraph", o.multigraph, "allow repeated edges");
    sub->add_option("--class", o.cls, "nonregular|forest|treewidth:t|planar|genus:g");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--n", o.n, "facilitated model size");
    sub->add_option("--delta", o.delta, "facilitated model resampling probability");
  };

  auto* norms = app.add_subcommand("norms", "matrix norms, lambda and nu");
  auto* density = app.add_subcommand("density", "maximum density, witness and decomposition");
  auto* bounds = app.add_subcommand("bounds", "mixing-time certificates");
  auto* simulate = app.add_subcommand("simulate", "coupled simulation or exact TV series (CSV)");
  auto* verify = app.add_subcommand("verify", "invariant checks");
  for (auto* s : {norms, density, bounds, simulate, verify}) common(s);
  simulate->add_flag("--exact", o.exact, "exact worst-start TV instead of coupling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*norms) return cmd_norms(o);
    if (*density) return cmd_density(o);
    if (*bounds) return cmd_bounds(o);
    if (*simulate) return cmd_simulate(o);
    if (*verify) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
