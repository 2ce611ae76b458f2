#include "spinmix/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "spinmix/error.hpp"
#include "spinmix/maxflow.hpp"

namespace spinmix {
namespace {

using Cap = MaxFlow::Cap;

// score(S) = sum of pair weights inside S + sum of self weights in S.
struct WeightedInstance {
  std::size_t n = 0;
  std::vector<std::size_t> pair_u, pair_v;
  std::vector<Cap> pair_w;
  std::vector<Cap> self_w;

  [[nodiscard]] Cap score(const std::vector<std::size_t>& s) const {
    std::vector<bool> in(n, false);
    for (std::size_t v : s) in[v] = true;
    Cap total = 0;
    for (std::size_t e = 0; e < pair_w.size(); ++e)
      if (in[pair_u[e]] && in[pair_v[e]]) total += pair_w[e];
    for (std::size_t v : s) total += self_w[v];
    return total;
  }
};

// Maximizes s*score(S) - p*|S| through a closure cut; `forced` pins a vertex
// into S.  Returns the maximum and the inclusion-minimal maximizer.
std::pair<Cap, std::vector<std::size_t>> best_closure(const WeightedInstance& inst, Cap p, Cap s,
                                                       std::optional<std::size_t> forced) {
  const std::size_t m = inst.pair_w.size();
  const std::size_t source = 0, sink = 1, first_pair = 2, first_vertex = 2 + m;
  MaxFlow flow(first_vertex + inst.n);
  Cap positive = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const Cap c = s * inst.pair_w[e];
    positive += c;
    flow.add_arc(source, first_pair + e, c);
    flow.add_arc(first_pair + e, first_vertex + inst.pair_u[e], MaxFlow::kInfinite);
    flow.add_arc(first_pair + e, first_vertex + inst.pair_v[e], MaxFlow::kInfinite);
  }
  for (std::size_t v = 0; v < inst.n; ++v) {
    const Cap gain = s * inst.self_w[v];
    positive += gain;
    if (gain > 0) flow.add_arc(source, first_vertex + v, gain);
    flow.add_arc(first_vertex + v, sink, p);
  }
  if (forced) flow.add_arc(source, first_vertex + *forced, MaxFlow::kInfinite);
  const Cap cut = flow.solve(source, sink);
  const auto side = flow.source_side();
  std::vector<std::size_t> set;
  for (std::size_t v = 0; v < inst.n; ++v)
    if (side[first_vertex + v]) set.push_back(v);
  if (forced) {
    // The forced arc contributes nothing to the cut; recompute the objective directly.
    const Cap value = s * inst.score(set) - p * static_cast<Cap>(set.size());
    return {value, set};
  }
  return {positive - cut, set};
}

Density densest(const WeightedInstance& inst) {
  if (inst.n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  std::vector<std::size_t> all(inst.n);
  std::iota(all.begin(), all.end(), 0);
  Rational lambda(inst.score(all), static_cast<std::int64_t>(inst.n));
  for (;;) {
    auto [gain, set] = best_closure(inst, lambda.num(), lambda.den(), std::nullopt);
    if (gain <= 0 || set.empty()) break;
    const Rational next(inst.score(set), static_cast<std::int64_t>(set.size()));
    if (next <= lambda) throw Error(ErrorKind::Internal, "density iteration failed to improve");
    lambda = next;
  }

  std::vector<std::size_t> best;
  for (std::size_t v = 0; v < inst.n; ++v) {
    auto [gain, set] = best_closure(inst, lambda.num(), lambda.den(), v);
    if (gain != 0) continue;
    if (best.empty() || set.size() < best.size() || (set.size() == best.size() && set < best)) best = std::move(set);
  }
  if (best.empty()) throw Error(ErrorKind::Internal, "no witness at the optimal density");
  return Density{lambda, std::move(best)};
}

WeightedInstance instance_of(const Graph& g) {
  WeightedInstance inst;
  inst.n = g.num_vertices();
  inst.self_w.assign(inst.n, 0);
  std::map<std::pair<std::size_t, std::size_t>, Cap> pairs;
  for (auto [u, v] : g.edges()) ++pairs[{std::min(u, v), std::max(u, v)}];
  for (const auto& [key, w] : pairs) {
    inst.pair_u.push_back(key.first);
    inst.pair_v.push_back(key.second);
    inst.pair_w.push_back(w);
  }
  return inst;
}

void require_symmetric(const RationalMatrix& r) {
  for (std::size_t i = 0; i < r.n; ++i) {
    for (std::size_t j = 0; j < r.n; ++j) {
      if (r.at(i, j) != r.at(j, i)) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
      if (r.at(i, j) < 0) throw Error(ErrorKind::NegativeEntry, "matrix has a negative entry");
    }
  }
}

Rational column_sum_max(const RationalMatrix& r) {
  std::int64_t best = 0;
  for (std::size_t j = 0; j < r.n; ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < r.n; ++i) s += r.at(i, j);
    best = std::max(best, s);
  }
  return {best, r.denominator};
}

RationalMatrix from_graph(const Graph& g) {
  RationalMatrix r;
  r.n = g.num_vertices();
  r.numerators.assign(r.n * r.n, 0);
  for (auto [u, v] : g.edges()) {
    ++r.numerators[u * r.n + v];
    ++r.numerators[v * r.n + u];
  }
  return r;
}

}  // namespace

Density max_density(const Graph& g) { return densest(instance_of(g)); }

Matrix RationalMatrix::to_matrix() const {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(at(i, j)) / static_cast<double>(denominator);
  return m;
}

RationalMatrix rationalize(const Matrix& r, std::optional<std::int64_t> denominator) {
  const std::size_t n = r.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  if (!r.all_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite entry");
  if (!r.is_nonnegative()) throw Error(ErrorKind::NegativeEntry, "matrix has a negative entry");
  RationalMatrix out;
  out.n = n;
  out.numerators.resize(n * n);
  if (denominator) {
    if (*denominator <= 0 || *denominator > kRationalScaleCap)
      throw Error(ErrorKind::InvalidArgument, "denominator must lie in [1, 10^6]");
    out.denominator = *denominator;
    for (std::size_t k = 0; k < n * n; ++k) {
      const double scaled = r.entries()[k] * static_cast<double>(*denominator);
      const double rounded = std::round(scaled);
      if (std::fabs(scaled - rounded) > 1e-9 * std::max(1.0, std::fabs(scaled)))
        throw Error(ErrorKind::IrrationalEntries, "entry is not a multiple of 1/" + std::to_string(*denominator));
      out.numerators[k] = static_cast<std::int64_t>(rounded);
    }
    return out;
  }
  std::vector<Rational> snapped(n * n);
  std::int64_t den = 1;
  for (std::size_t k = 0; k < n * n; ++k) {
    const double x = r.entries()[k];
    snapped[k] = approximate(x, kRationalScaleCap);
    if (std::fabs(snapped[k].to_double() - x) > 1e-12 * std::max(1.0, std::fabs(x)))
      throw Error(ErrorKind::IrrationalEntries, "entry has no rational form with denominator <= 10^6");
    den = checked_lcm(den, snapped[k].den());
    if (den > kRationalScaleCap)
      throw Error(ErrorKind::IrrationalEntries, "common denominator exceeds 10^6");
  }
  out.denominator = den;
  for (std::size_t k = 0; k < n * n; ++k) out.numerators[k] = snapped[k].num() * (den / snapped[k].den());
  return out;
}

Density kappa_matrix(const RationalMatrix& r) {
  if (r.n == 0) throw Error(ErrorKind::EmptyGraph, "empty matrix");
  require_symmetric(r);
  // Scaled by 2D: off-diagonal pairs weigh 2 r_ij, the diagonal r_ii.
  WeightedInstance inst;
  inst.n = r.n;
  inst.self_w.resize(r.n);
  for (std::size_t i = 0; i < r.n; ++i) {
    inst.self_w[i] = r.at(i, i);
    for (std::size_t j = i + 1; j < r.n; ++j) {
      if (r.at(i, j) == 0) continue;
      inst.pair_u.push_back(i);
      inst.pair_v.push_back(j);
      inst.pair_w.push_back(2 * r.at(i, j));
    }
  }
  Density d = densest(inst);
  d.value = d.value / Rational(2 * r.denominator);
  return d;
}

Density kappa_matrix(const Matrix& r, std::optional<std::int64_t> denominator) {
  if (!r.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  return kappa_matrix(rationalize(r, denominator));
}

double kappa_matrix_enumerate(const Matrix& r) {
  const std::size_t n = r.size();
  if (n == 0 || n > 24) throw Error(ErrorKind::InvalidArgument, "enumeration supports 1 <= n <= 24");
  double best = 0.0;
  std::vector<double> gain(n);
  for (std::size_t v = 0; v < n; ++v) gain[v] = r(v, v);
  // Depth-first over include/exclude decisions; gain[v] is the increase of
  // sum_{i,j in S} r_ij when v joins S.
  auto visit = [&](auto&& self, std::size_t next, double sum, std::size_t size) -> void {
    if (size > 0) best = std::max(best, sum / (2.0 * static_cast<double>(size)));
    for (std::size_t v = next; v < n; ++v) {
      const double add = gain[v];
      for (std::size_t w = v + 1; w < n; ++w) gain[w] += r(v, w) + r(w, v);
      self(self, v + 1, sum + add, size + 1);
      for (std::size_t w = v + 1; w < n; ++w) gain[w] -= r(v, w) + r(w, v);
    }
  };
  visit(visit, 0, 0.0, 0);
  return best;
}

OrientationResult orient_with_bounds(const Graph& g, const std::vector<std::int64_t>& lower,
                                     const std::vector<std::int64_t>& upper) {
  const std::size_t n = g.num_vertices();
  if (lower.size() != n || upper.size() != n)
    throw Error(ErrorKind::BoundsMismatch, "bound vectors must have one entry per vertex");
  for (std::size_t v = 0; v < n; ++v)
    if (lower[v] > upper[v]) throw Error(ErrorKind::InvalidArgument, "lower bound exceeds upper bound");

  const auto& deg = g.degrees();
  auto witness_of = [&](std::vector<std::size_t> subset) {
    OrientationWitness w;
    w.induced_edges = static_cast<std::int64_t>(g.induced_edges(subset));
    for (std::size_t v : subset) {
      w.upper_sum += upper[v];
      w.out_capacity_sum += deg[v] - lower[v];
    }
    w.subset = std::move(subset);
    return w;
  };

  for (std::size_t v = 0; v < n; ++v)
    if (upper[v] < 0 || deg[v] - lower[v] < 0) return witness_of({v});

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pairs;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges()[e];
    pairs[{std::min(u, v), std::max(u, v)}].push_back(e);
  }
  const std::size_t m = pairs.size();
  const auto total_edges = static_cast<Cap>(g.num_edges());

  // Each edge sends one unit to the endpoint charged for it; vertex v accepts at most cap[v].
  auto capacity_test = [&](const std::vector<Cap>& cap) -> std::optional<std::vector<std::size_t>> {
    const std::size_t source = 0, sink = 1, first_vertex = 2 + m;
    MaxFlow flow(first_vertex + n);
    std::size_t k = 0;
    for (const auto& [key, edges] : pairs) {
      flow.add_arc(source, 2 + k, static_cast<Cap>(edges.size()));
      flow.add_arc(2 + k, first_vertex + key.first, MaxFlow::kInfinite);
      flow.add_arc(2 + k, first_vertex + key.second, MaxFlow::kInfinite);
      ++k;
    }
    for (std::size_t v = 0; v < n; ++v) flow.add_arc(first_vertex + v, sink, cap[v]);
    if (flow.solve(source, sink) == total_edges) return std::nullopt;
    const auto side = flow.source_side();
    std::vector<std::size_t> subset;
    for (std::size_t v = 0; v < n; ++v)
      if (side[first_vertex + v]) subset.push_back(v);
    return subset;
  };

  std::vector<Cap> in_cap(n), out_cap(n);
  for (std::size_t v = 0; v < n; ++v) {
    in_cap[v] = std::min<Cap>(upper[v], deg[v]);
    out_cap[v] = deg[v] - std::max<Cap>(lower[v], 0);
  }
  if (auto bad = capacity_test(in_cap)) return witness_of(std::move(*bad));
  if (auto bad = capacity_test(out_cap)) return witness_of(std::move(*bad));

  // Both one-sided conditions hold, so the two-sided circulation is feasible.
  const std::size_t s = 0, t = 1, ss = 2, tt = 3, first_pair = 4, first_vertex = 4 + m;
  MaxFlow flow(first_vertex + n);
  Cap demand = 0;
  std::vector<std::size_t> arc_first(m), arc_second(m);
  std::size_t k = 0;
  for (const auto& [key, edges] : pairs) {
    const auto mult = static_cast<Cap>(edges.size());
    flow.add_arc(ss, first_pair + k, mult);
    demand += mult;
    arc_first[k] = flow.add_arc(first_pair + k, first_vertex + key.first, mult);
    arc_second[k] = flow.add_arc(first_pair + k, first_vertex + key.second, mult);
    ++k;
  }
  flow.add_arc(s, tt, total_edges);
  Cap lower_total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const Cap lo = std::max<Cap>(lower[v], 0);
    flow.add_arc(first_vertex + v, t, in_cap[v] - lo);
    if (lo > 0) flow.add_arc(first_vertex + v, tt, lo);
    lower_total += lo;
  }
  if (lower_total > 0) flow.add_arc(ss, t, lower_total);
  demand += lower_total;
  flow.add_arc(t, s, MaxFlow::kInfinite);
  if (flow.solve(ss, tt) != demand) throw Error(ErrorKind::Internal, "orientation circulation infeasible");

  Orientation out;
  out.head.assign(g.num_edges(), 0);
  out.indeg.assign(n, 0);
  out.outdeg.assign(n, 0);
  k = 0;
  for (const auto& [key, edges] : pairs) {
    const auto to_first = static_cast<std::size_t>(flow.flow_on(arc_first[k]));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::size_t head = i < to_first ? key.first : key.second;
      const std::size_t tail = head == key.first ? key.second : key.first;
      out.head[edges[i]] = head;
      ++out.indeg[head];
      ++out.outdeg[tail];
    }
    ++k;
  }
  return out;
}

Decomposition decompose(const RationalMatrix& r) {
  if (r.n == 0) throw Error(ErrorKind::EmptyGraph, "empty matrix");
  require_symmetric(r);
  const std::size_t n = r.n;
  Decomposition d;
  d.kappa = kappa_matrix(r).value;
  d.alpha = column_sum_max(r);
  const std::int64_t scale = checked_lcm(2 * r.denominator, d.kappa.den());
  const std::int64_t factor = scale / r.denominator;
  d.scale = scale;

  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::int64_t c = 0; c < r.at(i, j) * factor; ++c) edges.emplace_back(i, j);
  const Graph multi(n, std::move(edges));

  const Rational big_n(scale);
  const Rational nk = big_n * d.kappa;
  const Rational na = big_n * d.alpha;
  std::vector<std::int64_t> lower(n), upper(n), half_diag(n);
  for (std::size_t v = 0; v < n; ++v) {
    half_diag[v] = r.at(v, v) * factor / 2;
    upper[v] = nk.num() - half_diag[v];
    lower[v] = multi.degree(v) + nk.num() - na.num() + half_diag[v];
  }
  const auto result = orient_with_bounds(multi, lower, upper);
  if (!std::holds_alternative<Orientation>(result))
    throw Error(ErrorKind::Internal, "no orientation meets the decomposition bounds");
  const auto& orient = std::get<Orientation>(result);

  d.numerators.assign(n * n, 0);
  for (std::size_t v = 0; v < n; ++v) d.numerators[v * n + v] = half_diag[v];
  for (std::size_t e = 0; e < multi.num_edges(); ++e) {
    auto [u, v] = multi.edges()[e];
    const std::size_t head = orient.head[e];
    const std::size_t tail = head == u ? v : u;
    ++d.numerators[tail * n + head];
  }
  d.b = Matrix(n);
  std::int64_t col = 0, row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t rs = 0, cs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      d.b(i, j) = static_cast<double>(d.numerators[i * n + j]) / static_cast<double>(scale);
      rs += d.numerators[i * n + j];
      cs += d.numerators[j * n + i];
    }
    row = std::max(row, rs);
    col = std::max(col, cs);
  }
  d.col_max = Rational(col, scale);
  d.row_max = Rational(row, scale);
  return d;
}

Decomposition decompose(const Matrix& r, std::optional<std::int64_t> denominator) {
  if (!r.is_symmetric()) throw Error(ErrorKind::NotSymmetric, "matrix is not symmetric");
  return decompose(rationalize(r, denominator));
}

Decomposition decompose(const Graph& g) { return decompose(from_graph(g)); }

std::string ClassParams::describe() const {
  struct Visitor {
    std::string operator()(const NonregularConnected& p) const {
      return "nonregular connected, max degree " + std::to_string(p.max_degree);
    }
    std::string operator()(const Forest&) const { return "forest"; }
    std::string operator()(const TreeWidth& p) const { return "tree-width " + std::to_string(p.t); }
    std::string operator()(const Planar&) const { return "planar"; }
    std::string operator()(const Genus& p) const { return "genus " + std::to_string(p.g); }
    std::string operator()(const Custom&) const { return "custom"; }
  };
  return std::visit(Visitor{}, provenance) + " (a = " + a.str() + ", b = " + b.str() + ")";
}

ClassParams class_params(const ClassParams::Provenance& provenance) {
  struct Visitor {
    std::pair<Rational, Rational> operator()(const ClassParams::NonregularConnected& p) const {
      if (p.max_degree < 1) throw Error(ErrorKind::InvalidArgument, "max degree must be at least 1");
      return {Rational(p.max_degree, 2), Rational(1)};
    }
    std::pair<Rational, Rational> operator()(const ClassParams::Forest&) const { return {1, 1}; }
    std::pair<Rational, Rational> operator()(const ClassParams::TreeWidth& p) const {
      if (p.t < 1) throw Error(ErrorKind::InvalidArgument, "tree-width must be at least 1");
      return {Rational(p.t), Rational(std::int64_t{p.t} * (p.t + 1), 2)};
    }
    std::pair<Rational, Rational> operator()(const ClassParams::Planar&) const { return {3, 6}; }
    std::pair<Rational, Rational> operator()(const ClassParams::Genus& p) const {
      if (p.g < 0) throw Error(ErrorKind::InvalidArgument, "genus must be nonnegative");
      return {Rational(3), Rational(6 * (1 - std::int64_t{p.g}))};
    }
    std::pair<Rational, Rational> operator()(const ClassParams::Custom&) const {
      throw Error(ErrorKind::InvalidArgument, "custom classes need explicit a and b");
    }
  };
  auto [a, b] = std::visit(Visitor{}, provenance);
  return ClassParams{a, b, provenance};
}

ClassParams custom_class(Rational a, Rational b) { return ClassParams{a, b, ClassParams::Custom{}}; }

ClassBound class_density_bound(const ClassParams& p, std::size_t n, std::optional<double> alpha) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  ClassBound out;
  const double a = p.a.to_double(), b = p.b.to_double();
  if (p.b > Rational(0)) {
    out.kappa_bound = a - b / static_cast<double>(n);
  } else {
    const double h = a + 0.5;
    double kstar = h + std::sqrt(h * h - 2.0 * b);
    double lo = std::floor(kstar), hi = std::ceil(kstar);
    // An integral root of s^2 - (2a+1)s + 2b is detected exactly.
    const auto r = static_cast<std::int64_t>(std::llround(kstar));
    const Rational rr(r);
    if (rr * rr - (Rational(2) * p.a + Rational(1)) * rr + Rational(2) * p.b == Rational(0)) {
      kstar = static_cast<double>(r);
      lo = hi = kstar;
    }
    out.kstar = kstar;
    out.kappa_bound = std::max((lo - 1.0) / 2.0, a - b / hi);
    out.kappa_bound_floor_variant = std::max((lo - 1.0) / 2.0, a - b / lo);
  }
  if (alpha) out.within_half_alpha = out.kappa_bound <= *alpha / 2.0;
  return out;
}

}  // namespace spinmix
