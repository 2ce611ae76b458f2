#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinmix/density.hpp"
#include "spinmix/error.hpp"
#include "spinmix/norms.hpp"

using namespace spinmix;

namespace {

Graph star(std::size_t leaves) { return Graph::star(leaves); }

void check_orientation(const Graph& g, const Orientation& o, const std::vector<std::int64_t>& lower,
                       const std::vector<std::int64_t>& upper) {
  REQUIRE(o.head.size() == g.num_edges());
  std::vector<int> indeg(g.num_vertices(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edges()[e];
    CHECK((o.head[e] == u || o.head[e] == v));
    ++indeg[o.head[e]];
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    CHECK(indeg[v] == o.indeg[v]);
    CHECK(o.indeg[v] + o.outdeg[v] == g.degree(v));
    CHECK(lower[v] <= indeg[v]);
    CHECK(indeg[v] <= upper[v]);
  }
}

void check_witness(const Graph& g, const OrientationWitness& w, const std::vector<std::int64_t>& lower,
                   const std::vector<std::int64_t>& upper) {
  REQUIRE(!w.subset.empty());
  std::int64_t us = 0, cs = 0;
  for (std::size_t v : w.subset) {
    us += upper[v];
    cs += g.degree(v) - lower[v];
  }
  CHECK(static_cast<std::int64_t>(g.induced_edges(w.subset)) == w.induced_edges);
  CHECK(us == w.upper_sum);
  CHECK(cs == w.out_capacity_sum);
  const bool violated = w.induced_edges > us || w.induced_edges > cs || upper[w.subset[0]] < 0 ||
                        g.degree(w.subset[0]) - lower[w.subset[0]] < 0;
  CHECK(violated);
}

void check_decomposition(const Matrix& r, const Decomposition& d) {
  const std::size_t n = r.size();
  Rational colmax(0), rowmax(0);
  for (std::size_t i = 0; i < n; ++i) {
    Rational rs(0), cs(0);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(d.entry(i, j) >= Rational(0));
      rs = rs + d.entry(i, j);
      cs = cs + d.entry(j, i);
      const Rational sum = d.entry(i, j) + d.entry(j, i);
      CHECK(std::fabs(sum.to_double() - r(i, j)) <= 1e-15 * std::max(1.0, r(i, j)));
    }
    colmax = std::max(colmax, cs);
    rowmax = std::max(rowmax, rs);
  }
  CHECK(colmax == d.col_max);
  CHECK(rowmax == d.row_max);
  CHECK(d.col_max == d.kappa);
  CHECK(d.row_max == d.alpha - d.kappa);
}

}  // namespace

TEST_CASE("maximum density of named graphs") {
  const auto k4 = max_density(Graph::complete(4));
  CHECK(k4.value == Rational(3, 2));
  CHECK(k4.witness == std::vector<std::size_t>{0, 1, 2, 3});
  const auto pet = max_density(Graph::petersen());
  CHECK(pet.value == Rational(3, 2));
  CHECK(pet.witness.size() == 10);
  CHECK(max_density(Graph(3, {})).value == Rational(0));
  CHECK(max_density(Graph(3, {})).witness == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(max_density(Graph(0, {})), Error);

  std::mt19937_64 rng(99);
  for (std::size_t n = 2; n <= 12; ++n) {
    const Graph t = oracle::random_tree(n, rng);
    CHECK(max_density(t).value == Rational(static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(n)));
  }
}

TEST_CASE("witness is smallest then lexicographically first") {
  // Two disjoint triangles plus a pendant vertex: both triangles have density 1.
  const Graph g(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {5, 6}});
  const auto d = max_density(g);
  CHECK(d.value == Rational(1));
  CHECK(d.witness == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("flow density equals brute force on random graphs") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> p(0.1, 0.9);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
    const Graph g = oracle::random_graph(n, p(rng), rng);
    const auto d = max_density(g);
    CHECK(d.value == oracle::brute_density(g));
    CHECK(Rational(static_cast<std::int64_t>(g.induced_edges(d.witness)),
                   static_cast<std::int64_t>(d.witness.size())) == d.value);
  }
}

TEST_CASE("multigraph density") {
  const Graph g(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}});
  CHECK(max_density(g).value == Rational(3, 2));
  CHECK(max_density(g).value == oracle::brute_density(g));
}

TEST_CASE("kappa of matrices") {
  const auto diag = kappa_matrix(Matrix{{0.6, 0}, {0, 0.2}});
  CHECK(diag.value == Rational(3, 10));
  CHECK(diag.witness == std::vector<std::size_t>{0});
  CHECK(kappa_matrix(Graph::complete(4).adjacency()).value == Rational(3, 2));
  CHECK_THROWS_AS(kappa_matrix(Matrix{{0, 1}, {0.5, 0}}), Error);
  try {
    (void)kappa_matrix(Matrix{{0, M_PI / 10}, {M_PI / 10, 0}});
    FAIL("expected IrrationalEntries");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IrrationalEntries);
  }

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const auto rs = oracle::random_rational_symmetric(n, 12, 12, 0.3, false, rng);
    const auto k = kappa_matrix(rs.m, 12);
    CHECK(k.value == oracle::brute_kappa(rs.num, n, 12));
    CHECK(kappa_matrix(rs.m).value == k.value);
    CHECK(std::fabs(kappa_matrix_enumerate(rs.m) - k.value.to_double()) <= 1e-12);
    const double alpha = matrix_norm(rs.m, NormKind::one());
    CHECK(2.0 * k.value.to_double() <= alpha + 1e-12);
    CHECK(k.value.to_double() <= spectral_radius(rs.m).lambda + 1e-8);
  }
}

TEST_CASE("rationalize") {
  const auto r = rationalize(Matrix{{0, 0.25}, {0.25, 1.0 / 3}});
  CHECK(r.denominator == 12);
  CHECK(r.at(0, 1) == 3);
  CHECK(r.at(1, 1) == 4);
  CHECK(rationalize(Matrix{{0.5}}, 10).at(0, 0) == 5);
  CHECK_THROWS_AS(rationalize(Matrix{{0.5}}, 3), Error);
}

TEST_CASE("orientations with bounds") {
  const Graph c4 = Graph::cycle(4);
  const std::vector<std::int64_t> ones(4, 1);
  const auto r = orient_with_bounds(c4, ones, ones);
  REQUIRE(std::holds_alternative<Orientation>(r));
  check_orientation(c4, std::get<Orientation>(r), ones, ones);

  const Graph k3 = Graph::complete(3);
  const std::vector<std::int64_t> zero3(3, 0), one3(3, 1);
  const auto t = orient_with_bounds(k3, zero3, one3);
  REQUIRE(std::holds_alternative<Orientation>(t));
  CHECK(std::get<Orientation>(t).indeg == std::vector<int>{1, 1, 1});

  const Graph s = star(3);
  const std::vector<std::int64_t> zero4(4, 0);
  const auto w = orient_with_bounds(s, zero4, zero4);
  REQUIRE(std::holds_alternative<OrientationWitness>(w));
  CHECK(std::get<OrientationWitness>(w).subset == std::vector<std::size_t>{0, 1, 2, 3});
  check_witness(s, std::get<OrientationWitness>(w), zero4, zero4);

  try {
    (void)orient_with_bounds(s, zero3, zero3);
    FAIL("expected BoundsMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundsMismatch);
  }
}

TEST_CASE("orientation feasibility agrees with the subset condition") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> lo(-1, 2), width(0, 3);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const Graph g = oracle::random_graph(n, 0.5, rng);
    std::vector<std::int64_t> lower(n), upper(n);
    for (std::size_t v = 0; v < n; ++v) {
      lower[v] = lo(rng);
      upper[v] = lower[v] + width(rng);
    }
    // Brute-force the subset criterion.
    bool ok = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n) && ok; ++mask) {
      std::vector<std::size_t> sub;
      std::int64_t us = 0, cs = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (mask >> v & 1U) {
          sub.push_back(v);
          us += upper[v];
          cs += g.degree(v) - lower[v];
        }
      const auto e = static_cast<std::int64_t>(g.induced_edges(sub));
      if (e > us || e > cs) ok = false;
    }
    for (std::size_t v = 0; v < n; ++v) ok = ok && upper[v] >= 0 && g.degree(v) - lower[v] >= 0;
    const auto res = orient_with_bounds(g, lower, upper);
    if (std::holds_alternative<Orientation>(res)) {
      ++feasible;
      CHECK(ok);
      check_orientation(g, std::get<Orientation>(res), lower, upper);
    } else {
      ++infeasible;
      CHECK_FALSE(ok);
      check_witness(g, std::get<OrientationWitness>(res), lower, upper);
    }
  }
  CHECK(feasible > 20);
  CHECK(infeasible > 20);
}

TEST_CASE("decompositions of named graphs") {
  const auto p2 = decompose(Graph::path(2));
  CHECK(p2.kappa == Rational(1, 2));
  CHECK(p2.entry(0, 1) == Rational(1, 2));
  CHECK(p2.entry(1, 0) == Rational(1, 2));
  CHECK(p2.col_max == Rational(1, 2));
  CHECK(p2.row_max == Rational(1, 2));

  const auto c4 = decompose(Graph::cycle(4));
  CHECK(c4.col_max == Rational(1));
  CHECK(c4.row_max == Rational(1));
  for (std::size_t i = 0; i < 4; ++i) {
    Rational out(0);
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK((c4.entry(i, j) == Rational(0) || c4.entry(i, j) == Rational(1)));
      out = out + c4.entry(i, j);
    }
    CHECK(out == Rational(1));
  }

  const Graph pet = Graph::petersen();
  const auto dp = decompose(pet);
  CHECK(dp.col_max <= Rational(3, 2));
  CHECK(dp.row_max <= Rational(3, 2));
  CHECK(dp.col_max >= Rational(3, 2));
  check_decomposition(pet.adjacency(), dp);
}

TEST_CASE("decompositions of random rational matrices") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const auto rs = oracle::random_rational_symmetric(n, 10, 10, 0.4, trial % 2 == 0, rng);
    const auto d = decompose(rs.m, 10);
    CHECK(d.kappa == oracle::brute_kappa(rs.num, n, 10));
    check_decomposition(rs.m, d);
  }
}

TEST_CASE("class parameters") {
  const auto forest = class_params(ClassParams::Forest{});
  CHECK(forest.a == Rational(1));
  CHECK(forest.b == Rational(1));
  const auto tw = class_params(ClassParams::TreeWidth{3});
  CHECK(tw.a == Rational(3));
  CHECK(tw.b == Rational(6));
  const auto g0 = class_params(ClassParams::Genus{0});
  const auto planar = class_params(ClassParams::Planar{});
  CHECK(g0.a == planar.a);
  CHECK(g0.b == planar.b);
  CHECK(class_params(ClassParams::NonregularConnected{5}).a == Rational(5, 2));
  CHECK_THROWS_AS(class_params(ClassParams::TreeWidth{0}), Error);
}

TEST_CASE("class density bounds") {
  CHECK(class_density_bound(class_params(ClassParams::Planar{}), 10).kappa_bound == doctest::Approx(2.4));
  const auto g1 = class_density_bound(class_params(ClassParams::Genus{1}), 50);
  REQUIRE(g1.kstar);
  CHECK(*g1.kstar == 7.0);
  CHECK(g1.kappa_bound == 3.0);
  const auto g2 = class_density_bound(class_params(ClassParams::Genus{2}), 50);
  REQUIRE(g2.kstar);
  CHECK(*g2.kstar == doctest::Approx(3.5 + std::sqrt(24.25)).epsilon(1e-14));
  CHECK(std::fabs(*g2.kstar - 8.4244) <= 1e-4);
  CHECK(g2.kappa_bound == doctest::Approx(11.0 / 3).epsilon(1e-14));
  REQUIRE(g2.kappa_bound_floor_variant);
  CHECK(*g2.kappa_bound_floor_variant == doctest::Approx(3.0 + 6.0 / 8.0));
  const auto half = class_density_bound(class_params(ClassParams::Planar{}), 10, 4.0);
  REQUIRE(half.within_half_alpha);
  CHECK_FALSE(*half.within_half_alpha);

  const auto planar = class_params(ClassParams::Planar{});
  const auto forest = class_params(ClassParams::Forest{});
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 9);
    const Graph g = oracle::random_planar(n, 0.8, rng);
    CHECK(class_density_bound(planar, n).kappa_bound >= max_density(g).value.to_double() - 1e-12);
    const Graph t = oracle::random_tree(n, rng);
    CHECK(class_density_bound(forest, n).kappa_bound >= max_density(t).value.to_double() - 1e-12);
  }
}
