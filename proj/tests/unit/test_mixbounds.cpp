#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinmix/density.hpp"
#include "spinmix/error.hpp"
#include "spinmix/mixbounds.hpp"
#include "spinmix/norms.hpp"

using namespace spinmix;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

const Certificate* find(const std::vector<Certificate>& cs, FormulaId id, Units units) {
  for (const auto& c : cs)
    if (c.formula == id && c.units == units) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("random-update formulas") {
  const auto l17 = random_update_time(RandomVariant::L17, 2.0 / 3, 3, 3.0, 0.05);
  CHECK(l17.bound == doctest::Approx(9.0 * std::log(60.0)).epsilon(1e-12));
  CHECK(std::fabs(l17.bound - 36.85) < 0.005);
  CHECK(l17.units == Units::SiteUpdates);
  CHECK_FALSE(l17.asymptotic);
  CHECK(random_update_time(RandomVariant::L17, 0.0, 1, 1.0, std::exp(-1.0)).bound == doctest::Approx(1.0));

  const auto c21 = random_update_time(RandomVariant::C21, 0.8, 10, 10.0, 0.01, 0.1);
  CHECK(c21.bound == doctest::Approx(100.0 * std::log(1e4)).epsilon(1e-12));
  CHECK(std::fabs(c21.bound - 921.0) < 0.05);

  const auto l1 = random_update_time(RandomVariant::L1, 0.5, 100, 100.0, 0.01);
  CHECK(l1.asymptotic);
  REQUIRE(l1.eta);
  CHECK(*l1.eta == doctest::Approx(0.5 / std::log(100.0)));
  CHECK(l1.bound == doctest::Approx(200.0 * std::log(2.0 * 100.0 / 0.01)));

  CHECK(kind_of([] { (void)random_update_time(RandomVariant::L17, 1.0, 3, 3, 0.1); }) == ErrorKind::MuOutOfRange);
  CHECK(kind_of([] { (void)random_update_time(RandomVariant::L17, -0.1, 3, 3, 0.1); }) == ErrorKind::MuOutOfRange);
  CHECK(kind_of([] { (void)random_update_time(RandomVariant::C21, 0.8, 3, 3, 0.1, 0.2); }) ==
        ErrorKind::EtaOutOfRange);
  CHECK(kind_of([] { (void)random_update_time(RandomVariant::C21, 0.8, 3, 3, 0.1); }) == ErrorKind::EtaOutOfRange);
  CHECK_THROWS_AS(random_update_time(RandomVariant::L17, 0.5, 3, 3, 1.0), Error);
}

TEST_CASE("scan formulas") {
  const auto c25 = scan_time(ScanVariant::C25, 2.0 / 3, 3, 0.0, 0.05);
  CHECK(c25.bound == doctest::Approx(3.0 * std::log(60.0)).epsilon(1e-12));
  CHECK(std::fabs(c25.bound - 12.28) < 0.005);
  CHECK(c25.units == Units::Sweeps);
  CHECK(c25.site_updates() == doctest::Approx(3.0 * c25.bound));

  const double eps = 0.01;
  const auto c26 = scan_time(ScanVariant::C26, 0.4, 10, std::pow(2.0, 9), eps);
  CHECK(c26.bound == doctest::Approx(std::log(512.0 / eps) / 0.6).epsilon(1e-12));
  const auto c27 = scan_time(ScanVariant::C27, 0.8, 10, 10.0, eps, 0.05);
  CHECK(c27.bound == doctest::Approx(std::log(10.0 / (0.05 * eps)) / 0.15).epsilon(1e-12));
  const auto l22 = scan_time(ScanVariant::L22, 0.5, 4, 4.0, eps);
  CHECK(l22.bound == doctest::Approx(2.0 * std::log(400.0)));
  const auto l2 = scan_time(ScanVariant::L2, 0.5, 100, 100.0, eps);
  CHECK(l2.asymptotic);
  CHECK(l2.bound == doctest::Approx(2.0 * std::log(2.0 * 100.0 / eps)));
  CHECK(kind_of([] { (void)scan_time(ScanVariant::C27, 0.5, 3, 3, 0.1, 0.6); }) == ErrorKind::EtaOutOfRange);
}

TEST_CASE("improved scan") {
  const auto c = improved_scan_time(0.0, 10, 0.1, 0.5);
  CHECK(c.bound == doctest::Approx(1.5 * std::log(200.0)).epsilon(1e-12));
  CHECK(std::fabs(c.bound - 7.948) < 1e-3);
  CHECK(c.extra.at("sigma") == doctest::Approx(1.0 / 3));
  CHECK(c.formula == FormulaId::L34);

  for (double lam : {0.5, 2.0 / 3, 0.9}) {
    const double eta = 1e-7;
    const auto imp = improved_scan_time(lam, 50, 0.01, eta);
    const auto scan = scan_time(ScanVariant::C27, lam, 50, 50.0, 0.01, eta);
    CHECK(std::fabs(imp.bound / scan.bound - (1.0 - lam / 2.0)) <= 0.01 * (1.0 - lam / 2.0));
  }
  // Delta-regular colouring at q = 2 Delta + 1: ratio (Delta + 2) / (2 Delta + 2).
  for (int d = 1; d <= 6; ++d) {
    const double lam = static_cast<double>(d) / (d + 1);
    const auto imp = improved_scan_time(lam, 100, 0.01, 1e-9);
    const auto scan = scan_time(ScanVariant::C27, lam, 100, 100.0, 0.01, 1e-9);
    CHECK(imp.bound / scan.bound == doctest::Approx((d + 2.0) / (2.0 * d + 2.0)).epsilon(1e-6));
  }
  const auto l3 = improved_scan_time_asymptotic(0.5, 100, 0.01);
  CHECK(l3.asymptotic);
  CHECK(l3.bound == doctest::Approx(0.75 / 0.5 * std::log(2.0 * 100.0 / 0.01)));
  CHECK(kind_of([] { (void)improved_scan_time(0.7, 10, 0.1, 0.3); }) == ErrorKind::MuOutOfRange);
  CHECK(kind_of([] { (void)improved_scan_time(0.5, 10, 0.1, 0.0); }) == ErrorKind::EtaOutOfRange);
}

TEST_CASE("bounds are monotone and recompute exactly") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double mu1 = 0.9 * unit(rng), mu2 = mu1 + 0.05 + 0.04 * unit(rng);
    const double eps1 = 0.01 + 0.4 * unit(rng), eps2 = eps1 + 0.1 + 0.4 * unit(rng);
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 40);
    const double nd = static_cast<double>(n);
    const double eta = 0.02;
    std::vector<std::pair<Certificate, Certificate>> pairs{
        {random_update_time(RandomVariant::L17, mu1, n, nd, eps1), random_update_time(RandomVariant::L17, mu2, n, nd, eps1)},
        {random_update_time(RandomVariant::C21, mu1, n, nd, eps1, eta),
         random_update_time(RandomVariant::C21, mu2, n, nd, eps1, eta)},
        {random_update_time(RandomVariant::L1, mu1, n, nd, eps1), random_update_time(RandomVariant::L1, mu2, n, nd, eps1)},
        {scan_time(ScanVariant::C25, mu1, n, 0, eps1), scan_time(ScanVariant::C25, mu2, n, 0, eps1)},
        {scan_time(ScanVariant::C27, mu1, n, nd, eps1, eta), scan_time(ScanVariant::C27, mu2, n, nd, eps1, eta)},
        {scan_time(ScanVariant::L2, mu1, n, nd, eps1), scan_time(ScanVariant::L2, mu2, n, nd, eps1)},
        {improved_scan_time(mu1, n, eps1, eta), improved_scan_time(mu2, n, eps1, eta)},
        {improved_scan_time_asymptotic(mu1, n, eps1), improved_scan_time_asymptotic(mu2, n, eps1)},
    };
    for (const auto& [lo, hi] : pairs) {
      CHECK(lo.bound > 0.0);
      CHECK(lo.bound < hi.bound);
      CHECK(recompute(lo) == lo.bound);
      CHECK(recompute(hi) == hi.bound);
    }
    CHECK(random_update_time(RandomVariant::L17, mu1, n, nd, eps2).bound <
          random_update_time(RandomVariant::L17, mu1, n, nd, eps1).bound);
    CHECK(scan_time(ScanVariant::C27, mu1, n, nd, eps2, eta).bound <
          scan_time(ScanVariant::C27, mu1, n, nd, eps1, eta).bound);
    CHECK(improved_scan_time(mu1, n, eps2, eta).bound < improved_scan_time(mu1, n, eps1, eta).bound);
  }
}

TEST_CASE("spectral density bound") {
  CHECK(spectral_density_bound(0.5, 1.0) == 1.0);
  CHECK(spectral_density_bound(1.5, 3.0) == 3.0);
  CHECK(std::fabs(spectral_radius(Graph::complete(4).adjacency()).lambda - 3.0) <= 1e-8);
  CHECK(kind_of([] { (void)spectral_density_bound(2.0, 3.0); }) == ErrorKind::KappaExceedsHalfAlpha);
  CHECK(kind_of([] { (void)spectral_density_bound(-0.1, 3.0); }) == ErrorKind::KappaExceedsHalfAlpha);
}

TEST_CASE("density bound soundness on random symmetric matrices") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const auto rs = oracle::random_rational_symmetric(n, 20, 20, 0.3, trial % 3 != 0, rng);
    const double lam = spectral_radius(rs.m).lambda;
    const auto kappa = kappa_matrix(rs.m, 20).value;
    const double alpha = matrix_norm(rs.m, NormKind::one());
    CHECK(lam <= spectral_density_bound(kappa.to_double(), alpha) + 1e-8);
    const auto d = decompose(rs.m, 20);
    CHECK(lam <= 2.0 * std::sqrt(d.col_max.to_double() * d.row_max.to_double()) + 1e-8);
  }
}

TEST_CASE("gap bound") {
  CHECK(gap_bound_irreducible(1.0, 1).bound == 0.0);
  const auto g = gap_bound_irreducible(0.1, 10);
  CHECK(g.bound == doctest::Approx(std::sqrt(1 - 1e-4)).epsilon(1e-15));
  CHECK(g.weak == doctest::Approx(1 - 0.5e-4).epsilon(1e-15));
  CHECK(g.bound <= g.weak);
  CHECK(kind_of([] { (void)gap_bound_irreducible(0.0, 3); }) == ErrorKind::GammaOutOfRange);
  CHECK(kind_of([] { (void)gap_bound_irreducible(1.5, 3); }) == ErrorKind::GammaOutOfRange);

  // Path of weight 1/2 with the two end rows topped up: every row sum is 1
  // except the last, which is 1 - gamma.
  for (double gamma : {0.5, 0.1, 0.01}) {
    Matrix r = Graph::path(6).adjacency() * 0.5;
    r(0, 0) = 0.5;
    r(5, 5) = 0.5 - gamma;
    CHECK(spectral_radius(r).lambda <= gap_bound_irreducible(gamma, 6).bound + 1e-8);
  }
}

TEST_CASE("class eigenvalue bounds") {
  const auto tree = lambda_bound_class(class_params(ClassParams::Forest{}), 3, 10);
  CHECK(tree.bound == doctest::Approx(2.0 * std::sqrt(0.9 * 2.1)).epsilon(1e-14));
  CHECK(std::fabs(tree.bound - 2.74955) < 5e-6);
  CHECK(std::fabs(spectral_radius(Graph::star(3).adjacency()).lambda - std::sqrt(3.0)) <= 1e-8);

  const auto nonreg = lambda_bound_class(class_params(ClassParams::NonregularConnected{2}), 2, 10);
  CHECK(nonreg.bound == doctest::Approx(std::sqrt(3.96)).epsilon(1e-14));
  CHECK(std::fabs(nonreg.bound - 1.98997) < 5e-6);

  const auto planar = lambda_bound_class(class_params(ClassParams::Planar{}), 6, 100);
  REQUIRE(planar.closed_form);
  CHECK(*planar.closed_form == doctest::Approx(6.0 - 12.0 / 1e4).epsilon(1e-14));
  CHECK(planar.bound <= *planar.closed_form + 1e-12);

  const auto genus = lambda_bound_class(class_params(ClassParams::Genus{1}), 7, 50);
  CHECK(genus.kappa_bar == 3.0);
  REQUIRE(genus.literal_form);
  CHECK(genus.bound == doctest::Approx(2.0 * std::sqrt(3.0 * 4.0)));

  CHECK(kind_of([] { (void)lambda_bound_class(class_params(ClassParams::Planar{}), 4, 100); }) ==
        ErrorKind::DeltaTooSmall);
}

TEST_CASE("class eigenvalue bounds hold on sampled graphs") {
  std::mt19937_64 rng(49);
  const auto forest = class_params(ClassParams::Forest{});
  const auto planar = class_params(ClassParams::Planar{});
  int planar_checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 28);
    const Graph t = oracle::random_tree(n, rng);
    const auto tb = lambda_bound_class(forest, t.max_degree(), n);
    const double lt = spectral_radius(t.adjacency()).lambda;
    CHECK(lt <= tb.bound + 1e-8);
    CHECK(2.0 * static_cast<double>(t.num_edges()) / static_cast<double>(n) <= lt + 1e-8);

    const Graph p = oracle::random_planar(n, 0.9, rng);
    const double lp = spectral_radius(p.adjacency()).lambda;
    CHECK(lp <= p.max_degree() + 1e-8);
    try {
      CHECK(lp <= lambda_bound_class(planar, p.max_degree(), n).bound + 1e-8);
      ++planar_checked;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DeltaTooSmall);
    }
  }
  CHECK(planar_checked >= 25);
}

TEST_CASE("colouring certificates from class parameters") {
  const auto nonreg = coloring_certificates(class_params(ClassParams::NonregularConnected{2}), 2, 3, 4, 0.01);
  const Certificate* c52 = find(nonreg, FormulaId::C52, Units::SiteUpdates);
  REQUIRE(c52);
  CHECK(c52->bound == doctest::Approx(0.5 * 4 * 27 * std::log(300.0)).epsilon(1e-12));
  CHECK(std::fabs(c52->bound - 307.9) < 0.2);
  CHECK(find(nonreg, FormulaId::C52, Units::Sweeps) != nullptr);

  const auto tree = coloring_certificates(class_params(ClassParams::Forest{}), 4, 20, 8, 0.1);
  const Certificate* t = find(tree, FormulaId::C52, Units::SiteUpdates);
  REQUIRE(t);
  CHECK(t->mu == doctest::Approx(2.0 * std::sqrt(3.0) / 4.0).epsilon(1e-14));
  CHECK(std::fabs(t->mu - 0.866) < 5e-4);
  CHECK(std::isfinite(t->bound));

  CHECK(coloring_certificates(class_params(ClassParams::Forest{}), 4, 20, 7, 0.1).empty());
  const auto custom = coloring_certificates(custom_class(Rational(1), Rational(1)), 4, 20, 8, 0.1);
  REQUIRE(!custom.empty());
  CHECK(custom.front().formula == FormulaId::T50);
  CHECK(kind_of([] { (void)coloring_certificates(class_params(ClassParams::Forest{}), 4, 20, 4, 0.1); }) ==
        ErrorKind::QTooSmall);
}

TEST_CASE("colouring certificates for concrete graphs") {
  const auto c10 = coloring_certificates(Graph::cycle(10), 5, 0.01);
  bool found = false;
  for (const auto& c : c10)
    if (c.formula == FormulaId::L17 && std::fabs(c.mu - 2.0 / 3) <= 1e-8) {
      CHECK(c.bound == doctest::Approx(30.0 * std::log(1000.0)).epsilon(1e-7));
      CHECK(std::fabs(c.bound - 207.2) < 0.05);
      found = true;
    }
  CHECK(found);
  for (const auto& c : c10) {
    CHECK(c.mu < 1.0);
    CHECK(c.bound > 0.0);
    CHECK(recompute(c) == c.bound);
  }

  const auto p3 = coloring_certificates(Graph::path(3), 5, 0.05);
  bool l17 = false;
  for (const auto& c : p3) l17 = l17 || (c.formula == FormulaId::L17 && std::fabs(c.bound - 36.85) < 0.005);
  CHECK(l17);

  CHECK(kind_of([] { (void)coloring_certificates(Graph::complete(4), 4, 0.1); }) == ErrorKind::NoCertificate);
  CHECK(kind_of([] { (void)coloring_certificates(Graph::complete(4), 3, 0.1); }) == ErrorKind::QTooSmall);
}

TEST_CASE("best certificate") {
  const auto ex = best_certificate(DependencyMatrix(oracle::example_one()), 0.01);
  CHECK_FALSE(ex.used_weighted_route);
  REQUIRE(ex.scan);
  CHECK(ex.scan->formula == FormulaId::C25);
  CHECK(ex.scan->mu == doctest::Approx(0.8));
  CHECK(ex.scan->condition.find("||R||_1") != std::string::npos);

  const auto zero = best_certificate(DependencyMatrix(Matrix(5)), 0.1);
  CHECK(zero.best.mu == 0.0);
  CHECK(zero.best.units == Units::SiteUpdates);
  CHECK(zero.best.bound == doctest::Approx(5.0 * std::log(50.0)));

  const auto fac = best_certificate(facilitated_dependency(20, 7.0 / 27), 0.25);
  CHECK(fac.used_weighted_route);
  CHECK(fac.norms.one >= 1.0);
  CHECK(fac.norms.infinity >= 1.0);
  CHECK(fac.norms.two >= 1.05);
  CHECK(fac.norms.lambda < 1.0);
  for (const auto& c : fac.candidates) {
    CHECK(c.condition.find("||R||_w") != std::string::npos);
    CHECK(c.mu < 1.0);
    CHECK(recompute(c) == c.bound);
  }

  Matrix big = Matrix::identity(3);
  CHECK(kind_of([&] { (void)best_certificate(DependencyMatrix(big), 0.1); }) == ErrorKind::NoCertificate);
}
