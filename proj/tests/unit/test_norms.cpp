#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spinmix/error.hpp"
#include "spinmix/graph.hpp"
#include "spinmix/norms.hpp"

using namespace spinmix;

namespace {

Matrix nilpotent() { return Matrix{{0, 1}, {0, 0}}; }

std::vector<NormKind> all_kinds(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(n);
  double s = 0;
  for (double& x : w) s += (x = u(rng));
  for (double& x : w) x /= s;
  return {NormKind::one(), NormKind::two(), NormKind::infinity(), NormKind::frobenius(), NormKind::weighted_one(w),
          NormKind::max_one_inf()};
}

}  // namespace

TEST_CASE("norms of the bidiagonal chain") {
  const Matrix r = oracle::example_one();
  CHECK(matrix_norm(r, NormKind::one()) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(matrix_norm(r, NormKind::infinity()) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(matrix_norm(r, NormKind::max_one_inf()) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(std::fabs(spectral_radius(r).lambda - 0.4) <= 1e-8);
  CHECK(std::fabs(matrix_norm(r, NormKind::two()) - oracle::two_norm(r)) <= 1e-9);
}

TEST_CASE("identity and small fixed matrices") {
  const Matrix id = Matrix::identity(5);
  CHECK(matrix_norm(id, NormKind::one()) == 1.0);
  for (const auto& k : {NormKind::one(), NormKind::two(), NormKind::infinity()})
    CHECK(dual_norm(id, k) == doctest::Approx(1.0));
  const Matrix eps_case{{0.1, 0.8}, {0.1, 0.1}};
  CHECK(matrix_norm(eps_case, NormKind::two()) > 0.8);
  CHECK(spectral_radius(nilpotent()).lambda == doctest::Approx(0.0));
  CHECK(numerical_radius(nilpotent()) == doctest::Approx(0.5));
  CHECK(numerical_radius(Matrix::identity(3)) == doctest::Approx(1.0));
  CHECK(std::fabs(spectral_radius(Graph::cycle(6).adjacency()).lambda - 2.0) <= 1e-8);
  CHECK(spectral_radius(Matrix{{0.7}}).lambda == 0.7);
}

TEST_CASE("weighted-one norm validation") {
  CHECK_THROWS_AS(NormKind::weighted_one({0.5, 0.6}), Error);
  CHECK_THROWS_AS(NormKind::weighted_one({1.0, 0.0}), Error);
  try {
    (void)matrix_norm(Matrix::identity(3), NormKind::weighted_one({0.5, 0.5}));
    FAIL("expected a dimension mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("Perron left vector") {
  const auto p = perron_left_vector(oracle::example_one());
  for (std::size_t i = 1; i + 2 < p.w.size(); ++i) CHECK(std::fabs(p.w[i] / p.w[i + 1] - 2.0) <= 1e-6);
  CHECK(p.slack <= 1e-9);
  const auto j = perron_left_vector(Matrix::ones(4) * 0.25);
  CHECK(j.mu == doctest::Approx(1.0));
  for (double x : j.w) CHECK(x == doctest::Approx(1.0));
  try {
    (void)perron_left_vector(nilpotent());
    FAIL("expected ReducibleMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReducibleMatrix);
  }
}

TEST_CASE("Perron vector agrees with a dense eigensolver") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix r = oracle::random_nonnegative(7, 1.0, 0.0, rng);
    const auto p = perron_left_vector(r);
    const auto ref = oracle::left_perron(r);
    CHECK(std::fabs(p.mu - oracle::spectral_radius(r)) <= 1e-8);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::fabs(p.w[i] - ref[i]) <= 1e-6);
  }
}

TEST_CASE("J_n and C_n") {
  CHECK(jn_value(NormKind::two(), 7) == 7.0);
  CHECK(cn_value(NormKind::two(), 7) == 7.0);
  CHECK(jn_value(NormKind::weighted_one({0.5, 0.3, 0.2}), 3) == doctest::Approx(5.0));
  CHECK(jn_value(NormKind::max_one_inf(), 4) == 4.0);
  CHECK(cn_value(NormKind::max_one_inf(), 4) == 16.0);
}

TEST_CASE("perturbation") {
  const Matrix r = oracle::example_one();
  const auto p = perturb(r, 0.8, 0.1, NormKind::one());
  CHECK(*std::min_element(p.w.begin(), p.w.end()) >= 0.01 - 1e-12);
  CHECK(p.muprime == doctest::Approx(0.9));
  const auto wr = left_multiply(p.w, p.rprime);
  for (std::size_t i = 0; i < wr.size(); ++i) CHECK(wr[i] <= p.muprime * p.w[i] + 1e-9);

  const auto z = perturb(Matrix(3), 0.0, 0.5, NormKind::one());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(z.rprime(i, j) == doctest::Approx(0.5 / 3));
  for (double x : z.w) CHECK(x == doctest::Approx(1.0));
  CHECK(z.muprime == 0.5);

  std::mt19937_64 rng(5);
  Matrix m = oracle::random_nonnegative(6, 1.0, 0.3, rng);
  m *= 0.7 / oracle::two_norm(m);
  const auto q = perturb(m, 0.7, 0.05, NormKind::two());
  const auto wq = left_multiply(q.w, q.rprime);
  double slack = -1;
  for (std::size_t i = 0; i < 6; ++i) slack = std::max(slack, wq[i] - q.muprime * q.w[i]);
  CHECK(slack <= 1e-9);

  CHECK_THROWS_AS(perturb(r, 0.8, 0.25, NormKind::one()), Error);
  CHECK_THROWS_AS(perturb(r, 0.7, 0.1, NormKind::one()), Error);
}

TEST_CASE("norm axioms on random matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> scale(0.1, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const Matrix a = oracle::random_nonnegative(n, 1.0, 0.2, rng);
    const Matrix b = oracle::random_nonnegative(n, 1.0, 0.2, rng);
    const double s = scale(rng);
    for (const auto& k : all_kinds(n, rng)) {
      const double na = matrix_norm(a, k), nb = matrix_norm(b, k);
      CHECK(na >= 0.0);
      CHECK(std::fabs(matrix_norm(a * s, k) - s * na) <= 1e-9 * (1 + s * na));
      CHECK(matrix_norm(a + b, k) <= na + nb + 1e-9);
      CHECK(matrix_norm(a * b, k) <= na * nb + 1e-9);
    }
    CHECK(matrix_norm(Matrix(n), NormKind::one()) == 0.0);
  }
}

TEST_CASE("norm relations on random matrices") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const Matrix r = oracle::random_nonnegative(n, 1.0, 0.4, rng);
    const double lambda = spectral_radius(r).lambda;
    CHECK(std::fabs(lambda - oracle::spectral_radius(r)) <= 1e-8);
    CHECK(matrix_norm(r, NormKind::one()) == dual_norm(r, NormKind::infinity()));
    CHECK(std::fabs(matrix_norm(r, NormKind::two()) - dual_norm(r, NormKind::two())) <= 1e-9);
    for (const auto& k : all_kinds(n, rng)) CHECK(lambda <= matrix_norm(r, k) + 1e-8);
    const double nu = numerical_radius(r), two = matrix_norm(r, NormKind::two());
    CHECK(std::fabs(two - oracle::two_norm(r)) <= 1e-8);
    CHECK(lambda <= nu + 1e-8);
    CHECK(nu <= two + 1e-8);
    CHECK(two * two <= matrix_norm(r, NormKind::one()) * matrix_norm(r, NormKind::infinity()) + 1e-8);
    CHECK(two <= std::sqrt(static_cast<double>(n)) * matrix_norm(r, NormKind::one()) + 1e-8);
    Matrix bigger = r + oracle::random_nonnegative(n, 0.2, 0.5, rng);
    CHECK(lambda <= spectral_radius(bigger).lambda + 1e-8);
    const Matrix sym = r + r.transpose();
    const double ls = spectral_radius(sym).lambda;
    CHECK(std::fabs(ls - numerical_radius(sym)) <= 1e-8);
    CHECK(std::fabs(ls - matrix_norm(sym, NormKind::two())) <= 1e-8);
  }
}

TEST_CASE("spectral radius of block-diagonal matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracle::random_nonnegative(3, 1.0, 0.3, rng);
    const Matrix b = oracle::random_nonnegative(4, 1.0, 0.3, rng);
    Matrix m(7);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(3 + i, 3 + j) = b(i, j);
    const double expect = std::max(spectral_radius(a).lambda, spectral_radius(b).lambda);
    CHECK(std::fabs(spectral_radius(m).lambda - expect) <= 1e-8);
  }
}

TEST_CASE("spectral radius reports its residual and honours the cap") {
  const auto s = spectral_radius(oracle::example_one());
  CHECK(s.residual <= 1e-8);
  CHECK(s.iterations > 0);
  SpectralOptions tight;
  tight.max_iterations = 1;
  tight.tol = 1e-15;
  try {
    (void)spectral_radius(oracle::example_one(), tight);
    FAIL("expected NonConvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
  }
}

TEST_CASE("symmetric eigenvalue routine") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i; j < 6; ++j) m(i, j) = m(j, i) = g(rng);
    CHECK(std::fabs(symmetric_max_eigenvalue(m) - oracle::sym_max_eigenvalue(m)) <= 1e-9);
  }
}
