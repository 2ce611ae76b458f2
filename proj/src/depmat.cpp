#include "spinmix/depmat.hpp"

#include <algorithm>
#include <cmath>

#include "spinmix/error.hpp"

namespace spinmix {

DependencyMatrix::DependencyMatrix(Matrix inner) : inner_(std::move(inner)) {
  if (inner_.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty dependency matrix");
  for (double x : inner_.entries()) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite dependency entry");
    if (x < 0.0) throw Error(ErrorKind::NegativeEntry, "dependency entries must be nonnegative");
    if (x > 1.0) throw Error(ErrorKind::InvalidArgument, "dependency entries must be at most 1");
  }
}

ScanOrder::ScanOrder(std::vector<std::size_t> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (std::size_t s : order_) {
    if (s >= order_.size() || seen[s]) throw Error(ErrorKind::InvalidArgument, "scan order is not a permutation");
    seen[s] = true;
  }
}

ScanOrder ScanOrder::identity(std::size_t n) {
  std::vector<std::size_t> o(n);
  for (std::size_t i = 0; i < n; ++i) o[i] = i;
  return ScanOrder(std::move(o));
}

Matrix site_update_matrix(const DependencyMatrix& r, std::size_t j) {
  const std::size_t n = r.size();
  if (j >= n) throw Error(ErrorKind::InvalidArgument, "site index out of range");
  Matrix m = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) m(i, j) = r(i, j);
  return m;
}

Matrix random_update_matrix(const DependencyMatrix& r) {
  const std::size_t n = r.size();
  const double scale = 1.0 / static_cast<double>(n);
  Matrix m = r.matrix();
  for (std::size_t i = 0; i < n; ++i) m(i, i) += static_cast<double>(n - 1);
  return m * scale;
}

Matrix scan_update_matrix(const DependencyMatrix& r, const ScanOrder& order) {
  const std::size_t n = r.size();
  if (order.size() != n) throw Error(ErrorKind::DimensionMismatch, "scan order length differs from n");
  // Right-multiplying by R_j replaces column j by the current product times column j of R.
  Matrix p = Matrix::identity(n);
  Vector col(n);
  for (std::size_t j : order.sites()) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += p(i, k) * r(k, j);
      col[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) p(i, j) = col[i];
  }
  return p;
}

Matrix scan_update_matrix(const DependencyMatrix& r) { return scan_update_matrix(r, ScanOrder::identity(r.size())); }

Matrix sigma_scale(const DependencyMatrix& r, double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw Error(ErrorKind::InvalidArgument, "sigma must lie in [0,1]");
  Matrix m = r.matrix();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) m(i, j) *= sigma;
  return m;
}

namespace {

void require_q(const Graph& g, int q) {
  if (g.num_vertices() == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  if (q <= g.max_degree()) {
    throw Error(ErrorKind::QTooSmall,
                "need q > max degree (q = " + std::to_string(q) + ", max degree = " + std::to_string(g.max_degree()) + ")");
  }
}

}  // namespace

DependencyMatrix coloring_dependency(const Graph& g, int q) {
  require_q(g, q);
  const Matrix a = g.adjacency();
  Matrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j) != 0.0) r(i, j) = a(i, j) / static_cast<double>(q - g.degree(j));
  return DependencyMatrix(std::move(r));
}

Matrix hat_matrix(const Graph& g, int q) {
  require_q(g, q);
  const Matrix a = g.adjacency();
  Matrix h(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a(i, j) == 0.0) continue;
      // Product taken in a fixed order so that h(i,j) == h(j,i) bit for bit.
      const double di = q - g.degree(i), dj = q - g.degree(j);
      h(i, j) = a(i, j) / std::sqrt(std::min(di, dj) * std::max(di, dj));
    }
  }
  return h;
}

DependencyMatrix facilitated_dependency(std::size_t n, double delta) {
  if (n <= 3) throw Error(ErrorKind::InvalidArgument, "facilitated model needs n > 3");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidArgument, "delta must lie in (0,1)");
  const double v = (1.0 - delta) / 2.0;
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 1) r(i, i - 1) = v;
    if (i + 1 < n) r(i, i + 1) = v;
    if (i + 2 < n) r(i, i + 2) = v;
  }
  return DependencyMatrix(std::move(r));
}

ScanDominationReport check_scan_domination(const DependencyMatrix& r, std::span<const double> w, double mu,
                                           std::optional<double> sigma, const std::optional<ScanOrder>& order) {
  const std::size_t n = r.size();
  if (w.size() != n) throw Error(ErrorKind::DimensionMismatch, "weight length differs from n");
  if (mu > 1.0) throw Error(ErrorKind::PreconditionFailed, "mu must be at most 1");
  for (double x : w)
    if (!(x > 0.0)) throw Error(ErrorKind::PreconditionFailed, "w must be strictly positive");

  const Vector wr = left_multiply(w, r.matrix());
  for (std::size_t i = 0; i < n; ++i) {
    if (wr[i] > mu * w[i] + kDominationPreTol) {
      throw Error(ErrorKind::PreconditionFailed, "w R <= mu w fails at site " + std::to_string(i + 1));
    }
  }

  const Matrix scan = order ? scan_update_matrix(r, *order) : scan_update_matrix(r);
  const Vector ws = left_multiply(w, scan);
  ScanDominationReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) report.max_violation = std::max(report.max_violation, ws[i] - mu * w[i]);
  report.holds = report.max_violation <= kDominationPostTol;

  if (sigma) {
    const Vector wsig = left_multiply(w, sigma_scale(r, *sigma));
    for (std::size_t i = 0; i < n; ++i) {
      if (wsig[i] > *sigma * w[i] + kDominationPreTol) {
        throw Error(ErrorKind::PreconditionFailed, "w R^sigma <= sigma w fails at site " + std::to_string(i + 1));
      }
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, ws[i] - wsig[i]);
    report.sigma_max_violation = worst;
    report.sigma_holds = worst <= kDominationPostTol;
  }
  return report;
}

}  // namespace spinmix
