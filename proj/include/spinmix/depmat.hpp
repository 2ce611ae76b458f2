#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spinmix/graph.hpp"
#include "spinmix/matrix.hpp"

namespace spinmix {

/// Matrix with entries in [0,1]: entry (i,j) bounds the influence of site i on site j.
class DependencyMatrix {
 public:
  explicit DependencyMatrix(Matrix inner);

  [[nodiscard]] const Matrix& matrix() const noexcept { return inner_; }
  [[nodiscard]] std::size_t size() const noexcept { return inner_.size(); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return inner_(i, j); }

 private:
  Matrix inner_;
};

/// A permutation of the sites, 0-indexed.
class ScanOrder {
 public:
  explicit ScanOrder(std::vector<std::size_t> order);
  static ScanOrder identity(std::size_t n);

  [[nodiscard]] const std::vector<std::size_t>& sites() const noexcept { return order_; }
  [[nodiscard]] std::size_t size() const noexcept { return order_.size(); }

 private:
  std::vector<std::size_t> order_;
};

/// Identity except column j, which is column j of R.  j is 0-indexed.
Matrix site_update_matrix(const DependencyMatrix& r, std::size_t j);

/// ((n-1) I + R) / n.
Matrix random_update_matrix(const DependencyMatrix& r);

/// R_{o(1)} R_{o(2)} ... R_{o(n)}.
Matrix scan_update_matrix(const DependencyMatrix& r, const ScanOrder& order);
Matrix scan_update_matrix(const DependencyMatrix& r);

/// Upper triangle (i < j) scaled by sigma.
Matrix sigma_scale(const DependencyMatrix& r, double sigma);

/// R_ij = A_ij / (q - d_j).  Throws QTooSmall unless q > max degree.
DependencyMatrix coloring_dependency(const Graph& g, int q);

/// Symmetric D^{1/2} A D^{1/2} with D = diag(1/(q - d_j)).
Matrix hat_matrix(const Graph& g, int q);

/// ((1 - delta)/2) M where M has ones at (i,i-1), (i,i+1), (i,i+2).
DependencyMatrix facilitated_dependency(std::size_t n, double delta);

struct ScanDominationReport {
  bool holds = false;           // w R_scan <= mu w
  double max_violation = 0.0;   // max_i (w R_scan)_i - mu w_i
  std::optional<bool> sigma_holds;          // w R_scan <= w R^sigma
  std::optional<double> sigma_max_violation;
};

inline constexpr double kDominationPreTol = 1e-10;
inline constexpr double kDominationPostTol = 1e-9;

/// Checks w R_scan <= mu w given w R <= mu w.  When sigma is supplied and
/// w R^sigma <= sigma w, additionally checks w R_scan <= w R^sigma.
ScanDominationReport check_scan_domination(const DependencyMatrix& r, std::span<const double> w,
                                           double mu, std::optional<double> sigma = std::nullopt,
                                           const std::optional<ScanOrder>& order = std::nullopt);

}  // namespace spinmix
