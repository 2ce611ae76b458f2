#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spinmix/matrix.hpp"

namespace spinmix {

/// Default stopping tolerance for the Perron iterations.
inline constexpr double kIterationTol = 1e-10;
inline constexpr long kDefaultIterationCap = 1'000'000;

/// Which matrix norm to evaluate.  WeightedOne is ||W R W^-1||_1 with
/// W = diag(w); MaxOneInf is max(||R||_1, ||R||_inf).
class NormKind {
 public:
  enum class Tag { One, Two, Infinity, Frobenius, WeightedOne, MaxOneInf };

  static NormKind one() { return NormKind(Tag::One); }
  static NormKind two() { return NormKind(Tag::Two); }
  static NormKind infinity() { return NormKind(Tag::Infinity); }
  static NormKind frobenius() { return NormKind(Tag::Frobenius); }
  static NormKind max_one_inf() { return NormKind(Tag::MaxOneInf); }
  /// Weights must be strictly positive and sum to 1 within 1e-12.
  static NormKind weighted_one(std::vector<double> weights);

  [[nodiscard]] Tag tag() const noexcept { return tag_; }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
  [[nodiscard]] bool is_operator_norm() const noexcept {
    return tag_ != Tag::Frobenius && tag_ != Tag::MaxOneInf;
  }
  [[nodiscard]] std::string name() const;

 private:
  explicit NormKind(Tag tag) : tag_(tag) {}
  Tag tag_;
  std::vector<double> weights_;
};

struct SpectralResult {
  double lambda = 0.0;
  long iterations = 0;
  double residual = 0.0;
};

struct PerronCertificate {
  std::vector<double> w;  // ||w||_inf = 1, strictly positive
  double mu = 0.0;
  double slack = 0.0;  // max_i (wR)_i - mu w_i
};

struct PerturbResult {
  Matrix rprime;
  std::vector<double> w;
  double muprime = 0.0;
  double eta = 0.0;
};

struct SpectralOptions {
  double tol = kIterationTol;
  long max_iterations = kDefaultIterationCap;
};

double matrix_norm(const Matrix& r, const NormKind& kind);
double dual_norm(const Matrix& r, const NormKind& kind);

/// Perron root of a nonnegative matrix.  Power iteration on R + I is run per
/// strongly connected component; each component stops once the
/// Collatz-Wielandt bracket [min (Rv)_i/v_i, max (Rv)_i/v_i] is narrower
/// than tol.  Throws NonConvergence when the cap is hit.
SpectralResult spectral_radius(const Matrix& r, const SpectralOptions& opts = {});

/// lambda((R + R^T)/2).
double numerical_radius(const Matrix& r, const SpectralOptions& opts = {});

/// Left Perron vector of an irreducible nonnegative matrix; ReducibleMatrix otherwise.
PerronCertificate perron_left_vector(const Matrix& r, const SpectralOptions& opts = {});

/// J_n = ||J|| and C_n = ||1|| ||1^T|| for the given norm.
double jn_value(const NormKind& kind, std::size_t n);
double cn_value(const NormKind& kind, std::size_t n);

/// R' = R + (eta / J_n) J together with a left vector w satisfying
/// w R' <= (mu + eta) w and min w >= eta / J_n.
PerturbResult perturb(const Matrix& r, double mu, double eta, const NormKind& kind);

/// Largest eigenvalue of a symmetric matrix (cyclic Jacobi); used when the
/// matrix has negative entries and the Perron route does not apply.
double symmetric_max_eigenvalue(const Matrix& s);

}  // namespace spinmix
