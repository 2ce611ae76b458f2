#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinmix/density.hpp"
#include "spinmix/depmat.hpp"
#include "spinmix/graph.hpp"

namespace spinmix {

enum class FormulaId { L17, L1, C21, L22, C25, C26, C27, L2, L34, L3, T44, T45, T47, T48, T50, T51, C52 };
enum class Units { SiteUpdates, Sweeps };

/// Closed form used to turn (mu, constant, eta, n, eps) into a bound.
/// bound = factor * base, where base is:
///   RandomLog          n (1-mu)^-1 ln(constant/eps)
///   RandomPerturbed    n (1-mu-eta)^-1 ln(constant/(eta eps))
///   RandomAsymptotic   n (1-mu)^-1 ln((1-mu)^-1 constant/eps)
///   ScanLog            (1-mu)^-1 ln(constant/eps)
///   ScanPerturbed      (1-mu-eta)^-1 ln(constant/(eta eps))
///   ScanAsymptotic     (1-mu)^-1 ln((1-mu)^-1 constant/eps)
///   ImprovedScan       (2-mu)/(2-2mu) ln(constant/(eta eps))
///   ImprovedScanAsymptotic (1-mu/2)(1-mu)^-1 ln((1-mu)^-1 constant/eps)
///   HalfScanLog        (1-mu/2)(1-mu)^-1 ln(constant/eps)
enum class BoundForm {
  RandomLog,
  RandomPerturbed,
  RandomAsymptotic,
  ScanLog,
  ScanPerturbed,
  ScanAsymptotic,
  ImprovedScan,
  ImprovedScanAsymptotic,
  HalfScanLog,
};

std::string_view to_string(FormulaId id) noexcept;
std::string_view to_string(Units units) noexcept;
std::string_view to_string(BoundForm form) noexcept;
FormulaId formula_from_string(std::string_view s);
Units units_from_string(std::string_view s);
BoundForm form_from_string(std::string_view s);

struct Certificate {
  FormulaId formula = FormulaId::L17;
  std::string condition;
  double mu = 0.0;
  double constant = 1.0;
  std::optional<double> eta;
  double bound = 0.0;
  Units units = Units::SiteUpdates;
  bool asymptotic = false;
  std::size_t n = 1;
  double eps = 0.0;
  BoundForm form = BoundForm::RandomLog;
  double factor = 1.0;
  std::map<std::string, double> extra;  // psi, phi, kappa, ... for reports

  /// Bound expressed in single-site updates (sweeps * n).
  [[nodiscard]] double site_updates() const noexcept {
    return units == Units::Sweeps ? bound * static_cast<double>(n) : bound;
  }
};

double evaluate_bound(BoundForm form, double factor, double mu, double constant,
                      std::optional<double> eta, std::size_t n, double eps);
/// Recomputes the bound from the certificate's own fields.
double recompute(const Certificate& c);

enum class RandomVariant { L17, C21, L1 };
enum class ScanVariant { L22, C25, C26, C27, L2 };

/// L17: constant is C_n.  C21/L1: constant is J_n.  L1 sets eta = (1-mu)/ln n.
Certificate random_update_time(RandomVariant variant, double mu, std::size_t n, double constant,
                               double eps, std::optional<double> eta = std::nullopt);

/// L22: constant is C_n (J_n for operator norms) and mu bounds ||R_scan||.
/// C25: constant ignored (n).  C26: constant = 1/w_min.  C27/L2: constant = J_n.
Certificate scan_time(ScanVariant variant, double mu, std::size_t n, double constant, double eps,
                      std::optional<double> eta = std::nullopt);

/// Improved scan (L34): mu = lambda + eta, sweeps = (2-mu)/(2-2mu) ln(n/(eta eps)).
Certificate improved_scan_time(double lambda, std::size_t n, double eps, double eta);
/// Asymptotic improved scan (L3), eta = (1-lambda)/ln n.
Certificate improved_scan_time_asymptotic(double lambda, std::size_t n, double eps);

/// 2 sqrt(kappa (alpha - kappa)); requires 0 <= kappa <= alpha/2.
double spectral_density_bound(double kappa, double alpha);

struct GapBound {
  double bound = 0.0;  // sqrt(1 - gamma^2/n^2)
  double weak = 0.0;   // 1 - gamma^2/(2 n^2)
};
GapBound gap_bound_irreducible(double gamma, std::size_t n);

struct LambdaClassBound {
  double bound = 0.0;        // 2 sqrt(kbar (Delta - kbar))
  double kappa_bar = 0.0;
  std::optional<double> closed_form;    // weaker closed form of the b >= 0 case
  std::optional<double> literal_form;   // sqrt(kbar (Delta - kbar)), b < 0 reading
};
LambdaClassBound lambda_bound_class(const ClassParams& p, int max_degree, std::size_t n);

struct ColoringOptions {
  std::optional<ClassParams> cls;
  std::optional<double> eta;  // improved-scan eta for the graph route; default (1-lambda)/2
};

/// Certificates for heat-bath colouring dynamics of a concrete graph.
std::vector<Certificate> coloring_certificates(const Graph& g, int q, double eps,
                                               const ColoringOptions& opts = {});
/// Certificates from class parameters alone.
std::vector<Certificate> coloring_certificates(const ClassParams& p, int max_degree,
                                               std::size_t n, int q, double eps);

struct NormSummary {
  double one = 0.0;
  double infinity = 0.0;
  double two = 0.0;
  double lambda = 0.0;
};

struct BestCertificate {
  NormSummary norms;
  Certificate best;                     // smallest in site-update units
  std::optional<Certificate> random;    // best random-update certificate
  std::optional<Certificate> scan;      // best scan certificate
  std::vector<Certificate> candidates;
  bool used_weighted_route = false;
};

BestCertificate best_certificate(const DependencyMatrix& r, double eps);

}  // namespace spinmix
