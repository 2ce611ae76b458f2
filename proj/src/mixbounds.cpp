#include "spinmix/mixbounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "spinmix/error.hpp"
#include "spinmix/norms.hpp"

namespace spinmix {
namespace {

constexpr std::array<std::string_view, 17> kFormulaNames = {
    "L17", "L1", "C21", "L22", "C25", "C26", "C27", "L2", "L34",
    "L3",  "T44", "T45", "T47", "T48", "T50", "T51", "C52"};
constexpr std::array<std::string_view, 9> kFormNames = {
    "random_log",    "random_perturbed", "random_asymptotic",        "scan_log",     "scan_perturbed",
    "scan_asymptotic", "improved_scan",  "improved_scan_asymptotic", "half_scan_log"};
constexpr int kEtaGrid = 1000;
constexpr int kShiftHalvings = 60;

void require_mu(double mu) {
  if (!(mu >= 0.0 && mu < 1.0)) throw Error(ErrorKind::MuOutOfRange, "need 0 <= mu < 1");
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "need 0 < eps < 1");
}

void require_eta(double mu, std::optional<double> eta) {
  if (!eta || !(*eta > 0.0 && *eta < 1.0 - mu)) throw Error(ErrorKind::EtaOutOfRange, "need 0 < eta < 1 - mu");
}

double log_n_eta(double mu, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "asymptotic forms need n >= 2");
  return (1.0 - mu) / std::log(static_cast<double>(n));
}

Certificate make(FormulaId id, std::string condition, BoundForm form, double factor, double mu, double constant,
                 std::optional<double> eta, std::size_t n, double eps, Units units, bool asymptotic) {
  Certificate c;
  c.formula = id;
  c.condition = std::move(condition);
  c.form = form;
  c.factor = factor;
  c.mu = mu;
  c.constant = constant;
  c.eta = eta;
  c.n = n;
  c.eps = eps;
  c.units = units;
  c.asymptotic = asymptotic;
  c.bound = recompute(c);
  return c;
}

// Minimizes a perturbed bound over eta = (1-mu) k / 1000.
double best_eta(BoundForm form, double mu, double constant, std::size_t n, double eps) {
  double best = std::numeric_limits<double>::infinity();
  double arg = (1.0 - mu) / 2.0;
  for (int k = 1; k < kEtaGrid; ++k) {
    const double eta = (1.0 - mu) * k / kEtaGrid;
    const double b = evaluate_bound(form, 1.0, mu, constant, eta, n, eps);
    if (b < best) {
      best = b;
      arg = eta;
    }
  }
  return arg;
}

bool exact_boundary(int q, int max_degree, const Rational& a) {
  // q - Delta == 2 sqrt(a (Delta - a)), compared through squares.
  const Rational gap(q - max_degree);
  return gap * gap == Rational(4) * a * (Rational(max_degree) - a);
}

}  // namespace

std::string_view to_string(FormulaId id) noexcept { return kFormulaNames[static_cast<std::size_t>(id)]; }

std::string_view to_string(Units units) noexcept {
  return units == Units::SiteUpdates ? "site-updates" : "sweeps";
}

std::string_view to_string(BoundForm form) noexcept { return kFormNames[static_cast<std::size_t>(form)]; }

FormulaId formula_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kFormulaNames.size(); ++i)
    if (kFormulaNames[i] == s) return static_cast<FormulaId>(i);
  throw Error(ErrorKind::ParseError, "unknown formula id '" + std::string(s) + "'");
}

Units units_from_string(std::string_view s) {
  if (s == "site-updates") return Units::SiteUpdates;
  if (s == "sweeps") return Units::Sweeps;
  throw Error(ErrorKind::ParseError, "unknown units '" + std::string(s) + "'");
}

BoundForm form_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kFormNames.size(); ++i)
    if (kFormNames[i] == s) return static_cast<BoundForm>(i);
  throw Error(ErrorKind::ParseError, "unknown bound form '" + std::string(s) + "'");
}

double evaluate_bound(BoundForm form, double factor, double mu, double constant, std::optional<double> eta,
                      std::size_t n, double eps) {
  const double nd = static_cast<double>(n);
  const double e = eta.value_or(0.0);
  double base = 0.0;
  switch (form) {
    case BoundForm::RandomLog: base = nd / (1.0 - mu) * std::log(constant / eps); break;
    case BoundForm::RandomPerturbed: base = nd / (1.0 - mu - e) * std::log(constant / (e * eps)); break;
    case BoundForm::RandomAsymptotic: base = nd / (1.0 - mu) * std::log(constant / ((1.0 - mu) * eps)); break;
    case BoundForm::ScanLog: base = 1.0 / (1.0 - mu) * std::log(constant / eps); break;
    case BoundForm::ScanPerturbed: base = 1.0 / (1.0 - mu - e) * std::log(constant / (e * eps)); break;
    case BoundForm::ScanAsymptotic: base = 1.0 / (1.0 - mu) * std::log(constant / ((1.0 - mu) * eps)); break;
    case BoundForm::ImprovedScan: base = (2.0 - mu) / (2.0 - 2.0 * mu) * std::log(constant / (e * eps)); break;
    case BoundForm::ImprovedScanAsymptotic:
      base = (1.0 - mu / 2.0) / (1.0 - mu) * std::log(constant / ((1.0 - mu) * eps));
      break;
    case BoundForm::HalfScanLog: base = (1.0 - mu / 2.0) / (1.0 - mu) * std::log(constant / eps); break;
  }
  return factor * base;
}

double recompute(const Certificate& c) {
  return evaluate_bound(c.form, c.factor, c.mu, c.constant, c.eta, c.n, c.eps);
}

Certificate random_update_time(RandomVariant variant, double mu, std::size_t n, double constant, double eps,
                               std::optional<double> eta) {
  require_mu(mu);
  require_eps(eps);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  switch (variant) {
    case RandomVariant::L17:
      return make(FormulaId::L17, "||R|| <= mu", BoundForm::RandomLog, 1.0, mu, constant, std::nullopt, n, eps,
                  Units::SiteUpdates, false);
    case RandomVariant::C21:
      require_eta(mu, eta);
      return make(FormulaId::C21, "||R|| <= mu", BoundForm::RandomPerturbed, 1.0, mu, constant, eta, n, eps,
                  Units::SiteUpdates, false);
    case RandomVariant::L1:
      return make(FormulaId::L1, "||R|| <= mu", BoundForm::RandomAsymptotic, 1.0, mu, constant, log_n_eta(mu, n), n,
                  eps, Units::SiteUpdates, true);
  }
  throw Error(ErrorKind::Internal, "unhandled random variant");
}

Certificate scan_time(ScanVariant variant, double mu, std::size_t n, double constant, double eps,
                      std::optional<double> eta) {
  require_mu(mu);
  require_eps(eps);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  switch (variant) {
    case ScanVariant::L22:
      return make(FormulaId::L22, "||R_scan|| <= mu", BoundForm::ScanLog, 1.0, mu, constant, std::nullopt, n, eps,
                  Units::Sweeps, false);
    case ScanVariant::C25:
      return make(FormulaId::C25, "||R||_1 <= mu", BoundForm::ScanLog, 1.0, mu, static_cast<double>(n),
                  std::nullopt, n, eps, Units::Sweeps, false);
    case ScanVariant::C26:
      return make(FormulaId::C26, "w R <= mu w", BoundForm::ScanLog, 1.0, mu, constant, std::nullopt, n, eps,
                  Units::Sweeps, false);
    case ScanVariant::C27:
      require_eta(mu, eta);
      return make(FormulaId::C27, "||R|| <= mu", BoundForm::ScanPerturbed, 1.0, mu, constant, eta, n, eps,
                  Units::Sweeps, false);
    case ScanVariant::L2:
      return make(FormulaId::L2, "||R|| <= mu", BoundForm::ScanAsymptotic, 1.0, mu, constant, log_n_eta(mu, n), n,
                  eps, Units::Sweeps, true);
  }
  throw Error(ErrorKind::Internal, "unhandled scan variant");
}

Certificate improved_scan_time(double lambda, std::size_t n, double eps, double eta) {
  require_eps(eps);
  if (!(lambda >= 0.0)) throw Error(ErrorKind::MuOutOfRange, "lambda must be nonnegative");
  if (!(eta > 0.0)) throw Error(ErrorKind::EtaOutOfRange, "eta must be positive");
  const double mu = lambda + eta;
  if (!(mu < 1.0)) throw Error(ErrorKind::MuOutOfRange, "need lambda + eta < 1");
  Certificate c = make(FormulaId::L34, "symmetric zero-diagonal R, ||R||_2 = lambda", BoundForm::ImprovedScan, 1.0,
                       mu, static_cast<double>(n), eta, n, eps, Units::Sweeps, false);
  c.extra["lambda"] = lambda;
  c.extra["sigma"] = mu / (2.0 - mu);
  return c;
}

Certificate improved_scan_time_asymptotic(double lambda, std::size_t n, double eps) {
  require_eps(eps);
  require_mu(lambda);
  Certificate c = make(FormulaId::L3, "symmetric zero-diagonal R, ||R||_2 = lambda",
                       BoundForm::ImprovedScanAsymptotic, 1.0, lambda, static_cast<double>(n),
                       log_n_eta(lambda, n), n, eps, Units::Sweeps, true);
  c.extra["lambda"] = lambda;
  return c;
}

double spectral_density_bound(double kappa, double alpha) {
  if (!(kappa >= 0.0) || kappa > alpha / 2.0 + 1e-12)
    throw Error(ErrorKind::KappaExceedsHalfAlpha, "need 0 <= kappa <= alpha/2");
  return 2.0 * std::sqrt(std::max(0.0, kappa * (alpha - kappa)));
}

GapBound gap_bound_irreducible(double gamma, std::size_t n) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorKind::GammaOutOfRange, "need 0 < gamma <= 1");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  const double r = gamma / static_cast<double>(n);
  return GapBound{std::sqrt(1.0 - r * r), 1.0 - r * r / 2.0};
}

LambdaClassBound lambda_bound_class(const ClassParams& p, int max_degree, std::size_t n) {
  const ClassBound cb = class_density_bound(p, n);
  const double kbar = cb.kappa_bound;
  const double delta = max_degree;
  if (delta < 2.0 * kbar - 1e-12) {
    throw Error(ErrorKind::DeltaTooSmall, "need max degree >= 2 kappa (kappa bound " + std::to_string(kbar) + ")");
  }
  LambdaClassBound out;
  out.kappa_bar = kbar;
  out.bound = 2.0 * std::sqrt(std::max(0.0, kbar * (delta - kbar)));
  if (p.b > Rational(0)) {
    const double a = p.a.to_double(), b = p.b.to_double(), nd = static_cast<double>(n);
    const Rational twice_a = Rational(2) * p.a;
    if (Rational(max_degree) > twice_a) {
      out.closed_form = std::sqrt(a * (delta - a)) * (2.0 - b * (delta - 2.0 * a) / (a * (delta - a) * nd));
    } else if (Rational(max_degree) == twice_a) {
      out.closed_form = a * (2.0 - b * b / (a * a * nd * nd));
    }
  } else {
    out.literal_form = std::sqrt(std::max(0.0, kbar * (delta - kbar)));
  }
  return out;
}

std::vector<Certificate> coloring_certificates(const ClassParams& p, int max_degree, std::size_t n, int q,
                                               double eps) {
  require_eps(eps);
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (q <= max_degree) throw Error(ErrorKind::QTooSmall, "need q > max degree");
  std::vector<Certificate> out;
  const double nd = static_cast<double>(n);
  const double delta = max_degree;
  const double gap = q - max_degree;
  const FormulaId id_pos =
      std::holds_alternative<ClassParams::Custom>(p.provenance) ? FormulaId::T50 : FormulaId::C52;
  const FormulaId id_neg =
      std::holds_alternative<ClassParams::Custom>(p.provenance) ? FormulaId::T51 : FormulaId::C52;
  const std::string label = p.describe();

  auto emit_pair = [&](FormulaId id, const std::string& cond, double mu, BoundForm scan_form, double scan_factor,
                       std::map<std::string, double> extra) {
    if (!(mu < 1.0)) return;
    Certificate r = make(id, cond, BoundForm::RandomLog, 1.0, mu, nd, std::nullopt, n, eps, Units::SiteUpdates,
                         false);
    Certificate s = make(id, cond, scan_form, scan_factor, mu, nd, std::nullopt, n, eps, Units::Sweeps, true);
    r.extra = extra;
    s.extra = std::move(extra);
    out.push_back(std::move(r));
    out.push_back(std::move(s));
  };

  if (p.b > Rational(0)) {
    if (Rational(max_degree) < Rational(2) * p.a) return out;
    const double a = p.a.to_double(), b = p.b.to_double();
    const double psi = 2.0 * std::sqrt(a * (delta - a));
    const double phi = delta - 2.0 * a;
    std::map<std::string, double> extra{{"psi", psi}, {"phi", phi}, {"a", a}, {"b", b}};
    if (exact_boundary(q, max_degree, p.a)) {
      if (phi > 0.0) {
        const double mu = 1.0 - 2.0 * b * phi / (psi * psi * nd);
        emit_pair(id_pos, label + ", q = Delta + psi, phi > 0", mu, BoundForm::ScanLog, 1.0, extra);
      } else {
        const double mu = 1.0 - b * b / (2.0 * a * a * nd * nd);
        emit_pair(id_pos, label + ", q = Delta + psi, phi = 0", mu, BoundForm::ScanLog, 1.5, extra);
      }
    } else if (gap > psi) {
      emit_pair(id_pos, label + ", q > Delta + psi", psi / gap, BoundForm::HalfScanLog, 1.0, extra);
    }
    return out;
  }

  const ClassBound cb = class_density_bound(p, n);
  const double kstar = cb.kappa_bound;
  if (!(delta > 2.0 * kstar)) return out;
  const double psi = 2.0 * std::sqrt(kstar * (delta - kstar));
  std::map<std::string, double> extra{{"psi", psi},
                                      {"kappa_star", kstar},
                                      {"psi_literal", std::sqrt(kstar * (q - kstar))}};
  if (cb.kappa_bound_floor_variant) extra["kappa_star_floor_variant"] = *cb.kappa_bound_floor_variant;
  if (gap > psi) emit_pair(id_neg, label + ", q > Delta + psi", psi / gap, BoundForm::HalfScanLog, 1.0, extra);
  return out;
}

std::vector<Certificate> coloring_certificates(const Graph& g, int q, double eps, const ColoringOptions& opts) {
  require_eps(eps);
  const DependencyMatrix r = coloring_dependency(g, q);
  const std::size_t n = g.num_vertices();
  const double nd = static_cast<double>(n);
  const int max_degree = g.max_degree();
  const double gap = q - max_degree;
  std::vector<Certificate> out;

  try {
    auto best = best_certificate(r, eps);
    for (auto& c : best.candidates) out.push_back(std::move(c));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoCertificate) throw;
  }

  const double lambda_g = spectral_radius(g.adjacency()).lambda;
  const double mu = lambda_g / gap;
  if (mu < 1.0) {
    Certificate c = random_update_time(RandomVariant::L17, mu, n, nd, eps);
    c.condition = "lambda(R) <= lambda(G)/(q - Delta)";
    c.extra["lambda_G"] = lambda_g;
    out.push_back(std::move(c));
    const double eta = opts.eta.value_or((1.0 - mu) / 2.0);
    if (eta > 0.0 && mu + eta < 1.0) {
      Certificate s = improved_scan_time(mu, n, eps, eta);
      s.condition = "majorant A/(q - Delta), lambda = lambda(G)/(q - Delta)";
      s.extra["lambda_G"] = lambda_g;
      out.push_back(std::move(s));
    }
    if (n >= 2) {
      Certificate s = improved_scan_time_asymptotic(mu, n, eps);
      s.condition = "majorant A/(q - Delta), lambda = lambda(G)/(q - Delta)";
      out.push_back(std::move(s));
    }
  }

  const Density dens = max_density(g);
  const double kappa = dens.value.to_double();
  const double psi = spectral_density_bound(kappa, max_degree);
  if (psi / gap < 1.0) {
    Certificate c = make(FormulaId::T44, "lambda(G) <= 2 sqrt(kappa (Delta - kappa))", BoundForm::RandomLog, 1.0,
                         psi / gap, nd, std::nullopt, n, eps, Units::SiteUpdates, false);
    c.extra["kappa"] = kappa;
    c.extra["psi"] = psi;
    out.push_back(std::move(c));
  }

  if (opts.cls) {
    auto cls = coloring_certificates(*opts.cls, max_degree, n, q, eps);
    for (auto& c : cls) out.push_back(std::move(c));
  }
  if (out.empty()) throw Error(ErrorKind::NoCertificate, "every available route gives mu >= 1");
  return out;
}

BestCertificate best_certificate(const DependencyMatrix& r, double eps) {
  require_eps(eps);
  const Matrix& m = r.matrix();
  const std::size_t n = r.size();
  const double nd = static_cast<double>(n);
  BestCertificate out;
  out.norms.one = matrix_norm(m, NormKind::one());
  out.norms.infinity = matrix_norm(m, NormKind::infinity());
  out.norms.two = matrix_norm(m, NormKind::two());
  out.norms.lambda = spectral_radius(m).lambda;
  if (!(out.norms.lambda < 1.0)) throw Error(ErrorKind::NoCertificate, "lambda(R) >= 1");

  auto add_routes = [&](const std::string& name, double mu, double jn, bool dobrushin) {
    if (!(mu < 1.0)) return;
    Certificate l17 = random_update_time(RandomVariant::L17, mu, n, jn, eps);
    l17.condition = name + " <= mu";
    out.candidates.push_back(std::move(l17));
    Certificate c21 = random_update_time(RandomVariant::C21, mu, n, jn, eps,
                                         best_eta(BoundForm::RandomPerturbed, mu, jn, n, eps));
    c21.condition = name + " <= mu";
    out.candidates.push_back(std::move(c21));
    if (dobrushin) {
      Certificate c25 = scan_time(ScanVariant::C25, mu, n, nd, eps);
      c25.condition = name + " <= mu";
      out.candidates.push_back(std::move(c25));
    } else {
      Certificate c27 =
          scan_time(ScanVariant::C27, mu, n, jn, eps, best_eta(BoundForm::ScanPerturbed, mu, jn, n, eps));
      c27.condition = name + " <= mu";
      out.candidates.push_back(std::move(c27));
    }
  };

  add_routes("||R||_1", out.norms.one, nd, true);
  add_routes("||R||_inf", out.norms.infinity, nd, false);
  add_routes("||R||_2", out.norms.two, nd, false);

  if (out.norms.one >= 1.0 && out.norms.infinity >= 1.0 && out.norms.two >= 1.0) {
    // Non-normal R can have lambda(R + sJ) well above lambda(R), so the shift
    // is zero when R is irreducible and halved until the weighted norm is < 1.
    const bool irreducible = is_irreducible(m);
    double shift = irreducible ? 0.0 : (1.0 - out.norms.lambda) / (4.0 * nd);
    double mu = std::numeric_limits<double>::infinity(), jn = 0.0;
    for (int attempt = 0; attempt < kShiftHalvings; ++attempt) {
      const PerronCertificate pc = perron_left_vector(shift > 0.0 ? m + Matrix::ones(n) * shift : m);
      std::vector<double> w = pc.w;
      double sum = 0.0;
      for (double x : w) sum += x;
      for (double& x : w) x /= sum;
      const NormKind weighted = NormKind::weighted_one(w);
      mu = matrix_norm(m, weighted);
      jn = jn_value(weighted, n);
      if (mu < 1.0 || irreducible) break;
      shift /= 2.0;
    }
    if (mu < 1.0) {
      out.used_weighted_route = true;
      const std::size_t before = out.candidates.size();
      add_routes("||R||_w", mu, jn, false);
      for (std::size_t i = before; i < out.candidates.size(); ++i) {
        out.candidates[i].extra["w_min"] = 1.0 / jn;
        out.candidates[i].extra["perron_shift"] = shift;
      }
    }
  }
  if (out.candidates.empty()) throw Error(ErrorKind::NoCertificate, "no norm route gives mu < 1");

  for (const auto& c : out.candidates) {
    auto& slot = c.units == Units::SiteUpdates ? out.random : out.scan;
    if (!slot || c.site_updates() < slot->site_updates()) slot = c;
  }
  if (out.random && (!out.scan || out.random->site_updates() <= out.scan->site_updates())) {
    out.best = *out.random;
  } else {
    out.best = *out.scan;
  }
  return out;
}

}  // namespace spinmix
