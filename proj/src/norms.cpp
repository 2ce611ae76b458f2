#include "spinmix/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "spinmix/error.hpp"

namespace spinmix {
namespace {

void require_square(const Matrix& r) {
  if (r.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  if (!r.all_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite entry");
}

void require_nonnegative(const Matrix& r) {
  require_square(r);
  if (!r.is_nonnegative()) throw Error(ErrorKind::NegativeEntry, "matrix has a negative entry");
}

// Power iteration on (M + I) for an irreducible nonnegative block of
// dimension >= 2.  Returns the bracket midpoint and the final vector.
struct BlockResult {
  double lambda = 0.0;
  double residual = 0.0;
  long iterations = 0;
  Vector v;
};

BlockResult perron_block(const Matrix& m, const SpectralOptions& opts) {
  const std::size_t n = m.size();
  std::mt19937_64 gen(0x5eed5eedULL + n);
  std::uniform_real_distribution<double> start(0.5, 1.5);
  Vector v(n);
  for (double& x : v) x = start(gen);

  BlockResult out;
  Vector mv(n);
  for (long it = 1; it <= opts.max_iterations; ++it) {
    mv = right_multiply(m, v);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ratio = mv[i] / v[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    Vector next(n);
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = mv[i] + v[i];
      top = std::max(top, next[i]);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= top;
      change = std::max(change, std::fabs(next[i] - v[i]) / next[i]);
    }
    const bool bracket_ok = hi - lo <= opts.tol * hi;
    if (bracket_ok && change <= opts.tol) {
      out.lambda = 0.5 * (lo + hi);
      out.iterations = it;
      double vmax = *std::max_element(v.begin(), v.end());
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::fabs(out.lambda * v[i] - mv[i]));
      out.residual = res / vmax;
      out.v = std::move(v);
      return out;
    }
    v = std::move(next);
  }
  throw Error(ErrorKind::NonConvergence,
              "power iteration did not converge within " + std::to_string(opts.max_iterations) + " iterations");
}

}  // namespace

NormKind NormKind::weighted_one(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidArgument, "empty weight vector");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::InvalidArgument, "weights must be positive");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "weights must sum to 1");
  NormKind k(Tag::WeightedOne);
  k.weights_ = std::move(weights);
  return k;
}

std::string NormKind::name() const {
  switch (tag_) {
    case Tag::One: return "one";
    case Tag::Two: return "two";
    case Tag::Infinity: return "infinity";
    case Tag::Frobenius: return "frobenius";
    case Tag::WeightedOne: return "weighted_one";
    case Tag::MaxOneInf: return "max_one_inf";
  }
  return "unknown";
}

double matrix_norm(const Matrix& r, const NormKind& kind) {
  require_square(r);
  const std::size_t n = r.size();
  auto col_max = [&] {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::fabs(r(i, j));
      best = std::max(best, s);
    }
    return best;
  };
  auto row_max = [&] {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += std::fabs(r(i, j));
      best = std::max(best, s);
    }
    return best;
  };

  switch (kind.tag()) {
    case NormKind::Tag::One:
      return col_max();
    case NormKind::Tag::Infinity:
      return row_max();
    case NormKind::Tag::MaxOneInf:
      return std::max(col_max(), row_max());
    case NormKind::Tag::Frobenius: {
      double s = 0.0;
      for (double x : r.entries()) s += x * x;
      return std::sqrt(s);
    }
    case NormKind::Tag::WeightedOne: {
      const auto& w = kind.weights();
      if (w.size() != n) throw Error(ErrorKind::DimensionMismatch, "weight length differs from matrix order");
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(r(i, j));
        best = std::max(best, s / w[j]);
      }
      return best;
    }
    case NormKind::Tag::Two: {
      const Matrix gram = r.transpose() * r;
      if (r.is_nonnegative()) return std::sqrt(spectral_radius(gram).lambda);
      return std::sqrt(std::max(0.0, symmetric_max_eigenvalue(gram)));
    }
  }
  throw Error(ErrorKind::Internal, "unhandled norm kind");
}

double dual_norm(const Matrix& r, const NormKind& kind) { return matrix_norm(r.transpose(), kind); }

SpectralResult spectral_radius(const Matrix& r, const SpectralOptions& opts) {
  require_nonnegative(r);
  SpectralResult result;
  bool have = false;
  for (const auto& comp : strong_components(r)) {
    if (comp.size() == 1) {
      const double d = r(comp[0], comp[0]);
      if (!have || d > result.lambda) {
        result.lambda = d;
        result.residual = 0.0;
        have = true;
      }
      continue;
    }
    const BlockResult block = perron_block(principal_submatrix(r, comp), opts);
    result.iterations += block.iterations;
    if (!have || block.lambda > result.lambda) {
      result.lambda = block.lambda;
      result.residual = block.residual;
      have = true;
    }
  }
  return result;
}

double numerical_radius(const Matrix& r, const SpectralOptions& opts) {
  require_nonnegative(r);
  Matrix sym = r + r.transpose();
  sym *= 0.5;
  return spectral_radius(sym, opts).lambda;
}

PerronCertificate perron_left_vector(const Matrix& r, const SpectralOptions& opts) {
  require_nonnegative(r);
  const std::size_t n = r.size();
  if (n == 1) {
    return PerronCertificate{{1.0}, r(0, 0), 0.0};
  }
  if (!is_irreducible(r)) throw Error(ErrorKind::ReducibleMatrix, "G(R) is not strongly connected");
  BlockResult block = perron_block(r.transpose(), opts);
  PerronCertificate cert;
  const double top = *std::max_element(block.v.begin(), block.v.end());
  cert.w = block.v;
  for (double& x : cert.w) x /= top;
  cert.mu = block.lambda;
  const Vector wr = left_multiply(cert.w, r);
  cert.slack = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) cert.slack = std::max(cert.slack, wr[i] - cert.mu * cert.w[i]);
  return cert;
}

double jn_value(const NormKind& kind, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  if (kind.tag() == NormKind::Tag::WeightedOne) {
    const auto& w = kind.weights();
    if (w.size() != n) throw Error(ErrorKind::DimensionMismatch, "weight length differs from n");
    return 1.0 / *std::min_element(w.begin(), w.end());
  }
  return static_cast<double>(n);
}

double cn_value(const NormKind& kind, std::size_t n) {
  if (kind.tag() == NormKind::Tag::MaxOneInf) return static_cast<double>(n) * static_cast<double>(n);
  // Operator norms have C_n = J_n; for Frobenius ||1|| ||1^T|| = sqrt(n) sqrt(n).
  return jn_value(kind, n);
}

PerturbResult perturb(const Matrix& r, double mu, double eta, const NormKind& kind) {
  require_nonnegative(r);
  const double norm = matrix_norm(r, kind);
  if (!(mu < 1.0) || norm > mu) {
    throw Error(ErrorKind::MuOutOfRange, "need ||R|| <= mu < 1 (||R|| = " + std::to_string(norm) + ")");
  }
  if (!(eta > 0.0) || !(eta < 1.0 - mu)) throw Error(ErrorKind::EtaOutOfRange, "need 0 < eta < 1 - mu");
  const std::size_t n = r.size();
  const double jn = jn_value(kind, n);
  PerturbResult out;
  out.rprime = r + Matrix::ones(n) * (eta / jn);
  out.w = perron_left_vector(out.rprime).w;
  out.muprime = mu + eta;
  out.eta = eta;
  return out;
}

double symmetric_max_eigenvalue(const Matrix& s) {
  require_square(s);
  const std::size_t n = s.size();
  Matrix a = s;
  double scale = 0.0;
  for (double x : a.entries()) scale += x * x;
  if (scale == 0.0) return 0.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-30 * scale) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
      }
    }
  }
  double best = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, a(i, i));
  return best;
}

}  // namespace spinmix
