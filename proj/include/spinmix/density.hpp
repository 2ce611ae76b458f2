#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinmix/graph.hpp"
#include "spinmix/matrix.hpp"
#include "spinmix/rational.hpp"

namespace spinmix {

/// Exact maximum density together with a subset achieving it.
struct Density {
  Rational value;
  std::vector<std::size_t> witness;  // 0-indexed, ascending

  [[nodiscard]] std::int64_t num() const noexcept { return value.num(); }
  [[nodiscard]] std::int64_t den() const noexcept { return value.den(); }
};

/// max_{S != {}} |E_S| / |S|; ties go to the smallest witness, then the
/// lexicographically smallest.
Density max_density(const Graph& g);

/// Symmetric matrix with entries k / denominator.  Entries are snapped to
/// rationals with denominator <= 10^6 when no denominator is supplied.
struct RationalMatrix {
  std::size_t n = 0;
  std::int64_t denominator = 1;
  std::vector<std::int64_t> numerators;  // row-major

  [[nodiscard]] std::int64_t at(std::size_t i, std::size_t j) const { return numerators[i * n + j]; }
  [[nodiscard]] Rational entry(std::size_t i, std::size_t j) const { return {at(i, j), denominator}; }
  [[nodiscard]] Matrix to_matrix() const;
};

inline constexpr std::int64_t kRationalScaleCap = 1'000'000;

RationalMatrix rationalize(const Matrix& r, std::optional<std::int64_t> denominator = std::nullopt);

/// kappa(R) = max_I sum_{i,j in I} R_ij / (2|I|), exactly.
Density kappa_matrix(const RationalMatrix& r);
Density kappa_matrix(const Matrix& r, std::optional<std::int64_t> denominator = std::nullopt);

/// Floating-point subset enumeration of kappa(R); n <= 24.
double kappa_matrix_enumerate(const Matrix& r);

struct Orientation {
  /// head[e] is the endpoint edge e points to (its in-vertex).
  std::vector<std::size_t> head;
  std::vector<int> indeg;
  std::vector<int> outdeg;
};

/// A subset S violating |E_S| <= min{sum_S u, sum_S (d - l)}.
struct OrientationWitness {
  std::vector<std::size_t> subset;
  std::int64_t induced_edges = 0;
  std::int64_t upper_sum = 0;
  std::int64_t out_capacity_sum = 0;  // sum_S (d_v - l_v)
};

using OrientationResult = std::variant<Orientation, OrientationWitness>;

/// Orientation with lower_v <= indeg_v <= upper_v, or a violating set.
OrientationResult orient_with_bounds(const Graph& g, const std::vector<std::int64_t>& lower,
                                     const std::vector<std::int64_t>& upper);

/// R = B + B^T with ||B||_1 <= kappa and ||B||_inf <= alpha - kappa.
/// B = numerators / scale exactly.
struct Decomposition {
  Matrix b;
  std::int64_t scale = 1;
  std::vector<std::int64_t> numerators;  // row-major, B_ij = numerators / scale
  Rational col_max;                      // ||B||_1
  Rational row_max;                      // ||B||_inf
  Rational kappa;
  Rational alpha;                        // ||R||_1

  [[nodiscard]] Rational entry(std::size_t i, std::size_t j) const {
    return {numerators[i * b.size() + j], scale};
  }
};

Decomposition decompose(const RationalMatrix& r);
Decomposition decompose(const Matrix& r, std::optional<std::int64_t> denominator = std::nullopt);
Decomposition decompose(const Graph& g);

/// Hereditary class G(a, b): every n-vertex member has at most a n - b edges.
struct ClassParams {
  struct NonregularConnected { int max_degree; };
  struct Forest {};
  struct TreeWidth { int t; };
  struct Planar {};
  struct Genus { int g; };
  struct Custom {};
  using Provenance = std::variant<NonregularConnected, Forest, TreeWidth, Planar, Genus, Custom>;

  Rational a;
  Rational b;
  Provenance provenance = Custom{};

  [[nodiscard]] std::string describe() const;
};

ClassParams class_params(const ClassParams::Provenance& provenance);
ClassParams custom_class(Rational a, Rational b);

struct ClassBound {
  double kappa_bound = 0.0;
  std::optional<double> kstar;
  /// Same bound with floor(k*) in the a - b/k denominator (b <= 0 only).
  std::optional<double> kappa_bound_floor_variant;
  /// kappa_bound <= alpha / 2 when alpha was supplied.
  std::optional<bool> within_half_alpha;
};

ClassBound class_density_bound(const ClassParams& p, std::size_t n,
                               std::optional<double> alpha = std::nullopt);

}  // namespace spinmix
