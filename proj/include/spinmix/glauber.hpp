#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "spinmix/depmat.hpp"
#include "spinmix/graph.hpp"
#include "spinmix/matrix.hpp"
#include "spinmix/rng.hpp"

namespace spinmix {

/// Spins, one per site.  Colours are 0..q-1; facilitated spins are 0/1.
using State = std::vector<int>;

struct ColoringSystem {
  Graph graph;
  int q = 0;
};

struct FacilitatedSystem {
  std::size_t n = 0;
  double delta = 0.0;
};

using System = std::variant<ColoringSystem, FacilitatedSystem>;

struct RandomUpdate {};
struct Scan {
  ScanOrder order;
};
using UpdateRule = std::variant<RandomUpdate, Scan>;

struct ChainSpec {
  System system;
  UpdateRule update = RandomUpdate{};
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t num_sites() const;
  /// Heat-bath connectivity is only guaranteed for q >= Delta + 2.
  [[nodiscard]] bool connectivity_warning() const;
};

/// Colours not used by any neighbour of j, ascending.
std::vector<int> legal_colors(std::span<const int> state, const Graph& g, int q, std::size_t j);
bool is_proper(std::span<const int> state, const Graph& g);

/// Redraws the spin at j uniformly from the legal colours.
State heatbath_update(State state, const Graph& g, int q, std::size_t j, Rng& rng);

/// Resamples j uniformly from {0,1} when none of j-2, j-1, j+1 is 1;
/// otherwise resamples only with probability delta.
State facilitated_step(State state, std::size_t n, double delta, std::size_t j, Rng& rng);

/// RandomUpdate: `steps` single-site updates.  Scan: `steps` sweeps.
/// Returns every intermediate state, start included.
std::vector<State> run(const ChainSpec& spec, const State& start, std::size_t steps);

struct CouplingStats {
  std::vector<double> mean_hamming;   // index t = 0..maxsteps
  std::vector<double> var_hamming;
  std::vector<double> coalesced_frac;
  std::vector<double> mean_weighted;  // d_w, when weights supplied
  std::vector<double> var_weighted;
  std::vector<long> coupling_times;   // -1 if not coalesced
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct CouplingOptions {
  std::size_t trials = 1;
  std::size_t threads = 1;
  std::optional<std::vector<double>> weights;
};

/// Two chains sharing site choices, each update maximally coupled (common
/// legal colours matched first, residuals paired in ascending order).
CouplingStats coupled_run(const ChainSpec& spec, const State& x0, const State& y0,
                          std::size_t maxsteps, const CouplingOptions& opts = {});

/// Maximal coupling of uniform(a) and uniform(b) driven by one uniform u.
std::pair<int, int> couple_uniform(std::span<const int> a, std::span<const int> b, double u);

/// Enumerated state space with per-site exact kernels (sparse rows).
class ExactChain {
 public:
  struct Entry {
    std::size_t to;
    double p;
  };
  using Kernel = std::vector<std::vector<Entry>>;

  /// proper_only: restrict colourings to proper ones (closed under heat bath).
  ExactChain(const System& system, std::size_t cap, bool proper_only = true);

  [[nodiscard]] std::size_t size() const noexcept { return states_.size(); }
  [[nodiscard]] std::size_t num_sites() const noexcept { return sites_; }
  /// Spin values are 0..radix()-1.
  [[nodiscard]] int radix() const noexcept { return radix_; }
  [[nodiscard]] const std::vector<State>& states() const noexcept { return states_; }
  [[nodiscard]] std::optional<std::size_t> index_of(std::span<const int> s) const;
  [[nodiscard]] const Kernel& site_kernel(std::size_t j) const { return kernels_[j]; }
  [[nodiscard]] std::vector<double> stationary() const;  // uniform on the space

  /// p P^[j] for a row distribution p.
  [[nodiscard]] std::vector<double> step_distribution(std::span<const double> p, std::size_t j) const;
  /// P^[j] f for a column function f.
  [[nodiscard]] std::vector<double> apply_function(std::span<const double> f, std::size_t j) const;

 private:
  [[nodiscard]] std::uint64_t encode(std::span<const int> s) const;
  Kernel build_kernel(const System& system, std::size_t j) const;

  std::size_t sites_ = 0;
  int radix_ = 2;
  std::vector<State> states_;
  std::unordered_map<std::uint64_t, std::size_t> code_to_index_;
  std::vector<Kernel> kernels_;
};

inline constexpr std::size_t kDefaultStateCap = 20'000;

struct TVReport {
  std::size_t t = 0;
  double tv = 0.0;
  std::size_t statespace = 0;
};

/// Max-over-starts total variation to the uniform stationary law, t = 0..horizon
/// (steps for RandomUpdate, sweeps for Scan).
std::vector<TVReport> exact_tv(const ChainSpec& spec, std::size_t horizon,
                               std::size_t cap = kDefaultStateCap);

/// Exact influence matrix max_{(x,y) in S_i} d_TV(mu_j(x,.), mu_j(y,.)) of heat-bath
/// colouring dynamics over all configurations.
Matrix influence_matrix_exact(const Graph& g, int q, std::size_t cap = kDefaultStateCap);

struct DeltaCheckReport {
  double max_violation_site = 0.0;    // delta(P^[j] f) vs R_j delta(f)
  double max_violation_random = 0.0;  // delta(P f) vs R^dagger delta(f)
  double max_violation_scan = 0.0;    // delta(P_scan f) vs R_scan delta(f)
  std::size_t trials = 0;
  bool passed = false;
};

inline constexpr double kDeltaViolationTol = 1e-10;

/// delta_i(f) = max over pairs differing only at i of |f(x) - f(y)|.
std::vector<double> delta_vector(const ExactChain& chain, std::span<const double> f);

/// Random f in [0,1]^|space| checked against the exact influence matrix.
DeltaCheckReport delta_contraction_check(const ChainSpec& spec, std::size_t trials,
                                         std::size_t cap = kDefaultStateCap);

/// Exact influence matrix used by delta_contraction_check.  For the
/// facilitated model this is facilitated_dependency plus 1 - delta on the
/// diagonal.
Matrix system_dependency(const System& system, std::size_t cap = kDefaultStateCap);

/// Stationary law of the exact random-update kernel by power iteration from
/// the point mass on state 0.
std::vector<double> exact_stationary(const System& system, double tol = 1e-13,
                                     std::size_t cap = kDefaultStateCap);

}  // namespace spinmix
