#include "spinmix/glauber.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iterator>
#include <limits>
#include <thread>

#include "spinmix/error.hpp"
#include "spinmix/norms.hpp"

namespace spinmix {
namespace {

constexpr std::size_t kTrialBlock = 64;
constexpr std::size_t kTvBlock = 256;

const Graph* graph_of(const System& s) {
  if (const auto* c = std::get_if<ColoringSystem>(&s)) return &c->graph;
  return nullptr;
}

void validate_state(const System& system, std::span<const int> state) {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) {
    if (state.size() != c->graph.num_vertices()) throw Error(ErrorKind::DimensionMismatch, "state length differs from n");
    for (int s : state)
      if (s < 0 || s >= c->q) throw Error(ErrorKind::InvalidArgument, "colour out of range");
  } else {
    const auto& f = std::get<FacilitatedSystem>(system);
    if (state.size() != f.n) throw Error(ErrorKind::DimensionMismatch, "state length differs from n");
    for (int s : state)
      if (s != 0 && s != 1) throw Error(ErrorKind::InvalidArgument, "facilitated spins are 0 or 1");
  }
}

bool facilitated_free(std::span<const int> s, std::size_t n, std::size_t j) {
  if (j >= 2 && s[j - 2] == 1) return false;
  if (j >= 1 && s[j - 1] == 1) return false;
  if (j + 1 < n && s[j + 1] == 1) return false;
  return true;
}

void update_site(const System& system, State& state, std::size_t j, Rng& rng) {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) {
    const auto legal = legal_colors(state, c->graph, c->q, j);
    if (legal.empty()) throw Error(ErrorKind::NoLegalColor, "no legal colour at site " + std::to_string(j + 1));
    state[j] = legal[rng.below(legal.size())];
  } else {
    const auto& f = std::get<FacilitatedSystem>(system);
    const bool resample = facilitated_free(state, f.n, j) || rng.uniform() < f.delta;
    if (resample) state[j] = static_cast<int>(rng.below(2));
  }
}

// Shared site choice, maximally coupled spin choice.
void coupled_update(const System& system, State& x, State& y, std::size_t j, Rng& rng) {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) {
    const auto a = legal_colors(x, c->graph, c->q, j);
    const auto b = legal_colors(y, c->graph, c->q, j);
    if (a.empty() || b.empty()) throw Error(ErrorKind::NoLegalColor, "no legal colour at site " + std::to_string(j + 1));
    const auto [cx, cy] = couple_uniform(a, b, rng.uniform());
    x[j] = cx;
    y[j] = cy;
  } else {
    const auto& f = std::get<FacilitatedSystem>(system);
    const double u = rng.uniform();
    const int bit = static_cast<int>(rng.below(2));
    if (facilitated_free(x, f.n, j) || u < f.delta) x[j] = bit;
    if (facilitated_free(y, f.n, j) || u < f.delta) y[j] = bit;
  }
}

std::vector<std::size_t> sweep_order(const ChainSpec& spec) {
  if (const auto* s = std::get_if<Scan>(&spec.update)) {
    if (s->order.size() != spec.num_sites()) throw Error(ErrorKind::DimensionMismatch, "scan order length differs from n");
    return s->order.sites();
  }
  std::vector<std::size_t> o(spec.num_sites());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  return o;
}

// Residual mass of `own` after removing the overlap with `other`, quantile v.
int residual_quantile(std::span<const int> own, std::span<const int> other, double v) {
  const double p_own = 1.0 / static_cast<double>(own.size());
  const double common = std::min(p_own, 1.0 / static_cast<double>(other.size()));
  std::vector<double> weight(own.size());
  double total = 0.0;
  for (std::size_t k = 0; k < own.size(); ++k) {
    const bool shared = std::binary_search(other.begin(), other.end(), own[k]);
    weight[k] = shared ? p_own - common : p_own;
    total += weight[k];
  }
  double acc = 0.0;
  int last = own.back();
  for (std::size_t k = 0; k < own.size(); ++k) {
    if (weight[k] <= 0.0) continue;
    last = own[k];
    acc += weight[k];
    if (v * total < acc) return own[k];
  }
  return last;
}

}  // namespace

std::size_t ChainSpec::num_sites() const {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) return c->graph.num_vertices();
  return std::get<FacilitatedSystem>(system).n;
}

bool ChainSpec::connectivity_warning() const {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) return c->q < c->graph.max_degree() + 2;
  return false;
}

std::vector<int> legal_colors(std::span<const int> state, const Graph& g, int q, std::size_t j) {
  std::vector<bool> used(static_cast<std::size_t>(q), false);
  for (std::size_t u : g.neighbors(j)) {
    const int c = state[u];
    if (c >= 0 && c < q) used[static_cast<std::size_t>(c)] = true;
  }
  std::vector<int> out;
  for (int c = 0; c < q; ++c)
    if (!used[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

bool is_proper(std::span<const int> state, const Graph& g) {
  for (const auto& [u, v] : g.edges())
    if (state[u] == state[v]) return false;
  return true;
}

State heatbath_update(State state, const Graph& g, int q, std::size_t j, Rng& rng) {
  if (j >= g.num_vertices()) throw Error(ErrorKind::InvalidArgument, "site index out of range");
  const auto legal = legal_colors(state, g, q, j);
  if (legal.empty()) throw Error(ErrorKind::NoLegalColor, "no legal colour at site " + std::to_string(j + 1));
  state[j] = legal[rng.below(legal.size())];
  return state;
}

State facilitated_step(State state, std::size_t n, double delta, std::size_t j, Rng& rng) {
  if (n <= 3) throw Error(ErrorKind::InvalidArgument, "facilitated model needs n > 3");
  if (j >= n || state.size() != n) throw Error(ErrorKind::InvalidArgument, "site index out of range");
  const bool resample = facilitated_free(state, n, j) || rng.uniform() < delta;
  if (resample) state[j] = static_cast<int>(rng.below(2));
  return state;
}

std::vector<State> run(const ChainSpec& spec, const State& start, std::size_t steps) {
  validate_state(spec.system, start);
  Rng rng(spec.seed);
  const std::size_t n = spec.num_sites();
  std::vector<State> trajectory;
  trajectory.reserve(steps + 1);
  trajectory.push_back(start);
  State state = start;
  const bool random = std::holds_alternative<RandomUpdate>(spec.update);
  const auto order = sweep_order(spec);
  for (std::size_t t = 0; t < steps; ++t) {
    if (random) {
      update_site(spec.system, state, rng.below(n), rng);
    } else {
      for (std::size_t j : order) update_site(spec.system, state, j, rng);
    }
    trajectory.push_back(state);
  }
  return trajectory;
}

std::pair<int, int> couple_uniform(std::span<const int> a, std::span<const int> b, double u) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::InvalidArgument, "empty colour set");
  const double common = std::min(1.0 / static_cast<double>(a.size()), 1.0 / static_cast<double>(b.size()));
  std::vector<int> shared;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
  const double overlap = common * static_cast<double>(shared.size());
  if (!shared.empty() && (u < overlap || overlap >= 1.0)) {
    const auto k = std::min(shared.size() - 1, static_cast<std::size_t>(u / common));
    return {shared[k], shared[k]};
  }
  const double v = (u - overlap) / (1.0 - overlap);
  return {residual_quantile(a, b, v), residual_quantile(b, a, v)};
}

CouplingStats coupled_run(const ChainSpec& spec, const State& x0, const State& y0, std::size_t maxsteps,
                          const CouplingOptions& opts) {
  validate_state(spec.system, x0);
  validate_state(spec.system, y0);
  if (opts.trials == 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  const std::size_t n = spec.num_sites();
  if (opts.weights && opts.weights->size() != n) throw Error(ErrorKind::DimensionMismatch, "weight length differs from n");
  const bool random = std::holds_alternative<RandomUpdate>(spec.update);
  const auto order = sweep_order(spec);
  const std::size_t len = maxsteps + 1;

  struct Block {
    std::vector<double> h, h2, co, w, w2;
  };
  const std::size_t blocks = (opts.trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<Block> partial(blocks);
  std::vector<long> times(opts.trials, -1);

  auto distance = [&](const State& x, const State& y, double& weighted) {
    int h = 0;
    weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] != y[i]) {
        ++h;
        if (opts.weights) weighted += (*opts.weights)[i];
      }
    }
    return h;
  };

  auto run_block = [&](std::size_t b) {
    Block& out = partial[b];
    out.h.assign(len, 0.0);
    out.h2.assign(len, 0.0);
    out.co.assign(len, 0.0);
    out.w.assign(len, 0.0);
    out.w2.assign(len, 0.0);
    const std::size_t end = std::min(opts.trials, (b + 1) * kTrialBlock);
    for (std::size_t k = b * kTrialBlock; k < end; ++k) {
      Rng rng = Rng::stream(spec.seed, k);
      State x = x0, y = y0;
      for (std::size_t t = 0; t < len; ++t) {
        if (t > 0) {
          if (random) {
            coupled_update(spec.system, x, y, rng.below(n), rng);
          } else {
            for (std::size_t j : order) coupled_update(spec.system, x, y, j, rng);
          }
        }
        double wd = 0.0;
        const int h = distance(x, y, wd);
        out.h[t] += h;
        out.h2[t] += static_cast<double>(h) * h;
        out.w[t] += wd;
        out.w2[t] += wd * wd;
        if (h == 0) {
          out.co[t] += 1.0;
          if (times[k] < 0) times[k] = static_cast<long>(t);
        }
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(opts.threads, blocks));
  if (threads == 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t b = t; b < blocks; b += threads) run_block(b);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  CouplingStats stats;
  stats.trials = opts.trials;
  stats.seed = spec.seed;
  stats.coupling_times = std::move(times);
  const double m = static_cast<double>(opts.trials);
  auto reduce = [&](auto member, auto member_sq, std::vector<double>& mean, std::vector<double>& var) {
    mean.assign(len, 0.0);
    var.assign(len, 0.0);
    for (std::size_t t = 0; t < len; ++t) {
      double s = 0.0, s2 = 0.0;
      for (const auto& blk : partial) {
        s += (blk.*member)[t];
        s2 += (blk.*member_sq)[t];
      }
      mean[t] = s / m;
      var[t] = opts.trials > 1 ? std::max(0.0, (s2 - s * s / m) / (m - 1.0)) : 0.0;
    }
  };
  reduce(&Block::h, &Block::h2, stats.mean_hamming, stats.var_hamming);
  if (opts.weights) reduce(&Block::w, &Block::w2, stats.mean_weighted, stats.var_weighted);
  stats.coalesced_frac.assign(len, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    double s = 0.0;
    for (const auto& blk : partial) s += blk.co[t];
    stats.coalesced_frac[t] = s / m;
  }
  return stats;
}

ExactChain::ExactChain(const System& system, std::size_t cap, bool proper_only) {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) {
    sites_ = c->graph.num_vertices();
    radix_ = c->q;
    if (c->q < 1) throw Error(ErrorKind::InvalidArgument, "q must be positive");
  } else {
    const auto& f = std::get<FacilitatedSystem>(system);
    if (f.n <= 3) throw Error(ErrorKind::InvalidArgument, "facilitated model needs n > 3");
    sites_ = f.n;
    radix_ = 2;
    proper_only = false;
  }
  if (sites_ == 0) throw Error(ErrorKind::EmptyGraph, "no sites");
  if (static_cast<double>(sites_) * std::log2(static_cast<double>(std::max(radix_, 2))) > 62.0)
    throw Error(ErrorKind::StateSpaceTooLarge, "state space too large to enumerate");

  const Graph* g = graph_of(system);
  State cur(sites_, 0);
  // Depth-first in site order gives lexicographic enumeration.
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == sites_) {
      if (states_.size() >= cap)
        throw Error(ErrorKind::StateSpaceTooLarge, "state space exceeds cap " + std::to_string(cap));
      states_.push_back(cur);
      return;
    }
    for (int c = 0; c < radix_; ++c) {
      if (proper_only && g) {
        bool clash = false;
        for (std::size_t u : g->neighbors(i))
          if (u < i && cur[u] == c) clash = true;
        if (clash) continue;
      }
      cur[i] = c;
      self(self, i + 1);
    }
  };
  visit(visit, 0);
  if (states_.empty()) throw Error(ErrorKind::NoLegalColor, "no proper colouring exists");
  code_to_index_.reserve(states_.size());
  for (std::size_t k = 0; k < states_.size(); ++k) code_to_index_.emplace(encode(states_[k]), k);
  kernels_.reserve(sites_);
  for (std::size_t j = 0; j < sites_; ++j) kernels_.push_back(build_kernel(system, j));
}

std::uint64_t ExactChain::encode(std::span<const int> s) const {
  std::uint64_t code = 0;
  for (std::size_t i = s.size(); i-- > 0;) code = code * static_cast<std::uint64_t>(radix_) + static_cast<std::uint64_t>(s[i]);
  return code;
}

std::optional<std::size_t> ExactChain::index_of(std::span<const int> s) const {
  if (s.size() != sites_) return std::nullopt;
  for (int x : s)
    if (x < 0 || x >= radix_) return std::nullopt;
  const auto it = code_to_index_.find(encode(s));
  if (it == code_to_index_.end()) return std::nullopt;
  return it->second;
}

ExactChain::Kernel ExactChain::build_kernel(const System& system, std::size_t j) const {
  Kernel k(states_.size());
  for (std::size_t x = 0; x < states_.size(); ++x) {
    State s = states_[x];
    auto push = [&](int value, double p) {
      s[j] = value;
      const auto to = index_of(s);
      if (!to) throw Error(ErrorKind::Internal, "kernel leaves the enumerated space");
      for (auto& e : k[x]) {
        if (e.to == *to) {
          e.p += p;
          return;
        }
      }
      k[x].push_back({*to, p});
    };
    if (const auto* c = std::get_if<ColoringSystem>(&system)) {
      const auto legal = legal_colors(states_[x], c->graph, c->q, j);
      if (legal.empty()) throw Error(ErrorKind::NoLegalColor, "no legal colour at site " + std::to_string(j + 1));
      const double p = 1.0 / static_cast<double>(legal.size());
      for (int col : legal) push(col, p);
    } else {
      const auto& f = std::get<FacilitatedSystem>(system);
      const int keep = states_[x][j];
      if (facilitated_free(states_[x], f.n, j)) {
        push(0, 0.5);
        push(1, 0.5);
      } else {
        push(0, f.delta / 2.0);
        push(1, f.delta / 2.0);
        push(keep, 1.0 - f.delta);
      }
    }
  }
  return k;
}

std::vector<double> ExactChain::stationary() const {
  return std::vector<double>(states_.size(), 1.0 / static_cast<double>(states_.size()));
}

std::vector<double> ExactChain::step_distribution(std::span<const double> p, std::size_t j) const {
  std::vector<double> out(states_.size(), 0.0);
  const Kernel& k = kernels_.at(j);
  for (std::size_t x = 0; x < states_.size(); ++x) {
    if (p[x] == 0.0) continue;
    for (const auto& e : k[x]) out[e.to] += p[x] * e.p;
  }
  return out;
}

std::vector<double> ExactChain::apply_function(std::span<const double> f, std::size_t j) const {
  std::vector<double> out(states_.size(), 0.0);
  const Kernel& k = kernels_.at(j);
  for (std::size_t x = 0; x < states_.size(); ++x) {
    double s = 0.0;
    for (const auto& e : k[x]) s += e.p * f[e.to];
    out[x] = s;
  }
  return out;
}

std::vector<TVReport> exact_tv(const ChainSpec& spec, std::size_t horizon, std::size_t cap) {
  const ExactChain chain(spec.system, cap, true);
  const std::size_t size = chain.size();
  const std::size_t n = chain.num_sites();
  const bool random = std::holds_alternative<RandomUpdate>(spec.update);
  const auto order = sweep_order(spec);
  const auto pi = chain.stationary();
  std::vector<double> worst(horizon + 1, 0.0);

  auto tv = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t x = 0; x < size; ++x) s += std::fabs(p[x] - pi[x]);
    return 0.5 * s;
  };

  for (std::size_t first = 0; first < size; first += kTvBlock) {
    const std::size_t last = std::min(size, first + kTvBlock);
    std::vector<std::vector<double>> dist;
    for (std::size_t x = first; x < last; ++x) {
      std::vector<double> p(size, 0.0);
      p[x] = 1.0;
      dist.push_back(std::move(p));
    }
    for (std::size_t t = 0; t <= horizon; ++t) {
      for (auto& p : dist) {
        if (t > 0) {
          if (random) {
            std::vector<double> next(size, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
              const auto part = chain.step_distribution(p, j);
              for (std::size_t x = 0; x < size; ++x) next[x] += part[x];
            }
            for (double& v : next) v /= static_cast<double>(n);
            p = std::move(next);
          } else {
            for (std::size_t j : order) p = chain.step_distribution(p, j);
          }
        }
        worst[t] = std::max(worst[t], tv(p));
      }
    }
  }
  std::vector<TVReport> out;
  for (std::size_t t = 0; t <= horizon; ++t) out.push_back({t, worst[t], size});
  return out;
}

Matrix influence_matrix_exact(const Graph& g, int q, std::size_t cap) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "graph has no vertices");
  if (q <= g.max_degree()) throw Error(ErrorKind::QTooSmall, "need q > max degree");
  Matrix r(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& nb = g.neighbors(j);
    const double patterns = std::pow(static_cast<double>(q), static_cast<double>(nb.size()));
    if (patterns * q > static_cast<double>(cap))
      throw Error(ErrorKind::CapExceeded, "neighbourhood of site " + std::to_string(j + 1) + " exceeds cap");
    // Only the spins on N(j) matter for mu_j; enumerate them and one alternative value.
    State local(n, 0);
    std::vector<std::size_t> digits(nb.size(), 0);
    const auto total = static_cast<std::size_t>(patterns);
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t rest = code;
      for (std::size_t k = 0; k < nb.size(); ++k) {
        local[nb[k]] = static_cast<int>(rest % static_cast<std::size_t>(q));
        rest /= static_cast<std::size_t>(q);
      }
      const auto a = legal_colors(local, g, q, j);
      for (std::size_t i : nb) {
        const int original = local[i];
        for (int c = 0; c < q; ++c) {
          if (c == original) continue;
          local[i] = c;
          const auto b = legal_colors(local, g, q, j);
          local[i] = original;
          const double pa = 1.0 / static_cast<double>(a.size()), pb = 1.0 / static_cast<double>(b.size());
          double overlap = 0.0;
          for (int col : a)
            if (std::binary_search(b.begin(), b.end(), col)) overlap += std::min(pa, pb);
          r(i, j) = std::max(r(i, j), 1.0 - overlap);
        }
      }
    }
    for (std::size_t i : nb) {
      if (r(i, j) > 1.0 / static_cast<double>(q - g.degree(j)) + 1e-12)
        throw Error(ErrorKind::Internal, "influence exceeds 1/(q - d_j)");
    }
  }
  return r;
}

std::vector<double> delta_vector(const ExactChain& chain, std::span<const double> f) {
  const std::size_t n = chain.num_sites();
  std::vector<double> d(n, 0.0);
  for (std::size_t x = 0; x < chain.size(); ++x) {
    State s = chain.states()[x];
    for (std::size_t i = 0; i < n; ++i) {
      const int original = s[i];
      for (int c = original + 1; c < chain.radix(); ++c) {
        s[i] = c;
        if (const auto y = chain.index_of(s)) d[i] = std::max(d[i], std::fabs(f[x] - f[*y]));
      }
      s[i] = original;
    }
  }
  return d;
}

Matrix system_dependency(const System& system, std::size_t cap) {
  if (const auto* c = std::get_if<ColoringSystem>(&system)) return influence_matrix_exact(c->graph, c->q, cap);
  // A blocked site keeps its own spin with probability 1 - delta, so the
  // exact influence carries that on the diagonal.
  const auto& f = std::get<FacilitatedSystem>(system);
  Matrix m = facilitated_dependency(f.n, f.delta).matrix();
  for (std::size_t j = 0; j < f.n; ++j) m(j, j) = 1.0 - f.delta;
  return m;
}

DeltaCheckReport delta_contraction_check(const ChainSpec& spec, std::size_t trials, std::size_t cap) {
  const ExactChain chain(spec.system, cap, false);
  const std::size_t n = chain.num_sites();
  const DependencyMatrix r(system_dependency(spec.system, cap));
  const Matrix r_random = random_update_matrix(r);
  const auto order = sweep_order(spec);
  const Matrix r_scan = scan_update_matrix(r, ScanOrder(order));
  Rng rng(spec.seed);

  DeltaCheckReport report;
  report.trials = trials;
  report.max_violation_site = report.max_violation_random = report.max_violation_scan =
      -std::numeric_limits<double>::infinity();
  auto worst = [](const std::vector<double>& lhs, const std::vector<double>& rhs) {
    double w = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lhs.size(); ++i) w = std::max(w, lhs[i] - rhs[i]);
    return w;
  };

  std::vector<double> f(chain.size());
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (double& v : f) v = rng.uniform();
    const auto df = delta_vector(chain, f);

    std::vector<double> avg(chain.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto pf = chain.apply_function(f, j);
      for (std::size_t x = 0; x < pf.size(); ++x) avg[x] += pf[x] / static_cast<double>(n);
      std::vector<double> bound(n);
      for (std::size_t i = 0; i < n; ++i) bound[i] = (i == j ? 0.0 : df[i]) + r(i, j) * df[j];
      report.max_violation_site = std::max(report.max_violation_site, worst(delta_vector(chain, pf), bound));
    }
    report.max_violation_random =
        std::max(report.max_violation_random, worst(delta_vector(chain, avg), right_multiply(r_random, df)));

    std::vector<double> scanned = f;
    for (auto it = order.rbegin(); it != order.rend(); ++it) scanned = chain.apply_function(scanned, *it);
    report.max_violation_scan =
        std::max(report.max_violation_scan, worst(delta_vector(chain, scanned), right_multiply(r_scan, df)));
  }
  if (trials == 0) report.max_violation_site = report.max_violation_random = report.max_violation_scan = 0.0;
  report.passed = report.max_violation_site <= kDeltaViolationTol && report.max_violation_random <= kDeltaViolationTol &&
                  report.max_violation_scan <= kDeltaViolationTol;
  return report;
}

std::vector<double> exact_stationary(const System& system, double tol, std::size_t cap) {
  const ExactChain chain(system, cap, true);
  const std::size_t size = chain.size();
  const std::size_t n = chain.num_sites();
  std::vector<double> p(size, 0.0);
  p[0] = 1.0;
  for (long it = 0; it < kDefaultIterationCap; ++it) {
    std::vector<double> next(size, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto part = chain.step_distribution(p, j);
      for (std::size_t x = 0; x < size; ++x) next[x] += part[x] / static_cast<double>(n);
    }
    double change = 0.0;
    for (std::size_t x = 0; x < size; ++x) change += std::fabs(next[x] - p[x]);
    p = std::move(next);
    if (change <= tol) return p;
  }
  throw Error(ErrorKind::NonConvergence, "stationary iteration did not converge");
}

}  // namespace spinmix
