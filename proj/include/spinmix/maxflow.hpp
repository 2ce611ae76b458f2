#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace spinmix {

/// Dinic max-flow over 64-bit integer capacities.  Scratch state lives in
/// the object; one object per computation.
class MaxFlow {
 public:
  using Cap = std::int64_t;
  static constexpr Cap kInfinite = std::numeric_limits<Cap>::max() / 4;

  explicit MaxFlow(std::size_t num_nodes);

  /// Returns an arc id usable with flow_on().
  std::size_t add_arc(std::size_t from, std::size_t to, Cap capacity);
  Cap solve(std::size_t source, std::size_t sink);
  [[nodiscard]] Cap flow_on(std::size_t arc) const;
  /// Nodes reachable from the source in the final residual graph (the
  /// minimal min-cut source side).  Valid after solve().
  [[nodiscard]] std::vector<bool> source_side() const;

 private:
  struct Arc {
    std::size_t to;
    Cap cap;
  };

  bool build_levels();
  Cap push(std::size_t v, Cap limit);

  std::vector<Arc> arcs_;
  std::vector<Cap> original_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
};

}  // namespace spinmix
