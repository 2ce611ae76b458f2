#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "spinmix/matrix.hpp"

namespace spinmix {

/// Undirected multigraph on vertices 0..n-1 without self-loops.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  Graph(std::size_t n, std::vector<Edge> edges);

  [[nodiscard]] std::size_t num_vertices() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<int>& degrees() const noexcept { return degree_; }
  [[nodiscard]] int degree(std::size_t v) const { return degree_[v]; }
  [[nodiscard]] int max_degree() const noexcept;
  /// Distinct neighbours of v, ascending.
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
  [[nodiscard]] bool is_simple() const noexcept;
  [[nodiscard]] bool is_regular() const noexcept;
  [[nodiscard]] bool is_connected() const;

  /// A(G): entry (i,j) counts edges between i and j.
  [[nodiscard]] Matrix adjacency() const;
  /// |E_S| for the induced subgraph on a vertex subset.
  [[nodiscard]] std::size_t induced_edges(std::span<const std::size_t> subset) const;

  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph complete(std::size_t n);
  static Graph star(std::size_t leaves);  // centre is vertex 0
  static Graph petersen();

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degree_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace spinmix
