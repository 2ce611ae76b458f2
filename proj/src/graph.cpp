#include "spinmix/graph.hpp"

#include <algorithm>

#include "spinmix/error.hpp"

namespace spinmix {

Graph::Graph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), degree_(n, 0), adj_(n) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(u + 1));
    ++degree_[u];
    ++degree_[v];
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

int Graph::max_degree() const noexcept {
  return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
}

bool Graph::is_simple() const noexcept {
  std::size_t distinct = 0;
  for (const auto& list : adj_) distinct += list.size();
  return distinct == 2 * edges_.size();
}

bool Graph::is_regular() const noexcept {
  return std::adjacent_find(degree_.begin(), degree_.end(), std::not_equal_to<>()) == degree_.end();
}

bool Graph::is_connected() const {
  if (n_ == 0) return true;
  std::vector<bool> seen(n_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj_[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n_;
}

Matrix Graph::adjacency() const {
  Matrix a(n_);
  for (const auto& [u, v] : edges_) {
    a(u, v) += 1.0;
    a(v, u) += 1.0;
  }
  return a;
}

std::size_t Graph::induced_edges(std::span<const std::size_t> subset) const {
  std::vector<bool> in(n_, false);
  for (std::size_t v : subset) in.at(v) = true;
  std::size_t count = 0;
  for (const auto& [u, v] : edges_) count += (in[u] && in[v]) ? 1 : 0;
  return count;
}

Graph Graph::path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph Graph::star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, std::move(e));
}

Graph Graph::petersen() {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, std::move(e));
}

}  // namespace spinmix
