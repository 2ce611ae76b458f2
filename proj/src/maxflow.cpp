#include "spinmix/maxflow.hpp"

#include <algorithm>
#include <queue>

#include "spinmix/error.hpp"

namespace spinmix {

MaxFlow::MaxFlow(std::size_t num_nodes) : out_(num_nodes), level_(num_nodes), cursor_(num_nodes) {}

std::size_t MaxFlow::add_arc(std::size_t from, std::size_t to, Cap capacity) {
  if (from >= out_.size() || to >= out_.size()) throw Error(ErrorKind::Internal, "flow node out of range");
  if (capacity < 0) throw Error(ErrorKind::Internal, "negative capacity");
  const std::size_t id = arcs_.size();
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0});
  original_.push_back(capacity);
  original_.push_back(0);
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels() {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> queue;
  level_[source_] = 0;
  queue.push(source_);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

MaxFlow::Cap MaxFlow::push(std::size_t v, Cap limit) {
  if (v == sink_) return limit;
  for (std::size_t& i = cursor_[v]; i < out_[v].size(); ++i) {
    const std::size_t id = out_[v][i];
    Arc& a = arcs_[id];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const Cap pushed = push(a.to, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      arcs_[id ^ 1].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

MaxFlow::Cap MaxFlow::solve(std::size_t source, std::size_t sink) {
  source_ = source;
  sink_ = sink;
  Cap total = 0;
  while (build_levels()) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (Cap f = push(source_, kInfinite)) total += f;
  }
  return total;
}

MaxFlow::Cap MaxFlow::flow_on(std::size_t arc) const { return original_[arc] - arcs_[arc].cap; }

std::vector<bool> MaxFlow::source_side() const {
  std::vector<bool> seen(out_.size(), false);
  std::vector<std::size_t> stack{source_};
  seen[source_] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = true;
        stack.push_back(a.to);
      }
    }
  }
  return seen;
}

}  // namespace spinmix
