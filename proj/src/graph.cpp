#include "ordpot/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>

namespace ordpot {

namespace {

// CSR-style successor lists.
struct Adjacency {
  std::vector<int> offsets;
  std::vector<int> targets;
};

Adjacency build_adjacency(int num_vertices, const std::vector<WeightedEdge>& edges) {
  Adjacency adj;
  adj.offsets.assign(num_vertices + 1, 0);
  for (const auto& e : edges) {
    if (e.tail < 0 || e.tail >= num_vertices || e.head < 0 || e.head >= num_vertices) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    ++adj.offsets[e.tail + 1];
  }
  for (int v = 0; v < num_vertices; ++v) {
    adj.offsets[v + 1] += adj.offsets[v];
  }
  adj.targets.resize(edges.size());
  std::vector<int> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& e : edges) {
    adj.targets[cursor[e.tail]++] = e.head;
  }
  return adj;
}

}  // namespace

SccPartition strongly_connected_components(int num_vertices,
                                           const std::vector<WeightedEdge>& edges) {
  const Adjacency adj = build_adjacency(num_vertices, edges);

  std::vector<int> index(num_vertices, -1);
  std::vector<int> lowlink(num_vertices, -1);
  std::vector<bool> on_stack(num_vertices, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> raw_components;
  int next_index = 0;

  // Explicit DFS stack of (vertex, position in its successor list) so deep
  // graphs cannot overflow the call stack.
  std::vector<std::pair<int, int>> call_stack;
  for (int root = 0; root < num_vertices; ++root) {
    if (index[root] != -1) continue;
    call_stack.emplace_back(root, adj.offsets[root]);
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      auto& [v, pos] = call_stack.back();
      if (pos < adj.offsets[v + 1]) {
        const int w = adj.targets[pos++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.emplace_back(w, adj.offsets[w]);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        if (lowlink[v] == index[v]) {
          std::vector<int> component;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component.push_back(w);
          } while (w != v);
          raw_components.push_back(std::move(component));
        }
        const int finished = v;
        call_stack.pop_back();
        if (!call_stack.empty()) {
          auto& [parent, unused] = call_stack.back();
          lowlink[parent] = std::min(lowlink[parent], lowlink[finished]);
        }
      }
    }
  }

  // Relabel components by lowest contained vertex index.
  for (auto& component : raw_components) {
    std::sort(component.begin(), component.end());
  }
  std::sort(raw_components.begin(), raw_components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  SccPartition partition;
  partition.components = std::move(raw_components);
  partition.component_of.assign(num_vertices, -1);
  for (int c = 0; c < static_cast<int>(partition.components.size()); ++c) {
    for (int v : partition.components[c]) {
      partition.component_of[v] = c;
    }
  }
  return partition;
}

Condensation condense(int num_vertices, const std::vector<WeightedEdge>& edges) {
  SccPartition partition = strongly_connected_components(num_vertices, edges);
  const int k = static_cast<int>(partition.components.size());

  Condensation cond;
  cond.component_of = std::move(partition.component_of);
  cond.components = std::move(partition.components);
  cond.internal_max_weight.assign(k, 0.0);

  std::map<std::pair<int, int>, double> cross_max;
  for (const auto& e : edges) {
    const int c = cond.component_of[e.tail];
    const int d = cond.component_of[e.head];
    if (c == d) {
      cond.internal_max_weight[c] = std::max(cond.internal_max_weight[c], e.weight);
    } else {
      auto [it, inserted] = cross_max.try_emplace({c, d}, e.weight);
      if (!inserted) it->second = std::max(it->second, e.weight);
    }
  }
  cond.dag_edges.reserve(cross_max.size());
  for (const auto& [key, weight] : cross_max) {
    cond.dag_edges.push_back({key.first, key.second, weight});
  }
  return cond;
}

std::vector<int> topological_order(const Condensation& condensation, TieBreak tie_break) {
  const int k = condensation.num_components();
  std::vector<int> in_degree(k, 0);
  std::vector<std::vector<int>> successors(k);
  for (const auto& e : condensation.dag_edges) {
    ++in_degree[e.head];
    successors[e.tail].push_back(e.head);
  }

  const bool lowest_first = tie_break == TieBreak::lowest_id_first;
  auto later = [lowest_first](int a, int b) {
    return lowest_first ? a > b : a < b;
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
  for (int c = 0; c < k; ++c) {
    if (in_degree[c] == 0) ready.push(c);
  }

  std::vector<int> order;
  order.reserve(k);
  while (!ready.empty()) {
    const int c = ready.top();
    ready.pop();
    order.push_back(c);
    for (int d : successors[c]) {
      if (--in_degree[d] == 0) ready.push(d);
    }
  }
  if (static_cast<int>(order.size()) != k) {
    throw std::logic_error("condensation contains a cycle");
  }
  return order;
}

std::vector<double> propagate_potential(const Condensation& condensation,
                                        const std::vector<int>& order) {
  const int k = condensation.num_components();
  if (static_cast<int>(order.size()) != k) {
    throw std::invalid_argument("topological order length mismatch");
  }
  std::vector<std::vector<std::pair<int, double>>> incoming(k);
  for (const auto& e : condensation.dag_edges) {
    incoming[e.head].emplace_back(e.tail, e.weight);
  }

  std::vector<double> value(k, 0.0);
  std::vector<bool> assigned(k, false);
  for (int c : order) {
    if (incoming[c].empty()) {
      value[c] = 0.0;
    } else {
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& [tail, weight] : incoming[c]) {
        if (!assigned[tail]) {
          throw std::logic_error("order is not topological");
        }
        best = std::max(best, value[tail] + weight);
      }
      value[c] = best;
    }
    assigned[c] = true;
  }
  return value;
}

}  // namespace ordpot
