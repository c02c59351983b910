#pragma once

#include <vector>

namespace ordpot {

struct WeightedEdge {
  int tail = 0;
  int head = 0;
  double weight = 0.0;
};

/// Partition of a directed graph's vertices into strongly connected
/// components. Component ids are assigned by lowest contained vertex index,
/// so the labeling is independent of traversal order.
struct SccPartition {
  std::vector<int> component_of;            // vertex id -> component id
  std::vector<std::vector<int>> components; // component id -> sorted vertices
};

/// Quotient DAG of a weighted digraph by its strongly connected components.
/// Each (C,K) pair with at least one crossing edge contributes exactly one
/// dag edge whose weight is the maximum over the crossing edges.
/// internal_max_weight[c] is the maximum weight among edges with both
/// endpoints inside component c (0 if there are none).
struct Condensation {
  std::vector<int> component_of;
  std::vector<std::vector<int>> components;
  std::vector<WeightedEdge> dag_edges;      // sorted by (tail, head)
  std::vector<double> internal_max_weight;

  int num_components() const { return static_cast<int>(components.size()); }
};

enum class TieBreak {
  lowest_id_first,   // canonical order
  highest_id_first,  // reversed tie-break, used to test order independence
};

/// Tarjan's single-pass algorithm, implemented with an explicit stack.
/// Runs in time linear in |V| + |E|.
SccPartition strongly_connected_components(int num_vertices,
                                           const std::vector<WeightedEdge>& edges);

Condensation condense(int num_vertices, const std::vector<WeightedEdge>& edges);

/// Kahn's algorithm over the condensation DAG. Among ready components the
/// tie-break picks the lowest (or highest) component id, so the order is
/// deterministic. Throws std::logic_error if dag_edges contain a cycle.
std::vector<int> topological_order(const Condensation& condensation,
                                   TieBreak tie_break = TieBreak::lowest_id_first);

/// Forward propagation along a topological order: a component with no
/// incoming dag edges gets value 0, every other component gets
/// max over incoming edges of (tail value + edge weight).
/// Returns one value per component.
std::vector<double> propagate_potential(const Condensation& condensation,
                                        const std::vector<int>& order);

}  // namespace ordpot
