#pragma once

#include <optional>
#include <span>
#include <vector>

#include "prisparse/graph.hpp"

namespace prisparse {

struct Path {
  Weight length{0};
  std::vector<Vertex> vertices;  // u ... v
  std::vector<EdgeId> edges;
};

// Single-source distances over the filtered edges; nullopt = unreachable.
std::vector<std::optional<Weight>> distances_from(const PriorityGraph& g, Vertex source,
                                                  EdgeFilter filter = {});

// Minimum-weight u-v path. Among equally short paths the one with the
// lexicographically smallest vertex sequence wins. nullopt when unreachable.
std::optional<Path> shortest_path(const PriorityGraph& g, Vertex u, Vertex v,
                                  EdgeFilter filter = {});

// Complete graph on a terminal set weighted by shortest-path distance, with
// the witness path used for each closure edge.
struct MetricClosure {
  PriorityGraph graph;
  std::vector<Vertex> origin;                // closure vertex -> vertex of g
  std::vector<std::vector<EdgeId>> witness;  // closure edge -> edges of g
};

// Throws Disconnected if two terminals are not connected in g.
MetricClosure metric_closure(const PriorityGraph& g, std::span<const Vertex> terminals);

// Kruskal over (weight, edge id). Throws Disconnected unless g is connected.
Subgraph minimum_spanning_tree(const PriorityGraph& g);

// Kruskal over the filtered edges without the connectivity requirement.
Subgraph minimum_spanning_forest(const PriorityGraph& g, EdgeFilter filter = {});

}  // namespace prisparse
