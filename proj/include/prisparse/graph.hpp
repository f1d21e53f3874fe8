#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prisparse/weight.hpp"

namespace prisparse {

// Dense indices. Vertex indices follow identifier order and edge indices
// follow (u, v) order with u < v, so comparing indices is comparing
// identifiers.
using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
  Vertex other(Vertex x) const { return x == u ? v : u; }
};

struct Incidence {
  Vertex to;
  EdgeId edge;
};

// Total order on vertex identifiers: all-digit identifiers compare
// numerically and sort before any other identifier, which compare as strings.
bool id_less(std::string_view a, std::string_view b);

struct VertexSpec {
  std::string id;
  int priority = 0;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  Weight w{1};
};

// Per-edge membership over a parent graph, indexed by EdgeId. An empty span
// stands for "every edge of the parent".
using EdgeFilter = std::span<const std::uint8_t>;

// Undirected, positively weighted graph with vertex priorities in [0, k].
// Immutable once built.
class PriorityGraph {
 public:
  PriorityGraph() = default;

  // Throws GraphError on self-loops, parallel edges, non-positive weights,
  // unknown endpoints, duplicate ids, priorities outside [0, k] or k < 1.
  // k == 0 means "max priority, at least 1".
  static PriorityGraph build(std::vector<VertexSpec> vertices, const std::vector<EdgeSpec>& edges,
                             int k = 0);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  int k() const { return k_; }

  const std::string& id(Vertex v) const { return ids_[v]; }
  std::optional<Vertex> find_vertex(std::string_view id) const;
  int priority(Vertex v) const { return priority_[v]; }
  const std::vector<int>& priorities() const { return priority_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;

  // Neighbours sorted by vertex index.
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_[v]; }

  // T_i = {v : priority(v) >= level}, ascending.
  std::vector<Vertex> terminals(int level) const;

  // Same structure, new priorities.
  PriorityGraph with_priorities(std::vector<int> priority, int k) const;

 private:
  std::vector<std::string> ids_;
  std::vector<int> priority_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  int k_ = 1;
};

// Edge subset of a parent graph plus any terminals retained without edges.
class Subgraph {
 public:
  Subgraph() = default;
  explicit Subgraph(std::vector<EdgeId> edges, std::vector<Vertex> isolated = {});

  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<Vertex>& isolated() const { return isolated_; }
  bool empty() const { return edges_.empty(); }
  std::size_t size() const { return edges_.size(); }
  bool contains(EdgeId e) const;

  // Vertices touched by an edge plus retained isolated vertices, ascending.
  std::vector<Vertex> vertices(const PriorityGraph& g) const;
  Weight weight(const PriorityGraph& g) const;
  std::vector<std::uint8_t> mask(const PriorityGraph& g) const;

  // Edge set union; isolated vertices already covered by an edge are dropped.
  Subgraph unite(const Subgraph& other, const PriorityGraph& g) const;
  bool is_subset_of(const Subgraph& other) const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;

 private:
  std::vector<EdgeId> edges_;  // sorted, unique
  std::vector<Vertex> isolated_;
};

Subgraph subgraph_from_mask(std::span<const std::uint8_t> mask, std::vector<Vertex> isolated = {});

// Connected components over the filtered edges; returns one label per vertex.
std::vector<std::uint32_t> component_labels(const PriorityGraph& g, EdgeFilter filter = {});

}  // namespace prisparse
