#pragma once

#include <random>
#include <string>
#include <vector>

#include "prisparse/generate.hpp"
#include "prisparse/graph.hpp"
#include "prisparse/paths.hpp"

namespace testing {

using namespace prisparse;

inline PriorityGraph make_graph(std::vector<VertexSpec> vs, std::vector<EdgeSpec> es, int k = 0) {
  return PriorityGraph::build(std::move(vs), es, k);
}

inline Vertex vx(const PriorityGraph& g, const std::string& id) { return *g.find_vertex(id); }

inline EdgeId ex(const PriorityGraph& g, const std::string& a, const std::string& b) {
  return *g.find_edge(vx(g, a), vx(g, b));
}

inline Subgraph sub(const PriorityGraph& g, std::vector<std::pair<std::string, std::string>> es) {
  std::vector<EdgeId> ids;
  for (auto& [a, b] : es) ids.push_back(ex(g, a, b));
  return Subgraph(ids);
}

// Unit 4-cycle a-b-c-d-a.
inline PriorityGraph cycle4(int pa = 1, int pb = 1, int pc = 1, int pd = 1) {
  return make_graph({{"a", pa}, {"b", pb}, {"c", pc}, {"d", pd}},
                    {{"a", "b", Weight(1)}, {"b", "c", Weight(1)}, {"c", "d", Weight(1)},
                     {"a", "d", Weight(1)}});
}

// Unit complete graph on n vertices named 0..n-1, all priority p.
inline PriorityGraph complete(int n, int p = 1) {
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i) vs.push_back({std::to_string(i), p});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({std::to_string(i), std::to_string(j), Weight(1)});
  return make_graph(vs, es);
}

// Star with center s and leaves x, y, z; leaves have priority 1.
inline PriorityGraph star3() {
  return make_graph({{"s", 0}, {"x", 1}, {"y", 1}, {"z", 1}},
                    {{"s", "x", Weight(1)}, {"s", "y", Weight(1)}, {"s", "z", Weight(1)}});
}

inline PriorityGraph random_graph(std::mt19937_64& rng, int min_n, int max_n, int max_m, int k,
                                  int max_w = 4) {
  SweepOptions o;
  o.min_vertices = min_n;
  o.max_vertices = max_n;
  o.max_edges = max_m;
  o.k = k;
  o.max_weight = max_w;
  return random_small_instance(rng, o);
}

inline std::vector<std::uint8_t> unpack(std::uint64_t mask, std::size_t m) {
  std::vector<std::uint8_t> bits(m);
  for (std::size_t e = 0; e < m; ++e) bits[e] = (mask >> e) & 1u;
  return bits;
}

inline bool connected(const PriorityGraph& g, const std::vector<std::uint8_t>& mask) {
  auto labels = component_labels(g, mask);
  for (auto l : labels)
    if (l != labels[0]) return false;
  return true;
}

inline Weight brute_force_mst_weight(const PriorityGraph& g) {
  const std::size_t m = g.num_edges();
  std::optional<Weight> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) + 1 != g.num_vertices()) continue;
    auto bits = unpack(mask, m);
    if (!connected(g, bits)) continue;
    Weight w = subgraph_from_mask(bits).weight(g);
    if (!best || w < *best) best = w;
  }
  return *best;
}

}  // namespace testing
