#include "prisparse/paths.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "prisparse/errors.hpp"

namespace prisparse {

std::vector<std::optional<Weight>> distances_from(const PriorityGraph& g, Vertex source,
                                                  EdgeFilter filter) {
  std::vector<std::optional<Weight>> dist(g.num_vertices());
  std::vector<char> done(g.num_vertices(), 0);
  using Item = std::pair<Weight, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = Weight(0);
  queue.emplace(Weight(0), source);
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (done[x]) continue;
    done[x] = 1;
    for (const auto& inc : g.neighbors(x)) {
      if (!filter.empty() && !filter[inc.edge]) continue;
      Weight nd = d + g.edge(inc.edge).w;
      if (!dist[inc.to] || nd < *dist[inc.to]) {
        dist[inc.to] = nd;
        queue.emplace(nd, inc.to);
      }
    }
  }
  return dist;
}

std::optional<Path> shortest_path(const PriorityGraph& g, Vertex u, Vertex v, EdgeFilter filter) {
  // Distances to v, then walk from u always taking the smallest neighbour that
  // stays on some shortest path. Positive weights make the walk terminate.
  auto to_target = distances_from(g, v, filter);
  if (!to_target[u]) return std::nullopt;
  Path path;
  path.length = *to_target[u];
  path.vertices.push_back(u);
  Vertex x = u;
  while (x != v) {
    for (const auto& inc : g.neighbors(x)) {
      if (!filter.empty() && !filter[inc.edge]) continue;
      const auto& rest = to_target[inc.to];
      if (rest && *rest + g.edge(inc.edge).w == *to_target[x]) {
        path.edges.push_back(inc.edge);
        path.vertices.push_back(inc.to);
        x = inc.to;
        break;
      }
    }
  }
  return path;
}

MetricClosure metric_closure(const PriorityGraph& g, std::span<const Vertex> terminals) {
  std::vector<Vertex> ts(terminals.begin(), terminals.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<VertexSpec> vertices;
  for (Vertex t : ts) vertices.push_back({g.id(t), g.priority(t)});

  std::vector<EdgeSpec> edges;
  std::vector<std::vector<EdgeId>> witness;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      auto p = shortest_path(g, ts[i], ts[j]);
      if (!p) throw Disconnected("terminals " + g.id(ts[i]) + " and " + g.id(ts[j]) + " are not connected");
      edges.push_back({g.id(ts[i]), g.id(ts[j]), p->length});
      witness.push_back(std::move(p->edges));
    }
  }
  MetricClosure closure;
  closure.graph = PriorityGraph::build(std::move(vertices), edges, g.k());
  closure.origin = ts;
  // Closure vertices keep g's identifier order, so pairs (i, j) with i < j
  // are generated in the closure's edge order.
  closure.witness = std::move(witness);
  return closure;
}

Subgraph minimum_spanning_forest(const PriorityGraph& g, EdgeFilter filter) {
  std::vector<EdgeId> order;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (filter.empty() || filter[e]) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  std::vector<Vertex> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<EdgeId> kept;
  for (EdgeId e : order) {
    Vertex a = find(g.edge(e).u);
    Vertex b = find(g.edge(e).v);
    if (a == b) continue;
    parent[a] = b;
    kept.push_back(e);
  }
  return Subgraph(std::move(kept));
}

Subgraph minimum_spanning_tree(const PriorityGraph& g) {
  Subgraph tree = minimum_spanning_forest(g);
  if (g.num_vertices() > 0 && tree.size() + 1 != g.num_vertices()) {
    throw Disconnected("graph is not connected; no spanning tree");
  }
  return tree;
}

}  // namespace prisparse
