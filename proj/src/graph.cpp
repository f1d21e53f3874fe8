#include "prisparse/graph.hpp"

#include <algorithm>
#include <numeric>

#include "prisparse/errors.hpp"

namespace prisparse {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_zeros(std::string_view s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return s.substr(i);
}

}  // namespace

bool id_less(std::string_view a, std::string_view b) {
  bool da = all_digits(a);
  bool db = all_digits(b);
  if (da != db) return da;
  if (da) {
    auto sa = strip_zeros(a);
    auto sb = strip_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

PriorityGraph PriorityGraph::build(std::vector<VertexSpec> vertices,
                                   const std::vector<EdgeSpec>& edges, int k) {
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexSpec& a, const VertexSpec& b) { return id_less(a.id, b.id); });
  PriorityGraph g;
  int max_priority = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].id.empty()) throw GraphError("empty vertex identifier");
    if (i > 0 && vertices[i].id == vertices[i - 1].id) {
      throw GraphError("duplicate vertex '" + vertices[i].id + "'");
    }
    if (vertices[i].priority < 0) {
      throw GraphError("negative priority on vertex '" + vertices[i].id + "'");
    }
    max_priority = std::max(max_priority, vertices[i].priority);
    g.ids_.push_back(vertices[i].id);
    g.priority_.push_back(vertices[i].priority);
  }
  if (k == 0) k = std::max(1, max_priority);
  if (k < 1) throw GraphError("k must be at least 1");
  if (max_priority > k) {
    throw GraphError("priority " + std::to_string(max_priority) + " exceeds k=" + std::to_string(k));
  }
  g.k_ = k;

  for (const auto& spec : edges) {
    auto a = g.find_vertex(spec.u);
    auto b = g.find_vertex(spec.v);
    if (!a || !b) {
      throw GraphError("edge references unknown vertex '" + (a ? spec.v : spec.u) + "'");
    }
    if (*a == *b) throw GraphError("self-loop on '" + spec.u + "'");
    if (spec.w <= Weight(0)) throw GraphError("non-positive weight on edge " + spec.u + "-" + spec.v);
    g.edges_.push_back(Edge{std::min(*a, *b), std::max(*a, *b), spec.w});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.u, x.v) < std::pair(y.u, y.v);
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].u == g.edges_[i - 1].u && g.edges_[i].v == g.edges_[i - 1].v) {
      throw GraphError("parallel edge " + g.ids_[g.edges_[i].u] + "-" + g.ids_[g.edges_[i].v]);
    }
  }
  g.adjacency_.assign(g.ids_.size(), {});
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    g.adjacency_[g.edges_[e].u].push_back({g.edges_[e].v, e});
    g.adjacency_[g.edges_[e].v].push_back({g.edges_[e].u, e});
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Incidence& x, const Incidence& y) { return x.to < y.to; });
  }
  return g;
}

std::optional<Vertex> PriorityGraph::find_vertex(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return id_less(a, b); });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Vertex>(it - ids_.begin());
}

std::optional<EdgeId> PriorityGraph::find_edge(Vertex a, Vertex b) const {
  if (a >= num_vertices() || b >= num_vertices()) return std::nullopt;
  auto adj = neighbors(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Incidence& x, Vertex y) { return x.to < y; });
  if (it == adj.end() || it->to != b) return std::nullopt;
  return it->edge;
}

std::vector<Vertex> PriorityGraph::terminals(int level) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < num_vertices(); ++v) {
    if (priority_[v] >= level && priority_[v] > 0) out.push_back(v);
  }
  return out;
}

PriorityGraph PriorityGraph::with_priorities(std::vector<int> priority, int k) const {
  if (priority.size() != num_vertices()) throw GraphError("priority vector size mismatch");
  for (int p : priority) {
    if (p < 0 || p > k) throw GraphError("priority outside [0, k]");
  }
  if (k < 1) throw GraphError("k must be at least 1");
  PriorityGraph g = *this;
  g.priority_ = std::move(priority);
  g.k_ = k;
  return g;
}

Subgraph::Subgraph(std::vector<EdgeId> edges, std::vector<Vertex> isolated)
    : edges_(std::move(edges)), isolated_(std::move(isolated)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  std::sort(isolated_.begin(), isolated_.end());
  isolated_.erase(std::unique(isolated_.begin(), isolated_.end()), isolated_.end());
}

bool Subgraph::contains(EdgeId e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<Vertex> Subgraph::vertices(const PriorityGraph& g) const {
  std::vector<Vertex> out = isolated_;
  for (EdgeId e : edges_) {
    out.push_back(g.edge(e).u);
    out.push_back(g.edge(e).v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Weight Subgraph::weight(const PriorityGraph& g) const {
  Weight total{0};
  for (EdgeId e : edges_) total += g.edge(e).w;
  return total;
}

std::vector<std::uint8_t> Subgraph::mask(const PriorityGraph& g) const {
  std::vector<std::uint8_t> m(g.num_edges(), 0);
  for (EdgeId e : edges_) m.at(e) = 1;
  return m;
}

Subgraph Subgraph::unite(const Subgraph& other, const PriorityGraph& g) const {
  std::vector<EdgeId> all = edges_;
  all.insert(all.end(), other.edges_.begin(), other.edges_.end());
  Subgraph merged(std::move(all));
  std::vector<Vertex> covered = merged.vertices(g);
  std::vector<Vertex> iso;
  for (const auto* list : {&isolated_, &other.isolated_}) {
    for (Vertex v : *list) {
      if (!std::binary_search(covered.begin(), covered.end(), v)) iso.push_back(v);
    }
  }
  return Subgraph(merged.edges_, std::move(iso));
}

bool Subgraph::is_subset_of(const Subgraph& other) const {
  return std::includes(other.edges_.begin(), other.edges_.end(), edges_.begin(), edges_.end());
}

Subgraph subgraph_from_mask(std::span<const std::uint8_t> mask, std::vector<Vertex> isolated) {
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < mask.size(); ++e) {
    if (mask[e]) edges.push_back(e);
  }
  return Subgraph(std::move(edges), std::move(isolated));
}

std::vector<std::uint32_t> component_labels(const PriorityGraph& g, EdgeFilter filter) {
  std::vector<std::uint32_t> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!filter.empty() && !filter[e]) continue;
    auto a = find(g.edge(e).u);
    auto b = find(g.edge(e).v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> label(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) label[v] = find(v);
  return label;
}

}  // namespace prisparse
