#include "prisparse/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "prisparse/errors.hpp"
#include "prisparse/oracle.hpp"
#include "prisparse/paths.hpp"

namespace prisparse {

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::SteinerMst2Approx: return "steiner2approx";
    case SolverKind::GreedySpanner: return "greedy";
    case SolverKind::SubsetSpannerClosure: return "subset";
    case SolverKind::PathGreedy: return "pathgreedy";
    case SolverKind::Exact: return "exact";
  }
  return "?";
}

SolverKind parse_solver(std::string_view text) {
  for (auto kind : {SolverKind::SteinerMst2Approx, SolverKind::GreedySpanner,
                    SolverKind::SubsetSpannerClosure, SolverKind::PathGreedy, SolverKind::Exact}) {
    if (text == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown solver '" + std::string(text) + "'");
}

bool compatible(SolverKind kind, const ConstraintFamily& family) {
  using K = ConstraintFamily::Kind;
  switch (kind) {
    case SolverKind::Exact: return true;
    case SolverKind::SteinerMst2Approx: return family.kind() == K::Tree;
    case SolverKind::GreedySpanner:
    case SolverKind::SubsetSpannerClosure: return family.kind() == K::Multiplicative;
    case SolverKind::PathGreedy: return family.kind() == K::Additive || family.kind() == K::Preserver;
  }
  return false;
}

SolverKind default_solver(const ConstraintFamily& family) {
  switch (family.kind()) {
    case ConstraintFamily::Kind::Tree: return SolverKind::SteinerMst2Approx;
    case ConstraintFamily::Kind::Multiplicative: return SolverKind::SubsetSpannerClosure;
    default: return SolverKind::PathGreedy;
  }
}

std::optional<Weight> approximation_ratio(SolverKind kind) {
  if (kind == SolverKind::Exact) return Weight(1);
  if (kind == SolverKind::SteinerMst2Approx) return Weight(2);
  return std::nullopt;
}

namespace {

std::vector<Vertex> normalize(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Repeatedly drop edges hanging off non-terminal leaves.
void prune_steiner_leaves(const PriorityGraph& g, std::vector<std::uint8_t>& mask,
                          const std::vector<Vertex>& terminals) {
  std::vector<int> degree(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (mask[e]) {
      ++degree[g.edge(e).u];
      ++degree[g.edge(e).v];
    }
  }
  std::vector<char> is_terminal(g.num_vertices(), 0);
  for (Vertex t : terminals) is_terminal[t] = 1;
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (degree[v] == 1 && !is_terminal[v]) stack.push_back(v);
  }
  while (!stack.empty()) {
    Vertex leaf = stack.back();
    stack.pop_back();
    if (degree[leaf] != 1) continue;
    for (const auto& inc : g.neighbors(leaf)) {
      if (!mask[inc.edge]) continue;
      mask[inc.edge] = 0;
      --degree[leaf];
      if (--degree[inc.to] == 1 && !is_terminal[inc.to]) stack.push_back(inc.to);
      break;
    }
  }
}

bool violates(const std::optional<Weight>& dh, const Weight& allowed) {
  return !dh || *dh > allowed;
}

}  // namespace

Subgraph steiner_mst_2approx(const PriorityGraph& g, const std::vector<Vertex>& terminals) {
  auto ts = normalize(terminals);
  if (ts.size() <= 1) return Subgraph({}, ts);
  MetricClosure closure = metric_closure(g, ts);
  Subgraph closure_tree = minimum_spanning_tree(closure.graph);

  std::vector<std::uint8_t> mask(g.num_edges(), 0);
  for (EdgeId ce : closure_tree.edges()) {
    for (EdgeId e : closure.witness[ce]) mask[e] = 1;
  }
  // Witness paths may overlap into cycles; Kruskal over their union drops the
  // heaviest edge of each cycle and keeps the terminals connected.
  Subgraph tree = minimum_spanning_forest(g, mask);
  mask = tree.mask(g);
  prune_steiner_leaves(g, mask, ts);
  return subgraph_from_mask(mask);
}

Subgraph greedy_spanner(const PriorityGraph& g, const Weight& alpha) {
  if (alpha < 1) throw std::invalid_argument("stretch must be at least 1");
  std::vector<EdgeId> order(g.num_edges());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w < g.edge(b).w; });
  std::vector<std::uint8_t> mask(g.num_edges(), 0);
  for (EdgeId e : order) {
    const Edge& edge = g.edge(e);
    auto dist = distances_from(g, edge.u, mask);
    if (violates(dist[edge.v], alpha * edge.w)) mask[e] = 1;
  }
  return subgraph_from_mask(mask);
}

Subgraph subset_spanner_closure(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                                const Weight& alpha) {
  auto ts = normalize(terminals);
  if (ts.size() <= 1) return Subgraph({}, ts);
  MetricClosure closure = metric_closure(g, ts);
  Subgraph closure_spanner = greedy_spanner(closure.graph, alpha);
  std::vector<EdgeId> edges;
  for (EdgeId ce : closure_spanner.edges()) {
    edges.insert(edges.end(), closure.witness[ce].begin(), closure.witness[ce].end());
  }
  return Subgraph(std::move(edges));
}

Subgraph path_greedy(const PriorityGraph& g, std::vector<VertexPair> pairs,
                     const ConstraintFamily& family) {
  if (!family.is_distance()) throw std::invalid_argument("path_greedy needs a distance family");
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs.erase(std::remove_if(pairs.begin(), pairs.end(), [](const VertexPair& p) { return p.first == p.second; }),
              pairs.end());

  struct Item {
    Weight dg;
    VertexPair pair;
  };
  std::vector<Item> items;
  for (const auto& p : pairs) {
    auto dist = distances_from(g, p.first);
    if (!dist[p.second]) {
      throw Disconnected("pair " + g.id(p.first) + "-" + g.id(p.second) + " is not connected");
    }
    items.push_back({*dist[p.second], p});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.dg != y.dg) return x.dg > y.dg;
    return x.pair < y.pair;
  });

  std::vector<std::uint8_t> mask(g.num_edges(), 0);
  for (const auto& item : items) {
    auto dh = distances_from(g, item.pair.first, mask);
    if (!violates(dh[item.pair.second], family.allowed(item.dg))) continue;
    auto path = shortest_path(g, item.pair.first, item.pair.second);
    for (EdgeId e : path->edges) mask[e] = 1;
  }
  return subgraph_from_mask(mask);
}

std::vector<VertexPair> all_pairs(const std::vector<Vertex>& terminals) {
  auto ts = normalize(terminals);
  std::vector<VertexPair> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) out.emplace_back(ts[i], ts[j]);
  }
  return out;
}

Subgraph solve_single(const PriorityGraph& g, const LevelInput& input, SolverKind kind,
                      const ConstraintFamily& family) {
  if (!compatible(kind, family)) {
    throw IncompatibleSolver("solver " + to_string(kind) + " cannot produce family " +
                             family.to_string());
  }
  auto ts = normalize(input.terminals);
  if (ts.size() <= 1 && (!input.pairs || input.pairs->empty())) return Subgraph({}, ts);
  switch (kind) {
    case SolverKind::SteinerMst2Approx:
      return steiner_mst_2approx(g, ts);
    case SolverKind::GreedySpanner: {
      auto labels = component_labels(g);
      for (Vertex t : ts) {
        if (labels[t] != labels[ts.front()]) {
          throw Disconnected("terminals " + g.id(ts.front()) + " and " + g.id(t) + " are not connected");
        }
      }
      return greedy_spanner(g, family.param());
    }
    case SolverKind::SubsetSpannerClosure:
      return subset_spanner_closure(g, ts, family.param());
    case SolverKind::PathGreedy:
      return path_greedy(g, input.pairs ? *input.pairs : all_pairs(ts), family);
    case SolverKind::Exact:
      if (input.pairs && family.is_distance()) {
        return exact_single_priority_pairs(g, *input.pairs, family).subgraph;
      }
      return exact_single_priority(g, ts, family).subgraph;
  }
  throw std::logic_error("unhandled solver kind");
}

}  // namespace prisparse
