#include "prisparse/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "prisparse/errors.hpp"

namespace prisparse {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Exclusive: return "exclusive";
    case Strategy::Inclusive: return "inclusive";
    case Strategy::Pairwise: return "pairwise";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "exclusive") return Strategy::Exclusive;
  if (text == "inclusive") return Strategy::Inclusive;
  if (text == "pairwise") return Strategy::Pairwise;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

int round_up_pow2(int p) {
  if (p <= 0) return 0;
  int r = 1;
  while (r < p) r *= 2;
  return r;
}

namespace {

bool is_pow2(int p) { return p > 0 && (p & (p - 1)) == 0; }

std::vector<int> power_levels(int top) {
  std::vector<int> levels;
  for (int a = 1; a <= top; a *= 2) levels.push_back(a);
  return levels;
}

}  // namespace

Rounding round_up_priorities(const PriorityGraph& g) {
  Rounding out;
  std::vector<int> rounded(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    rounded[v] = round_up_pow2(g.priority(v));
    out.mapping[g.priority(v)] = rounded[v];
  }
  int top = round_up_pow2(g.k());
  out.graph = g.with_priorities(std::move(rounded), top);
  out.active_levels = power_levels(top);
  return out;
}

LevelInput Partitioning::input(int level) const {
  LevelInput in;
  if (strategy == Strategy::Pairwise) {
    auto it = pairs.find(level);
    std::vector<VertexPair> ps = it == pairs.end() ? std::vector<VertexPair>{} : it->second;
    for (const auto& [a, b] : ps) {
      in.terminals.push_back(a);
      in.terminals.push_back(b);
    }
    std::sort(in.terminals.begin(), in.terminals.end());
    in.terminals.erase(std::unique(in.terminals.begin(), in.terminals.end()), in.terminals.end());
    in.pairs = std::move(ps);
  } else {
    auto it = sets.find(level);
    if (it != sets.end()) in.terminals = it->second;
  }
  return in;
}

Partitioning partition(const PriorityGraph& g, Strategy strategy, bool require_rounded) {
  auto terminals = g.terminals(1);
  if (terminals.empty()) throw NoTerminals("instance has no terminals");
  Partitioning p;
  p.strategy = strategy;
  if (require_rounded) {
    for (Vertex v : terminals) {
      if (!is_pow2(g.priority(v))) {
        throw std::invalid_argument("priority of " + g.id(v) + " is not a power of two; round first");
      }
    }
    p.levels = power_levels(round_up_pow2(g.k()));
  } else {
    p.levels.resize(g.k());
    std::iota(p.levels.begin(), p.levels.end(), 1);
  }

  switch (strategy) {
    case Strategy::Inclusive:
      for (int level : p.levels) p.sets[level] = g.terminals(level);
      break;
    case Strategy::Exclusive: {
      Vertex root = terminals.front();
      for (Vertex v : terminals) {
        if (g.priority(v) > g.priority(root)) root = v;
      }
      p.root = root;
      for (int level : p.levels) {
        std::vector<Vertex> s;
        for (Vertex v : terminals) {
          if (g.priority(v) == level || v == root) s.push_back(v);
        }
        p.sets[level] = std::move(s);
      }
      break;
    }
    case Strategy::Pairwise:
      for (int level : p.levels) p.pairs[level];
      for (std::size_t i = 0; i < terminals.size(); ++i) {
        for (std::size_t j = i + 1; j < terminals.size(); ++j) {
          int level = std::min(g.priority(terminals[i]), g.priority(terminals[j]));
          p.pairs[level].emplace_back(terminals[i], terminals[j]);
        }
      }
      break;
  }
  return p;
}

ConstraintCount constraint_count(const Partitioning& p) {
  ConstraintCount count;
  for (int level : p.levels) {
    std::uint64_t c = 0;
    if (p.strategy == Strategy::Pairwise) {
      auto it = p.pairs.find(level);
      c = it == p.pairs.end() ? 0 : it->second.size();
    } else {
      auto it = p.sets.find(level);
      std::uint64_t n = it == p.sets.end() ? 0 : it->second.size();
      c = n * (n > 0 ? n - 1 : 0) / 2;
    }
    count.per_level[level] = c;
    count.total += c;
  }
  return count;
}

LevelSolutions solve_levels(const PriorityGraph& g, const Partitioning& p, SolverKind solver,
                            const ConstraintFamily& family) {
  if (!compatible(solver, family)) {
    throw IncompatibleSolver("solver " + to_string(solver) + " cannot produce family " +
                             family.to_string());
  }
  LevelSolutions out;
  using Key = std::pair<std::vector<Vertex>, std::vector<VertexPair>>;
  std::map<Key, Subgraph> cache;
  for (auto it = p.levels.rbegin(); it != p.levels.rend(); ++it) {
    LevelInput in = p.input(*it);
    bool trivial = in.terminals.size() <= 1 && (!in.pairs || in.pairs->empty());
    if (trivial) {
      out.levels[*it] = Subgraph({}, in.terminals);
      continue;
    }
    Key key{in.terminals, in.pairs.value_or(std::vector<VertexPair>{})};
    auto hit = cache.find(key);
    if (hit == cache.end()) {
      hit = cache.emplace(key, solve_single(g, in, solver, family)).first;
      ++out.invocations;
    }
    out.levels[*it] = hit->second;
  }
  return out;
}

MergeResult merge_levels(const PriorityGraph& g, const std::map<int, Subgraph>& levels,
                         const ConstraintFamily& family, int rate_cap) {
  // tag[e] = highest level whose subgraph contributed e.
  std::map<EdgeId, int> tag;
  MergeResult out{KPrioritySolution(rate_cap), {}};
  std::vector<Vertex> carried_isolated;

  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    const int level = it->first;
    for (EdgeId e : it->second.edges()) {
      if (e >= g.num_edges()) throw UnknownEdge("level subgraph holds a non-edge");
      tag.emplace(e, level);
    }

    if (family.is_tree()) {
      std::vector<EdgeId> order;
      for (const auto& [e, t] : tag) order.push_back(e);
      // Higher rate first, then lighter, then smaller id: an edge closing a
      // cycle is the lowest-rate, heaviest, largest-id edge on it.
      std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        if (tag[a] != tag[b]) return tag[a] > tag[b];
        return g.edge(a).w < g.edge(b).w;
      });
      std::vector<Vertex> parent(g.num_vertices());
      std::iota(parent.begin(), parent.end(), 0u);
      auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::vector<std::uint8_t> before(g.num_edges(), 0);
      std::map<EdgeId, int> kept;
      for (EdgeId e : order) {
        before[e] = 1;
        Vertex a = find(g.edge(e).u);
        Vertex b = find(g.edge(e).v);
        if (a == b) {
          if (tag[e] != level) throw PruningDisconnected("pruning reached a higher-rate edge");
          continue;
        }
        parent[a] = b;
        kept.emplace(e, tag[e]);
      }
      std::vector<std::uint8_t> after(g.num_edges(), 0);
      for (const auto& [e, t] : kept) after[e] = 1;
      if (component_labels(g, before) != component_labels(g, after)) {
        throw PruningDisconnected("pruning changed connectivity at level " + std::to_string(level));
      }
      tag = std::move(kept);
    }

    std::vector<EdgeId> edges;
    for (const auto& [e, t] : tag) edges.push_back(e);
    for (Vertex v : it->second.isolated()) carried_isolated.push_back(v);
    Subgraph merged(std::move(edges));
    auto covered = merged.vertices(g);
    std::vector<Vertex> iso;
    for (Vertex v : carried_isolated) {
      if (!std::binary_search(covered.begin(), covered.end(), v)) iso.push_back(v);
    }
    out.merged[level] = Subgraph(merged.edges(), std::move(iso));
  }
  for (const auto& [e, t] : tag) out.solution.set_rate(e, std::min(t, rate_cap));
  return out;
}

KPrioritySolution merge(const PriorityGraph& g, const std::map<int, Subgraph>& levels,
                        const ConstraintFamily& family, int rate_cap) {
  return merge_levels(g, levels, family, rate_cap).solution;
}

RunResult run(const PriorityGraph& g, const ConstraintFamily& family, Strategy strategy,
              SolverKind solver, RunOptions options) {
  auto start = std::chrono::steady_clock::now();
  if (strategy == Strategy::Exclusive && family.is_distance() && !options.allow_exclusive) {
    throw InvalidStrategyForFamily("exclusive partitioning is only valid for the tree family");
  }
  if (!compatible(solver, family)) {
    throw IncompatibleSolver("solver " + to_string(solver) + " cannot produce family " +
                             family.to_string());
  }
  Rounding rounding = round_up_priorities(g);
  Partitioning parts = partition(rounding.graph, strategy);
  LevelSolutions solved = solve_levels(rounding.graph, parts, solver, family);
  MergeResult merged = merge_levels(rounding.graph, solved.levels, family, g.k());

  RunResult result{merged.solution, {}};
  RunReport& r = result.report;
  r.strategy = strategy;
  r.solver = solver;
  r.family = family;
  r.rounding = rounding.mapping;
  r.active_levels = rounding.active_levels;
  for (const auto& [level, h] : solved.levels) r.solver_weights[level] = h.weight(g);
  for (const auto& [level, h] : merged.merged) r.merged_weights[level] = h.weight(g);
  r.total_weight = solution_weight(g, result.solution);
  r.invocations = solved.invocations;
  r.query_budget = static_cast<int>(rounding.active_levels.size());
  r.constraints = constraint_count(parts);
  r.validity = is_valid_k_priority(g, result.solution, family);
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace prisparse
