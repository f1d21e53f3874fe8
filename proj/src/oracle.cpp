#include "prisparse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "prisparse/errors.hpp"
#include "prisparse/paths.hpp"

namespace prisparse {

bool rate_vector_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

constexpr std::size_t kMaxMaskEdges = 26;

std::vector<std::uint8_t> unpack(EdgeMask mask, std::size_t m) {
  std::vector<std::uint8_t> bits(m);
  for (std::size_t e = 0; e < m; ++e) bits[e] = (mask >> e) & 1u;
  return bits;
}

// a before b in 0/1 rate-vector order.
bool mask_less(EdgeMask a, EdgeMask b) {
  EdgeMask diff = a ^ b;
  if (diff == 0) return false;
  EdgeMask lowest = diff & (~diff + 1);
  return (b & lowest) != 0;
}

std::vector<Weight> mask_weights(const PriorityGraph& g) {
  const std::size_t m = g.num_edges();
  std::vector<Weight> w(std::size_t{1} << m);
  for (EdgeMask mask = 1; mask < w.size(); ++mask) {
    int bit = __builtin_ctz(mask);
    w[mask] = w[mask & (mask - 1)] + g.edge(bit).w;
  }
  return w;
}

void check_budget(const PriorityGraph& g, int k, const OracleBudget& budget) {
  const std::size_t m = g.num_edges();
  if (m > budget.max_edges || m > kMaxMaskEdges) {
    throw BudgetExceeded(std::to_string(m) + " edges exceeds the oracle edge budget");
  }
  if (k > budget.max_k) throw BudgetExceeded("k=" + std::to_string(k) + " exceeds the oracle budget");
  double states = std::pow(static_cast<double>(k + 1), static_cast<double>(m));
  if (states > static_cast<double>(budget.max_states)) {
    throw BudgetExceeded("search space (k+1)^|E| = " + std::to_string(k + 1) + "^" +
                         std::to_string(m) + " exceeds max_states");
  }
}

void require_connected(const PriorityGraph& g, const std::vector<Vertex>& terminals) {
  if (terminals.empty()) return;
  auto labels = component_labels(g);
  for (Vertex t : terminals) {
    if (labels[t] != labels[terminals.front()]) {
      throw Disconnected("terminals " + g.id(terminals.front()) + " and " + g.id(t) +
                         " are not connected");
    }
  }
}

struct SearchSpace {
  std::size_t m = 0;
  int top = 0;  // highest level with a terminal
  EdgeMask full = 0;
  std::vector<std::vector<std::uint8_t>> valid;  // [level] -> per-mask verdict
  std::vector<Weight> weight;                    // per-mask weight
  std::vector<EdgeMask> top_candidates;          // valid at `top`, by weight
};

template <typename TableFn>
SearchSpace build_space(const PriorityGraph& g, const ConstraintFamily& family, TableFn table) {
  SearchSpace s;
  s.m = g.num_edges();
  s.full = s.m == 0 ? 0 : static_cast<EdgeMask>((std::uint64_t{1} << s.m) - 1);
  for (Vertex v = 0; v < g.num_vertices(); ++v) s.top = std::max(s.top, g.priority(v));
  s.weight = mask_weights(g);
  s.valid.resize(s.top + 1);
  for (int level = 1; level <= s.top; ++level) {
    LevelChecker checker(g, g.terminals(level), family);
    s.valid[level] = table(g, checker);
  }
  if (s.top > 0) {
    for (EdgeMask mask = 0; mask <= s.full; ++mask) {
      if (s.valid[s.top][mask]) s.top_candidates.push_back(mask);
      if (mask == s.full) break;
    }
    std::stable_sort(s.top_candidates.begin(), s.top_candidates.end(),
                     [&](EdgeMask a, EdgeMask b) { return s.weight[a] < s.weight[b]; });
  }
  return s;
}

struct Incumbent {
  bool found = false;
  Weight weight{0};
  std::vector<std::uint8_t> rates;

  void offer(const Weight& w, const std::vector<std::uint8_t>& r) {
    if (!found || w < weight || (w == weight && rate_vector_less(r, rates))) {
      found = true;
      weight = w;
      rates = r;
    }
  }
};

// Depth-first search over nested chains H_top ⊆ ... ⊆ H_1, each level valid.
// A chain is exactly a rate vector; weight = sum_i w(H_i). Branches whose
// weight plus (remaining levels) * w(current) already exceeds the incumbent
// are cut; equal-weight branches stay so ties resolve by rate vector.
class ChainSearch {
 public:
  explicit ChainSearch(const SearchSpace& space) : s_(space), chain_(space.top + 1, 0) {}

  void from_top(EdgeMask mask) { visit(s_.top, mask, Weight(0)); }
  const Incumbent& best() const { return best_; }

 private:
  void visit(int level, EdgeMask mask, const Weight& above) {
    Weight partial = above + s_.weight[mask];
    if (best_.found && partial + Weight(level - 1) * s_.weight[mask] > best_.weight) return;
    chain_[level] = mask;
    if (level == 1) {
      leaf(partial);
      return;
    }
    const auto& valid = s_.valid[level - 1];
    const EdgeMask free = s_.full & ~mask;
    for (EdgeMask sub = free;; sub = (sub - 1) & free) {
      if (valid[mask | sub]) visit(level - 1, mask | sub, partial);
      if (sub == 0) break;
    }
  }

  void leaf(const Weight& total) {
    if (best_.found && total > best_.weight) return;
    std::vector<std::uint8_t> rates(s_.m, 0);
    for (int level = 1; level <= s_.top; ++level) {
      for (std::size_t e = 0; e < s_.m; ++e) {
        if ((chain_[level] >> e) & 1u) rates[e] = static_cast<std::uint8_t>(level);
      }
    }
    best_.offer(total, rates);
  }

  const SearchSpace& s_;
  std::vector<EdgeMask> chain_;
  Incumbent best_;
};

ExactSolution to_solution(const PriorityGraph& g, const Incumbent& best) {
  if (!best.found) throw Infeasible("no valid rate assignment exists");
  ExactSolution out{KPrioritySolution(g.k()), best.weight};
  for (EdgeId e = 0; e < best.rates.size(); ++e) out.solution.set_rate(e, best.rates[e]);
  return out;
}

}  // namespace

namespace serial {

std::vector<std::uint8_t> validity_table(const PriorityGraph& g, const LevelChecker& checker) {
  const std::size_t m = g.num_edges();
  std::vector<std::uint8_t> table(std::size_t{1} << m, 0);
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    table[mask] = checker.accepts(unpack(static_cast<EdgeMask>(mask), m)) ? 1 : 0;
  }
  return table;
}

ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget) {
  check_budget(g, g.k(), budget);
  require_connected(g, g.terminals(1));
  SearchSpace space = build_space(g, family, serial::validity_table);
  if (space.top == 0) return {KPrioritySolution(g.k()), Weight(0)};
  ChainSearch search(space);
  for (EdgeMask mask : space.top_candidates) search.from_top(mask);
  return to_solution(g, search.best());
}

}  // namespace serial

namespace parallel {

std::vector<std::uint8_t> validity_table(const PriorityGraph& g, const LevelChecker& checker) {
  const std::size_t m = g.num_edges();
  const std::int64_t count = std::int64_t{1} << m;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t mask = 0; mask < count; ++mask) {
    table[mask] = checker.accepts(unpack(static_cast<EdgeMask>(mask), m)) ? 1 : 0;
  }
  return table;
}

ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget) {
  check_budget(g, g.k(), budget);
  require_connected(g, g.terminals(1));
  SearchSpace space = build_space(g, family, parallel::validity_table);
  if (space.top == 0) return {KPrioritySolution(g.k()), Weight(0)};
  Incumbent global;
  const auto n = static_cast<std::int64_t>(space.top_candidates.size());
#pragma omp parallel
  {
    ChainSearch search(space);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) search.from_top(space.top_candidates[i]);
#pragma omp critical(prisparse_oracle_reduce)
    {
      if (search.best().found) global.offer(search.best().weight, search.best().rates);
    }
  }
  return to_solution(g, global);
}

}  // namespace parallel

ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget) {
  return parallel::exact_k_priority(g, family, budget);
}

namespace {

ExactSubgraph cheapest_valid(const PriorityGraph& g, const LevelChecker& checker,
                             const OracleBudget& budget) {
  const std::size_t m = g.num_edges();
  if (m > budget.max_edges || m > kMaxMaskEdges ||
      (std::uint64_t{1} << m) > budget.max_states) {
    throw BudgetExceeded(std::to_string(m) + " edges exceeds the oracle budget");
  }
  require_connected(g, checker.terminals());
  auto table = parallel::validity_table(g, checker);
  auto weight = mask_weights(g);
  std::optional<EdgeMask> best;
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    if (!table[mask]) continue;
    auto cand = static_cast<EdgeMask>(mask);
    if (!best || weight[cand] < weight[*best] ||
        (weight[cand] == weight[*best] && mask_less(cand, *best))) {
      best = cand;
    }
  }
  if (!best) throw Infeasible("no valid subgraph exists");
  std::vector<Vertex> iso;
  if (*best == 0) iso = checker.terminals();
  return {subgraph_from_mask(unpack(*best, m), std::move(iso)), weight[*best]};
}

}  // namespace

ExactSubgraph exact_single_priority(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                                    const ConstraintFamily& family, const OracleBudget& budget) {
  std::vector<Vertex> ts = terminals;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.size() <= 1) return {Subgraph({}, ts), Weight(0)};
  if (family.is_tree()) {
    const double n = static_cast<double>(g.num_vertices());
    const double q = static_cast<double>(ts.size());
    double dp_cost = std::pow(3.0, q) * n + std::pow(2.0, q) * n * n;
    double enum_cost = std::pow(2.0, static_cast<double>(g.num_edges())) * g.num_edges();
    if (dp_cost < enum_cost || g.num_edges() > budget.max_edges) return exact_steiner_tree(g, ts);
  }
  LevelChecker checker(g, ts, family);
  return cheapest_valid(g, checker, budget);
}

ExactSubgraph exact_single_priority_pairs(const PriorityGraph& g,
                                          const std::vector<VertexPair>& pairs,
                                          const ConstraintFamily& family,
                                          const OracleBudget& budget) {
  if (pairs.empty()) return {Subgraph(), Weight(0)};
  LevelChecker checker(g, pairs, family);
  return cheapest_valid(g, checker, budget);
}

ExactSubgraph exact_steiner_tree(const PriorityGraph& g, const std::vector<Vertex>& terminals) {
  std::vector<Vertex> ts = terminals;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  if (ts.size() <= 1) return {Subgraph({}, ts), Weight(0)};
  require_connected(g, ts);

  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::optional<Weight>>> dist(n);
  for (Vertex v = 0; v < n; ++v) dist[v] = distances_from(g, v);

  // Subsets of every terminal but the last; the last one is the root.
  const std::size_t q = ts.size() - 1;
  const std::size_t subsets = std::size_t{1} << q;
  using Cell = std::optional<Weight>;
  std::vector<std::vector<Cell>> joined(subsets, std::vector<Cell>(n));  // tree through v, split at v
  std::vector<std::vector<Cell>> best(subsets, std::vector<Cell>(n));    // tree connecting S and v
  std::vector<std::vector<std::size_t>> split(subsets, std::vector<std::size_t>(n, 0));
  std::vector<std::vector<Vertex>> via(subsets, std::vector<Vertex>(n, 0));

  auto better = [](const Cell& cand, const Cell& cur) { return cand && (!cur || *cand < *cur); };

  for (std::size_t s = 1; s < subsets; ++s) {
    if ((s & (s - 1)) == 0) {
      int i = __builtin_ctz(static_cast<unsigned>(s));
      joined[s][ts[i]] = Weight(0);
    } else {
      const std::size_t low = s & (~s + 1);
      for (Vertex v = 0; v < n; ++v) {
        // Sub-splits containing the lowest element, so each split is seen once.
        for (std::size_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
          if (!(a & low)) continue;
          const Cell& x = best[a][v];
          const Cell& y = best[s ^ a][v];
          if (!x || !y) continue;
          Cell cand = *x + *y;
          if (better(cand, joined[s][v])) {
            joined[s][v] = cand;
            split[s][v] = a;
          }
        }
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex u = 0; u < n; ++u) {
        if (!joined[s][u] || !dist[u][v]) continue;
        Cell cand = *joined[s][u] + *dist[u][v];
        if (better(cand, best[s][v])) {
          best[s][v] = cand;
          via[s][v] = u;
        }
      }
    }
  }

  std::vector<std::uint8_t> mask(g.num_edges(), 0);
  auto add_path = [&](Vertex a, Vertex b) {
    if (a == b) return;
    auto p = shortest_path(g, a, b);
    for (EdgeId e : p->edges) mask[e] = 1;
  };
  auto rebuild = [&](auto&& self, std::size_t s, Vertex v) -> void {
    Vertex u = via[s][v];
    add_path(u, v);
    if ((s & (s - 1)) == 0) return;  // u is the terminal itself
    std::size_t a = split[s][u];
    self(self, a, u);
    self(self, s ^ a, u);
  };
  const Vertex root = ts.back();
  rebuild(rebuild, subsets - 1, root);

  Subgraph tree = subgraph_from_mask(mask);
  Weight w = tree.weight(g);
  if (w != *best[subsets - 1][root]) {
    throw std::logic_error("Steiner DP reconstruction does not match its optimum");
  }
  return {std::move(tree), w};
}

Certificate certify_ratio(const PriorityGraph& g, const ConstraintFamily& family,
                          Strategy strategy, SolverKind solver, const OracleBudget& budget) {
  ExactSolution opt = exact_k_priority(g, family, budget);
  RunResult result = run(g, family, strategy, solver);
  Certificate c;
  c.algorithm_weight = result.report.total_weight;
  c.optimum = opt.weight;
  if (opt.weight == Weight(0)) {
    c.ratio = c.algorithm_weight == Weight(0) ? Weight(1) : Weight(std::numeric_limits<std::int32_t>::max());
  } else {
    c.ratio = c.algorithm_weight / opt.weight;
  }
  if (auto rho = approximation_ratio(solver)) c.bound = Weight(4) * *rho;
  c.pass = result.report.validity.valid() && (!c.bound || c.ratio <= *c.bound);
  c.report = std::move(result.report);
  return c;
}

}  // namespace prisparse
