#include "prisparse/sparsifier.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "prisparse/errors.hpp"
#include "prisparse/paths.hpp"

namespace prisparse {

ConstraintFamily ConstraintFamily::multiplicative(Weight alpha) {
  if (alpha < Weight(1)) throw std::invalid_argument("stretch must be at least 1");
  if (alpha == Weight(1)) return preserver();
  return ConstraintFamily(Kind::Multiplicative, alpha);
}

ConstraintFamily ConstraintFamily::additive(Weight beta) {
  if (beta < Weight(0)) throw std::invalid_argument("additive error must be nonnegative");
  if (beta == Weight(0)) return preserver();
  return ConstraintFamily(Kind::Additive, beta);
}

ConstraintFamily ConstraintFamily::parse(std::string_view text) {
  if (text == "tree") return tree();
  if (text == "preserver") return preserver();
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto head = text.substr(0, colon);
    auto value = parse_weight(text.substr(colon + 1));
    if (head == "mult" || head == "multiplicative") return multiplicative(value);
    if (head == "additive" || head == "add") return additive(value);
  }
  throw std::invalid_argument("unknown constraint family '" + std::string(text) + "'");
}

std::string ConstraintFamily::to_string() const {
  switch (kind_) {
    case Kind::Tree: return "tree";
    case Kind::Preserver: return "preserver";
    case Kind::Multiplicative: return "mult:" + format_weight(param_);
    case Kind::Additive: return "additive:" + format_weight(param_);
  }
  return "?";
}

Weight ConstraintFamily::allowed(const Weight& dg) const {
  switch (kind_) {
    case Kind::Multiplicative: return param_ * dg;
    case Kind::Additive: return dg + param_;
    case Kind::Preserver: return dg;
    case Kind::Tree: break;
  }
  throw std::logic_error("tree family has no distance bound");
}

KPrioritySolution::KPrioritySolution(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
}

void KPrioritySolution::set_rate(EdgeId e, int rate) {
  if (rate == 0) {
    rates_.erase(e);
    return;
  }
  if (rate < 0 || rate > k_) {
    throw std::invalid_argument("rate " + std::to_string(rate) + " outside [1, " +
                                std::to_string(k_) + "]");
  }
  rates_[e] = rate;
}

int KPrioritySolution::rate(EdgeId e) const {
  auto it = rates_.find(e);
  return it == rates_.end() ? 0 : it->second;
}

Subgraph KPrioritySolution::level_subgraph(int level) const {
  std::vector<EdgeId> edges;
  for (const auto& [e, r] : rates_) {
    if (r >= level) edges.push_back(e);
  }
  return Subgraph(std::move(edges));
}

Weight solution_weight(const PriorityGraph& g, const KPrioritySolution& s) {
  Weight total{0};
  for (const auto& [e, r] : s.rates()) {
    if (e >= g.num_edges()) throw UnknownEdge("solution rates edge #" + std::to_string(e) + " which is not in the graph");
    total += Weight(r) * g.edge(e).w;
  }
  return total;
}

std::string describe(const Violation& v, const PriorityGraph& g) {
  std::string where = "level " + std::to_string(v.level) + ": ";
  std::string pair = g.id(v.u) + "-" + g.id(v.v);
  switch (v.kind) {
    case Violation::Kind::NotSubgraph:
      return where + "edge is not part of the graph";
    case Violation::Kind::Disconnected:
      return where + "terminals " + g.id(v.u) + " and " + g.id(v.v) + " are disconnected";
    case Violation::Kind::Cycle:
      return where + "edge " + pair + " closes a cycle";
    case Violation::Kind::StrayEdge:
      return where + "edge " + pair + " lies outside the terminal component";
    case Violation::Kind::Distance:
      return where + "pair " + pair + " has d_H=" +
             (v.actual ? format_weight(*v.actual) : std::string("inf")) + " > allowed " +
             format_weight(*v.required);
  }
  return where + "?";
}

bool ValidityReport::valid() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelVerdict& l) { return l.valid; });
}

void ValidityReport::absorb(ValidityReport other) {
  levels.insert(levels.end(), other.levels.begin(), other.levels.end());
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

LevelChecker::LevelChecker(const PriorityGraph& g, std::vector<Vertex> terminals,
                           ConstraintFamily family)
    : g_(&g), family_(family), terminals_(sorted_unique(std::move(terminals))) {
  if (family_.is_distance()) {
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
      for (std::size_t j = i + 1; j < terminals_.size(); ++j) {
        pairs_.emplace_back(terminals_[i], terminals_[j]);
      }
    }
    compute_bounds();
  }
}

LevelChecker::LevelChecker(const PriorityGraph& g, std::vector<std::pair<Vertex, Vertex>> pairs,
                           ConstraintFamily family)
    : g_(&g), family_(family) {
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Vertex> endpoints;
  for (const auto& [a, b] : pairs) {
    endpoints.push_back(a);
    endpoints.push_back(b);
  }
  terminals_ = sorted_unique(std::move(endpoints));
  if (family_.is_distance()) {
    pairs_ = std::move(pairs);
    compute_bounds();
  }
}

void LevelChecker::compute_bounds() {
  std::vector<std::optional<Weight>> dist;
  Vertex source = static_cast<Vertex>(-1);
  for (const auto& [a, b] : pairs_) {
    if (a != source) {
      dist = distances_from(*g_, a);
      source = a;
    }
    reachable_.push_back(dist[b].has_value());
    bound_.push_back(dist[b] ? family_.allowed(*dist[b]) : Weight(0));
  }
}

bool LevelChecker::run(EdgeFilter mask, int level, std::vector<Violation>* out) const {
  if (terminals_.empty()) return true;
  const PriorityGraph& g = *g_;
  if (mask.size() != g.num_edges()) throw std::invalid_argument("edge mask size mismatch");

  bool ok = true;
  auto report = [&](Violation v) {
    ok = false;
    v.level = level;
    if (out) out->push_back(v);
  };

  auto labels = component_labels(g, mask);
  const auto root = labels[terminals_.front()];
  for (Vertex t : terminals_) {
    if (labels[t] != root) {
      report({level, Violation::Kind::Disconnected, terminals_.front(), t, {}, {}});
      if (!out) return false;
    }
  }

  if (family_.is_tree()) {
    std::vector<Vertex> parent(g.num_vertices());
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!mask[e]) continue;
      const Edge& edge = g.edge(e);
      if (labels[edge.u] != root) {
        report({level, Violation::Kind::StrayEdge, edge.u, edge.v, {}, {}});
      } else {
        Vertex a = find(edge.u);
        Vertex b = find(edge.v);
        if (a == b) {
          report({level, Violation::Kind::Cycle, edge.u, edge.v, {}, {}});
        } else {
          parent[a] = b;
        }
      }
      if (!ok && !out) return false;
    }
    return ok;
  }

  std::vector<std::optional<Weight>> dist;
  Vertex source = static_cast<Vertex>(-1);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto [a, b] = pairs_[i];
    if (!reachable_[i] || labels[a] != labels[b]) continue;  // reported above
    if (a != source) {
      dist = distances_from(g, a, mask);
      source = a;
    }
    if (*dist[b] > bound_[i]) {
      report({level, Violation::Kind::Distance, a, b, bound_[i], dist[b]});
      if (!out) return false;
    }
  }
  return ok;
}

bool LevelChecker::accepts(EdgeFilter mask) const { return run(mask, 1, nullptr); }

ValidityReport LevelChecker::check(EdgeFilter mask, int level) const {
  ValidityReport report;
  bool ok = run(mask, level, &report.violations);
  report.levels.push_back({level, ok});
  return report;
}

namespace {

// Mask of h over g; out-of-range edges become NotSubgraph violations.
std::vector<std::uint8_t> mask_of(const PriorityGraph& g, const Subgraph& h, int level,
                                  std::vector<Violation>& bad) {
  std::vector<std::uint8_t> mask(g.num_edges(), 0);
  for (EdgeId e : h.edges()) {
    if (e < g.num_edges()) {
      mask[e] = 1;
    } else {
      Violation v;
      v.level = level;
      v.kind = Violation::Kind::NotSubgraph;
      bad.push_back(v);
    }
  }
  return mask;
}

ValidityReport finish(ValidityReport report, std::vector<Violation> bad) {
  if (!bad.empty()) {
    report.levels.back().valid = false;
    report.violations.insert(report.violations.begin(), bad.begin(), bad.end());
  }
  return report;
}

}  // namespace

ValidityReport is_valid_single(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                               const Subgraph& h, const ConstraintFamily& family, int level) {
  std::vector<Violation> bad;
  auto mask = mask_of(g, h, level, bad);
  LevelChecker checker(g, terminals, family);
  return finish(checker.check(mask, level), std::move(bad));
}

ValidityReport is_valid_pairs(const PriorityGraph& g,
                              const std::vector<std::pair<Vertex, Vertex>>& pairs,
                              const Subgraph& h, const ConstraintFamily& family, int level) {
  std::vector<Violation> bad;
  auto mask = mask_of(g, h, level, bad);
  LevelChecker checker(g, pairs, family);
  return finish(checker.check(mask, level), std::move(bad));
}

ValidityReport is_valid_k_priority(const PriorityGraph& g, const KPrioritySolution& s,
                                   const ConstraintFamily& family) {
  if (s.k() != g.k()) {
    throw std::invalid_argument("solution k=" + std::to_string(s.k()) + " but graph k=" +
                                std::to_string(g.k()));
  }
  ValidityReport report;
  for (int level = 1; level <= g.k(); ++level) {
    auto terminals = g.terminals(level);
    if (terminals.empty()) continue;
    report.absorb(is_valid_single(g, terminals, s.level_subgraph(level), family, level));
  }
  return report;
}

}  // namespace prisparse
