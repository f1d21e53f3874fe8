#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prisparse/graph.hpp"

namespace prisparse {

// Which validity predicate a level must satisfy.
class ConstraintFamily {
 public:
  enum class Kind { Tree, Multiplicative, Additive, Preserver };

  static ConstraintFamily tree() { return ConstraintFamily(Kind::Tree, Weight(0)); }
  static ConstraintFamily preserver() { return ConstraintFamily(Kind::Preserver, Weight(0)); }
  // alpha == 1 canonicalizes to Preserver. Throws std::invalid_argument if alpha < 1.
  static ConstraintFamily multiplicative(Weight alpha);
  // beta == 0 canonicalizes to Preserver. Throws std::invalid_argument if beta < 0.
  static ConstraintFamily additive(Weight beta);

  // "tree", "preserver", "mult:<alpha>", "additive:<beta>".
  static ConstraintFamily parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  const Weight& param() const { return param_; }
  bool is_tree() const { return kind_ == Kind::Tree; }
  bool is_distance() const { return kind_ != Kind::Tree; }

  // Largest admissible d_H(u, v) given d_G(u, v). Distance families only.
  Weight allowed(const Weight& dg) const;

  friend bool operator==(const ConstraintFamily&, const ConstraintFamily&) = default;

 private:
  ConstraintFamily(Kind kind, Weight param) : kind_(kind), param_(param) {}
  Kind kind_;
  Weight param_;
};

// Edge -> rate in [1, k]. Edges of rate >= i form level i.
class KPrioritySolution {
 public:
  explicit KPrioritySolution(int k = 1);

  int k() const { return k_; }
  // rate 0 removes the edge; otherwise rate must lie in [1, k].
  void set_rate(EdgeId e, int rate);
  int rate(EdgeId e) const;
  const std::map<EdgeId, int>& rates() const { return rates_; }
  bool empty() const { return rates_.empty(); }

  // H_i: every edge of rate >= level.
  Subgraph level_subgraph(int level) const;

  friend bool operator==(const KPrioritySolution&, const KPrioritySolution&) = default;

 private:
  int k_;
  std::map<EdgeId, int> rates_;
};

// sum over rated edges of rate(e) * w(e). Throws UnknownEdge.
Weight solution_weight(const PriorityGraph& g, const KPrioritySolution& s);

struct Violation {
  enum class Kind { NotSubgraph, Disconnected, Cycle, StrayEdge, Distance };
  int level = 1;
  Kind kind = Kind::Disconnected;
  Vertex u = 0;
  Vertex v = 0;
  std::optional<Weight> required;  // Distance: admissible bound
  std::optional<Weight> actual;    // Distance: d_H, nullopt when unreachable
};

std::string describe(const Violation& v, const PriorityGraph& g);

struct LevelVerdict {
  int level = 1;
  bool valid = true;
};

struct ValidityReport {
  std::vector<LevelVerdict> levels;
  std::vector<Violation> violations;

  bool valid() const;
  void absorb(ValidityReport other);
};

// Validity of one edge set against one terminal set (or one pair set).
// Precomputes d_G so it can be asked about many candidate edge sets; the
// oracle and the public predicates share it. Safe for concurrent use.
class LevelChecker {
 public:
  LevelChecker(const PriorityGraph& g, std::vector<Vertex> terminals, ConstraintFamily family);
  // Distance constraints only over the listed pairs; connectivity over their
  // endpoints.
  LevelChecker(const PriorityGraph& g, std::vector<std::pair<Vertex, Vertex>> pairs,
               ConstraintFamily family);

  bool accepts(EdgeFilter mask) const;
  ValidityReport check(EdgeFilter mask, int level) const;

  const std::vector<Vertex>& terminals() const { return terminals_; }

 private:
  void compute_bounds();
  bool run(EdgeFilter mask, int level, std::vector<Violation>* out) const;

  const PriorityGraph* g_;
  ConstraintFamily family_;
  std::vector<Vertex> terminals_;
  std::vector<std::pair<Vertex, Vertex>> pairs_;
  std::vector<Weight> bound_;  // per pair, admissible d_H
  std::vector<char> reachable_;
};

ValidityReport is_valid_single(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                               const Subgraph& h, const ConstraintFamily& family, int level = 1);

ValidityReport is_valid_pairs(const PriorityGraph& g,
                              const std::vector<std::pair<Vertex, Vertex>>& pairs,
                              const Subgraph& h, const ConstraintFamily& family, int level = 1);

// Runs is_valid_single on every level with a nonempty terminal set.
ValidityReport is_valid_k_priority(const PriorityGraph& g, const KPrioritySolution& s,
                                   const ConstraintFamily& family);

}  // namespace prisparse
