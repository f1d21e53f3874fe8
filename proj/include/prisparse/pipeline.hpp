#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prisparse/graph.hpp"
#include "prisparse/solvers.hpp"
#include "prisparse/sparsifier.hpp"

namespace prisparse {

enum class Strategy { Exclusive, Inclusive, Pairwise };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

// Smallest power of two >= p; 0 stays 0.
int round_up_pow2(int p);

struct Rounding {
  PriorityGraph graph;             // priorities rounded, k = top active level
  std::vector<int> active_levels;  // 1, 2, 4, ... up to graph.k()
  std::map<int, int> mapping;      // original priority -> rounded, for priorities present
};

Rounding round_up_priorities(const PriorityGraph& g);

// Terminal sets (Exclusive, Inclusive) or terminal-pair sets (Pairwise) for
// each level that gets its own subproblem.
struct Partitioning {
  Strategy strategy = Strategy::Inclusive;
  std::vector<int> levels;  // ascending
  std::map<int, std::vector<Vertex>> sets;
  std::map<int, std::vector<VertexPair>> pairs;
  std::optional<Vertex> root;  // Exclusive only

  LevelInput input(int level) const;
};

// With require_rounded, every nonzero priority must be a power of two and the
// levels are 1, 2, 4, ...; without it the levels are 1..k. Throws NoTerminals
// when T_1 is empty and std::invalid_argument for an unrounded graph.
Partitioning partition(const PriorityGraph& g, Strategy strategy, bool require_rounded = true);

struct ConstraintCount {
  std::map<int, std::uint64_t> per_level;
  std::uint64_t total = 0;
};

// Pairwise: |S_i| pairs. Inclusive and Exclusive: C(|S_i|, 2).
ConstraintCount constraint_count(const Partitioning& p);

struct LevelSolutions {
  std::map<int, Subgraph> levels;
  int invocations = 0;  // distinct non-trivial subroutine calls
};

// One independent single-priority subgraph per level. Identical subproblems
// are solved once; levels with at most one terminal and no pairs get an
// empty subgraph without a call.
LevelSolutions solve_levels(const PriorityGraph& g, const Partitioning& p, SolverKind solver,
                            const ConstraintFamily& family);

struct MergeResult {
  KPrioritySolution solution;
  std::map<int, Subgraph> merged;  // level -> merged subgraph
};

// Top-down merge. Each edge's rate is the highest level whose merged subgraph
// holds it, capped at rate_cap. For Tree, each merged level is restored to a
// forest by dropping lowest-rate edges on cycles (heaviest first, then
// largest id).
MergeResult merge_levels(const PriorityGraph& g, const std::map<int, Subgraph>& levels,
                         const ConstraintFamily& family, int rate_cap);

KPrioritySolution merge(const PriorityGraph& g, const std::map<int, Subgraph>& levels,
                        const ConstraintFamily& family, int rate_cap);

struct RunOptions {
  // Permit Exclusive with a distance family (may yield invalid output).
  bool allow_exclusive = false;
};

struct RunReport {
  Strategy strategy = Strategy::Inclusive;
  SolverKind solver = SolverKind::SteinerMst2Approx;
  ConstraintFamily family = ConstraintFamily::tree();
  std::map<int, int> rounding;
  std::vector<int> active_levels;
  std::map<int, Weight> solver_weights;
  std::map<int, Weight> merged_weights;
  Weight total_weight{0};
  int invocations = 0;
  int query_budget = 0;  // number of active levels, log2(top level) + 1
  ConstraintCount constraints;
  ValidityReport validity;
  double wall_seconds = 0;
};

struct RunResult {
  KPrioritySolution solution;
  RunReport report;
};

// Round, partition, solve each level, merge. Throws InvalidStrategyForFamily,
// IncompatibleSolver, NoTerminals, Disconnected.
RunResult run(const PriorityGraph& g, const ConstraintFamily& family, Strategy strategy,
              SolverKind solver, RunOptions options = {});

}  // namespace prisparse
