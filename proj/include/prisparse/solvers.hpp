#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prisparse/graph.hpp"
#include "prisparse/sparsifier.hpp"

namespace prisparse {

using VertexPair = std::pair<Vertex, Vertex>;

// The single-priority subroutine plugged into the k-priority pipeline.
enum class SolverKind {
  SteinerMst2Approx,     // Tree
  GreedySpanner,         // Multiplicative; all-pairs greedy over the whole graph
  SubsetSpannerClosure,  // Multiplicative; greedy on the terminal metric closure
  PathGreedy,            // Additive / Preserver
  Exact,                 // any family; exhaustive, desk-scale only
};

std::string to_string(SolverKind kind);
// "steiner2approx", "greedy", "subset", "pathgreedy", "exact".
SolverKind parse_solver(std::string_view text);

bool compatible(SolverKind kind, const ConstraintFamily& family);
// Default solver for a family (exact excluded).
SolverKind default_solver(const ConstraintFamily& family);
// Known approximation ratio against the single-priority optimum, if any.
std::optional<Weight> approximation_ratio(SolverKind kind);

// MST of the terminal metric closure, expanded through witness paths, with
// cycles and non-terminal leaves removed. Weight <= 2 * optimal Steiner tree.
// Throws Disconnected.
Subgraph steiner_mst_2approx(const PriorityGraph& g, const std::vector<Vertex>& terminals);

// Greedy spanner: scan edges by (weight, id) and keep (u, v) iff the current
// d_H(u, v) > alpha * w(u, v). alpha >= 1.
Subgraph greedy_spanner(const PriorityGraph& g, const Weight& alpha);

// Greedy spanner of the terminal metric closure, closure edges replaced by
// their witness paths. Throws Disconnected.
Subgraph subset_spanner_closure(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                                const Weight& alpha);

// For each pair in order of nonincreasing d_G (ties by pair), add the witness
// shortest path whenever the pair violates the family bound. Additive or
// Preserver only. Throws Disconnected.
Subgraph path_greedy(const PriorityGraph& g, std::vector<VertexPair> pairs,
                     const ConstraintFamily& family);

// What one level of the pipeline hands to the subroutine.
struct LevelInput {
  std::vector<Vertex> terminals;  // always set
  std::optional<std::vector<VertexPair>> pairs;  // set for pairwise partitions
};

// Dispatch on kind. Throws IncompatibleSolver.
Subgraph solve_single(const PriorityGraph& g, const LevelInput& input, SolverKind kind,
                      const ConstraintFamily& family);

std::vector<VertexPair> all_pairs(const std::vector<Vertex>& terminals);

}  // namespace prisparse
