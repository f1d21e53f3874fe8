#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prisparse/graph.hpp"
#include "prisparse/pipeline.hpp"
#include "prisparse/solvers.hpp"
#include "prisparse/sparsifier.hpp"

namespace prisparse {

// Caps on the exhaustive search. The search refuses instances whose rate
// space (k+1)^|E| exceeds max_states.
struct OracleBudget {
  std::size_t max_edges = 20;
  int max_k = 8;
  std::uint64_t max_states = 1'000'000'000ULL;
};

struct ExactSolution {
  KPrioritySolution solution;
  Weight weight{0};
};

struct ExactSubgraph {
  Subgraph subgraph;
  Weight weight{0};
};

// Edge masks are bit e <-> edge e.
using EdgeMask = std::uint32_t;

// Rate-vector order used for tie-breaking: first differing edge decides,
// lower rate wins.
bool rate_vector_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

// Kernels with a sequential reference and an OpenMP version. Both return
// identical results; the parallel one is the default entry point.
namespace serial {
std::vector<std::uint8_t> validity_table(const PriorityGraph& g, const LevelChecker& checker);
ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget = {});
}  // namespace serial

namespace parallel {
std::vector<std::uint8_t> validity_table(const PriorityGraph& g, const LevelChecker& checker);
ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget = {});
}  // namespace parallel

// Minimum solution_weight over every rate assignment E -> {0..k} that passes
// is_valid_k_priority; ties go to the smallest rate vector. Throws
// BudgetExceeded or Infeasible.
ExactSolution exact_k_priority(const PriorityGraph& g, const ConstraintFamily& family,
                               const OracleBudget& budget = {});

// Minimum-weight edge set passing is_valid_single. For Tree the
// Dreyfus-Wagner DP runs instead of subset enumeration when it is cheaper.
ExactSubgraph exact_single_priority(const PriorityGraph& g, const std::vector<Vertex>& terminals,
                                    const ConstraintFamily& family,
                                    const OracleBudget& budget = {});

// Same, with distance constraints only on the given pairs.
ExactSubgraph exact_single_priority_pairs(const PriorityGraph& g,
                                          const std::vector<VertexPair>& pairs,
                                          const ConstraintFamily& family,
                                          const OracleBudget& budget = {});

// Dreyfus-Wagner minimum Steiner tree. Throws Disconnected.
ExactSubgraph exact_steiner_tree(const PriorityGraph& g, const std::vector<Vertex>& terminals);

struct Certificate {
  Weight algorithm_weight{0};
  Weight optimum{0};
  Weight ratio{1};
  std::optional<Weight> bound;  // 4 * rho; nullopt when the solver has no known rho
  bool pass = true;
  RunReport report;
};

Certificate certify_ratio(const PriorityGraph& g, const ConstraintFamily& family,
                          Strategy strategy, SolverKind solver, const OracleBudget& budget = {});

}  // namespace prisparse
