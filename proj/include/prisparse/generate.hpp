#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "prisparse/graph.hpp"
#include "prisparse/io.hpp"

namespace prisparse {

enum class Model { ErdosRenyi, Grid, Star };
enum class PriorityDist {
  Uniform,    // uniform over {0..k}
  Geometric,  // P(l) halves with each level, top level takes the tail
};

Model parse_model(std::string_view text);
PriorityDist parse_priority_dist(std::string_view text);

struct GenOptions {
  Model model = Model::ErdosRenyi;
  int n = 8;
  double p = 0.5;
  int rows = 3;
  int cols = 3;
  int k = 2;
  PriorityDist dist = PriorityDist::Uniform;
  int max_weight = 1;  // integer weights uniform in [1, max_weight]
  std::uint64_t seed = 1;
};

// Deterministic for a given seed on every platform (mt19937_64 with
// hand-rolled range reduction). Guarantees at least one terminal and a
// connected T_1 by adding edges between terminal components; the number of
// repairs is recorded in the metadata.
Instance generate(const GenOptions& options);

struct SweepOptions {
  int min_vertices = 4;
  int max_vertices = 7;
  int max_edges = 11;
  int k = 3;
  int max_weight = 4;
  int min_terminals = 2;
};

// Connected random graph (random spanning tree plus extra edges) with
// uniform priorities in {0..k}; used by certification sweeps.
PriorityGraph random_small_instance(std::mt19937_64& rng, const SweepOptions& options);

// Uniform integer in [0, bound).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
// Uniform double in [0, 1).
double uniform_unit(std::mt19937_64& rng);

}  // namespace prisparse
