#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prisparse/graph.hpp"
#include "prisparse/pipeline.hpp"
#include "prisparse/sparsifier.hpp"

namespace prisparse {

// Instance text format:
//   prisparse-instance v1
//   meta name=<name> seed=<seed> <key>=<value> ...   (optional)
//   k <k>                                            (optional, default max priority)
//   v <id> <priority>
//   e <u> <v> <weight>          weight "3" or "7/2"
// '#' starts a comment line.
struct Instance {
  PriorityGraph graph;
  std::map<std::string, std::string> meta;
};

Instance parse_instance(std::istream& in, const std::string& source = "<instance>");
Instance read_instance(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);

// "fnv1a:<16 hex digits>" over the canonical graph serialization.
std::string instance_reference(const PriorityGraph& g);

// Solution text format:
//   prisparse-solution v1
//   instance <reference>
//   meta family=<f> strategy=<s> solver=<s> weight=<w> k=<k>
//   lw <level> <weight of H_level>     one per level 1..k
//   r <u> <v> <rate>
struct SolutionFile {
  std::string instance;
  std::map<std::string, std::string> meta;
  std::map<int, Weight> level_weights;
  struct Rate {
    std::string u;
    std::string v;
    int rate = 1;
  };
  std::vector<Rate> rates;

  Weight declared_weight() const;
  int k() const;
};

SolutionFile parse_solution(std::istream& in, const std::string& source = "<solution>");
SolutionFile read_solution(const std::string& path);
void write_solution(std::ostream& out, const SolutionFile& s);

SolutionFile make_solution_file(const PriorityGraph& g, const KPrioritySolution& s,
                                const ConstraintFamily& family, const std::string& strategy,
                                const std::string& solver);

// Maps endpoint ids back to edges. Throws UnknownEdge for a non-edge and
// std::invalid_argument for a rate outside [1, k].
KPrioritySolution resolve_solution(const SolutionFile& s, const PriorityGraph& g);

}  // namespace prisparse
