#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "prisparse/errors.hpp"
#include "prisparse/pipeline.hpp"

using namespace testing;

namespace {

PriorityGraph three_terminals() {
  // t1:1, t2:2, t3:2 on a path t1 - t2 - t3 plus a chord.
  return make_graph({{"t1", 1}, {"t2", 2}, {"t3", 2}},
                    {{"t1", "t2", Weight(1)}, {"t2", "t3", Weight(1)}, {"t1", "t3", Weight(3)}});
}

std::vector<Vertex> ids(const PriorityGraph& g, std::vector<std::string> names) {
  std::vector<Vertex> out;
  for (auto& n : names) out.push_back(vx(g, n));
  return out;
}

}  // namespace

TEST_CASE("strategy names") {
  for (auto s : {Strategy::Exclusive, Strategy::Inclusive, Strategy::Pairwise})
    CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("random"), std::invalid_argument);
}

TEST_CASE("priorities round up to powers of two") {
  std::vector<int> in{0, 1, 2, 3, 5, 8};
  std::vector<int> want{0, 1, 2, 4, 8, 8};
  for (std::size_t i = 0; i < in.size(); ++i) CHECK(round_up_pow2(in[i]) == want[i]);

  auto g = make_graph({{"a", 1}, {"b", 3}, {"c", 0}},
                      {{"a", "b", Weight(1)}, {"b", "c", Weight(1)}}, 3);
  auto r = round_up_priorities(g);
  CHECK(r.graph.k() == 4);
  CHECK(r.graph.priorities() == std::vector<int>{1, 4, 0});
  CHECK(r.active_levels == std::vector<int>{1, 2, 4});
  CHECK(r.mapping.at(3) == 4);

  auto p = partition(r.graph, Strategy::Inclusive);
  CHECK(p.levels == std::vector<int>{1, 2, 4});
  CHECK(p.sets.at(2) == p.sets.at(4));

  auto already = cycle4(1, 2, 0, 4);
  CHECK(round_up_priorities(already).graph.priorities() == already.priorities());
  CHECK_THROWS_AS(partition(g, Strategy::Inclusive), std::invalid_argument);
}

TEST_CASE("partition examples") {
  auto g = three_terminals();
  auto inc = partition(g, Strategy::Inclusive);
  CHECK(inc.sets.at(2) == ids(g, {"t2", "t3"}));
  CHECK(inc.sets.at(1) == ids(g, {"t1", "t2", "t3"}));
  auto ci = constraint_count(inc);
  CHECK(ci.per_level.at(2) == 1);
  CHECK(ci.per_level.at(1) == 3);
  CHECK(ci.total == 4);

  auto pw = partition(g, Strategy::Pairwise);
  CHECK(pw.pairs.at(2) == std::vector<VertexPair>{{vx(g, "t2"), vx(g, "t3")}});
  CHECK(pw.pairs.at(1) ==
        std::vector<VertexPair>{{vx(g, "t1"), vx(g, "t2")}, {vx(g, "t1"), vx(g, "t3")}});
  auto cp = constraint_count(pw);
  CHECK(cp.per_level.at(2) == 1);
  CHECK(cp.per_level.at(1) == 2);
  CHECK(cp.total == 3);

  auto exc = partition(g, Strategy::Exclusive);
  REQUIRE(exc.root);
  CHECK(*exc.root == vx(g, "t2"));
  CHECK(exc.sets.at(2) == ids(g, {"t2", "t3"}));
  CHECK(exc.sets.at(1) == ids(g, {"t1", "t2"}));

  auto none = cycle4(0, 0, 0, 0);
  CHECK_THROWS_AS(partition(none, Strategy::Inclusive), NoTerminals);
}

TEST_CASE("uniform priorities: pairwise counts once, inclusive once per level") {
  auto g = complete(4, 2);
  auto inc = constraint_count(partition(g, Strategy::Inclusive));
  auto pw = constraint_count(partition(g, Strategy::Pairwise));
  CHECK(pw.total == 6);
  CHECK(pw.per_level.at(2) == 6);
  CHECK(inc.total == 12);
}

TEST_CASE("merge examples") {
  auto tri = complete(3);  // vertices 0, 1, 2 stand for a, b, c
  std::map<int, Subgraph> levels{{2, sub(tri, {{"0", "1"}, {"1", "2"}})},
                                 {1, sub(tri, {{"0", "2"}})}};
  auto m = merge_levels(tri, levels, ConstraintFamily::tree(), 2);
  CHECK(m.solution.rates() == std::map<EdgeId, int>{{ex(tri, "0", "1"), 2}, {ex(tri, "1", "2"), 2}});
  CHECK(m.merged.at(1) == m.merged.at(2));

  std::map<int, Subgraph> disjoint{{2, sub(tri, {{"0", "1"}})}, {1, sub(tri, {{"1", "2"}})}};
  auto d = merge(tri, disjoint, ConstraintFamily::multiplicative(Weight(3)), 2);
  CHECK(d.rates() == std::map<EdgeId, int>{{ex(tri, "0", "1"), 2}, {ex(tri, "1", "2"), 1}});

  // Distance families keep cycles.
  auto keep = merge(tri, levels, ConstraintFamily::preserver(), 2);
  CHECK(keep.rates().size() == 3);

  std::map<int, Subgraph> single{{1, sub(tri, {{"0", "1"}, {"1", "2"}})}};
  auto one = merge(tri, single, ConstraintFamily::tree(), 1);
  CHECK(one.rates() == std::map<EdgeId, int>{{ex(tri, "0", "1"), 1}, {ex(tri, "1", "2"), 1}});

  // Rates come from active levels and are capped at the original k.
  std::map<int, Subgraph> top{{4, sub(tri, {{"0", "1"}})}, {1, sub(tri, {{"1", "2"}})}};
  auto capped = merge(tri, top, ConstraintFamily::tree(), 3);
  CHECK(capped.rate(ex(tri, "0", "1")) == 3);
}

TEST_CASE("run on the triangle instance") {
  auto g = make_graph({{"a", 2}, {"b", 2}, {"c", 1}},
                      {{"a", "b", Weight(1)}, {"b", "c", Weight(1)}, {"a", "c", Weight(1)}});
  auto r = run(g, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::SteinerMst2Approx);
  CHECK(r.report.total_weight == Weight(3));
  CHECK(r.report.validity.valid());
  CHECK(r.solution.rate(ex(g, "a", "b")) == 2);
  CHECK(r.report.invocations == 2);
  CHECK(r.report.query_budget == 2);
}

TEST_CASE("run on a single level calls the solver once") {
  auto c = cycle4();
  auto r = run(c, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::Exact);
  CHECK(r.report.invocations == 1);
  CHECK(r.report.total_weight == Weight(3));
  for (const auto& [e, rate] : r.solution.rates()) CHECK(rate == 1);
}

TEST_CASE("duplicated levels are solved once") {
  auto g = make_graph({{"a", 1}, {"b", 3}, {"c", 3}, {"d", 0}},
                      {{"a", "b", Weight(1)}, {"b", "d", Weight(1)}, {"d", "c", Weight(1)},
                       {"a", "c", Weight(2)}},
                      3);
  auto r = run(g, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::SteinerMst2Approx);
  CHECK(r.report.active_levels == std::vector<int>{1, 2, 4});
  CHECK(r.report.invocations == 2);
  CHECK(r.report.solver_weights.at(2) == r.report.solver_weights.at(4));
  CHECK(r.report.validity.valid());
  for (const auto& [e, rate] : r.solution.rates()) CHECK(rate <= 3);
}

TEST_CASE("uniform priorities put every edge at the top rate") {
  auto g = complete(4, 3);
  auto r = run(g, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::Exact);
  CHECK(r.report.validity.valid());
  for (const auto& [e, rate] : r.solution.rates()) CHECK(rate == 3);
  CHECK(r.report.total_weight == Weight(9));
}

TEST_CASE("exclusive needs the tree family unless overridden") {
  auto g = three_terminals();
  auto add = ConstraintFamily::additive(Weight(2));
  CHECK_THROWS_AS(run(g, add, Strategy::Exclusive, SolverKind::PathGreedy), InvalidStrategyForFamily);
  CHECK_NOTHROW(run(g, add, Strategy::Exclusive, SolverKind::PathGreedy, {true}));
  CHECK(run(g, ConstraintFamily::tree(), Strategy::Exclusive, SolverKind::SteinerMst2Approx)
            .report.validity.valid());
  CHECK_THROWS_AS(run(g, add, Strategy::Inclusive, SolverKind::GreedySpanner), IncompatibleSolver);
}

TEST_CASE("exclusive with an additive family can be invalid") {
  // Unit 5-cycle r - m - y - x - p - r.
  auto g = make_graph({{"r", 2}, {"m", 0}, {"y", 2}, {"x", 1}, {"p", 0}},
                      {{"r", "m", Weight(1)}, {"m", "y", Weight(1)}, {"y", "x", Weight(1)},
                       {"x", "p", Weight(1)}, {"p", "r", Weight(1)}});
  auto r = run(g, ConstraintFamily::additive(Weight(2)), Strategy::Exclusive, SolverKind::PathGreedy,
               {true});
  REQUIRE_FALSE(r.report.validity.valid());
  bool named = false;
  for (const auto& v : r.report.validity.violations) {
    if (v.kind == Violation::Kind::Distance && v.level == 1 && g.id(v.u) == "x" && g.id(v.v) == "y") {
      named = true;
      CHECK(*v.actual == Weight(4));
    }
  }
  CHECK(named);
  auto inc = run(g, ConstraintFamily::additive(Weight(2)), Strategy::Inclusive, SolverKind::PathGreedy);
  CHECK(inc.report.validity.valid());
}

TEST_CASE("disconnected terminals are reported") {
  auto g = make_graph({{"a", 1}, {"b", 1}, {"c", 0}}, {{"a", "c", Weight(1)}});
  CHECK_THROWS_AS(run(g, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::SteinerMst2Approx),
                  Disconnected);
}

TEST_CASE("merged levels are nested and sandwiched") {
  std::mt19937_64 rng(41);
  const ConstraintFamily families[] = {ConstraintFamily::tree(),
                                       ConstraintFamily::multiplicative(Weight(3)),
                                       ConstraintFamily::additive(Weight(2))};
  for (int round = 0; round < 80; ++round) {
    auto g = random_graph(rng, 4, 9, 16, 1 + round % 5, 5);
    auto rounded = round_up_priorities(g).graph;
    for (const auto& fam : families) {
      auto part = partition(rounded, Strategy::Inclusive);
      auto solved = solve_levels(rounded, part, default_solver(fam), fam);
      auto m = merge_levels(g, solved.levels, fam, g.k());
      Subgraph above;
      const Subgraph* previous = nullptr;
      for (auto it = m.merged.rbegin(); it != m.merged.rend(); ++it) {
        const int level = it->first;
        above = above.unite(solved.levels.at(level), g);
        CHECK(it->second.is_subset_of(above));
        if (previous) CHECK(previous->is_subset_of(it->second));
        if (!fam.is_tree()) CHECK(it->second.edges() == above.edges());
        previous = &it->second;
      }
      // The top level is never pruned.
      const int top = m.merged.rbegin()->first;
      CHECK(solved.levels.at(top).is_subset_of(m.merged.at(top)));
    }
  }
}

TEST_CASE("inclusive and pairwise runs are valid and within the query budget") {
  std::mt19937_64 rng(43);
  const ConstraintFamily families[] = {ConstraintFamily::tree(),
                                       ConstraintFamily::multiplicative(Weight(3)),
                                       ConstraintFamily::additive(Weight(2)),
                                       ConstraintFamily::preserver()};
  for (int round = 0; round < 60; ++round) {
    auto g = random_graph(rng, 4, 10, 18, 1 + round % 6, 5);
    for (const auto& fam : families) {
      for (auto strategy : {Strategy::Inclusive, Strategy::Pairwise}) {
        auto r = run(g, fam, strategy, default_solver(fam));
        CHECK(r.report.validity.valid());
        CHECK(r.report.invocations <= r.report.query_budget);
        CHECK(r.report.total_weight == solution_weight(g, r.solution));
      }
    }
  }
}
