#include <doctest.h>

#include "helpers.hpp"
#include "prisparse/errors.hpp"
#include "prisparse/oracle.hpp"
#include "prisparse/solvers.hpp"

using namespace testing;

TEST_CASE("solver names and compatibility") {
  for (auto k : {SolverKind::SteinerMst2Approx, SolverKind::GreedySpanner,
                 SolverKind::SubsetSpannerClosure, SolverKind::PathGreedy, SolverKind::Exact}) {
    CHECK(parse_solver(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_solver("magic"), std::invalid_argument);
  auto tree = ConstraintFamily::tree();
  auto mult = ConstraintFamily::multiplicative(Weight(3));
  auto add = ConstraintFamily::additive(Weight(2));
  CHECK(compatible(SolverKind::SteinerMst2Approx, tree));
  CHECK_FALSE(compatible(SolverKind::SteinerMst2Approx, mult));
  CHECK(compatible(SolverKind::GreedySpanner, mult));
  CHECK(compatible(SolverKind::SubsetSpannerClosure, mult));
  CHECK_FALSE(compatible(SolverKind::GreedySpanner, add));
  CHECK(compatible(SolverKind::PathGreedy, add));
  CHECK(compatible(SolverKind::PathGreedy, ConstraintFamily::preserver()));
  CHECK_FALSE(compatible(SolverKind::PathGreedy, tree));
  CHECK(compatible(SolverKind::Exact, add));
  CHECK(compatible(default_solver(add), add));
  CHECK(compatible(default_solver(mult), mult));
  CHECK(default_solver(tree) == SolverKind::SteinerMst2Approx);
  CHECK(approximation_ratio(SolverKind::SteinerMst2Approx) == Weight(2));
  CHECK_FALSE(approximation_ratio(SolverKind::PathGreedy));

  auto g = cycle4();
  CHECK_THROWS_AS(solve_single(g, {g.terminals(1), std::nullopt}, SolverKind::PathGreedy, tree),
                  IncompatibleSolver);
}

TEST_CASE("Steiner 2-approximation examples") {
  auto s = star3();
  auto leaves = s.terminals(1);
  auto t = steiner_mst_2approx(s, leaves);
  CHECK(t.size() == 3);
  CHECK(t.weight(s) == Weight(3));

  auto c = cycle4();
  std::vector<Vertex> ac{vx(c, "a"), vx(c, "c")};
  CHECK(steiner_mst_2approx(c, ac) == sub(c, {{"a", "b"}, {"b", "c"}}));

  std::vector<Vertex> one{vx(c, "a")};
  auto single = steiner_mst_2approx(c, one);
  CHECK(single.empty());
  CHECK(single.isolated() == one);

  auto split = make_graph({{"a", 1}, {"b", 1}}, {});
  auto both = split.terminals(1);
  CHECK_THROWS_AS(steiner_mst_2approx(split, both), Disconnected);
}

TEST_CASE("Steiner 2-approximation is a valid tree within twice the optimum") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    auto g = random_graph(rng, 3, 8, 14, 1, 5);
    auto ts = g.terminals(1);
    auto t = steiner_mst_2approx(g, ts);
    CHECK(is_valid_single(g, ts, t, ConstraintFamily::tree()).valid());
    CHECK(t.weight(g) <= Weight(2) * exact_steiner_tree(g, ts).weight);
    // No non-terminal leaves survive.
    std::vector<int> degree(g.num_vertices(), 0);
    for (EdgeId e : t.edges()) {
      ++degree[g.edge(e).u];
      ++degree[g.edge(e).v];
    }
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      if (degree[v] == 1) CHECK(g.priority(v) > 0);
    }
  }
}

TEST_CASE("greedy spanner examples") {
  auto c = cycle4();
  CHECK(greedy_spanner(c, Weight(3)).size() == 3);
  CHECK(greedy_spanner(c, Weight(1)).size() == 4);
  auto k4 = complete(4);
  auto t = greedy_spanner(k4, Weight(3));
  CHECK(t.size() == 3);
  CHECK(is_valid_single(k4, k4.terminals(1), t, ConstraintFamily::tree()).valid());

  auto s = star3();
  CHECK(greedy_spanner(s, Weight(1)).size() == 3);
  CHECK(greedy_spanner(s, Weight(7)).size() == 3);
}

TEST_CASE("greedy spanner stretch and girth") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 80; ++round) {
    auto g = random_graph(rng, 4, 12, 30, 1, 1);  // unit weights
    for (int alpha : {1, 3, 5}) {
      auto h = greedy_spanner(g, Weight(alpha));
      auto mask = h.mask(g);
      for (Vertex u = 0; u < g.num_vertices(); ++u) {
        auto dg = distances_from(g, u);
        auto dh = distances_from(g, u, mask);
        for (Vertex v = 0; v < g.num_vertices(); ++v) {
          REQUIRE(dh[v]);
          CHECK(*dh[v] <= Weight(alpha) * *dg[v]);
        }
      }
      // Unit weights: every cycle in H has more than alpha + 1 edges.
      for (EdgeId e : h.edges()) {
        auto without = mask;
        without[e] = 0;
        auto d = distances_from(g, g.edge(e).u, without)[g.edge(e).v];
        if (d) CHECK(*d + Weight(1) > Weight(alpha + 1));
      }
    }
  }
}

TEST_CASE("subset spanner examples") {
  auto s = star3();
  auto leaves = s.terminals(1);
  auto h = subset_spanner_closure(s, leaves, Weight(3));
  CHECK(h.size() == 3);
  CHECK(h.weight(s) == Weight(3));

  auto c = cycle4();
  std::vector<Vertex> ac{vx(c, "a"), vx(c, "c")};
  CHECK(subset_spanner_closure(c, ac, Weight(3)) == sub(c, {{"a", "b"}, {"b", "c"}}));

  // On a complete graph with metric weights the closure is the graph itself.
  auto k5 = complete(5);
  auto all = k5.terminals(1);
  CHECK(subset_spanner_closure(k5, all, Weight(3)) == greedy_spanner(k5, Weight(3)));
}

TEST_CASE("path greedy examples") {
  auto c = cycle4();
  auto pairs = all_pairs(c.terminals(1));
  CHECK(pairs.size() == 6);
  CHECK(path_greedy(c, pairs, ConstraintFamily::preserver()).size() == 4);

  // Tree leaves with Preserver: the Steiner subtree on the leaves.
  auto t = make_graph({{"r", 0}, {"x", 1}, {"y", 1}, {"m", 0}, {"z", 0}},
                      {{"r", "x", Weight(1)}, {"r", "y", Weight(2)}, {"r", "m", Weight(1)},
                       {"m", "z", Weight(1)}});
  auto leaves = t.terminals(1);
  CHECK(path_greedy(t, all_pairs(leaves), ConstraintFamily::preserver()) ==
        sub(t, {{"r", "x"}, {"r", "y"}}));

  // Slack additive bound: the first path already serves every pair.
  auto abc = cycle4(1, 1, 1, 0);
  auto slack = ConstraintFamily::additive(Weight(10));
  auto big = path_greedy(abc, all_pairs(abc.terminals(1)), slack);
  CHECK(big == sub(abc, {{"a", "b"}, {"b", "c"}}));
  CHECK(is_valid_single(abc, abc.terminals(1), big, slack).valid());
}

TEST_CASE("subroutines satisfy their families on random graphs") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 120; ++round) {
    auto g = random_graph(rng, 3, 9, 16, 1, 4);
    auto ts = g.terminals(1);
    auto mult = ConstraintFamily::multiplicative(Weight(3));
    CHECK(is_valid_single(g, ts, subset_spanner_closure(g, ts, Weight(3)), mult).valid());
    CHECK(is_valid_single(g, ts, greedy_spanner(g, Weight(3)), mult).valid());
    for (auto fam : {ConstraintFamily::additive(Weight(2)), ConstraintFamily::preserver()}) {
      CHECK(is_valid_single(g, ts, path_greedy(g, all_pairs(ts), fam), fam).valid());
    }
  }
}

TEST_CASE("solve_single dispatch") {
  auto c = cycle4();
  auto tree = ConstraintFamily::tree();
  LevelInput one{{vx(c, "a")}, std::nullopt};
  auto trivial = solve_single(c, one, SolverKind::SteinerMst2Approx, tree);
  CHECK(trivial.empty());

  LevelInput all{c.terminals(1), std::nullopt};
  CHECK(solve_single(c, all, SolverKind::SteinerMst2Approx, tree).size() == 3);
  CHECK(solve_single(c, all, SolverKind::Exact, tree).weight(c) == Weight(3));

  LevelInput pairs{c.terminals(1), std::vector<VertexPair>{{vx(c, "a"), vx(c, "b")}}};
  auto pres = ConstraintFamily::preserver();
  CHECK(solve_single(c, pairs, SolverKind::PathGreedy, pres) == sub(c, {{"a", "b"}}));
  CHECK(solve_single(c, pairs, SolverKind::Exact, pres) == sub(c, {{"a", "b"}}));
}
