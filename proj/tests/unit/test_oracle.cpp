#include <doctest.h>

#include "helpers.hpp"
#include "prisparse/errors.hpp"
#include "prisparse/oracle.hpp"

using namespace testing;

namespace {

// Minimum over all rate vectors, by plain enumeration of (k+1)^m assignments.
Weight brute_force_k_priority(const PriorityGraph& g, const ConstraintFamily& fam) {
  const std::size_t m = g.num_edges();
  std::vector<int> rates(m, 0);
  std::optional<Weight> best;
  while (true) {
    KPrioritySolution s(g.k());
    for (EdgeId e = 0; e < m; ++e) s.set_rate(e, rates[e]);
    if (is_valid_k_priority(g, s, fam).valid()) {
      Weight w = solution_weight(g, s);
      if (!best || w < *best) best = w;
    }
    std::size_t i = 0;
    while (i < m && rates[i] == g.k()) rates[i++] = 0;
    if (i == m) break;
    ++rates[i];
  }
  return *best;
}

}  // namespace

TEST_CASE("triangle optimum") {
  auto g = make_graph({{"a", 2}, {"b", 2}, {"c", 1}},
                      {{"a", "b", Weight(1)}, {"b", "c", Weight(1)}, {"a", "c", Weight(1)}});
  auto opt = exact_k_priority(g, ConstraintFamily::tree());
  CHECK(opt.weight == Weight(3));
  CHECK(opt.solution.rates() == std::map<EdgeId, int>{{ex(g, "a", "b"), 2}, {ex(g, "b", "c"), 1}});
  CHECK(brute_force_k_priority(g, ConstraintFamily::tree()) == Weight(3));
}

TEST_CASE("single-priority optimum examples") {
  auto tree = make_graph({{"a", 1}, {"b", 0}, {"c", 1}, {"d", 0}},
                         {{"a", "b", Weight(2)}, {"b", "c", Weight(3)}, {"b", "d", Weight(1)}});
  auto ends = tree.terminals(1);
  CHECK(exact_single_priority(tree, ends, ConstraintFamily::tree()).weight == Weight(5));
  CHECK(exact_k_priority(tree, ConstraintFamily::tree()).weight == Weight(5));

  auto k4 = complete(4);
  auto all = k4.terminals(1);
  auto m3 = exact_single_priority(k4, all, ConstraintFamily::multiplicative(Weight(3)));
  CHECK(m3.weight == Weight(3));
  CHECK(exact_single_priority(k4, all, ConstraintFamily::preserver()).weight == Weight(6));

  auto s = star3();
  auto leaves = s.terminals(1);
  CHECK(exact_single_priority(s, leaves, ConstraintFamily::tree()).weight == Weight(3));
  CHECK(exact_steiner_tree(s, leaves).weight == Weight(3));
}

TEST_CASE("uniform priorities cost k times the single-level optimum") {
  auto c = cycle4(2, 2, 2, 2);
  auto opt = exact_k_priority(c, ConstraintFamily::tree());
  CHECK(opt.weight == Weight(6));
  for (const auto& [e, rate] : opt.solution.rates()) CHECK(rate == 2);
}

TEST_CASE("oracle matches plain enumeration") {
  std::mt19937_64 rng(51);
  const ConstraintFamily families[] = {ConstraintFamily::tree(),
                                       ConstraintFamily::multiplicative(Weight(2)),
                                       ConstraintFamily::additive(Weight(1))};
  for (int round = 0; round < 40; ++round) {
    auto g = random_graph(rng, 3, 5, 7, 1 + round % 3, 4);
    for (const auto& fam : families) {
      auto opt = exact_k_priority(g, fam);
      CHECK(opt.weight == brute_force_k_priority(g, fam));
      CHECK(is_valid_k_priority(g, opt.solution, fam).valid());
      CHECK(solution_weight(g, opt.solution) == opt.weight);
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 40; ++round) {
    auto g = random_graph(rng, 4, 7, 11, 2 + round % 3, 4);
    for (auto fam : {ConstraintFamily::tree(), ConstraintFamily::additive(Weight(2))}) {
      LevelChecker checker(g, g.terminals(1), fam);
      CHECK(serial::validity_table(g, checker) == parallel::validity_table(g, checker));
      auto a = serial::exact_k_priority(g, fam);
      auto b = parallel::exact_k_priority(g, fam);
      CHECK(a.weight == b.weight);
      CHECK(a.solution == b.solution);
    }
  }
}

TEST_CASE("Dreyfus-Wagner matches subset enumeration") {
  std::mt19937_64 rng(57);
  for (int round = 0; round < 150; ++round) {
    auto g = random_graph(rng, 3, 8, 13, 1, 6);
    auto ts = g.terminals(1);
    auto dp = exact_steiner_tree(g, ts);
    CHECK(is_valid_single(g, ts, dp.subgraph, ConstraintFamily::tree()).valid());
    // Enumeration: cheapest edge set that is valid for the tree family.
    const auto m = g.num_edges();
    std::optional<Weight> best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      auto h = subgraph_from_mask(unpack(mask, m));
      if (!is_valid_single(g, ts, h, ConstraintFamily::tree()).valid()) continue;
      if (!best || h.weight(g) < *best) best = h.weight(g);
    }
    CHECK(dp.weight == *best);
  }
}

TEST_CASE("budget and feasibility errors") {
  auto big = complete(8);  // 28 edges
  CHECK_THROWS_AS(exact_k_priority(big, ConstraintFamily::tree()), BudgetExceeded);
  OracleBudget tight;
  tight.max_states = 10;
  CHECK_THROWS_AS(exact_k_priority(cycle4(), ConstraintFamily::tree(), tight), BudgetExceeded);
  tight = {};
  tight.max_k = 1;
  CHECK_THROWS_AS(exact_k_priority(cycle4(1, 2, 1, 1), ConstraintFamily::tree(), tight),
                  BudgetExceeded);
  auto split = make_graph({{"a", 1}, {"b", 1}}, {});
  CHECK_THROWS_AS(exact_k_priority(split, ConstraintFamily::tree()), Disconnected);
  // Dreyfus-Wagner has no edge budget.
  auto ts = big.terminals(1);
  CHECK(exact_single_priority(big, ts, ConstraintFamily::tree()).weight == Weight(7));
}

TEST_CASE("certify_ratio") {
  auto g = make_graph({{"a", 2}, {"b", 2}, {"c", 1}},
                      {{"a", "b", Weight(1)}, {"b", "c", Weight(1)}, {"a", "c", Weight(1)}});
  auto c = certify_ratio(g, ConstraintFamily::tree(), Strategy::Inclusive,
                         SolverKind::SteinerMst2Approx);
  CHECK(c.optimum == Weight(3));
  CHECK(c.ratio == Weight(1));
  REQUIRE(c.bound);
  CHECK(*c.bound == Weight(8));
  CHECK(c.pass);

  std::mt19937_64 rng(59);
  for (int round = 0; round < 60; ++round) {
    auto h = random_graph(rng, 3, 7, 11, 1, 4);
    auto k1 = certify_ratio(h, ConstraintFamily::tree(), Strategy::Inclusive, SolverKind::Exact);
    CHECK(k1.ratio == Weight(1));
  }

  auto none = certify_ratio(cycle4(), ConstraintFamily::multiplicative(Weight(3)),
                            Strategy::Inclusive, SolverKind::GreedySpanner);
  CHECK_FALSE(none.bound);
  CHECK(none.pass);
}
