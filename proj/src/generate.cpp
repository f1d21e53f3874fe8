#include "prisparse/generate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace prisparse {

Model parse_model(std::string_view text) {
  if (text == "er") return Model::ErdosRenyi;
  if (text == "grid") return Model::Grid;
  if (text == "star") return Model::Star;
  throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

PriorityDist parse_priority_dist(std::string_view text) {
  if (text == "uniform") return PriorityDist::Uniform;
  if (text == "geometric") return PriorityDist::Geometric;
  throw std::invalid_argument("unknown priority distribution '" + std::string(text) + "'");
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection keeps the draw unbiased and the sequence platform independent.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

int sample_priority(std::mt19937_64& rng, PriorityDist dist, int k) {
  if (dist == PriorityDist::Uniform) return static_cast<int>(uniform_below(rng, k + 1));
  int level = 0;
  while (level < k && uniform_unit(rng) < 0.5) ++level;
  return level;
}

Weight sample_weight(std::mt19937_64& rng, int max_weight) {
  return Weight(1 + static_cast<std::int64_t>(uniform_below(rng, max_weight)));
}

}  // namespace

Instance generate(const GenOptions& o) {
  if (o.k < 1) throw std::invalid_argument("--k must be at least 1");
  if (o.max_weight < 1) throw std::invalid_argument("--max-weight must be at least 1");
  std::mt19937_64 rng(o.seed);

  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  std::string name;
  switch (o.model) {
    case Model::ErdosRenyi:
      if (o.n < 1) throw std::invalid_argument("--n must be at least 1");
      if (!(o.p >= 0.0 && o.p <= 1.0)) throw std::invalid_argument("--p must lie in [0, 1]");
      n = o.n;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (uniform_unit(rng) < o.p) pairs.emplace_back(i, j);
        }
      }
      name = "er-n" + std::to_string(n);
      break;
    case Model::Grid:
      if (o.rows < 1 || o.cols < 1) throw std::invalid_argument("--dims must be positive");
      n = o.rows * o.cols;
      for (int r = 0; r < o.rows; ++r) {
        for (int c = 0; c < o.cols; ++c) {
          int v = r * o.cols + c;
          if (c + 1 < o.cols) pairs.emplace_back(v, v + 1);
          if (r + 1 < o.rows) pairs.emplace_back(v, v + o.cols);
        }
      }
      name = "grid-" + std::to_string(o.rows) + "x" + std::to_string(o.cols);
      break;
    case Model::Star:
      if (o.n < 2) throw std::invalid_argument("--n must be at least 2 for a star");
      n = o.n;
      for (int i = 1; i < n; ++i) pairs.emplace_back(0, i);
      name = "star-n" + std::to_string(n);
      break;
  }

  std::vector<int> priority(n);
  for (int v = 0; v < n; ++v) priority[v] = sample_priority(rng, o.dist, o.k);
  std::vector<Weight> weights;
  for (std::size_t i = 0; i < pairs.size(); ++i) weights.push_back(sample_weight(rng, o.max_weight));

  int forced = 0;
  if (std::none_of(priority.begin(), priority.end(), [](int p) { return p > 0; })) {
    priority[0] = o.k;
    forced = 1;
  }

  // Join terminal components in order of their smallest vertex.
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : pairs) parent[find(a)] = find(b);
  std::vector<int> reps;
  std::set<int> seen;
  for (int v = 0; v < n; ++v) {
    if (priority[v] > 0 && seen.insert(find(v)).second) reps.push_back(v);
  }
  int repaired = 0;
  for (std::size_t i = 1; i < reps.size(); ++i) {
    pairs.emplace_back(reps[i - 1], reps[i]);
    weights.push_back(sample_weight(rng, o.max_weight));
    ++repaired;
  }

  std::vector<VertexSpec> vertices;
  for (int v = 0; v < n; ++v) vertices.push_back({std::to_string(v), priority[v]});
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    edges.push_back({std::to_string(pairs[i].first), std::to_string(pairs[i].second), weights[i]});
  }
  Instance instance;
  instance.graph = PriorityGraph::build(std::move(vertices), edges, o.k);
  instance.meta["name"] = name;
  instance.meta["seed"] = std::to_string(o.seed);
  instance.meta["repaired"] = std::to_string(repaired);
  if (forced) instance.meta["forced_terminal"] = "0";
  return instance;
}

PriorityGraph random_small_instance(std::mt19937_64& rng, const SweepOptions& o) {
  const int n = o.min_vertices +
                static_cast<int>(uniform_below(rng, o.max_vertices - o.min_vertices + 1));
  std::set<std::pair<int, int>> present;
  std::vector<EdgeSpec> edges;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == b || !present.insert({a, b}).second) return false;
    edges.push_back({std::to_string(a), std::to_string(b), sample_weight(rng, o.max_weight)});
    return true;
  };
  // Random labelled spanning tree: each vertex attaches to an earlier one.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
  for (int i = 1; i < n; ++i) add(order[i], order[uniform_below(rng, i)]);

  const int max_possible = n * (n - 1) / 2;
  const int upper = std::min(o.max_edges, max_possible);
  const int target = (n - 1) + static_cast<int>(uniform_below(rng, std::max(1, upper - (n - 1) + 1)));
  while (static_cast<int>(edges.size()) < std::min(target, upper)) {
    add(static_cast<int>(uniform_below(rng, n)), static_cast<int>(uniform_below(rng, n)));
  }

  std::vector<VertexSpec> vertices(n);
  for (int attempt = 0;; ++attempt) {
    int terminals = 0;
    for (int v = 0; v < n; ++v) {
      vertices[v] = {std::to_string(v), static_cast<int>(uniform_below(rng, o.k + 1))};
      terminals += vertices[v].priority > 0;
    }
    if (terminals >= std::min(o.min_terminals, n)) break;
  }
  return PriorityGraph::build(std::move(vertices), edges, o.k);
}

}  // namespace prisparse
