#include "prisparse/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prisparse/errors.hpp"
#include "prisparse/generate.hpp"
#include "prisparse/io.hpp"
#include "prisparse/oracle.hpp"
#include "prisparse/pipeline.hpp"

namespace prisparse {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
auto parse_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

void print_report(std::ostream& out, const RunReport& r, bool timing) {
  out << "strategy " << to_string(r.strategy) << '\n';
  out << "solver " << to_string(r.solver) << '\n';
  out << "family " << r.family.to_string() << '\n';
  out << "rounding";
  for (const auto& [from, to] : r.rounding) out << ' ' << from << "->" << to;
  out << '\n';
  out << "active_levels";
  for (int level : r.active_levels) out << ' ' << level;
  out << '\n';
  out << "invocations " << r.invocations << " of " << r.query_budget << '\n';
  out << "constraint_count " << r.constraints.total;
  for (const auto& [level, n] : r.constraints.per_level) out << ' ' << level << ':' << n;
  out << '\n';
  for (const auto& [level, w] : r.solver_weights) {
    out << "level " << level << " solver_weight " << format_weight(w);
    auto it = r.merged_weights.find(level);
    if (it != r.merged_weights.end()) out << " merged_weight " << format_weight(it->second);
    out << '\n';
  }
  out << "weight " << format_weight(r.total_weight) << '\n';
  out << "valid " << (r.validity.valid() ? "yes" : "no") << '\n';
  if (timing) out << "wall_seconds " << fixed(r.wall_seconds) << '\n';
}

void print_validity(std::ostream& out, const PriorityGraph& g, const ValidityReport& v) {
  for (const auto& level : v.levels) {
    out << "level " << level.level << ' ' << (level.valid ? "valid" : "invalid") << '\n';
  }
  for (const auto& violation : v.violations) out << "violation " << describe(violation, g) << '\n';
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  return f;
}

struct SolveArgs {
  std::string instance;
  std::string family = "tree";
  std::string strategy = "inclusive";
  std::string solver;
  std::string out;
  bool allow_exclusive = false;
  bool timing = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  auto family = parse_flag("--family", [&] { return ConstraintFamily::parse(a.family); });
  auto strategy = parse_flag("--strategy", [&] { return parse_strategy(a.strategy); });
  auto solver = a.solver.empty() ? default_solver(family)
                                 : parse_flag("--solver", [&] { return parse_solver(a.solver); });
  Instance inst = read_instance(a.instance);
  RunResult result = run(inst.graph, family, strategy, solver, {a.allow_exclusive});
  SolutionFile file =
      make_solution_file(inst.graph, result.solution, family, to_string(strategy), to_string(solver));
  print_report(out, result.report, a.timing);
  print_validity(out, inst.graph, result.report.validity);
  if (a.out.empty()) {
    write_solution(out, file);
  } else {
    auto f = open_out(a.out);
    write_solution(f, file);
  }
  return result.report.validity.valid() ? kExitOk : kExitInvalid;
}

int cmd_validate(const std::string& instance_path, const std::string& solution_path,
                 std::ostream& out, std::ostream& err) {
  Instance inst = read_instance(instance_path);
  SolutionFile file = read_solution(solution_path);
  const PriorityGraph& g = inst.graph;
  if (file.instance != instance_reference(g)) {
    err << "solution references " << file.instance << " but the instance is "
        << instance_reference(g) << '\n';
    return kExitInstance;
  }
  if (file.k() != g.k()) {
    err << "solution has k=" << file.k() << " but the instance has k=" << g.k() << '\n';
    return kExitInstance;
  }
  auto family = parse_flag("family", [&] { return ConstraintFamily::parse(file.meta.at("family")); });
  KPrioritySolution s;
  try {
    s = resolve_solution(file, g);
  } catch (const UnknownEdge& e) {
    out << "violation " << e.what() << '\n' << "result invalid\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    out << "violation " << e.what() << '\n' << "result invalid\n";
    return kExitInvalid;
  }

  ValidityReport report = is_valid_k_priority(g, s, family);
  print_validity(out, g, report);
  const Weight recomputed = solution_weight(g, s);
  out << "weight declared " << format_weight(file.declared_weight()) << " recomputed "
      << format_weight(recomputed) << '\n';
  bool weights_match = recomputed == file.declared_weight();
  for (const auto& [level, w] : file.level_weights) {
    if (level < 1 || level > g.k() || s.level_subgraph(level).weight(g) != w) {
      out << "level " << level << " declared weight " << format_weight(w) << " does not match\n";
      weights_match = false;
    }
  }
  out << "result " << (report.valid() ? "valid" : "invalid") << '\n';
  if (!weights_match) return kExitWeight;
  return report.valid() ? kExitOk : kExitInvalid;
}

struct GenArgs {
  std::string model = "er";
  int n = 8;
  double p = 0.5;
  std::string dims = "3x3";
  int k = 2;
  std::string dist = "uniform";
  int max_weight = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  GenOptions o;
  o.model = parse_flag("--model", [&] { return parse_model(a.model); });
  o.dist = parse_flag("--priority-dist", [&] { return parse_priority_dist(a.dist); });
  o.n = a.n;
  o.p = a.p;
  o.k = a.k;
  o.max_weight = a.max_weight;
  o.seed = a.seed;
  if (o.model == Model::Grid) {
    auto x = a.dims.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(a.dims);
      o.rows = std::stoi(a.dims.substr(0, x));
      o.cols = std::stoi(a.dims.substr(x + 1));
    } catch (const std::exception&) {
      throw UsageError("--dims expects ROWSxCOLS, got '" + a.dims + "'");
    }
  }
  Instance inst = parse_flag("gen", [&] { return generate(o); });
  if (a.out.empty()) {
    write_instance(out, inst);
  } else {
    auto f = open_out(a.out);
    write_instance(f, inst);
  }
  return kExitOk;
}

struct CertifyArgs {
  int count = 100;
  std::uint64_t budget = 1'000'000'000ULL;
  std::string family = "tree";
  std::string strategy = "inclusive";
  std::string solver = "exact";
  std::uint64_t seed = 1;
  int min_vertices = 4;
  int max_vertices = 7;
  int max_edges = 11;
  int k_min = 2;
  int k_max = 3;
  int max_weight = 4;
  bool verbose = false;
};

struct CertifyRow {
  std::uint64_t seed = 0;
  std::size_t n = 0, m = 0;
  int k = 0;
  std::optional<Certificate> cert;
  std::string error;
  bool skipped = false;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  auto family = parse_flag("--family", [&] { return ConstraintFamily::parse(a.family); });
  auto strategy = parse_flag("--strategy", [&] { return parse_strategy(a.strategy); });
  auto solver = parse_flag("--solver", [&] { return parse_solver(a.solver); });
  if (!compatible(solver, family)) {
    throw IncompatibleSolver("solver " + to_string(solver) + " cannot serve family " + family.to_string());
  }
  if (a.count < 0 || a.k_min < 1 || a.k_max < a.k_min || a.min_vertices < 2 ||
      a.max_vertices < a.min_vertices || a.max_weight < 1) {
    throw UsageError("certify: parameters out of range");
  }
  OracleBudget budget;
  budget.max_states = a.budget;

  // Seeds are drawn up front so results do not depend on scheduling.
  std::mt19937_64 master(a.seed);
  std::vector<CertifyRow> rows(a.count);
  for (auto& row : rows) row.seed = master();

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < a.count; ++i) {
    CertifyRow& row = rows[i];
    std::mt19937_64 rng(row.seed);
    SweepOptions sweep;
    sweep.min_vertices = a.min_vertices;
    sweep.max_vertices = a.max_vertices;
    sweep.max_edges = a.max_edges;
    sweep.max_weight = a.max_weight;
    sweep.k = a.k_min + static_cast<int>(uniform_below(rng, a.k_max - a.k_min + 1));
    try {
      PriorityGraph g = random_small_instance(rng, sweep);
      row.n = g.num_vertices();
      row.m = g.num_edges();
      row.k = g.k();
      row.cert = certify_ratio(g, family, strategy, solver, budget);
    } catch (const BudgetExceeded& e) {
      row.skipped = true;
      row.error = e.what();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  }

  int certified = 0, skipped = 0, failed = 0, max_invocations = 0;
  std::optional<Weight> lo, hi;
  double sum = 0;
  std::optional<Weight> bound;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CertifyRow& row = rows[i];
    if (a.verbose) {
      out << "instance " << i << " n=" << row.n << " m=" << row.m << " k=" << row.k;
      if (row.cert) {
        out << " opt=" << format_weight(row.cert->optimum) << " alg="
            << format_weight(row.cert->algorithm_weight) << " ratio="
            << format_weight(row.cert->ratio) << (row.cert->pass ? " pass" : " FAIL");
      } else {
        out << (row.skipped ? " skipped: " : " error: ") << row.error;
      }
      out << '\n';
    }
    if (row.skipped) {
      ++skipped;
      continue;
    }
    if (!row.cert) {
      ++failed;
      continue;
    }
    ++certified;
    if (!row.cert->pass) ++failed;
    const Weight& r = row.cert->ratio;
    if (!lo || r < *lo) lo = r;
    if (!hi || r > *hi) hi = r;
    sum += to_double(r);
    bound = row.cert->bound;
    max_invocations = std::max(max_invocations, row.cert->report.invocations);
  }
  out << "family " << family.to_string() << '\n';
  out << "strategy " << to_string(strategy) << '\n';
  out << "solver " << to_string(solver) << '\n';
  out << "instances " << a.count << '\n';
  out << "certified " << certified << '\n';
  out << "skipped " << skipped << '\n';
  out << "failed " << failed << '\n';
  if (lo) {
    out << "ratio_min " << format_weight(*lo) << " (" << fixed(to_double(*lo)) << ")\n";
    out << "ratio_mean " << fixed(sum / certified) << '\n';
    out << "ratio_max " << format_weight(*hi) << " (" << fixed(to_double(*hi)) << ")\n";
  }
  out << "bound " << (bound ? format_weight(*bound) : std::string("none")) << '\n';
  out << "max_invocations " << max_invocations << '\n';
  out << "result " << (failed == 0 ? "pass" : "fail") << '\n';
  return failed == 0 ? kExitOk : kExitInvalid;
}

int cmd_levels(const std::string& solution_path, const std::string& out_dir, std::ostream& out) {
  SolutionFile file = read_solution(solution_path);
  std::filesystem::create_directories(out_dir);
  for (int level = 1; level <= file.k(); ++level) {
    auto path = std::filesystem::path(out_dir) / ("level_" + std::to_string(level) + ".txt");
    auto f = open_out(path.string());
    f << "prisparse-level v1\n";
    f << "instance " << file.instance << '\n';
    f << "level " << level << '\n';
    int edges = 0;
    for (const auto& r : file.rates) {
      if (r.rate >= level) {
        f << "r " << r.u << ' ' << r.v << ' ' << r.rate << '\n';
        ++edges;
      }
    }
    out << path.string() << ' ' << edges << " edges\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-priority graph sparsification"};
  app.name("prisparse");
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute a k-priority sparsifier for an instance");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--family", solve.family, "tree | preserver | mult:A | additive:B");
  solve_cmd->add_option("--strategy", solve.strategy, "inclusive | pairwise | exclusive");
  solve_cmd->add_option("--solver", solve.solver,
                        "steiner2approx | greedy | subset | pathgreedy | exact");
  solve_cmd->add_option("--out", solve.out, "Solution file (default: standard output)");
  solve_cmd->add_flag("--allow-exclusive", solve.allow_exclusive,
                      "Permit exclusive with a distance family");
  solve_cmd->add_flag("--timing", solve.timing, "Report wall-clock time");

  std::string validate_instance, validate_solution;
  auto* validate_cmd = app.add_subcommand("validate", "Check a solution against its instance");
  validate_cmd->add_option("instance", validate_instance, "Instance file")->required();
  validate_cmd->add_option("solution", validate_solution, "Solution file")->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--model", gen.model, "er | grid | star");
  gen_cmd->add_option("--n", gen.n, "Vertex count (er, star)");
  gen_cmd->add_option("--p", gen.p, "Edge probability (er)");
  gen_cmd->add_option("--dims", gen.dims, "ROWSxCOLS (grid)");
  gen_cmd->add_option("--k", gen.k, "Number of priority levels");
  gen_cmd->add_option("--priority-dist", gen.dist, "uniform | geometric");
  gen_cmd->add_option("--max-weight", gen.max_weight, "Edge weights uniform in [1, max]");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--out", gen.out, "Instance file (default: standard output)");

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "Compare the pipeline against the exact optimum");
  cert_cmd->add_option("--count", cert.count, "Number of random instances");
  cert_cmd->add_option("--budget", cert.budget, "Oracle state budget, (k+1)^|E|");
  cert_cmd->add_option("--family", cert.family, "Constraint family");
  cert_cmd->add_option("--strategy", cert.strategy, "inclusive | pairwise | exclusive");
  cert_cmd->add_option("--solver", cert.solver, "Single-priority solver");
  cert_cmd->add_option("--seed", cert.seed, "Random seed");
  cert_cmd->add_option("--min-vertices", cert.min_vertices, "Smallest instance");
  cert_cmd->add_option("--max-vertices", cert.max_vertices, "Largest instance");
  cert_cmd->add_option("--max-edges", cert.max_edges, "Edge cap per instance");
  cert_cmd->add_option("--k-min", cert.k_min, "Smallest k");
  cert_cmd->add_option("--k-max", cert.k_max, "Largest k");
  cert_cmd->add_option("--max-weight", cert.max_weight, "Edge weights uniform in [1, max]");
  cert_cmd->add_flag("--verbose", cert.verbose, "One line per instance");

  std::string levels_solution, levels_dir;
  auto* levels_cmd = app.add_subcommand("levels", "Write one edge file per level of a solution");
  levels_cmd->add_option("solution", levels_solution, "Solution file")->required();
  levels_cmd->add_option("--out-dir", levels_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*validate_cmd) return cmd_validate(validate_instance, validate_solution, out, err);
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*cert_cmd) return cmd_certify(cert, out);
    if (*levels_cmd) return cmd_levels(levels_solution, levels_dir, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidStrategyForFamily& e) {
    err << "error: " << e.what() << '\n';
    return kExitStrategy;
  } catch (const IncompatibleSolver& e) {
    err << "error: " << e.what() << '\n';
    return kExitStrategy;
  } catch (const Disconnected& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisconnected;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}

}  // namespace prisparse
