#include "prisparse/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "prisparse/errors.hpp"

namespace prisparse {

namespace {

constexpr const char* kInstanceHeader = "prisparse-instance v1";
constexpr const char* kSolutionHeader = "prisparse-solution v1";

// Reads non-blank, non-comment lines as token lists, tracking line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      tokens.clear();
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      last_line_ = line.substr(first);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }
  const std::string& text() const { return last_line_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::string last_line_;
};

void expect_header(LineReader& reader, const char* header) {
  std::vector<std::string> tokens;
  if (!reader.next(tokens)) reader.fail("empty input; expected '" + std::string(header) + "'");
  if (reader.text() != header) reader.fail("expected header '" + std::string(header) + "'");
}

int parse_int(LineReader& reader, const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    reader.fail(std::string("malformed ") + what + " '" + text + "'");
  }
}

Weight parse_weight_at(LineReader& reader, const std::string& text) {
  try {
    return parse_weight(text);
  } catch (const std::exception& e) {
    reader.fail(e.what());
  }
}

void parse_meta(LineReader& reader, const std::vector<std::string>& tokens,
                std::map<std::string, std::string>& meta) {
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos || eq == 0) reader.fail("meta entries must be key=value");
    meta[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
}

void write_meta(std::ostream& out, const std::map<std::string, std::string>& meta,
                const std::vector<std::string>& leading) {
  out << "meta";
  for (const auto& key : leading) {
    auto it = meta.find(key);
    if (it != meta.end()) out << ' ' << key << '=' << it->second;
  }
  for (const auto& [key, value] : meta) {
    if (std::find(leading.begin(), leading.end(), key) == leading.end()) {
      out << ' ' << key << '=' << value;
    }
  }
  out << '\n';
}

void write_graph_body(std::ostream& out, const PriorityGraph& g) {
  out << "k " << g.k() << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) out << "v " << g.id(v) << ' ' << g.priority(v) << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << g.id(e.u) << ' ' << g.id(e.v) << ' ' << format_weight(e.w) << '\n';
  }
}

}  // namespace

Instance parse_instance(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  expect_header(reader, kInstanceHeader);
  Instance instance;
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  int k = 0;
  std::vector<std::string> t;
  while (reader.next(t)) {
    if (t[0] == "v") {
      if (t.size() != 3) reader.fail("expected 'v <id> <priority>'");
      vertices.push_back({t[1], parse_int(reader, t[2], "priority")});
    } else if (t[0] == "e") {
      if (t.size() != 4) reader.fail("expected 'e <u> <v> <weight>'");
      edges.push_back({t[1], t[2], parse_weight_at(reader, t[3])});
    } else if (t[0] == "k") {
      if (t.size() != 2) reader.fail("expected 'k <k>'");
      k = parse_int(reader, t[1], "k");
      if (k < 1) reader.fail("k must be at least 1");
    } else if (t[0] == "meta") {
      parse_meta(reader, t, instance.meta);
    } else {
      reader.fail("unknown record '" + t[0] + "'");
    }
  }
  try {
    instance.graph = PriorityGraph::build(std::move(vertices), edges, k);
  } catch (const GraphError& e) {
    throw ParseError(source, 0, e.what());
  }
  return instance;
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_instance(in, path);
}

void write_instance(std::ostream& out, const Instance& instance) {
  out << kInstanceHeader << '\n';
  if (!instance.meta.empty()) write_meta(out, instance.meta, {"name", "seed"});
  write_graph_body(out, instance.graph);
}

std::string instance_reference(const PriorityGraph& g) {
  std::ostringstream body;
  write_graph_body(body, g);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : body.str()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a:") + buf;
}

Weight SolutionFile::declared_weight() const {
  auto it = meta.find("weight");
  if (it == meta.end()) throw ParseError("<solution>", 0, "missing weight in meta line");
  return parse_weight(it->second);
}

int SolutionFile::k() const {
  auto it = meta.find("k");
  if (it == meta.end()) throw ParseError("<solution>", 0, "missing k in meta line");
  return std::stoi(it->second);
}

SolutionFile parse_solution(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  expect_header(reader, kSolutionHeader);
  SolutionFile s;
  std::vector<std::string> t;
  while (reader.next(t)) {
    if (t[0] == "instance") {
      if (t.size() != 2) reader.fail("expected 'instance <reference>'");
      s.instance = t[1];
    } else if (t[0] == "meta") {
      parse_meta(reader, t, s.meta);
    } else if (t[0] == "lw") {
      if (t.size() != 3) reader.fail("expected 'lw <level> <weight>'");
      s.level_weights[parse_int(reader, t[1], "level")] = parse_weight_at(reader, t[2]);
    } else if (t[0] == "r") {
      if (t.size() != 4) reader.fail("expected 'r <u> <v> <rate>'");
      int rate = parse_int(reader, t[3], "rate");
      if (rate < 1) reader.fail("rate must be at least 1");
      s.rates.push_back({t[1], t[2], rate});
    } else {
      reader.fail("unknown record '" + t[0] + "'");
    }
  }
  for (const char* key : {"family", "weight", "k"}) {
    if (!s.meta.count(key)) throw ParseError(source, 0, std::string("meta line lacks '") + key + "'");
  }
  try {
    s.declared_weight();
    if (s.k() < 1) throw std::invalid_argument("k");
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(source, 0, "malformed weight or k in meta line");
  }
  return s;
}

SolutionFile read_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_solution(in, path);
}

void write_solution(std::ostream& out, const SolutionFile& s) {
  out << kSolutionHeader << '\n';
  out << "instance " << s.instance << '\n';
  write_meta(out, s.meta, {"family", "strategy", "solver", "weight", "k"});
  for (const auto& [level, w] : s.level_weights) out << "lw " << level << ' ' << format_weight(w) << '\n';
  for (const auto& r : s.rates) out << "r " << r.u << ' ' << r.v << ' ' << r.rate << '\n';
}

SolutionFile make_solution_file(const PriorityGraph& g, const KPrioritySolution& s,
                                const ConstraintFamily& family, const std::string& strategy,
                                const std::string& solver) {
  SolutionFile f;
  f.instance = instance_reference(g);
  f.meta["family"] = family.to_string();
  f.meta["strategy"] = strategy;
  f.meta["solver"] = solver;
  f.meta["weight"] = format_weight(solution_weight(g, s));
  f.meta["k"] = std::to_string(s.k());
  for (int level = 1; level <= s.k(); ++level) f.level_weights[level] = s.level_subgraph(level).weight(g);
  for (const auto& [e, rate] : s.rates()) {
    f.rates.push_back({g.id(g.edge(e).u), g.id(g.edge(e).v), rate});
  }
  return f;
}

KPrioritySolution resolve_solution(const SolutionFile& s, const PriorityGraph& g) {
  KPrioritySolution out(g.k());
  for (const auto& r : s.rates) {
    auto a = g.find_vertex(r.u);
    auto b = g.find_vertex(r.v);
    std::optional<EdgeId> e;
    if (a && b) e = g.find_edge(*a, *b);
    if (!e) throw UnknownEdge("solution rates " + r.u + "-" + r.v + " which is not an edge");
    if (out.rate(*e) != 0) throw std::invalid_argument("edge " + r.u + "-" + r.v + " rated twice");
    out.set_rate(*e, r.rate);
  }
  return out;
}

}  // namespace prisparse
