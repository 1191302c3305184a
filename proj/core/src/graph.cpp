#include "gapbench/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "gapbench/errors.hpp"
#include "gapbench/random.hpp"

namespace gapbench {
namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on runs of blanks; returns false if there are not exactly `want`
// tokens.
bool split_tokens(std::string_view line, std::string_view* out, std::size_t want) {
  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto begin = line.find_first_not_of(" \t", pos);
    if (begin == std::string_view::npos) break;
    auto end = line.find_first_of(" \t", begin);
    if (end == std::string_view::npos) end = line.size();
    if (count == want) return false;
    out[count++] = line.substr(begin, end - begin);
    pos = end;
  }
  return count == want;
}

bool parse_index(std::string_view token, std::uint64_t& value) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

void check_vertex_count(std::size_t n) {
  if (n == 0) throw InvalidInput("graph must have at least one vertex");
  if (n > std::numeric_limits<Vertex>::max()) {
    throw InvalidInput("vertex count " + std::to_string(n) + " exceeds 32-bit index range");
  }
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  check_vertex_count(n_);
  for (const Edge& e : edges_) {
    if (e.source >= n_ || e.target >= n_) {
      throw InvalidInput("edge (" + std::to_string(e.source) + ", " +
                         std::to_string(e.target) + ") has index out of range for n = " +
                         std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InvalidInput("duplicate edge (" + std::to_string(dup->source) + ", " +
                       std::to_string(dup->target) + ")");
  }
}

std::vector<std::size_t> DirectedGraph::out_degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) ++deg[e.source];
  return deg;
}

std::vector<std::size_t> DirectedGraph::in_degrees() const {
  std::vector<std::size_t> deg(n_, 0);
  for (const Edge& e : edges_) ++deg[e.target];
  return deg;
}

DirectedGraph load_edge_list(std::string_view text) {
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    if (line.empty() || line.front() == '#') continue;

    std::string_view tok[2];
    if (!split_tokens(line, tok, 2)) throw ParseError("malformed line", line_no);

    if (!have_header) {
      std::uint64_t count = 0;
      if (tok[0] != "n" || !parse_index(tok[1], count)) {
        throw ParseError("expected header 'n <count>'", line_no);
      }
      if (count == 0 || count > std::numeric_limits<Vertex>::max()) {
        throw ParseError("vertex count out of range", line_no);
      }
      n = count;
      have_header = true;
      continue;
    }

    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!parse_index(tok[0], u) || !parse_index(tok[1], v)) {
      throw ParseError("malformed line", line_no);
    }
    if (u >= n || v >= n) throw ParseError("index out of range", line_no);
    const Vertex su = static_cast<Vertex>(u);
    const Vertex sv = static_cast<Vertex>(v);
    if (!seen.insert(edge_key(su, sv)).second) throw ParseError("duplicate edge", line_no);
    edges.push_back({su, sv});
  }
  if (!have_header) throw ParseError("missing header 'n <count>'", line_no);
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph read_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_edge_list(buffer.str());
}

std::string write_edge_list(const DirectedGraph& graph,
                            std::span<const std::string> comments) {
  std::string out;
  out.reserve(16 * (graph.edge_count() + 1));
  for (const auto& c : comments) {
    out += "# ";
    out += c;
    out += '\n';
  }
  out += "n " + std::to_string(graph.vertex_count()) + '\n';
  for (const Edge& e : graph.edges()) {
    out += std::to_string(e.source);
    out += ' ';
    out += std::to_string(e.target);
    out += '\n';
  }
  return out;
}

void write_edge_list_file(const DirectedGraph& graph, const std::filesystem::path& path,
                          std::span<const std::string> comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write graph file '" + path.string() + "'");
  out << write_edge_list(graph, comments);
}

DirectedGraph worst_case_graph(std::size_t n) {
  if (n < 2) throw InvalidInput("worst-case graph needs n >= 2, got " + std::to_string(n));
  check_vertex_count(n);
  const std::size_t half = n / 2;
  const Vertex last = static_cast<Vertex>(n - 1);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), i < half ? Vertex{0} : last});
  }
  return DirectedGraph(n, std::move(edges));
}

void ScaleFreeParams::validate() const {
  const double probs[] = {p_new_source, p_internal, p_new_target};
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("scale-free probabilities must lie in [0, 1]");
  }
  if (std::abs(p_new_source + p_internal + p_new_target - 1.0) > 1e-9) {
    throw InvalidInput("scale-free probabilities must sum to 1");
  }
  if (p_new_source + p_new_target <= 0.0) {
    throw InvalidInput("scale-free model cannot grow: p_new_source + p_new_target is 0");
  }
  if (!(in_bias >= 0.0) || !(out_bias >= 0.0)) {
    throw InvalidInput("scale-free attachment biases must be non-negative");
  }
}

DirectedGraph scale_free_graph(std::size_t n, const ScaleFreeParams& params,
                               std::uint64_t seed) {
  if (n < 2) throw InvalidInput("scale-free graph needs n >= 2, got " + std::to_string(n));
  check_vertex_count(n);
  params.validate();

  Rng rng(seed);
  std::vector<Edge> edges{{0, 0}};
  std::unordered_set<std::uint64_t> seen{edge_key(0, 0)};
  std::size_t vertices = 1;

  auto by_in_degree = [&]() -> Vertex {
    const double m = static_cast<double>(edges.size());
    if (rng.uniform() * (m + params.in_bias * static_cast<double>(vertices)) < m) {
      return edges[rng.below(edges.size())].target;
    }
    return static_cast<Vertex>(rng.below(vertices));
  };
  auto by_out_degree = [&]() -> Vertex {
    const double m = static_cast<double>(edges.size());
    if (rng.uniform() * (m + params.out_bias * static_cast<double>(vertices)) < m) {
      return edges[rng.below(edges.size())].source;
    }
    return static_cast<Vertex>(rng.below(vertices));
  };

  while (vertices < n) {
    const double r = rng.uniform();
    Edge e;
    if (r < params.p_new_source) {
      const Vertex w = by_in_degree();
      e = {static_cast<Vertex>(vertices), w};
      ++vertices;
    } else if (r < params.p_new_source + params.p_internal) {
      const Vertex v = by_out_degree();
      const Vertex w = by_in_degree();
      e = {v, w};
      // Growth steps have positive probability, so redrawing terminates.
      if (seen.count(edge_key(v, w)) != 0) continue;
    } else {
      const Vertex v = by_out_degree();
      e = {v, static_cast<Vertex>(vertices)};
      ++vertices;
    }
    seen.insert(edge_key(e.source, e.target));
    edges.push_back(e);
  }
  return DirectedGraph(n, std::move(edges));
}

DirectedGraph uniform_random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  check_vertex_count(n);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;
  if (m > pairs) {
    throw InvalidInput("cannot place " + std::to_string(m) + " distinct edges on " +
                       std::to_string(n) + " vertices");
  }
  // Floyd's sampling of m distinct keys from [0, n^2).
  Rng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m);
  std::vector<std::uint64_t> order;
  order.reserve(m);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    order.push_back(pick);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t key : order) {
    edges.push_back({static_cast<Vertex>(key / n), static_cast<Vertex>(key % n)});
  }
  return DirectedGraph(n, std::move(edges));
}

}  // namespace gapbench
