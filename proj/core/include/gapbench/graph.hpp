#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapbench {

using Vertex = std::uint32_t;

struct Edge {
  Vertex source = 0;
  Vertex target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable directed graph on vertices [0, n). Self-loops are allowed,
/// duplicate edges are not. Edges are stored sorted by (source, target), so
/// two graphs with the same edge set compare equal.
class DirectedGraph {
 public:
  /// Throws InvalidInput on n == 0, an out-of-range index, or a duplicate.
  DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::vector<std::size_t> out_degrees() const;
  std::vector<std::size_t> in_degrees() const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

// --- Edge-list text format -------------------------------------------------
//
//   # comment
//   n <vertex count>
//   <source> <target>
//   ...
//
// The header must precede the first edge. Errors carry the line number.

DirectedGraph load_edge_list(std::string_view text);
DirectedGraph read_edge_list_file(const std::filesystem::path& path);

/// Header, optional '#' comment lines, then one "u v" line per edge in sorted
/// order.
std::string write_edge_list(const DirectedGraph& graph,
                            std::span<const std::string> comments = {});
void write_edge_list_file(const DirectedGraph& graph,
                          const std::filesystem::path& path,
                          std::span<const std::string> comments = {});

// --- Generators ------------------------------------------------------------

/// Two absorbing sinks: vertices [0, n/2) point at vertex 0 and the
/// remaining ceil(n/2) vertices point at vertex n-1. Every vertex has
/// out-degree 1. Requires n >= 2.
DirectedGraph worst_case_graph(std::size_t n);

/// Directed preferential attachment in the Bollobas-Borgs-Chayes-Riordan
/// style. Each step adds one edge:
///   with p_new_source: a new vertex v and v -> w, w drawn by in-degree + in_bias
///   with p_internal:   v -> w between existing vertices, v by out-degree +
///                      out_bias and w by in-degree + in_bias
///   with p_new_target: a new vertex w and v -> w, v drawn by out-degree + out_bias
/// Growth starts from one vertex with a self-loop and stops at n vertices.
/// A duplicate internal edge discards the step and redraws it.
struct ScaleFreeParams {
  double p_new_source = 0.41;
  double p_internal = 0.54;
  double p_new_target = 0.05;
  double in_bias = 0.05;
  double out_bias = 0.0;

  /// Throws InvalidInput if probabilities are negative, do not sum to 1,
  /// leave no way to add vertices, or the biases are negative.
  void validate() const;
};

DirectedGraph scale_free_graph(std::size_t n, const ScaleFreeParams& params,
                               std::uint64_t seed);

/// m distinct edges drawn uniformly from all n^2 ordered pairs (self-loops
/// included). Requires m <= n^2.
DirectedGraph uniform_random_graph(std::size_t n, std::size_t m,
                                   std::uint64_t seed);

}  // namespace gapbench
