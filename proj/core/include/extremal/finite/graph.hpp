#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extremal::finite {

using VertexSet = std::vector<int>;  // sorted ascending

/// Simple undirected graph on vertices 0..vertex_count-1.
class Graph {
 public:
  explicit Graph(int vertex_count = 0);
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  /// Sorted pairs (u, v) with u < v.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v]; }
  bool is_independent(const VertexSet& s) const;

  /// Throws std::invalid_argument on loops, duplicates or bad endpoints.
  void add_edge(int u, int v);

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<char> adj_;
};

Graph complete_graph(int m);
Graph empty_graph(int m);
Graph cycle_graph(int m);
Graph petersen_graph();
/// G(n, p) from a 64-bit Mersenne twister; edges tested in (u, v) lex order.
Graph random_graph(int n, double p, std::uint64_t seed);

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// "p edge V E" header, "e u v" lines with 1-based vertices, "c" comments.
Graph read_dimacs(std::istream& in);
Graph parse_dimacs(std::string_view text);
std::string to_dimacs(const Graph& g);

/// Exact independence number; at most 40 vertices.
int alpha_bruteforce(const Graph& g);

/// Independent sets of size <= t ordered by size, then lexicographically,
/// starting with the empty set.  Throws std::length_error past the cap.
std::vector<VertexSet> enumerate_independent_sets(const Graph& g, int t, std::size_t cap = 1'000'000);

}  // namespace extremal::finite
