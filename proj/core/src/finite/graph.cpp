#include "extremal/finite/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <random>
#include <sstream>

namespace extremal::finite {

Graph::Graph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges) : Graph(vertex_count) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  if (adjacent(u, v)) throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  adj_[static_cast<std::size_t>(u) * n_ + v] = adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  const std::pair<int, int> e{std::min(u, v), std::max(u, v)};
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool Graph::is_independent(const VertexSet& s) const {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j] || adjacent(s[i], s[j])) return false;
  return true;
}

Graph complete_graph(int m) {
  Graph g(m);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) g.add_edge(u, v);
  return g;
}

Graph empty_graph(int m) { return Graph(m); }

Graph cycle_graph(int m) {
  if (m < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g(m);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) g.add_edge(u, v);
  return g;
}

Graph read_dimacs(std::istream& in) {
  std::string line;
  int line_no = 0;
  int declared_edges = -1;
  Graph g;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string format;
      long v = -1, e = -1;
      if (header) throw GraphParseError(line_no, "second problem line");
      if (!(ls >> format >> v >> e) || (format != "edge" && format != "col")) throw GraphParseError(line_no, "expected 'p edge <V> <E>'");
      if (v < 0 || v > 100000 || e < 0) throw GraphParseError(line_no, "invalid vertex or edge count");
      g = Graph(static_cast<int>(v));
      declared_edges = static_cast<int>(e);
      header = true;
    } else if (tag == "e") {
      if (!header) throw GraphParseError(line_no, "edge before problem line");
      long u = 0, v = 0;
      if (!(ls >> u >> v)) throw GraphParseError(line_no, "expected 'e <u> <v>'");
      if (u < 1 || v < 1 || u > g.vertex_count() || v > g.vertex_count())
        throw GraphParseError(line_no, "vertex out of range 1.." + std::to_string(g.vertex_count()));
      try {
        g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      } catch (const std::invalid_argument& e) {
        throw GraphParseError(line_no, e.what());
      }
    } else {
      throw GraphParseError(line_no, "unknown line type '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) throw GraphParseError(line_no, "trailing text '" + rest + "'");
  }
  if (!header) throw GraphParseError(line_no, "missing problem line");
  if (g.edge_count() != declared_edges)
    throw GraphParseError(line_no, "header declares " + std::to_string(declared_edges) + " edges, found " + std::to_string(g.edge_count()));
  return g;
}

Graph parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dimacs(in);
}

std::string to_dimacs(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& [u, v] : g.edges()) out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

namespace {

using Mask = std::uint64_t;

// Maximum clique in the complement; colour classes are cliques of g, each
// holding at most one vertex of an independent set.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : n_(g.vertex_count()), adj_(n_, 0) {
    for (const auto& [u, v] : g.edges()) {
      adj_[u] |= Mask{1} << v;
      adj_[v] |= Mask{1} << u;
    }
  }

  int run() {
    const Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
    best_ = 0;
    expand(all, 0);
    return best_;
  }

 private:
  void expand(Mask cand, int size) {
    if (!cand) {
      best_ = std::max(best_, size);
      return;
    }
    std::vector<int> order;
    std::vector<int> bound;
    Mask left = cand;
    int classes = 0;
    while (left) {
      ++classes;
      Mask q = left;
      while (q) {
        const int v = std::countr_zero(q);
        order.push_back(v);
        bound.push_back(classes);
        left &= ~(Mask{1} << v);
        q &= adj_[v];
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (size + bound[i] <= best_) return;
      const int v = order[i];
      expand(cand & ~adj_[v] & ~(Mask{1} << v), size + 1);
      cand &= ~(Mask{1} << v);
    }
  }

  int n_;
  std::vector<Mask> adj_;
  int best_ = 0;
};

}  // namespace

int alpha_bruteforce(const Graph& g) {
  if (g.vertex_count() > 40) throw std::invalid_argument("alpha_bruteforce supports at most 40 vertices");
  return IndependentSetSearch(g).run();
}

std::vector<VertexSet> enumerate_independent_sets(const Graph& g, int t, std::size_t cap) {
  if (t < 0) throw std::invalid_argument("negative step");
  std::vector<VertexSet> out{VertexSet{}};
  std::size_t level_begin = 0;
  for (int size = 1; size <= t; ++size) {
    const std::size_t level_end = out.size();
    for (std::size_t k = level_begin; k < level_end; ++k) {
      const int first = out[k].empty() ? 0 : out[k].back() + 1;
      for (int v = first; v < g.vertex_count(); ++v) {
        const VertexSet& s = out[k];
        if (std::any_of(s.begin(), s.end(), [&](int u) { return g.adjacent(u, v); })) continue;
        if (out.size() >= cap) throw std::length_error("more than " + std::to_string(cap) + " independent sets");
        VertexSet next = s;
        next.push_back(v);
        out.push_back(std::move(next));
      }
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

}  // namespace extremal::finite
