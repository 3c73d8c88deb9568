#pragma once

#include <string>
#include <vector>

#include "extremal/finite/graph.hpp"

namespace extremal::support {

struct NamedGraph {
  std::string name;
  finite::Graph graph;
};

// 100 random graphs on 4..9 vertices with densities cycling through
// 0.2..0.7, then K_3..K_6, C_5 and the Petersen graph.
inline std::vector<NamedGraph> finite_corpus() {
  std::vector<NamedGraph> out;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + i % 6;
    const double p = 0.2 + 0.1 * (i / 6 % 6);
    out.push_back({"random-" + std::to_string(i), finite::random_graph(n, p, 1000 + i)});
  }
  for (int m = 3; m <= 6; ++m) out.push_back({"K" + std::to_string(m), finite::complete_graph(m)});
  out.push_back({"C5", finite::cycle_graph(5)});
  out.push_back({"petersen", finite::petersen_graph()});
  return out;
}

// Larger graphs used only for the independence number oracle.
inline std::vector<NamedGraph> alpha_corpus() {
  std::vector<NamedGraph> out = finite_corpus();
  for (int i = 0; i < 20; ++i) {
    const int n = 10 + i % 7;
    out.push_back({"random-large-" + std::to_string(i), finite::random_graph(n, 0.15 + 0.05 * (i % 8), 5000 + i)});
  }
  return out;
}

inline int alpha_by_subsets(const finite::Graph& g) {
  const int n = g.vertex_count();
  int best = 0;
  for (unsigned s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (const auto& [u, v] : g.edges())
      if ((s >> u & 1) && (s >> v & 1)) {
        ok = false;
        break;
      }
    if (ok) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

}  // namespace extremal::support
