#pragma once

// Shared fixtures for the test suites.

#include <cstdint>
#include <tuple>
#include <vector>

#include "nwsp/graph.hpp"

namespace testutil {

using I = std::int64_t;
using IGraph = nwsp::Graph<I>;

inline constexpr I kInf = nwsp::infinite_weight<I>();

inline IGraph graph_of(nwsp::VertexId n,
                       const std::vector<std::tuple<nwsp::VertexId, nwsp::VertexId, I>>& edges) {
  return IGraph::from_edges(n, edges);
}

// 0 -> 1 (-2, Negative), 1 -> 2 (+1, NonNegative). The three-vertex micro
// example used across the suites; from vertex 0 the distances are 0, -2, -1.
inline IGraph tiny_chain() { return graph_of(3, {{0, 1, -2}, {1, 2, 1}}); }

// 0 -> 1 (-2, Negative), 1 -> 0 (+1, NonNegative): cycle weight -1.
inline IGraph tiny_neg_cycle() { return graph_of(2, {{0, 1, -2}, {1, 0, 1}}); }

inline std::vector<nwsp::VertexId> all_vertices(nwsp::VertexId n) {
  std::vector<nwsp::VertexId> v(static_cast<std::size_t>(n));
  for (nwsp::VertexId i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

// Star of negative one-hop paths into z plus z's own negative edge, so z sits
// in the negative-vertex pool and is reached by everyone else in it:
//   ids: z = 0, u_1..u_8 = 1..8, sink = 9; edges u_i -> z (-1), z -> 9 (-1).
inline IGraph star_into_z() {
  std::vector<std::tuple<nwsp::VertexId, nwsp::VertexId, I>> edges;
  for (nwsp::VertexId u = 1; u <= 8; ++u) edges.push_back({u, 0, -1});
  edges.push_back({0, 9, -1});
  return graph_of(10, edges);
}

// Eight disjoint negative edges u_i -> t_i: the u_i are pairwise 1-hop
// unrelated negative vertices. ids: u_i = 0..7, t_i = 8..15.
inline IGraph unrelated_pairs() {
  std::vector<std::tuple<nwsp::VertexId, nwsp::VertexId, I>> edges;
  for (nwsp::VertexId u = 0; u < 8; ++u) edges.push_back({u, static_cast<nwsp::VertexId>(u + 8), -1});
  return graph_of(16, edges);
}

// A sandwich the crust search itself can find: x and y are negative vertices,
// every u_i negatively 1-hop-reaches y, and x negatively 1-hop-reaches every
// u_i (and y, so x survives the first crust).
//   ids: y = 0, x = 1, u_i = 2..t+1, hub b = t+2, a_i = t+3..2t+2, sink = 2t+3.
//   edges: x->b (-1); b->u_i (0); b->y (0); u_i->a_i (-1); a_i->y (0); y->sink (-1).
// k = t + 2 negative edges, n = 2t + 4.
inline IGraph crusty_sandwich(nwsp::VertexId t) {
  const nwsp::VertexId b = t + 2;
  const nwsp::VertexId sink = 2 * t + 3;
  std::vector<std::tuple<nwsp::VertexId, nwsp::VertexId, I>> edges;
  edges.push_back({1, b, -1});
  edges.push_back({b, 0, 0});
  edges.push_back({0, sink, -1});
  for (nwsp::VertexId i = 0; i < t; ++i) {
    const nwsp::VertexId u = 2 + i;
    const nwsp::VertexId a = t + 3 + i;
    edges.push_back({b, u, 0});
    edges.push_back({u, a, -1});
    edges.push_back({a, 0, 0});
  }
  return graph_of(2 * t + 4, edges);
}

}  // namespace testutil
