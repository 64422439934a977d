#pragma once

// Hop reduction: to eliminate a negative edge set N whose influence region is
// small, build a layered auxiliary graph over R = {v : dist^r(V,v) < 0}. Each
// vertex of R gets copies in layers 1..r; traversing a negative edge climbs
// one layer, and the only negative-weight edges of the layered graph are the
// per-vertex drops (u_r -> u_0). An r-hop negative path of the base graph
// thus collapses into a single hop, so super-source distances converge in
// ~|N|/r rounds instead of |N|, and those distances, restricted to layer 0,
// are exactly dist_{G^N}(V, .) — Johnson's price function for G^N.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nwsp/bfd.hpp"
#include "nwsp/graph.hpp"

namespace nwsp {

template <typename W>
struct LayeredGraph {
  Graph<W> h;                          // layer-0 ids coincide with base ids
  int r = 1;
  std::vector<VertexId> remote;        // R, ascending
  std::vector<VertexId> rank;          // base vertex -> index in remote, -1 otherwise
  std::vector<std::vector<W>> delta;   // delta[j][v] = dist^j(V, v) in the base graph, j <= r

  VertexId id_of(VertexId v, int layer) const {
    if (layer == 0) return v;
    return static_cast<VertexId>(delta[0].size()) +
           static_cast<VertexId>(layer - 1) * static_cast<VertexId>(remote.size()) +
           rank[static_cast<std::size_t>(v)];
  }
};

// Build the layered graph for a base graph whose Negative class is exactly
// the set being eliminated. Every non-drop edge must come out nonnegative;
// the construction guarantees it and the graph factory enforces it.
template <typename W>
LayeredGraph<W> build_layered(const Graph<W>& gn, int r) {
  if (r < 1) throw std::invalid_argument("build_layered: r must be >= 1");
  const VertexId n = gn.vertex_count();
  LayeredGraph<W> out;
  out.r = r;
  std::vector<VertexId> all(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  BfdOptions opts;
  opts.all_rounds = true;
  out.delta = bfd(gn, all, r, opts).rounds;

  out.rank.assign(static_cast<std::size_t>(n), -1);
  const auto& dr = out.delta[static_cast<std::size_t>(r)];
  for (VertexId v = 0; v < n; ++v) {
    if (dr[static_cast<std::size_t>(v)] < W{0}) {
      out.rank[static_cast<std::size_t>(v)] = static_cast<VertexId>(out.remote.size());
      out.remote.push_back(v);
    }
  }

  const auto dj = [&](int j, VertexId v) { return out.delta[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)]; };
  const auto in_r = [&](VertexId v) { return out.rank[static_cast<std::size_t>(v)] >= 0; };

  std::vector<EdgeRecord<W>> edges;
  for (EdgeId e = 0; e < gn.edge_count(); ++e) {
    const VertexId u = gn.edge_src(e), v = gn.edge_dst(e);
    const W w = gn.edge_weight(e);
    if (gn.edge_class(e) == EdgeClass::NonNegative) {
      if (in_r(u) && in_r(v)) {
        for (int j = 0; j <= r; ++j) {
          edges.push_back({out.id_of(u, j), out.id_of(v, j),
                           static_cast<W>(w + dj(j, u) - dj(j, v)), EdgeClass::NonNegative});
        }
      } else if (in_r(u)) {
        for (int j = 0; j <= r; ++j) {
          edges.push_back({out.id_of(u, j), v, static_cast<W>(w + dj(j, u)), EdgeClass::NonNegative});
        }
      } else {
        edges.push_back({u, v, w, EdgeClass::NonNegative});
      }
    } else {
      // Traversing an edge of the eliminated set climbs one layer (or lands
      // in layer 0 when the head is outside R).
      if (in_r(u) && in_r(v)) {
        for (int j = 0; j < r; ++j) {
          edges.push_back({out.id_of(u, j), out.id_of(v, j + 1),
                           static_cast<W>(w + dj(j, u) - dj(j + 1, v)), EdgeClass::NonNegative});
        }
      } else if (in_r(u)) {
        for (int j = 0; j < r; ++j) {
          edges.push_back({out.id_of(u, j), v, static_cast<W>(w + dj(j, u)), EdgeClass::NonNegative});
        }
      } else if (in_r(v)) {
        edges.push_back({u, out.id_of(v, 1), static_cast<W>(w - dj(1, v)), EdgeClass::NonNegative});
      } else {
        edges.push_back({u, v, w, EdgeClass::NonNegative});
      }
    }
  }
  // Per-vertex 0-weight cycle through the layers; the closing drop carries
  // delta_r(u) < 0 and is the only negative edge shape in the whole graph.
  for (VertexId u : out.remote) {
    for (int j = 0; j < r; ++j) {
      edges.push_back({out.id_of(u, j), out.id_of(u, j + 1),
                       static_cast<W>(dj(j, u) - dj(j + 1, u)), EdgeClass::NonNegative});
    }
    edges.push_back({out.id_of(u, r), u, dj(r, u), EdgeClass::Negative});
  }

  const VertexId nh = n + static_cast<VertexId>(out.remote.size()) * r;
  out.h = Graph<W>::from_classified_edges(nh, edges);
  return out;
}

// Is |reach^r(U)| <= n/r, with the reach taken in the subgraph keeping only
// U's negative out-edges? Returns the verdict and the reach size.
template <typename W>
std::pair<bool, std::int64_t> check_remote(const Graph<W>& g, const std::vector<VertexId>& u,
                                           int r) {
  if (r < 1) throw std::invalid_argument("check_remote: r must be >= 1");
  if (u.empty()) return {true, 0};
  const Graph<W> sub = negative_subgraph(g, negative_out_edges(g, u));
  const std::int64_t size = static_cast<std::int64_t>(reach(sub, u, r).size());
  return {size * r <= static_cast<std::int64_t>(g.vertex_count()), size};
}

// Eliminate every edge of N at once: phi = dist_{G^N}(V, .), computed through
// the layered graph. Sound negative-cycle reports; otherwise the returned
// price function is valid and makes all of N nonnegative.
template <typename W>
PriceOutcome<W> eliminate_remote(const Graph<W>& g, const std::vector<EdgeId>& n_edges, int r) {
  if (r < 1) throw std::invalid_argument("eliminate_remote: r must be >= 1");
  if (!has_valid_weighting(g)) throw std::invalid_argument("eliminate_remote: invalid weighting");
  const Graph<W> gn = negative_subgraph(g, n_edges);
  const LayeredGraph<W> lay = build_layered(gn, r);

  // Fixpoint rounds in the layered graph. A simple path uses each vertex's
  // drop edge at most once, so |remote| rounds force a fixpoint unless a
  // negative cycle keeps improving the distances.
  std::vector<VertexId> all_h(static_cast<std::size_t>(lay.h.vertex_count()));
  for (VertexId v = 0; v < lay.h.vertex_count(); ++v) all_h[static_cast<std::size_t>(v)] = v;
  const SsspOutcome<W> res =
      fixpoint_sssp(lay.h, all_h, static_cast<std::int64_t>(lay.remote.size()));
  if (res.negative_cycle) return {true, {}};

  PriceFunction<W> phi = PriceFunction<W>::zero(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) phi[v] = res.dist[static_cast<std::size_t>(v)];

  if (!is_valid_price(g, phi)) {
    throw std::logic_error("eliminate_remote: produced an invalid price function");
  }
  const Graph<W> relifted = reweight(gn, phi);
  if (count_negative(relifted) != 0) {
    throw std::logic_error("eliminate_remote: some targeted edges stayed negative");
  }
  return {false, std::move(phi)};
}

}  // namespace nwsp
