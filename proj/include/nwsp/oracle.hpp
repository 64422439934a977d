#pragma once

// Reference implementations used to check the fast paths. Kept deliberately
// naive and independent: plain Bellman-Ford rounds and a relaxation-to-
// fixpoint hop DP, no Dijkstra, no shared code with the main pipeline.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nwsp/graph.hpp"

namespace nwsp {

template <typename W>
struct OracleResult {
  bool negative_cycle = false;
  std::vector<W> dist;          // valid when !negative_cycle
  std::vector<VertexId> cycle;  // closed walk v0..v0 with weight < 0, may be
                                // empty when a cycle was found but not extracted
};

namespace detail {

template <typename W>
std::vector<VertexId> extract_pred_cycle(const Graph<W>& g, const std::vector<EdgeId>& pred,
                                         VertexId improved) {
  const VertexId n = g.vertex_count();
  // n predecessor steps from a vertex improved in round n land on a cycle of
  // the predecessor graph.
  VertexId z = improved;
  for (VertexId i = 0; i < n; ++i) {
    const EdgeId pe = pred[static_cast<std::size_t>(z)];
    if (pe < 0) return {};
    z = g.edge_src(pe);
  }
  // Walk the cycle backwards: back[i+1] -> back[i] are edges, closing z -> back.back().
  std::vector<VertexId> back;
  VertexId v = z;
  do {
    back.push_back(v);
    const EdgeId pe = pred[static_cast<std::size_t>(v)];
    if (pe < 0) return {};
    v = g.edge_src(pe);
  } while (v != z && back.size() <= static_cast<std::size_t>(n));
  if (v != z) return {};
  std::vector<VertexId> cyc;
  cyc.push_back(z);
  for (std::size_t i = back.size(); i-- > 1;) cyc.push_back(back[i]);
  cyc.push_back(z);
  // Verify: each hop exists (cheapest parallel edge) and the total is negative.
  W total{0};
  for (std::size_t i = 0; i + 1 < cyc.size(); ++i) {
    W best = infinite_weight<W>();
    for (EdgeId e : g.out_edges(cyc[i])) {
      if (g.edge_dst(e) == cyc[i + 1] && g.edge_weight(e) < best) best = g.edge_weight(e);
    }
    if (is_infinite(best)) return {};
    total += best;
  }
  if (!(total < W{0})) return {};
  return cyc;
}

}  // namespace detail

// Plain Bellman-Ford from a source set. Runs rounds over all edges until no
// change, at most n rounds; a change in round n proves a reachable negative
// cycle. Classes are ignored: this is the sign-based reference.
template <typename W>
OracleResult<W> oracle_bellman_ford(const Graph<W>& g, const std::vector<VertexId>& sources) {
  const VertexId n = g.vertex_count();
  const EdgeId m = g.edge_count();
  OracleResult<W> res;
  res.dist.assign(static_cast<std::size_t>(n), infinite_weight<W>());
  std::vector<EdgeId> pred(static_cast<std::size_t>(n), -1);
  for (VertexId s : sources) {
    if (s < 0 || s >= n) throw std::out_of_range("source out of range");
    res.dist[static_cast<std::size_t>(s)] = W{0};
  }
  VertexId last_improved = -1;
  for (VertexId round = 0; round < n; ++round) {
    bool changed = false;
    for (EdgeId e = 0; e < m; ++e) {
      const VertexId u = g.edge_src(e);
      const W du = res.dist[static_cast<std::size_t>(u)];
      if (is_infinite(du)) continue;
      const VertexId v = g.edge_dst(e);
      const W nd = du + g.edge_weight(e);
      if (nd < res.dist[static_cast<std::size_t>(v)]) {
        res.dist[static_cast<std::size_t>(v)] = nd;
        pred[static_cast<std::size_t>(v)] = e;
        changed = true;
        last_improved = v;
      }
    }
    if (!changed) return res;
  }
  if (n > 0) {
    // One more pass to see whether anything still improves.
    for (EdgeId e = 0; e < m; ++e) {
      const VertexId u = g.edge_src(e);
      const W du = res.dist[static_cast<std::size_t>(u)];
      if (is_infinite(du)) continue;
      const VertexId v = g.edge_dst(e);
      if (du + g.edge_weight(e) < res.dist[static_cast<std::size_t>(v)]) {
        res.negative_cycle = true;
        res.cycle = detail::extract_pred_cycle(g, pred, v);
        res.dist.clear();
        return res;
      }
    }
    (void)last_improved;
  }
  return res;
}

template <typename W>
OracleResult<W> oracle_bellman_ford(const Graph<W>& g, VertexId source) {
  return oracle_bellman_ford(g, std::vector<VertexId>{source});
}

// Reference for the whole-solver convention: a negative cycle anywhere in the
// graph yields a cycle verdict; otherwise exact distances from the source.
template <typename W>
OracleResult<W> oracle_global_sssp(const Graph<W>& g, VertexId source) {
  std::vector<VertexId> all(static_cast<std::size_t>(g.vertex_count()));
  for (VertexId v = 0; v < g.vertex_count(); ++v) all[static_cast<std::size_t>(v)] = v;
  OracleResult<W> any = oracle_bellman_ford(g, all);
  if (any.negative_cycle) return any;
  return oracle_bellman_ford(g, source);
}

// Round-indexed hop DP: row j holds the exact shortest weight over paths that
// use at most j Negative-class edges (NonNegative-class edges are free). Row 0
// is the fixpoint of NonNegative-class relaxations from the sources; row j+1
// applies one Negative-class relaxation from row j, then that fixpoint again.
// Quadratic-ish by design; guarded to small graphs.
template <typename W>
std::vector<std::vector<W>> oracle_hop_dp(const Graph<W>& g, const std::vector<VertexId>& sources,
                                          int h) {
  const VertexId n = g.vertex_count();
  if (n > 400) throw std::invalid_argument("oracle_hop_dp: graph too large for the DP oracle");
  if (h < 0) throw std::invalid_argument("oracle_hop_dp: h must be nonnegative");
  if (!has_valid_weighting(g)) throw std::invalid_argument("oracle_hop_dp: invalid weighting");
  const EdgeId m = g.edge_count();

  auto nonneg_fixpoint = [&](std::vector<W>& d) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (EdgeId e = 0; e < m; ++e) {
        if (g.edge_class(e) != EdgeClass::NonNegative) continue;
        const W du = d[static_cast<std::size_t>(g.edge_src(e))];
        if (is_infinite(du)) continue;
        const W nd = du + g.edge_weight(e);
        if (nd < d[static_cast<std::size_t>(g.edge_dst(e))]) {
          d[static_cast<std::size_t>(g.edge_dst(e))] = nd;
          changed = true;
        }
      }
    }
  };

  std::vector<std::vector<W>> rows;
  std::vector<W> d(static_cast<std::size_t>(n), infinite_weight<W>());
  for (VertexId s : sources) {
    if (s < 0 || s >= n) throw std::out_of_range("source out of range");
    d[static_cast<std::size_t>(s)] = W{0};
  }
  nonneg_fixpoint(d);
  rows.push_back(d);
  for (int j = 1; j <= h; ++j) {
    const std::vector<W>& prev = rows.back();
    std::vector<W> cur = prev;
    for (EdgeId e : g.negative_class_edges()) {
      const W du = prev[static_cast<std::size_t>(g.edge_src(e))];
      if (is_infinite(du)) continue;
      const W nd = du + g.edge_weight(e);
      if (nd < cur[static_cast<std::size_t>(g.edge_dst(e))]) {
        cur[static_cast<std::size_t>(g.edge_dst(e))] = nd;
      }
    }
    nonneg_fixpoint(cur);
    rows.push_back(std::move(cur));
  }
  return rows;
}

}  // namespace nwsp
