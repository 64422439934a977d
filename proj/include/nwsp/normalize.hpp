#pragma once

// Rewrites a graph into the normalized form the elimination pipeline assumes:
//   1. every tail of a Negative-class edge has exactly one outgoing edge,
//   2. every vertex degree is at most ceil(4m/n),
//   3. m >= 2n.
// Construction: vertices of total degree > 8 become a 0-weight cycle of
// copies, each Negative-class edge whose tail has other out-edges is rerouted
// through a fresh 0-weight tail, and fresh sink chains of 0-weight edges pad
// the edge count. Padding forces m >= 2n, hence ceil(4m/n) >= 8, which is why
// the degree target is the constant 8. Distances between original vertices
// are preserved; auxiliary vertices map back to -1.

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "nwsp/graph.hpp"

namespace nwsp {

struct NormalizationMap {
  std::vector<VertexId> forward;  // original id -> normalized id
  std::vector<VertexId> back;     // normalized id -> original id, -1 for auxiliary
};

template <typename W>
struct Normalized {
  Graph<W> graph;
  NormalizationMap map;
};

namespace detail {

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

template <typename W>
bool already_normalized(const Graph<W>& g) {
  const VertexId n = g.vertex_count();
  const EdgeId m = g.edge_count();
  if (n < 1) return false;
  if (static_cast<std::int64_t>(m) < 2 * static_cast<std::int64_t>(n)) return false;
  for (EdgeId e : g.negative_class_edges()) {
    if (g.out_edges(g.edge_src(e)).size() != 1) return false;
  }
  const std::int64_t cap = ceil_div(4 * static_cast<std::int64_t>(m), n);
  for (VertexId v = 0; v < n; ++v) {
    const std::int64_t deg = static_cast<std::int64_t>(g.out_edges(v).size()) +
                             static_cast<std::int64_t>(g.in_edges(v).size());
    if (deg > cap) return false;
  }
  return true;
}

}  // namespace detail

template <typename W>
Normalized<W> normalize(const Graph<W>& g) {
  const VertexId n0 = g.vertex_count();
  if (n0 < 1) throw std::invalid_argument("normalize: graph must have at least one vertex");

  NormalizationMap map;
  map.forward.resize(static_cast<std::size_t>(n0));
  if (detail::already_normalized(g)) {
    map.back.resize(static_cast<std::size_t>(n0));
    for (VertexId v = 0; v < n0; ++v) {
      map.forward[static_cast<std::size_t>(v)] = v;
      map.back[static_cast<std::size_t>(v)] = v;
    }
    return {g, std::move(map)};
  }

  constexpr int kDeg = 8;      // per-vertex degree target; final bound is >= 8
  constexpr int kBundle = 6;   // slots per copy, leaving room for 2 cycle edges
  const EdgeId m0 = g.edge_count();

  std::vector<EdgeRecord<W>> edges;
  edges.reserve(static_cast<std::size_t>(m0) * 2 + static_cast<std::size_t>(n0) * 2);
  std::vector<VertexId> back;
  back.reserve(static_cast<std::size_t>(n0) * 2);
  for (VertexId v = 0; v < n0; ++v) {
    map.forward[static_cast<std::size_t>(v)] = v;  // copy 0 keeps the original id
    back.push_back(v);
  }
  VertexId nv = n0;
  auto fresh = [&]() {
    back.push_back(-1);
    return nv++;
  };

  // Degree split: distribute each vertex's edge slots over copies joined by a
  // 0-weight cycle, so every copy is distance-0 equivalent to the original.
  std::vector<VertexId> new_src(static_cast<std::size_t>(m0));
  std::vector<VertexId> new_dst(static_cast<std::size_t>(m0));
  for (VertexId v = 0; v < n0; ++v) {
    const auto outs = g.out_edges(v);
    const auto ins = g.in_edges(v);
    const std::size_t deg = outs.size() + ins.size();
    if (deg <= kDeg) {
      for (EdgeId e : outs) new_src[static_cast<std::size_t>(e)] = v;
      for (EdgeId e : ins) new_dst[static_cast<std::size_t>(e)] = v;
      continue;
    }
    const std::size_t copies = detail::ceil_div(static_cast<std::int64_t>(deg), kBundle);
    std::vector<VertexId> ids;
    ids.push_back(v);
    for (std::size_t i = 1; i < copies; ++i) ids.push_back(fresh());
    std::size_t slot = 0;
    for (EdgeId e : outs) new_src[static_cast<std::size_t>(e)] = ids[slot++ / kBundle];
    for (EdgeId e : ins) new_dst[static_cast<std::size_t>(e)] = ids[slot++ / kBundle];
    for (std::size_t i = 0; i < copies; ++i) {
      edges.push_back({ids[i], ids[(i + 1) % copies], W{0}, EdgeClass::NonNegative});
    }
  }

  // Reroute Negative-class edges whose (possibly split) tail has other
  // out-edges through a fresh single-purpose tail.
  std::vector<std::int32_t> outdeg(static_cast<std::size_t>(nv) + static_cast<std::size_t>(m0), 0);
  for (const auto& r : edges) ++outdeg[static_cast<std::size_t>(r.src)];
  for (EdgeId e = 0; e < m0; ++e) ++outdeg[static_cast<std::size_t>(new_src[static_cast<std::size_t>(e)])];
  std::vector<char> neg_tail(outdeg.size(), 0);
  for (EdgeId e = 0; e < m0; ++e) {
    const VertexId s = new_src[static_cast<std::size_t>(e)];
    const VertexId d = new_dst[static_cast<std::size_t>(e)];
    const W w = g.edge_weight(e);
    const EdgeClass cls = g.edge_class(e);
    if (cls == EdgeClass::Negative && outdeg[static_cast<std::size_t>(s)] > 1) {
      const VertexId a = fresh();
      edges.push_back({s, a, W{0}, EdgeClass::NonNegative});
      edges.push_back({a, d, w, cls});
      neg_tail[static_cast<std::size_t>(a)] = 1;
    } else {
      edges.push_back({s, d, w, cls});
      if (cls == EdgeClass::Negative) neg_tail[static_cast<std::size_t>(s)] = 1;
    }
  }

  // Pad with fresh sink chains until m >= 2n. Sources must have spare degree
  // and must not be negative tails (their out-degree has to stay 1).
  std::vector<std::int32_t> deg(back.size(), 0);
  for (const auto& r : edges) {
    ++deg[static_cast<std::size_t>(r.src)];
    ++deg[static_cast<std::size_t>(r.dst)];
  }
  std::deque<VertexId> cands;
  for (VertexId v = 0; v < nv; ++v) {
    if (!neg_tail[static_cast<std::size_t>(v)] && deg[static_cast<std::size_t>(v)] < kDeg) {
      cands.push_back(v);
    }
  }
  while (static_cast<std::int64_t>(edges.size()) < 2 * static_cast<std::int64_t>(nv)) {
    const VertexId t = fresh();
    deg.push_back(0);
    int added = 0;
    while (added < 3 && static_cast<std::int64_t>(edges.size()) < 2 * static_cast<std::int64_t>(nv)) {
      VertexId s = -1;
      while (!cands.empty()) {
        VertexId c = cands.front();
        cands.pop_front();
        if (deg[static_cast<std::size_t>(c)] < kDeg) {
          s = c;
          break;
        }
      }
      if (s < 0) break;
      edges.push_back({s, t, W{0}, EdgeClass::NonNegative});
      ++deg[static_cast<std::size_t>(s)];
      ++deg[static_cast<std::size_t>(t)];
      ++added;
      if (deg[static_cast<std::size_t>(s)] < kDeg) cands.push_back(s);
    }
    if (deg[static_cast<std::size_t>(t)] < kDeg) cands.push_back(t);
  }

  Graph<W> out = Graph<W>::from_classified_edges(nv, edges);
  map.back = std::move(back);
  return {std::move(out), std::move(map)};
}

}  // namespace nwsp
