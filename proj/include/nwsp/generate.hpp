#pragma once

// Seeded instance generators. Every tag produces exactly n vertices, m edges
// and k negative edges, deterministically in the seed.
//
// Cycle-freeness is by construction, not luck: for the "uniform",
// "sandwich-planted" and "cycle-planted" tags every edge except a
// deliberately planted 2-cycle satisfies w(u,v) >= psi(v) - psi(u) for a
// hidden potential psi, so all cycle weights telescope to >= 0. Negative
// edges are exactly the slots oriented strictly downhill in psi. "layered"
// and "grid" are DAGs and need no certificate. Small instances are
// re-verified with the oracle at generation time anyway.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nwsp/graph.hpp"
#include "nwsp/oracle.hpp"
#include "nwsp/rng.hpp"

namespace nwsp {

struct InstanceSpec {
  std::int64_t n = 1;
  std::int64_t m = 0;
  std::int64_t k = 0;
  std::int64_t lo = -100;  // most negative weight
  std::int64_t hi = 1000;  // largest weight
  std::string tag = "uniform";
  std::uint64_t seed = 0;
};

namespace detail {

struct SlotGraph {
  std::vector<VertexId> src, dst;
  std::vector<std::int64_t> w;
  std::vector<char> planted;  // the planted 2-cycle pair; kept exact in float mode
};

inline std::vector<VertexId> shuffled_vertices(Rng& rng, VertexId n) {
  std::vector<VertexId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), VertexId{0});
  const std::size_t count = perm.size();
  return sample_without_replacement(rng, std::move(perm), count);
}

// Tracks the hidden potential. Designated slots are oriented strictly
// downhill; ties bump an endpoint upward. A vertex freezes once it becomes
// the head of a designated slot, and bumps never touch frozen vertices, so
// settled drops can only widen.
struct PotentialBuilder {
  std::vector<std::int64_t> psi;
  std::vector<char> frozen;

  bool orient(Rng& rng, VertexId& p, VertexId& q) {
    if (psi[static_cast<std::size_t>(p)] == psi[static_cast<std::size_t>(q)]) {
      if (!frozen[static_cast<std::size_t>(p)]) {
        psi[static_cast<std::size_t>(p)] =
            psi[static_cast<std::size_t>(q)] + 1 + uniform_int(rng, 0, 3);
      } else if (!frozen[static_cast<std::size_t>(q)]) {
        psi[static_cast<std::size_t>(q)] =
            psi[static_cast<std::size_t>(p)] + 1 + uniform_int(rng, 0, 3);
        std::swap(p, q);
      } else {
        return false;
      }
    } else if (psi[static_cast<std::size_t>(p)] < psi[static_cast<std::size_t>(q)]) {
      std::swap(p, q);
    }
    frozen[static_cast<std::size_t>(q)] = true;
    return true;
  }
};

inline std::pair<VertexId, VertexId> distinct_pair(Rng& rng, VertexId n) {
  const auto a = static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  auto b = static_cast<VertexId>(uniform_below(rng, static_cast<std::uint64_t>(n) - 1));
  if (b >= a) ++b;
  return {a, b};
}

// Draw the final weights once psi is settled: designated slots land in
// [max(lo, -drop), -1], everything else in [lb, max(hi, lb)] where lb is the
// smallest certifiable weight. lb almost always is 0; it exceeds hi only
// after a pile-up of tie bumps.
inline void draw_certified_weights(Rng& rng, SlotGraph& sg, const std::vector<char>& designated,
                                   const std::vector<std::int64_t>& psi, std::int64_t lo,
                                   std::int64_t hi) {
  for (std::size_t i = 0; i < sg.src.size(); ++i) {
    if (sg.planted[i]) continue;
    const std::int64_t du = psi[static_cast<std::size_t>(sg.src[i])];
    const std::int64_t dv = psi[static_cast<std::size_t>(sg.dst[i])];
    if (designated[i]) {
      sg.w[i] = uniform_int(rng, std::max(lo, dv - du), -1);
    } else {
      const std::int64_t lb = std::max<std::int64_t>(0, dv - du);
      sg.w[i] = uniform_int(rng, lb, std::max(hi, lb));
    }
  }
}

inline void fail_spec(const std::string& why) {
  throw std::invalid_argument("generate: infeasible spec: " + why);
}

inline SlotGraph build_potential_tag(const InstanceSpec& spec, Rng& rng, bool plant_cycle) {
  const auto n = static_cast<VertexId>(spec.n);
  const std::int64_t backbone = spec.n - 1;
  const std::int64_t planted = plant_cycle ? 2 : 0;
  const std::int64_t forced_neg = plant_cycle ? 1 : 0;
  if (spec.m < backbone + planted + (spec.k - forced_neg)) fail_spec("m too small for tag");
  if (plant_cycle && spec.k < 1) fail_spec("cycle-planted needs k >= 1");

  SlotGraph sg;
  sg.src.reserve(static_cast<std::size_t>(spec.m));
  sg.dst.reserve(static_cast<std::size_t>(spec.m));
  sg.w.assign(static_cast<std::size_t>(spec.m), 0);
  sg.planted.assign(static_cast<std::size_t>(spec.m), 0);

  const std::vector<VertexId> perm = shuffled_vertices(rng, n);
  PotentialBuilder pb;
  pb.psi.resize(static_cast<std::size_t>(n));
  pb.frozen.assign(static_cast<std::size_t>(n), 0);
  for (auto& p : pb.psi) p = uniform_int(rng, 0, spec.hi);

  for (std::int64_t i = 0; i + 1 < spec.n; ++i) {
    sg.src.push_back(perm[static_cast<std::size_t>(i)]);
    sg.dst.push_back(perm[static_cast<std::size_t>(i + 1)]);
  }
  std::int64_t cycle_slot = -1;
  if (plant_cycle) {
    cycle_slot = static_cast<std::int64_t>(sg.src.size());
    sg.src.push_back(perm[0]);
    sg.dst.push_back(perm[1]);
    sg.src.push_back(perm[1]);
    sg.dst.push_back(perm[0]);
    sg.planted[static_cast<std::size_t>(cycle_slot)] = 1;
    sg.planted[static_cast<std::size_t>(cycle_slot) + 1] = 1;
  }
  const std::int64_t first_extra = static_cast<std::int64_t>(sg.src.size());
  for (std::int64_t i = first_extra; i < spec.m; ++i) {
    auto [a, b] = distinct_pair(rng, n);
    sg.src.push_back(a);
    sg.dst.push_back(b);
  }

  // Pick which slots carry the negative weights (the planted pair is handled
  // separately and only its forward half counts).
  std::vector<char> designated(static_cast<std::size_t>(spec.m), 0);
  {
    std::vector<std::int64_t> pool;
    pool.reserve(static_cast<std::size_t>(spec.m));
    for (std::int64_t i = 0; i < spec.m; ++i) {
      if (!sg.planted[static_cast<std::size_t>(i)]) pool.push_back(i);
    }
    const auto picked = sample_without_replacement(
        rng, std::move(pool), static_cast<std::size_t>(spec.k - forced_neg));
    for (std::int64_t i : picked) designated[static_cast<std::size_t>(i)] = 1;
  }

  // Backbone slots from the far end first: slot i can only ever bump
  // perm[i], which no later slot has frozen yet, so orientation never jams.
  for (std::int64_t i = backbone - 1; i >= 0; --i) {
    if (!designated[static_cast<std::size_t>(i)]) continue;
    VertexId p = sg.src[static_cast<std::size_t>(i)];
    VertexId q = sg.dst[static_cast<std::size_t>(i)];
    if (!pb.orient(rng, p, q)) throw std::logic_error("generate: backbone orientation jammed");
    sg.src[static_cast<std::size_t>(i)] = p;
    sg.dst[static_cast<std::size_t>(i)] = q;
  }
  for (std::int64_t i = first_extra; i < spec.m; ++i) {
    if (!designated[static_cast<std::size_t>(i)]) continue;
    VertexId p = sg.src[static_cast<std::size_t>(i)];
    VertexId q = sg.dst[static_cast<std::size_t>(i)];
    bool done = false;
    for (int attempt = 0; attempt < 64 && !done; ++attempt) {
      done = pb.orient(rng, p, q);
      if (!done) std::tie(p, q) = distinct_pair(rng, n);
    }
    if (!done) {
      // Frozen-tie pile-up. Take the globally steepest pair instead; if psi
      // is flat, nothing is frozen yet and a plain bump goes through.
      const auto [mn, mx] = std::minmax_element(pb.psi.begin(), pb.psi.end());
      if (*mx > *mn) {
        p = static_cast<VertexId>(mx - pb.psi.begin());
        q = static_cast<VertexId>(mn - pb.psi.begin());
      }
      if (!pb.orient(rng, p, q)) throw std::logic_error("generate: extra orientation jammed");
    }
    sg.src[static_cast<std::size_t>(i)] = p;
    sg.dst[static_cast<std::size_t>(i)] = q;
  }

  draw_certified_weights(rng, sg, designated, pb.psi, spec.lo, spec.hi);
  if (plant_cycle) {
    sg.w[static_cast<std::size_t>(cycle_slot)] = spec.lo;
    sg.w[static_cast<std::size_t>(cycle_slot) + 1] = uniform_int(rng, 0, -spec.lo - 1);
  }
  return sg;
}

inline SlotGraph build_sandwich_tag(const InstanceSpec& spec, Rng& rng) {
  const auto n = static_cast<VertexId>(spec.n);
  if (spec.k < 2) fail_spec("sandwich-planted needs k >= 2");
  const std::int64_t t = spec.k / 2;
  const std::int64_t odd = spec.k % 2;
  if (spec.n < t + 2) fail_spec("sandwich-planted needs n >= k/2 + 2");
  if (spec.m < (spec.n - 1) + spec.k) fail_spec("m too small for tag");

  const std::vector<VertexId> perm = shuffled_vertices(rng, n);
  const VertexId x = perm[0];
  const VertexId y = perm[1];

  const std::int64_t big = std::max<std::int64_t>(1, spec.hi / 2);
  std::vector<std::int64_t> psi(static_cast<std::size_t>(n));
  for (auto& p : psi) p = uniform_int(rng, 0, 2 * big);
  psi[static_cast<std::size_t>(x)] = 2 * big;
  psi[static_cast<std::size_t>(y)] = 0;
  for (std::int64_t i = 0; i < t; ++i) {
    psi[static_cast<std::size_t>(perm[static_cast<std::size_t>(2 + i)])] =
        big + uniform_int(rng, 0, big - 1);
  }

  SlotGraph sg;
  sg.w.assign(static_cast<std::size_t>(spec.m), 0);
  sg.planted.assign(static_cast<std::size_t>(spec.m), 0);
  std::vector<char> designated(static_cast<std::size_t>(spec.m), 0);
  for (std::int64_t i = 0; i + 1 < spec.n; ++i) {
    sg.src.push_back(perm[static_cast<std::size_t>(i)]);
    sg.dst.push_back(perm[static_cast<std::size_t>(i + 1)]);
  }
  for (std::int64_t i = 0; i < t; ++i) {
    const VertexId u = perm[static_cast<std::size_t>(2 + i)];
    designated[sg.src.size()] = 1;
    sg.src.push_back(x);
    sg.dst.push_back(u);
    designated[sg.src.size()] = 1;
    sg.src.push_back(u);
    sg.dst.push_back(y);
  }
  if (odd) {
    designated[sg.src.size()] = 1;
    sg.src.push_back(x);
    sg.dst.push_back(y);
  }
  while (static_cast<std::int64_t>(sg.src.size()) < spec.m) {
    auto [a, b] = distinct_pair(rng, n);
    sg.src.push_back(a);
    sg.dst.push_back(b);
  }
  draw_certified_weights(rng, sg, designated, psi, spec.lo, spec.hi);
  return sg;
}

inline SlotGraph build_layered_tag(const InstanceSpec& spec, Rng& rng) {
  const auto n = static_cast<VertexId>(spec.n);
  if (spec.m < spec.n - 1) fail_spec("m too small for tag");
  const std::vector<VertexId> perm = shuffled_vertices(rng, n);
  SlotGraph sg;
  sg.w.assign(static_cast<std::size_t>(spec.m), 0);
  sg.planted.assign(static_cast<std::size_t>(spec.m), 0);
  for (std::int64_t i = 0; i + 1 < spec.n; ++i) {
    sg.src.push_back(perm[static_cast<std::size_t>(i)]);
    sg.dst.push_back(perm[static_cast<std::size_t>(i + 1)]);
  }
  // Short forward hops in rank order: layered-ish and acyclic by direction.
  const std::int64_t width = std::max<std::int64_t>(1, (spec.n + 7) / 8);
  while (static_cast<std::int64_t>(sg.src.size()) < spec.m) {
    const auto i =
        static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(spec.n - 1)));
    const std::int64_t span = std::min(width, spec.n - 1 - i);
    const std::int64_t j =
        i + 1 + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(span)));
    sg.src.push_back(perm[static_cast<std::size_t>(i)]);
    sg.dst.push_back(perm[static_cast<std::size_t>(j)]);
  }
  return sg;
}

inline SlotGraph build_grid_tag(const InstanceSpec& spec, Rng& rng) {
  if (spec.m < spec.n - 1) fail_spec("m too small for tag");
  std::int64_t cols = 1;
  while (cols * cols < spec.n) ++cols;
  const auto right = [&](std::int64_t v) -> std::int64_t {
    return (v % cols + 1 < cols && v + 1 < spec.n) ? v + 1 : -1;
  };
  const auto down = [&](std::int64_t v) -> std::int64_t {
    return v + cols < spec.n ? v + cols : -1;
  };

  SlotGraph sg;
  sg.w.assign(static_cast<std::size_t>(spec.m), 0);
  sg.planted.assign(static_cast<std::size_t>(spec.m), 0);
  // Spanning tree: each cell hangs off its left neighbour, or the one above
  // in column 0. Both are grid edges, so the whole skeleton stays grid-shaped.
  for (std::int64_t v = 1; v < spec.n; ++v) {
    const std::int64_t parent = (v % cols != 0) ? v - 1 : v - cols;
    sg.src.push_back(static_cast<VertexId>(parent));
    sg.dst.push_back(static_cast<VertexId>(v));
  }
  std::vector<std::pair<VertexId, VertexId>> spare;
  for (std::int64_t v = 0; v < spec.n; ++v) {
    if (v % cols != 0 && down(v) >= 0) {
      spare.emplace_back(static_cast<VertexId>(v), static_cast<VertexId>(down(v)));
    }
  }
  spare = sample_without_replacement(rng, std::move(spare), spare.size());
  for (const auto& [a, b] : spare) {
    if (static_cast<std::int64_t>(sg.src.size()) >= spec.m) break;
    sg.src.push_back(a);
    sg.dst.push_back(b);
  }
  while (static_cast<std::int64_t>(sg.src.size()) < spec.m) {
    std::int64_t v = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(spec.n)));
    if (right(v) < 0 && down(v) < 0) continue;  // dead corner, redraw
    std::int64_t to;
    if (right(v) >= 0 && down(v) >= 0) {
      to = uniform_below(rng, 2) == 0 ? right(v) : down(v);
    } else {
      to = right(v) >= 0 ? right(v) : down(v);
    }
    sg.src.push_back(static_cast<VertexId>(v));
    sg.dst.push_back(static_cast<VertexId>(to));
  }
  return sg;
}

// layered/grid: DAG by construction, so any slot may go negative.
inline void draw_dag_weights(const InstanceSpec& spec, Rng& rng, SlotGraph& sg) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(spec.m));
  std::iota(pool.begin(), pool.end(), std::int64_t{0});
  const auto picked =
      sample_without_replacement(rng, std::move(pool), static_cast<std::size_t>(spec.k));
  std::vector<char> designated(static_cast<std::size_t>(spec.m), 0);
  for (std::int64_t i : picked) designated[static_cast<std::size_t>(i)] = 1;
  for (std::size_t i = 0; i < sg.src.size(); ++i) {
    sg.w[i] = designated[i] ? uniform_int(rng, spec.lo, -1) : uniform_int(rng, 0, spec.hi);
  }
}

inline SlotGraph build_instance(const InstanceSpec& spec, Rng& rng) {
  if (spec.n < 1 || spec.n > 1000000000) fail_spec("n out of range");
  if (spec.m < 0) fail_spec("m negative");
  if (spec.k < 0 || spec.k > spec.m) fail_spec("need 0 <= k <= m");
  if (spec.lo > spec.hi || spec.hi < 0) fail_spec("bad weight range");
  if (spec.k > 0 && spec.lo > -1) fail_spec("k > 0 needs lo <= -1");
  if (spec.n == 1 && spec.m > 0) fail_spec("single vertex admits no edges");

  SlotGraph sg;
  if (spec.tag == "uniform") {
    sg = build_potential_tag(spec, rng, false);
  } else if (spec.tag == "cycle-planted") {
    sg = build_potential_tag(spec, rng, true);
  } else if (spec.tag == "sandwich-planted") {
    sg = build_sandwich_tag(spec, rng);
  } else if (spec.tag == "layered") {
    sg = build_layered_tag(spec, rng);
    draw_dag_weights(spec, rng, sg);
  } else if (spec.tag == "grid") {
    sg = build_grid_tag(spec, rng);
    draw_dag_weights(spec, rng, sg);
  } else {
    fail_spec("unknown tag '" + spec.tag + "'");
  }
  return sg;
}

inline Graph<std::int64_t> slots_to_graph(const InstanceSpec& spec, const SlotGraph& sg) {
  std::vector<std::tuple<VertexId, VertexId, std::int64_t>> edges;
  edges.reserve(sg.src.size());
  for (std::size_t i = 0; i < sg.src.size(); ++i) {
    edges.emplace_back(sg.src[i], sg.dst[i], sg.w[i]);
  }
  return Graph<std::int64_t>::from_edges(static_cast<VertexId>(spec.n), edges);
}

inline SlotGraph build_verified(const InstanceSpec& spec, Rng& rng) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    SlotGraph sg = build_instance(spec, rng);
    std::int64_t negs = 0;
    for (std::int64_t w : sg.w) negs += w < 0;
    if (negs != spec.k) continue;
    if (spec.n <= 400) {
      const auto g = slots_to_graph(spec, sg);
      std::vector<VertexId> all(static_cast<std::size_t>(g.vertex_count()));
      std::iota(all.begin(), all.end(), VertexId{0});
      const bool has_cycle = oracle_bellman_ford(g, all).negative_cycle;
      if (has_cycle != (spec.tag == "cycle-planted")) continue;
    }
    return sg;
  }
  throw std::logic_error("generate: verification kept failing; construction bug");
}

}  // namespace detail

inline Graph<std::int64_t> generate(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  return detail::slots_to_graph(spec, detail::build_verified(spec, rng));
}

// Same construction, then a fractional nudge upward on every non-planted
// edge. Signs and the potential certificate survive: negatives stay below
// -1 + frac < 0 and lower bounds only gain slack.
inline Graph<double> generate_real(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  const detail::SlotGraph sg = detail::build_verified(spec, rng);
  std::vector<std::tuple<VertexId, VertexId, double>> edges;
  edges.reserve(sg.src.size());
  for (std::size_t i = 0; i < sg.src.size(); ++i) {
    double w = static_cast<double>(sg.w[i]);
    if (!sg.planted[i]) w += static_cast<double>(rng() >> 11) * 0x1p-53;
    edges.emplace_back(sg.src[i], sg.dst[i], w);
  }
  return Graph<double>::from_edges(static_cast<VertexId>(spec.n), edges);
}

}  // namespace nwsp
