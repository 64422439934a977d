#pragma once

// The full solver. Each batch reweights in three moves — betweenness
// reduction, then either an independent set or a sandwich-plus-hop-reduction
// — and is guaranteed to strictly shrink the number of negative-weight
// edges. The driver repeats batches on the sign-reclassified graph, switches
// to a plain fixpoint computation when few negative edges remain (or when a
// batch runs out of restart luck), and finishes with Dijkstra on the fully
// nonnegative reweighted graph.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nwsp/betweenness.hpp"
#include "nwsp/bfd.hpp"
#include "nwsp/graph.hpp"
#include "nwsp/hop_reduction.hpp"
#include "nwsp/normalize.hpp"
#include "nwsp/rng.hpp"
#include "nwsp/sandwich.hpp"

namespace nwsp {

// Plain Dijkstra; requires every current weight to be nonnegative.
template <typename W>
std::vector<W> dijkstra(const Graph<W>& g, VertexId source) {
  const VertexId n = g.vertex_count();
  if (source < 0 || source >= n) throw std::out_of_range("dijkstra: source out of range");
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge_weight(e) < W{0}) {
      throw std::invalid_argument("dijkstra: negative weight encountered");
    }
  }
  std::vector<W> dist(static_cast<std::size_t>(n), infinite_weight<W>());
  dist[static_cast<std::size_t>(source)] = W{0};
  std::priority_queue<std::pair<W, VertexId>, std::vector<std::pair<W, VertexId>>, std::greater<>>
      heap;
  heap.emplace(W{0}, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    for (EdgeId e : g.out_edges(v)) {
      const VertexId u = g.edge_dst(e);
      const W nd = d + g.edge_weight(e);
      if (nd < dist[static_cast<std::size_t>(u)]) {
        dist[static_cast<std::size_t>(u)] = nd;
        heap.emplace(nd, u);
      }
    }
  }
  return dist;
}

// Eliminate all Negative-class out-edges of a 1-hop independent set I:
// phi = 1-hop super-source distances in the subgraph keeping only those
// negative edges. Independence makes phi vanish on I, which in turn makes
// every targeted edge nonnegative.
template <typename W>
PriceFunction<W> eliminate_independent(const Graph<W>& g, const IndependentSet& iset) {
  if (!has_valid_weighting(g)) {
    throw std::invalid_argument("eliminate_independent: invalid weighting");
  }
#ifndef NDEBUG
  if (!iset.members.empty()) {
    BfdOptions wopts;
    wopts.track_witness = true;
    const auto table = bfd(g, iset.members, 1, wopts);
    for (VertexId u : iset.members) {
      if (table.final_round()[static_cast<std::size_t>(u)] < W{0} &&
          table.witness[static_cast<std::size_t>(u)] != u) {
        throw std::invalid_argument("eliminate_independent: set is not 1-hop independent");
      }
    }
  }
#endif
  const VertexId n = g.vertex_count();
  const Graph<W> sub = negative_subgraph(g, negative_out_edges(g, iset.members));
  std::vector<VertexId> all(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) all[static_cast<std::size_t>(v)] = v;
  PriceFunction<W> phi{bfd(sub, all, 1).final_round()};
  if (!is_valid_price(g, phi)) {
    throw std::logic_error("eliminate_independent: produced an invalid price function");
  }
  if (count_negative(reweight(sub, phi)) != 0) {
    throw std::logic_error("eliminate_independent: some targeted edges stayed negative");
  }
  return phi;
}

struct BatchStats {
  std::int64_t r = 0;
  std::string branch;  // "betweenness" | "independent-set" | "sandwich"
  std::int64_t eliminated = 0;
  std::int64_t restarts = 0;
  double wall_ms = 0.0;
};

template <typename W>
struct EliminationOutcome {
  bool negative_cycle = false;
  PriceFunction<W> phi;
  std::int64_t eliminated = 0;
  BatchStats stats;
};

struct SolveOptions {
  // Below k0 negative edges the batch machinery costs more than it saves and
  // the driver hands over to the fixpoint finish. Tests that want to force
  // batches on small graphs pass a smaller cutoff.
  std::int64_t k0 = 256;
  int betweenness_c = 9;
  int crust_c = 9;
  int crust_c_prime = 8;
};

namespace detail {

inline std::int64_t ninth_root_ceil(std::int64_t k) {
  std::int64_t t = 1;
  auto pow9 = [](std::int64_t x) {
    std::int64_t p = 1;
    for (int i = 0; i < 9; ++i) p *= x;
    return p;
  };
  while (pow9(t) < k) ++t;
  return t;
}

}  // namespace detail

// One batch: betweenness-reduce, then eliminate an independent set or a
// trimmed sandwich via hop reduction. Restarts on a failed remoteness gate;
// throws FallbackRequested once the restart budget is gone.
template <typename W>
EliminationOutcome<W> eliminate_batch(const Graph<W>& g, Rng& rng, const SolveOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t k = count_negative(g);
  if (k < 1) throw std::invalid_argument("eliminate_batch: no negative edges");
  const VertexId n = g.vertex_count();
  const std::int64_t r = std::max<std::int64_t>(1, detail::ninth_root_ceil(k));
  const int beta = static_cast<int>(r) + 1;
  const int tau = static_cast<int>(std::min<std::int64_t>(r, n));

  const auto finish = [&](PriceFunction<W> phi, const char* branch,
                          std::int64_t restarts) -> EliminationOutcome<W> {
    if (!is_valid_price(g, phi)) {
      throw std::logic_error("eliminate_batch: composite price function is invalid");
    }
    const std::int64_t after = count_negative(reweight(g, phi));
    EliminationOutcome<W> out;
    out.phi = std::move(phi);
    out.eliminated = k - after;
    if (out.eliminated < 1) throw std::logic_error("eliminate_batch: no progress");
    out.stats.r = r;
    out.stats.branch = branch;
    out.stats.eliminated = out.eliminated;
    out.stats.restarts = restarts;
    out.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };

  const int budget = 10 * std::max(1, ceil_lg(n));
  for (int restart = 0; restart <= budget; ++restart) {
    PriceOutcome<W> b = betweenness_reduce(g, {beta, tau, opt.betweenness_c}, rng);
    if (b.negative_cycle) return {true, {}, 0, {}};
    const Graph<W> g1 = reweight(g, b.phi);
    if (count_negative(g1) == 0) return finish(std::move(b.phi), "betweenness", restart);

    SandwichOutcome so = find_sandwich_or_is(g1, rng, opt.crust_c, opt.crust_c_prime);
    if (so.kind == SandwichOutcome::Kind::Cycle) return {true, {}, 0, {}};
    if (so.kind == SandwichOutcome::Kind::Independent) {
      PriceFunction<W> phi_i = eliminate_independent(g1, so.indep);
      return finish(std::move(b.phi) + phi_i, "independent-set", restart);
    }

    NegativeSandwich s = std::move(so.sandwich);
    std::sort(s.u.begin(), s.u.end());
    if (static_cast<std::int64_t>(s.u.size()) > so.rho) {
      s.u.resize(static_cast<std::size_t>(so.rho));  // keep the lowest ids
    }
    PriceFunction<W> phi_2 = sandwich_price(g1, s, beta);
    const Graph<W> g12 = reweight(g1, phi_2);
    if (!check_remote(g12, s.u, static_cast<int>(r)).first) continue;
    PriceOutcome<W> h = eliminate_remote(g12, negative_out_edges(g12, s.u), static_cast<int>(r));
    if (h.negative_cycle) return {true, {}, 0, {}};
    return finish(std::move(b.phi) + phi_2 + h.phi, "sandwich", restart);
  }
  throw FallbackRequested("eliminate_batch: remoteness restarts exhausted");
}

struct SolveStats {
  std::vector<BatchStats> batches;
  bool fallback = false;
  double wall_ms = 0.0;
};

template <typename W>
struct SsspResult {
  bool negative_cycle = false;
  std::vector<W> dist;  // per original vertex; +inf when unreachable
  SolveStats stats;
};

// Single-source shortest paths, or a negative-cycle verdict if the graph has
// one anywhere. Normalizes internally, reclassifies by sign before every
// batch, and recovers original-vertex distances at the end.
template <typename W>
SsspResult<W> solve_sssp(const Graph<W>& g, VertexId source, Rng& rng,
                         const SolveOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (source < 0 || source >= g.vertex_count()) {
    throw std::out_of_range("solve_sssp: source out of range");
  }
  SsspResult<W> result;
  const auto stamp = [&]() {
    result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  if (count_negative(g) == 0) {
    result.dist = dijkstra(g, source);
    stamp();
    return result;
  }

  const Normalized<W> norm = normalize(g);
  const Graph<W>& gn = norm.graph;
  const VertexId nn = gn.vertex_count();
  PriceFunction<W> total = PriceFunction<W>::zero(nn);

  while (true) {
    const Graph<W> cur = reclassify_by_sign(reweight(gn, total));
    const std::int64_t k = count_negative(cur);
    if (k <= opt.k0) break;
    EliminationOutcome<W> out;
    try {
      out = eliminate_batch(cur, rng, opt);
    } catch (const FallbackRequested&) {
      result.stats.fallback = true;
      break;
    }
    if (out.negative_cycle) {
      result.negative_cycle = true;
      stamp();
      return result;
    }
    total += out.phi;
    if (!is_valid_price(gn, total)) {
      throw std::logic_error("solve_sssp: accumulated price function went invalid");
    }
    if (count_negative(reweight(gn, total)) >= k) {
      throw std::logic_error("solve_sssp: batch did not shrink the negative count");
    }
    result.stats.batches.push_back(std::move(out.stats));
  }

  // Finish: one fixpoint pass from everywhere clears the surviving negative
  // edges (or finds a cycle), then Dijkstra from the mapped source.
  {
    const Graph<W> cur = reclassify_by_sign(reweight(gn, total));
    const std::int64_t k = count_negative(cur);
    if (k > 0) {
      std::vector<VertexId> all(static_cast<std::size_t>(nn));
      for (VertexId v = 0; v < nn; ++v) all[static_cast<std::size_t>(v)] = v;
      const SsspOutcome<W> jr = fixpoint_sssp(cur, all, k);
      if (jr.negative_cycle) {
        result.negative_cycle = true;
        stamp();
        return result;
      }
      total += PriceFunction<W>{jr.dist};
    }
  }

  const Graph<W> flat = reweight(gn, total);
  const VertexId sn = norm.map.forward[static_cast<std::size_t>(source)];
  const std::vector<W> dn = dijkstra(flat, sn);
  result.dist.assign(static_cast<std::size_t>(g.vertex_count()), infinite_weight<W>());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexId vn = norm.map.forward[static_cast<std::size_t>(v)];
    const W d = dn[static_cast<std::size_t>(vn)];
    if (!is_infinite(d)) result.dist[static_cast<std::size_t>(v)] = d - total[sn] + total[vn];
  }
  stamp();
  return result;
}

}  // namespace nwsp
