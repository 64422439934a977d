#pragma once

// Betweenness reduction: sample a vertex set T of size ~ c*tau*ln(n) and
// reweight so that every beta-hop distance to or from T becomes nonnegative.
// After that, for any pair (u,v) the number of vertices x with
// dist^beta(u,x) + dist^beta(x,v) < 0 drops to <= n/tau w.h.p., because a
// sampled vertex lands among the n/tau most-negative midpoints of every pair.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nwsp/bfd.hpp"
#include "nwsp/graph.hpp"
#include "nwsp/rng.hpp"

namespace nwsp {

struct BetweennessParams {
  int beta = 1;  // >= 1
  int tau = 1;   // in [1, n]
  int c = 9;     // >= 3; drives both |T| and the failure probability
};

// Reweight so all beta-hop distances to/from the sampled T are nonnegative.
// Either returns a valid price function or soundly reports a negative cycle.
template <typename W>
PriceOutcome<W> betweenness_reduce(const Graph<W>& g, const BetweennessParams& p, Rng& rng) {
  const VertexId n = g.vertex_count();
  if (p.beta < 1) throw std::invalid_argument("betweenness_reduce: beta must be >= 1");
  if (p.tau < 1 || p.tau > n) throw std::invalid_argument("betweenness_reduce: tau out of range");
  if (p.c < 3) throw std::invalid_argument("betweenness_reduce: c must be >= 3");
  if (!has_valid_weighting(g)) throw std::invalid_argument("betweenness_reduce: invalid weighting");

  const std::int64_t want =
      std::min<std::int64_t>(n, static_cast<std::int64_t>(p.c) * p.tau * ceil_ln(n));
  std::vector<VertexId> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<VertexId> t =
      sample_without_replacement(rng, std::move(pool), static_cast<std::size_t>(want));
  std::sort(t.begin(), t.end());

  // The auxiliary graph has edge sets T x V and V x T, weighted by beta-hop
  // distances; rows with +inf entries are absent edges. Stored as one flat
  // distance row per T vertex and direction.
  std::vector<std::vector<W>> from_t, to_t;
  from_t.reserve(t.size());
  to_t.reserve(t.size());
  for (VertexId x : t) {
    from_t.push_back(bfd(g, {x}, p.beta).final_round());
    to_t.push_back(bfd_stsp(g, {x}, p.beta).final_round());
  }

  // Super-source round-indexed Bellman-Ford in the auxiliary graph. All
  // simple paths there alternate through T, so they have at most ell = 2|T|
  // edges: a fixpoint must appear by round ell unless a negative cycle keeps
  // the values falling.
  const std::int64_t ell = 2 * static_cast<std::int64_t>(t.size());
  std::vector<W> prev(static_cast<std::size_t>(n), W{0});
  std::vector<W> cur;
  for (std::int64_t round = 1; round <= ell + 1; ++round) {
    cur = prev;
    bool changed = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const W px = prev[static_cast<std::size_t>(t[i])];
      const auto& row = from_t[i];
      for (VertexId v = 0; v < n; ++v) {
        const W r = row[static_cast<std::size_t>(v)];
        if (is_infinite(r)) continue;
        const W cand = px + r;
        if (cand < cur[static_cast<std::size_t>(v)]) {
          cur[static_cast<std::size_t>(v)] = cand;
          changed = true;
        }
      }
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& row = to_t[i];
      W best = infinite_weight<W>();
      for (VertexId v = 0; v < n; ++v) {
        const W r = row[static_cast<std::size_t>(v)];
        if (is_infinite(r)) continue;
        const W cand = prev[static_cast<std::size_t>(v)] + r;
        if (cand < best) best = cand;
      }
      if (!is_infinite(best) && best < cur[static_cast<std::size_t>(t[i])]) {
        cur[static_cast<std::size_t>(t[i])] = best;
        changed = true;
      }
    }
    if (!changed) break;
    prev.swap(cur);
    if (round == ell + 1) return {true, {}};
  }

  PriceFunction<W> phi{std::move(prev)};
  if (!is_valid_price(g, phi)) {
    throw std::logic_error("betweenness_reduce: produced an invalid price function");
  }
  return {false, std::move(phi)};
}

template <typename W>
struct BetweennessReport {
  VertexId u = -1;
  VertexId v = -1;
  std::int64_t worst = 0;  // max over pairs of |{x : dist(u,x)+dist(x,v) < 0}|
};

// Brute-force beta-betweenness of every pair; returns the maximum. Quadratic
// tables, so guarded to small n.
template <typename W>
BetweennessReport<W> verify_betweenness(const Graph<W>& g, int beta, int tau) {
  const VertexId n = g.vertex_count();
  if (n > 400) throw std::invalid_argument("verify_betweenness: guarded to n <= 400");
  if (beta < 1) throw std::invalid_argument("verify_betweenness: beta must be >= 1");
  (void)tau;  // the n/tau target is the caller's to compare against

  std::vector<std::vector<W>> from(static_cast<std::size_t>(n));
  for (VertexId x = 0; x < n; ++x) {
    from[static_cast<std::size_t>(x)] = bfd(g, {x}, beta).final_round();
  }
  BetweennessReport<W> rep;
  for (VertexId u = 0; u < n; ++u) {
    const auto& du = from[static_cast<std::size_t>(u)];
    for (VertexId v = 0; v < n; ++v) {
      std::int64_t count = 0;
      for (VertexId x = 0; x < n; ++x) {
        const W a = du[static_cast<std::size_t>(x)];
        const W b = from[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)];
        if (!is_infinite(a) && !is_infinite(b) && a + b < W{0}) ++count;
      }
      if (count > rep.worst) {
        rep.worst = count;
        rep.u = u;
        rep.v = v;
      }
    }
  }
  return rep;
}

}  // namespace nwsp
