#pragma once

// Structure-finding among negative vertices. A crust is a vertex y that many
// negative vertices reach by a negative 1-hop path; running the crust search
// both ways yields a negative sandwich (x, U, y): negative 1-hop paths from x
// into every u of U and from every u out to y. Failing that, the machinery
// yields a 1-hop independent set. Both shapes admit cheap elimination.
//
// All searches are Las Vegas: results are checked and bad luck triggers a
// re-randomized retry, with a hard restart budget so the caller can fall back
// to the plain h = k computation instead of looping forever.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nwsp/bfd.hpp"
#include "nwsp/graph.hpp"
#include "nwsp/rng.hpp"

namespace nwsp {

// Raised when a crust search exhausts its restart budget; callers are
// expected to switch to the fallback solver.
class FallbackRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HLPartition {
  std::vector<VertexId> heavy;
  std::vector<VertexId> light;
};

struct NegativeSandwich {
  VertexId x = -1;
  VertexId y = -1;
  std::vector<VertexId> u;
};

struct IndependentSet {
  std::vector<VertexId> members;
};

// Occurrence counting: c*ceil(ln n) rounds, each sampling U0 at rate
// rho/khat and marking the negative 1-hop reach of the sample. Vertices of
// U0 counted in at least half the rounds are heavy. W.h.p. every vertex
// negatively 1-hop-reached from >= 2*khat/rho members of U0 lands in heavy,
// and every one reached from <= khat/(8*rho) lands in light.
template <typename W>
HLPartition hl_partition(const Graph<W>& g, const std::vector<VertexId>& u0, std::int64_t rho,
                         int c, Rng& rng) {
  const std::int64_t khat = static_cast<std::int64_t>(u0.size());
  if (rho < 1 || rho > khat) throw std::invalid_argument("hl_partition: rho out of range");
  if (c < 6) throw std::invalid_argument("hl_partition: c must be >= 6");
  const int rounds = c * ceil_ln(g.vertex_count());
  std::vector<std::int32_t> count(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<VertexId> sample;
  for (int round = 0; round < rounds; ++round) {
    sample.clear();
    for (VertexId u : u0) {
      if (bernoulli_ratio(rng, static_cast<std::uint64_t>(rho), static_cast<std::uint64_t>(khat))) {
        sample.push_back(u);
      }
    }
    if (sample.empty()) continue;
    for (VertexId v : reach(g, sample, 1)) ++count[static_cast<std::size_t>(v)];
  }
  HLPartition part;
  for (VertexId u : u0) {
    if (2 * count[static_cast<std::size_t>(u)] >= rounds) {
      part.heavy.push_back(u);
    } else {
      part.light.push_back(u);
    }
  }
  return part;
}

struct RandIsOutcome {
  bool negative_cycle = false;
  IndependentSet indep;
};

// Sample ceil(rho/4) of U0, then drop anything negatively 1-hop reachable
// from the sample. A member reached from itself exposes a negative cycle.
// The survivors are 1-hop independent by construction.
template <typename W>
RandIsOutcome rand_is(const Graph<W>& g, const std::vector<VertexId>& u0, std::int64_t rho,
                      Rng& rng) {
  const std::int64_t khat = static_cast<std::int64_t>(u0.size());
  if (rho < 1 || rho > khat) throw std::invalid_argument("rand_is: rho out of range");
  std::vector<VertexId> picked =
      sample_without_replacement(rng, u0, static_cast<std::size_t>((rho + 3) / 4));
  std::sort(picked.begin(), picked.end());
  BfdOptions opts;
  opts.track_witness = true;
  const auto table = bfd(g, picked, 1, opts);
  const auto& d = table.final_round();
  for (VertexId u : picked) {
    if (d[static_cast<std::size_t>(u)] < W{0} && table.witness[static_cast<std::size_t>(u)] == u) {
      return {true, {}};
    }
  }
  RandIsOutcome out;
  for (VertexId u : picked) {
    if (!(d[static_cast<std::size_t>(u)] < W{0})) out.indep.members.push_back(u);
  }
  return out;
}

struct CrustOutcome {
  enum class Kind { Cycle, Crust, Independent };
  Kind kind = Kind::Cycle;
  VertexId y = -1;               // crust target
  std::vector<VertexId> u;       // crust members: dist^1(u, y) < 0
  IndependentSet indep;
};

// Find either a crust (y, U) with |U| >= khat/(8*rho), or an independent set
// with |I| >= rho/16, or report a cycle. Misclassifications and unlucky
// samples restart the whole search; the budget bounds total work.
template <typename W>
CrustOutcome find_crust(const Graph<W>& g, const std::vector<VertexId>& u0, std::int64_t rho,
                        Rng& rng, int c = 9, int c_prime = 8) {
  const std::int64_t khat = static_cast<std::int64_t>(u0.size());
  if (rho < 1 || rho > khat) throw std::invalid_argument("find_crust: rho out of range");
  const int budget = 10 * std::max(1, ceil_lg(g.vertex_count()));
  const int attempts_per_try = c_prime * std::max(1, ceil_lg(g.vertex_count()));
  for (int restart = 0; restart <= budget; ++restart) {
    const HLPartition part = hl_partition(g, u0, rho, c, rng);
    if (!part.heavy.empty()) {
      const VertexId y = part.heavy.front();  // lowest id: u0 order is ascending
      const auto to_y = bfd_stsp(g, {y}, 1).final_round();
      CrustOutcome out;
      out.kind = CrustOutcome::Kind::Crust;
      out.y = y;
      for (VertexId u : u0) {
        if (to_y[static_cast<std::size_t>(u)] < W{0}) out.u.push_back(u);
      }
      if (8 * static_cast<std::int64_t>(out.u.size()) * rho >= khat) return out;
      continue;  // y was misclassified as heavy; re-randomize
    }
    for (int attempt = 0; attempt < attempts_per_try; ++attempt) {
      const RandIsOutcome is = rand_is(g, u0, rho, rng);
      if (is.negative_cycle) return {};
      if (16 * static_cast<std::int64_t>(is.indep.members.size()) >= rho) {
        CrustOutcome out;
        out.kind = CrustOutcome::Kind::Independent;
        out.indep = is.indep;
        return out;
      }
    }
  }
  throw FallbackRequested("find_crust: restart budget exhausted");
}

struct SandwichOutcome {
  enum class Kind { Cycle, Sandwich, Independent };
  Kind kind = Kind::Cycle;
  NegativeSandwich sandwich;
  IndependentSet indep;
  std::int64_t rho = 0;  // ceil(k^(1/3)) used for the search
};

namespace detail {

inline std::int64_t cbrt_ceil(std::int64_t k) {
  std::int64_t t = 1;
  while (t * t * t < k) ++t;
  return t;
}

}  // namespace detail

// Crust both ways: first a y many negative vertices flow into, then, on the
// transposed graph restricted to those, an x that flows into all survivors.
template <typename W>
SandwichOutcome find_sandwich_or_is(const Graph<W>& g, Rng& rng, int c = 9, int c_prime = 8) {
  const std::int64_t k = count_negative(g);
  if (k < 1) throw std::invalid_argument("find_sandwich_or_is: no negative edges");
  const std::vector<VertexId> u0 = negative_vertices(g);
  SandwichOutcome out;
  out.rho = detail::cbrt_ceil(k);
  // rho never exceeds the candidate pool it samples from.
  const std::int64_t rho1 = std::min<std::int64_t>(out.rho, static_cast<std::int64_t>(u0.size()));
  CrustOutcome first = find_crust(g, u0, rho1, rng, c, c_prime);
  if (first.kind == CrustOutcome::Kind::Cycle) return out;
  if (first.kind == CrustOutcome::Kind::Independent) {
    out.kind = SandwichOutcome::Kind::Independent;
    out.indep = std::move(first.indep);
    return out;
  }
  const Graph<W> gt = transpose(g);
  const std::int64_t rho2 =
      std::min<std::int64_t>(out.rho, static_cast<std::int64_t>(first.u.size()));
  CrustOutcome second = find_crust(gt, first.u, rho2, rng, c, c_prime);
  if (second.kind == CrustOutcome::Kind::Cycle) return out;
  if (second.kind == CrustOutcome::Kind::Independent) {
    out.kind = SandwichOutcome::Kind::Independent;
    out.indep = std::move(second.indep);
    return out;
  }
  out.kind = SandwichOutcome::Kind::Sandwich;
  out.sandwich.x = second.y;
  out.sandwich.y = first.y;
  out.sandwich.u = std::move(second.u);
  return out;
}

// phi(v) = min(0, max(dist^beta(x,v), -dist^beta(v,y))). Zero on all of U,
// and any vertex still negatively (beta-1)-hop reachable from U afterwards
// was beta-between x and y beforehand — that is the whole point: after a
// betweenness reduction, few vertices are.
template <typename W>
PriceFunction<W> sandwich_price(const Graph<W>& g, const NegativeSandwich& s, int beta) {
  if (beta <= 1) throw std::invalid_argument("sandwich_price: beta must be > 1");
  if (!has_valid_weighting(g)) throw std::invalid_argument("sandwich_price: invalid weighting");
  const VertexId n = g.vertex_count();
  {
    const auto from_x = bfd(g, {s.x}, 1).final_round();
    const auto to_y = bfd_stsp(g, {s.y}, 1).final_round();
    for (VertexId u : s.u) {
      if (!(from_x[static_cast<std::size_t>(u)] < W{0}) ||
          !(to_y[static_cast<std::size_t>(u)] < W{0})) {
        throw std::invalid_argument("sandwich_price: (x, U, y) is not a negative sandwich");
      }
    }
  }
  const auto dx = bfd(g, {s.x}, beta).final_round();
  const auto dy = bfd_stsp(g, {s.y}, beta).final_round();
  PriceFunction<W> phi = PriceFunction<W>::zero(n);
  for (VertexId v = 0; v < n; ++v) {
    const W a = dx[static_cast<std::size_t>(v)];
    const W b = dy[static_cast<std::size_t>(v)];
    if (is_infinite(a)) {
      phi[v] = W{0};  // max(+inf, anything) is +inf
    } else if (is_infinite(b)) {
      phi[v] = std::min(W{0}, a);  // -dist(v,y) is -inf and drops out
    } else {
      phi[v] = std::min(W{0}, std::max(a, static_cast<W>(-b)));
    }
  }
  for (VertexId u : s.u) {
    if (phi[u] != W{0}) throw std::logic_error("sandwich_price: nonzero price on the sandwich");
  }
  if (!is_valid_price(g, phi)) {
    throw std::logic_error("sandwich_price: produced an invalid price function");
  }
  return phi;
}

}  // namespace nwsp
