#pragma once

// Hop-limited shortest paths. A j-hop path may use at most j Negative-class
// edges; NonNegative-class edges are free. Round j is computed from round
// j-1 by one relaxation sweep over the Negative-class edges followed by a
// Dijkstra closure over the NonNegative-class edges, so row j is exactly the
// j-hop distance (paths need not be simple, and rows are finite whenever the
// target is reachable, negative cycles or not). The closure is seeded only
// with vertices the sweep improved, which keeps late rounds cheap.
//
// Precondition everywhere: the current weighting is valid (NonNegative-class
// edges are >= 0). Negative-class edges participate in sweeps regardless of
// their current sign.

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "nwsp/graph.hpp"

namespace nwsp {

enum class Direction : std::uint8_t { Forward, Reverse };

template <typename W>
struct HopDistanceTable {
  int hops = 0;                        // h
  int first_stored = 0;                // rounds.front() is this round index
  std::vector<std::vector<W>> rounds;  // rounds first_stored..hops
  std::vector<VertexId> witness;       // source achieving the final round, if tracked
  std::vector<VertexId> sources;

  bool has_round(int j) const { return j >= first_stored && j <= hops; }
  const std::vector<W>& round(int j) const {
    if (!has_round(j)) throw std::out_of_range("hop round not stored");
    return rounds[static_cast<std::size_t>(j - first_stored)];
  }
  const std::vector<W>& final_round() const { return rounds.back(); }
};

struct BfdOptions {
  bool all_rounds = false;     // keep every round; default keeps the last two
  bool track_witness = false;  // per-vertex achieving source, lowest id wins
  Direction dir = Direction::Forward;
};

namespace detail {

template <typename W>
class BfdEngine {
 public:
  BfdEngine(const Graph<W>& g, const std::vector<VertexId>& sources, bool witness, Direction dir)
      : g_(g), witness_(witness), dir_(dir) {
    const VertexId n = g.vertex_count();
    if (sources.empty()) throw std::invalid_argument("bfd: source set must be nonempty");
    if (!has_valid_weighting(g)) throw std::invalid_argument("bfd: invalid weighting");
    dist_.assign(static_cast<std::size_t>(n), infinite_weight<W>());
    if (witness_) orig_.assign(static_cast<std::size_t>(n), -1);
    for (VertexId s : sources) {
      if (s < 0 || s >= n) throw std::out_of_range("bfd: source out of range");
      dist_[static_cast<std::size_t>(s)] = W{0};
      if (witness_ && (orig_[static_cast<std::size_t>(s)] < 0 || s < orig_[static_cast<std::size_t>(s)])) {
        orig_[static_cast<std::size_t>(s)] = s;
      }
      push(W{0}, witness_ ? orig_[static_cast<std::size_t>(s)] : 0, s);
    }
    closure();
  }

  // One hop round: sweep Negative-class edges from the previous row, then
  // close over NonNegative-class edges. Returns false when nothing improved,
  // i.e. the previous row was already a fixpoint.
  bool round() {
    prev_ = dist_;
    if (witness_) prev_orig_ = orig_;
    bool changed = false;
    for (EdgeId e : g_.negative_class_edges()) {
      const VertexId t = tail(e);
      const W dt = prev_[static_cast<std::size_t>(t)];
      if (is_infinite(dt)) continue;
      const VertexId h = head(e);
      const W nd = dt + g_.edge_weight(e);
      const VertexId no = witness_ ? prev_orig_[static_cast<std::size_t>(t)] : 0;
      if (nd < dist_[static_cast<std::size_t>(h)]) {
        dist_[static_cast<std::size_t>(h)] = nd;
        if (witness_) orig_[static_cast<std::size_t>(h)] = no;
        push(nd, no, h);
        changed = true;
      } else if (witness_ && nd == dist_[static_cast<std::size_t>(h)] &&
                 no < orig_[static_cast<std::size_t>(h)]) {
        orig_[static_cast<std::size_t>(h)] = no;
        push(nd, no, h);
      }
    }
    closure();
    return changed;
  }

  const std::vector<W>& dist() const { return dist_; }
  const std::vector<W>& prev() const { return prev_; }
  const std::vector<VertexId>& origins() const { return orig_; }

 private:
  VertexId tail(EdgeId e) const {
    return dir_ == Direction::Forward ? g_.edge_src(e) : g_.edge_dst(e);
  }
  VertexId head(EdgeId e) const {
    return dir_ == Direction::Forward ? g_.edge_dst(e) : g_.edge_src(e);
  }
  std::span<const EdgeId> fan_out(VertexId v) const {
    return dir_ == Direction::Forward ? g_.out_edges(v) : g_.in_edges(v);
  }

  void push(W d, VertexId o, VertexId v) { heap_.emplace(d, o, v); }

  // Dijkstra with lazy deletion. Initial labels may be negative; correctness
  // only needs the relaxed (NonNegative-class) edges to be >= 0.
  void closure() {
    while (!heap_.empty()) {
      auto [d, o, v] = heap_.top();
      heap_.pop();
      if (d > dist_[static_cast<std::size_t>(v)]) continue;
      if (witness_ && d == dist_[static_cast<std::size_t>(v)] && o > orig_[static_cast<std::size_t>(v)]) {
        continue;
      }
      for (EdgeId e : fan_out(v)) {
        if (g_.edge_class(e) != EdgeClass::NonNegative) continue;
        const VertexId h = head(e);
        const W nd = d + g_.edge_weight(e);
        if (nd < dist_[static_cast<std::size_t>(h)]) {
          dist_[static_cast<std::size_t>(h)] = nd;
          if (witness_) orig_[static_cast<std::size_t>(h)] = o;
          push(nd, o, h);
        } else if (witness_ && nd == dist_[static_cast<std::size_t>(h)] &&
                   o < orig_[static_cast<std::size_t>(h)]) {
          orig_[static_cast<std::size_t>(h)] = o;
          push(nd, o, h);
        }
      }
    }
  }

  const Graph<W>& g_;
  bool witness_;
  Direction dir_;
  std::vector<W> dist_, prev_;
  std::vector<VertexId> orig_, prev_orig_;
  std::priority_queue<std::tuple<W, VertexId, VertexId>,
                      std::vector<std::tuple<W, VertexId, VertexId>>,
                      std::greater<>>
      heap_;
};

}  // namespace detail

template <typename W>
HopDistanceTable<W> bfd(const Graph<W>& g, const std::vector<VertexId>& sources, int h,
                        BfdOptions opts = {}) {
  if (h < 0) throw std::invalid_argument("bfd: h must be nonnegative");
  detail::BfdEngine<W> eng(g, sources, opts.track_witness, opts.dir);
  HopDistanceTable<W> table;
  table.hops = h;
  table.sources = sources;
  table.rounds.push_back(eng.dist());
  bool fixed = false;
  for (int j = 1; j <= h; ++j) {
    // A distance fixpoint can still shuffle witness origins, so only skip
    // rounds when nobody is watching them.
    if (!fixed && !eng.round() && !opts.track_witness) fixed = true;
    if (opts.all_rounds) {
      table.rounds.push_back(eng.dist());
    } else {
      if (table.rounds.size() == 2) table.rounds.erase(table.rounds.begin());
      table.rounds.push_back(eng.dist());
      table.first_stored = j - 1;
    }
    // Once a round is a fixpoint all later rounds equal it; keep copying so
    // consumers can index any round, but skip the work.
  }
  if (opts.track_witness) table.witness = eng.origins();
  return table;
}

template <typename W>
HopDistanceTable<W> bfd_stsp(const Graph<W>& g, const std::vector<VertexId>& targets, int h,
                             BfdOptions opts = {}) {
  opts.dir = Direction::Reverse;
  return bfd(g, targets, h, opts);
}

// Vertices whose h-hop distance from S is negative, ascending.
template <typename W>
std::vector<VertexId> reach(const Graph<W>& g, const std::vector<VertexId>& sources, int h,
                            Direction dir = Direction::Forward) {
  BfdOptions opts;
  opts.dir = dir;
  const auto table = bfd(g, sources, h, opts);
  std::vector<VertexId> out;
  const auto& d = table.final_round();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!is_infinite(d[static_cast<std::size_t>(v)]) && d[static_cast<std::size_t>(v)] < W{0}) {
      out.push_back(v);
    }
  }
  return out;
}

template <typename W>
struct SsspOutcome {
  bool negative_cycle = false;
  std::vector<W> dist;  // valid when !negative_cycle
};

// Hop rounds until a fixpoint, at most `cap` + 1 of them. A reached fixpoint
// is the exact distance vector; no fixpoint by round cap+1 proves a negative
// cycle reachable from the sources, provided cap is a sound bound on the hops
// a shortest path can need (the Negative-class edge count always is).
template <typename W>
SsspOutcome<W> fixpoint_sssp(const Graph<W>& g, const std::vector<VertexId>& sources,
                             std::int64_t cap) {
  detail::BfdEngine<W> eng(g, sources, false, Direction::Forward);
  for (std::int64_t j = 1; j <= cap + 1; ++j) {
    if (!eng.round()) return {false, eng.prev()};
  }
  return {true, {}};
}

// Full single-source shortest paths by BFD alone: h = the Negative-class edge
// count. Detects exactly the negative cycles reachable from the source.
template <typename W>
SsspOutcome<W> full_sssp_bfd(const Graph<W>& g, VertexId source) {
  return fixpoint_sssp(g, {source}, static_cast<std::int64_t>(g.negative_class_edges().size()));
}

}  // namespace nwsp
