#pragma once

// Directed multigraph with a fixed per-edge classification (NonNegative /
// Negative) and price-function reweighting. The classification is immutable
// after construction: reweighting changes weights, never classes, so a
// Negative-class edge may carry a nonnegative weight after reweighting.
// Topology is shared between a graph and its reweighted views.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <vector>

namespace nwsp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

enum class EdgeClass : std::uint8_t { NonNegative = 0, Negative = 1 };

// +infinity is a distinct sentinel; code must test for it before arithmetic.
template <typename W>
constexpr W infinite_weight() {
  if constexpr (std::is_floating_point_v<W>) {
    return std::numeric_limits<W>::infinity();
  } else {
    return std::numeric_limits<W>::max();
  }
}

template <typename W>
constexpr bool is_infinite(W w) {
  return w == infinite_weight<W>();
}

template <typename W>
struct EdgeRecord {
  VertexId src;
  VertexId dst;
  W weight;
  EdgeClass cls;
};

// Vertex potentials; reweighting shifts w(u,v) to w(u,v) + phi[u] - phi[v].
// Price functions compose by pointwise addition.
template <typename W>
struct PriceFunction {
  std::vector<W> phi;

  static PriceFunction zero(VertexId n) {
    return PriceFunction{std::vector<W>(static_cast<std::size_t>(n), W{0})};
  }

  VertexId size() const { return static_cast<VertexId>(phi.size()); }
  W operator[](VertexId v) const { return phi[static_cast<std::size_t>(v)]; }
  W& operator[](VertexId v) { return phi[static_cast<std::size_t>(v)]; }

  PriceFunction& operator+=(const PriceFunction& other) {
    if (phi.size() != other.phi.size()) {
      throw std::invalid_argument("price function length mismatch");
    }
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += other.phi[i];
    return *this;
  }
};

template <typename W>
PriceFunction<W> operator+(PriceFunction<W> a, const PriceFunction<W>& b) {
  a += b;
  return a;
}

// Result of a reweighting stage: either a price function or a (sound)
// negative-cycle verdict. phi is meaningful only when !negative_cycle.
template <typename W>
struct PriceOutcome {
  bool negative_cycle = false;
  PriceFunction<W> phi;
};

template <typename W>
class Graph {
 public:
  Graph() : topo_(shared_empty()) {}

  // Classifies edges by sign: w < 0 becomes Negative class.
  static Graph from_edges(VertexId n,
                          const std::vector<std::tuple<VertexId, VertexId, W>>& edges) {
    std::vector<EdgeRecord<W>> recs;
    recs.reserve(edges.size());
    for (const auto& [u, v, w] : edges) {
      recs.push_back({u, v, w, w < W{0} ? EdgeClass::Negative : EdgeClass::NonNegative});
    }
    return from_classified_edges(n, recs);
  }

  // Explicit classes. NonNegative-class edges must have weight >= 0;
  // Negative-class edges may carry any finite weight.
  static Graph from_classified_edges(VertexId n, const std::vector<EdgeRecord<W>>& edges) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    auto topo = std::make_shared<Topology>();
    topo->n = n;
    const EdgeId m = static_cast<EdgeId>(edges.size());
    topo->src.reserve(edges.size());
    topo->dst.reserve(edges.size());
    topo->cls.reserve(edges.size());
    std::vector<W> weights;
    weights.reserve(edges.size());
    for (EdgeId e = 0; e < m; ++e) {
      const auto& r = edges[static_cast<std::size_t>(e)];
      if (r.src < 0 || r.src >= n || r.dst < 0 || r.dst >= n) {
        throw std::out_of_range("edge endpoint out of range");
      }
      if (is_infinite(r.weight)) throw std::invalid_argument("edge weight must be finite");
      if (r.cls == EdgeClass::NonNegative && r.weight < W{0}) {
        throw std::invalid_argument("NonNegative-class edge with negative weight");
      }
      topo->src.push_back(r.src);
      topo->dst.push_back(r.dst);
      topo->cls.push_back(r.cls);
      if (r.cls == EdgeClass::Negative) topo->neg_edges.push_back(e);
      weights.push_back(r.weight);
    }
    build_csr(topo->n, topo->src, topo->out_off, topo->out_ids);
    build_csr(topo->n, topo->dst, topo->in_off, topo->in_ids);
    Graph g;
    g.topo_ = std::move(topo);
    g.weight_ = std::move(weights);
    return g;
  }

  VertexId vertex_count() const { return topo_->n; }
  EdgeId edge_count() const { return static_cast<EdgeId>(topo_->src.size()); }

  VertexId edge_src(EdgeId e) const { return topo_->src[static_cast<std::size_t>(e)]; }
  VertexId edge_dst(EdgeId e) const { return topo_->dst[static_cast<std::size_t>(e)]; }
  W edge_weight(EdgeId e) const { return weight_[static_cast<std::size_t>(e)]; }
  EdgeClass edge_class(EdgeId e) const { return topo_->cls[static_cast<std::size_t>(e)]; }

  std::span<const EdgeId> out_edges(VertexId v) const {
    return csr_row(topo_->out_off, topo_->out_ids, v);
  }
  std::span<const EdgeId> in_edges(VertexId v) const {
    return csr_row(topo_->in_off, topo_->in_ids, v);
  }
  // All Negative-class edge ids, in construction order, regardless of weight.
  std::span<const EdgeId> negative_class_edges() const {
    return {topo_->neg_edges.data(), topo_->neg_edges.size()};
  }
  const std::vector<W>& weights() const { return weight_; }

  // Same topology and classes, weights shifted by phi. Does not require the
  // result to be a valid weighting; use is_valid_price to test that first.
  friend Graph reweight(const Graph& g, const PriceFunction<W>& p) {
    if (p.size() != g.vertex_count()) {
      throw std::invalid_argument("price function length mismatch");
    }
    Graph out;
    out.topo_ = g.topo_;
    out.weight_ = g.weight_;
    const auto m = out.weight_.size();
    for (std::size_t e = 0; e < m; ++e) {
      out.weight_[e] += p.phi[static_cast<std::size_t>(g.topo_->src[e])] -
                        p.phi[static_cast<std::size_t>(g.topo_->dst[e])];
    }
    return out;
  }

 private:
  struct Topology {
    VertexId n = 0;
    std::vector<VertexId> src, dst;
    std::vector<EdgeClass> cls;
    std::vector<EdgeId> neg_edges;
    std::vector<EdgeId> out_off, out_ids;
    std::vector<EdgeId> in_off, in_ids;
  };

  static void build_csr(VertexId n, const std::vector<VertexId>& key,
                        std::vector<EdgeId>& off, std::vector<EdgeId>& ids) {
    off.assign(static_cast<std::size_t>(n) + 1, 0);
    for (VertexId k : key) ++off[static_cast<std::size_t>(k) + 1];
    for (VertexId v = 0; v < n; ++v) {
      off[static_cast<std::size_t>(v) + 1] += off[static_cast<std::size_t>(v)];
    }
    ids.resize(key.size());
    std::vector<EdgeId> cur(off.begin(), off.end() - 1);
    for (EdgeId e = 0; e < static_cast<EdgeId>(key.size()); ++e) {
      ids[static_cast<std::size_t>(cur[static_cast<std::size_t>(key[static_cast<std::size_t>(e)])]++)] = e;
    }
  }

  static std::span<const EdgeId> csr_row(const std::vector<EdgeId>& off,
                                         const std::vector<EdgeId>& ids, VertexId v) {
    const auto b = static_cast<std::size_t>(off[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(off[static_cast<std::size_t>(v) + 1]);
    return {ids.data() + b, e - b};
  }

  static const std::shared_ptr<const Topology>& shared_empty() {
    static const std::shared_ptr<const Topology> t = std::make_shared<Topology>();
    return t;
  }

  std::shared_ptr<const Topology> topo_;
  std::vector<W> weight_;
};

// True iff applying p keeps every NonNegative-class edge at weight >= 0.
template <typename W>
bool is_valid_price(const Graph<W>& g, const PriceFunction<W>& p) {
  if (p.size() != g.vertex_count()) {
    throw std::invalid_argument("price function length mismatch");
  }
  const EdgeId m = g.edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    if (g.edge_class(e) != EdgeClass::NonNegative) continue;
    if (g.edge_weight(e) + p[g.edge_src(e)] - p[g.edge_dst(e)] < W{0}) return false;
  }
  return true;
}

// True iff the current weights already satisfy the class contract.
template <typename W>
bool has_valid_weighting(const Graph<W>& g) {
  const EdgeId m = g.edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    if (g.edge_class(e) == EdgeClass::NonNegative && g.edge_weight(e) < W{0}) return false;
  }
  return true;
}

// Number of Negative-class edges whose current weight is < 0.
template <typename W>
std::int64_t count_negative(const Graph<W>& g) {
  std::int64_t c = 0;
  for (EdgeId e : g.negative_class_edges()) {
    if (g.edge_weight(e) < W{0}) ++c;
  }
  return c;
}

// Tails of Negative-class edges whose current weight is < 0, sorted, deduped.
template <typename W>
std::vector<VertexId> negative_vertices(const Graph<W>& g) {
  std::vector<VertexId> tails;
  for (EdgeId e : g.negative_class_edges()) {
    if (g.edge_weight(e) < W{0}) tails.push_back(g.edge_src(e));
  }
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());
  return tails;
}

template <typename W>
Graph<W> transpose(const Graph<W>& g) {
  std::vector<EdgeRecord<W>> recs;
  const EdgeId m = g.edge_count();
  recs.reserve(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) {
    recs.push_back({g.edge_dst(e), g.edge_src(e), g.edge_weight(e), g.edge_class(e)});
  }
  return Graph<W>::from_classified_edges(g.vertex_count(), recs);
}

// Fresh graph with classes recomputed from the current weight signs.
template <typename W>
Graph<W> reclassify_by_sign(const Graph<W>& g) {
  std::vector<EdgeRecord<W>> recs;
  const EdgeId m = g.edge_count();
  recs.reserve(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) {
    const W w = g.edge_weight(e);
    recs.push_back({g.edge_src(e), g.edge_dst(e), w,
                    w < W{0} ? EdgeClass::Negative : EdgeClass::NonNegative});
  }
  return Graph<W>::from_classified_edges(g.vertex_count(), recs);
}

// Subgraph keeping all NonNegative-class edges plus the given Negative-class
// edge ids; every other Negative-class edge is removed outright.
template <typename W>
Graph<W> negative_subgraph(const Graph<W>& g, const std::vector<EdgeId>& keep) {
  std::vector<char> in_keep(static_cast<std::size_t>(g.edge_count()), 0);
  for (EdgeId e : keep) {
    if (e < 0 || e >= g.edge_count()) throw std::out_of_range("edge id out of range");
    if (g.edge_class(e) != EdgeClass::Negative) {
      throw std::invalid_argument("negative_subgraph: edge is not Negative-class");
    }
    in_keep[static_cast<std::size_t>(e)] = 1;
  }
  std::vector<EdgeRecord<W>> recs;
  const EdgeId m = g.edge_count();
  for (EdgeId e = 0; e < m; ++e) {
    if (g.edge_class(e) == EdgeClass::NonNegative || in_keep[static_cast<std::size_t>(e)]) {
      recs.push_back({g.edge_src(e), g.edge_dst(e), g.edge_weight(e), g.edge_class(e)});
    }
  }
  return Graph<W>::from_classified_edges(g.vertex_count(), recs);
}

// All Negative-class out-edges of the given tails (the whole out-set when the
// graph is normalized, since negative tails then have out-degree one).
template <typename W>
std::vector<EdgeId> negative_out_edges(const Graph<W>& g, const std::vector<VertexId>& tails) {
  std::vector<EdgeId> out;
  for (VertexId u : tails) {
    if (u < 0 || u >= g.vertex_count()) throw std::out_of_range("vertex id out of range");
    for (EdgeId e : g.out_edges(u)) {
      if (g.edge_class(e) == EdgeClass::Negative) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace nwsp
