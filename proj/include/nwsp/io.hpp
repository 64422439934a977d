#pragma once

// Plain-text graph files: first "n m", then one "u v w" line per edge with
// 1-based endpoints. '#' starts a comment. Weights are decimal integers or
// floats; a file is integer-mode iff every weight parses as an integer.
// Edges are classified by sign on load.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nwsp/graph.hpp"

namespace nwsp {

struct GraphFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphText {
  VertexId n = 0;
  EdgeId m = 0;
  std::vector<VertexId> src, dst;      // 0-based after parsing
  std::vector<std::string> weight_tok;
};

namespace detail {

inline std::int64_t parse_int_token(const std::string& tok, int line, const char* what) {
  std::int64_t value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw GraphFileError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
  }
  return value;
}

}  // namespace detail

inline GraphText read_graph_text(std::istream& in) {
  std::vector<std::pair<std::string, int>> toks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.emplace_back(t, lineno);
  }
  if (toks.size() < 2) throw GraphFileError("missing 'n m' header");
  GraphText gt;
  const std::int64_t n = detail::parse_int_token(toks[0].first, toks[0].second, "vertex count");
  const std::int64_t m = detail::parse_int_token(toks[1].first, toks[1].second, "edge count");
  if (n < 1 || n > 100000000) throw GraphFileError("vertex count out of range");
  if (m < 0 || m > 1000000000) throw GraphFileError("edge count out of range");
  if (toks.size() != 2 + 3 * static_cast<std::size_t>(m)) {
    throw GraphFileError("expected " + std::to_string(m) + " edge lines, found " +
                         std::to_string((toks.size() - 2) / 3) +
                         ((toks.size() - 2) % 3 ? " and trailing tokens" : ""));
  }
  gt.n = static_cast<VertexId>(n);
  gt.m = static_cast<EdgeId>(m);
  for (std::size_t i = 2; i < toks.size(); i += 3) {
    const std::int64_t u = detail::parse_int_token(toks[i].first, toks[i].second, "edge tail");
    const std::int64_t v = detail::parse_int_token(toks[i + 1].first, toks[i + 1].second, "edge head");
    if (u < 1 || u > n || v < 1 || v > n) {
      throw GraphFileError("line " + std::to_string(toks[i].second) + ": endpoint out of range");
    }
    gt.src.push_back(static_cast<VertexId>(u - 1));
    gt.dst.push_back(static_cast<VertexId>(v - 1));
    gt.weight_tok.push_back(toks[i + 2].first);
  }
  return gt;
}

inline bool weights_all_integer(const GraphText& gt) {
  for (const auto& tok : gt.weight_tok) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) return false;
  }
  return true;
}

template <typename W>
Graph<W> graph_from_text(const GraphText& gt) {
  std::vector<std::tuple<VertexId, VertexId, W>> edges;
  edges.reserve(gt.weight_tok.size());
  for (std::size_t i = 0; i < gt.weight_tok.size(); ++i) {
    const std::string& tok = gt.weight_tok[i];
    W w{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
      throw GraphFileError("bad edge weight '" + tok + "'");
    }
    edges.emplace_back(gt.src[i], gt.dst[i], w);
  }
  return Graph<W>::from_edges(gt.n, edges);
}

inline std::string format_weight(std::int64_t w) { return std::to_string(w); }

inline std::string format_weight(double w) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), w, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::logic_error("weight formatting failed");
  return std::string(buf, p);
}

template <typename W>
void write_graph(std::ostream& out, const Graph<W>& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << (g.edge_src(e) + 1) << ' ' << (g.edge_dst(e) + 1) << ' '
        << format_weight(g.edge_weight(e)) << '\n';
  }
}

}  // namespace nwsp
