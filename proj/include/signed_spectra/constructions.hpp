#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

/// Unbalanced triangle glued to a positive clique: vertices 2..n-1 form K_{n-2},
/// vertex 2 is shared with the triangle {0,1,2}, and 0-1 is the only negative
/// edge.
inline SignedGraph gamma1(int n) {
  if (n < 5) throw Error(ErrorCode::TooSmall, "gamma1 needs n >= 5");
  std::vector<SignedEdge> edges{{0, 1, -1}, {0, 2, 1}, {1, 2, 1}};
  for (Vertex u = 2; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
  }
  return make_signed_graph(n, edges);
}

namespace detail {

inline Edge ordered(Edge e) { return {std::min(e.u, e.v), std::max(e.u, e.v)}; }

}  // namespace detail

/// Cycle 0-1-...-(l-1)-0 with the listed edges negative.
inline SignedGraph signed_cycle(int length, std::span<const Edge> negative_edges) {
  if (length < 3) throw Error(ErrorCode::InvalidRange, "cycle length must be at least 3");
  std::vector<Edge> ring;
  for (Vertex i = 0; i < length; ++i) ring.push_back(detail::ordered({i, (i + 1) % length}));
  std::vector<SignedEdge> edges;
  for (const Edge& e : ring) edges.push_back({e.u, e.v, 1});
  for (const Edge& raw : negative_edges) {
    const Edge e = detail::ordered(raw);
    auto it = std::find(ring.begin(), ring.end(), e);
    if (it == ring.end()) throw Error(ErrorCode::InvalidEdge, "edge not on the cycle");
    auto& target = edges[static_cast<std::size_t>(it - ring.begin())];
    if (target.sign < 0) throw Error(ErrorCode::InvalidEdge, "edge listed twice");
    target.sign = -1;
  }
  return make_signed_graph(length, edges);
}

inline SignedGraph signed_cycle(int length, std::initializer_list<Edge> negative_edges) {
  return signed_cycle(length, std::span<const Edge>(negative_edges.begin(), negative_edges.size()));
}

/// K_n with the listed edges negative.
inline SignedGraph signed_complete(int n, std::span<const Edge> negative_edges) {
  SignedGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g = g.with_edge(u, v, 1);
  }
  for (const Edge& raw : negative_edges) {
    const Edge e = detail::ordered(raw);
    if (e.u < 0 || e.v >= n || e.u == e.v) throw Error(ErrorCode::InvalidEdge, "pair outside K_n");
    if (g.sign(e.u, e.v) < 0) throw Error(ErrorCode::InvalidEdge, "edge listed twice");
    g = g.with_flipped_sign(e.u, e.v);
  }
  return g;
}

inline SignedGraph signed_complete(int n, std::initializer_list<Edge> negative_edges) {
  return signed_complete(n, std::span<const Edge>(negative_edges.begin(), negative_edges.size()));
}

inline SignedGraph complete_graph(int n) { return signed_complete(n, std::span<const Edge>{}); }

inline SignedGraph path_graph(int n) {
  SignedGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g = g.with_edge(v, v + 1, 1);
  return g;
}

}  // namespace signed_spectra
