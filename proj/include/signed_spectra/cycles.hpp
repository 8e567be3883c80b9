#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

/// Closed vertex sequence v0 v1 ... v(l-1) v0 in a host graph.
struct CycleWitness {
  std::vector<Vertex> vertices;
  int sign = 1;

  std::size_t length() const noexcept { return vertices.size(); }
  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

struct FrustrationResult {
  int epsilon = 0;
  SwitchSet witness;  // switch_at(g, witness) has exactly epsilon negative edges
};

inline bool is_balanced(const SignedGraph& g) {
  return tree_normalize(g).normalized.negative_edge_count() == 0;
}

inline int cycle_sign(const SignedGraph& g, std::span<const Vertex> vertices) {
  const std::size_t len = vertices.size();
  if (len < 3) throw Error(ErrorCode::NotACycle, "a cycle needs at least 3 vertices");
  Mask seen = 0;
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.order()) throw Error(ErrorCode::NotACycle, "vertex out of range");
    if (seen & bit(v)) throw Error(ErrorCode::NotACycle, "repeated vertex " + std::to_string(v));
    seen |= bit(v);
  }
  int s = 1;
  for (std::size_t i = 0; i < len; ++i) {
    Vertex a = vertices[i];
    Vertex b = vertices[(i + 1) % len];
    const int e = g.sign(a, b);
    if (e == 0) throw Error(ErrorCode::NotACycle, "missing edge " + std::to_string(a) + "-" + std::to_string(b));
    s *= e;
  }
  return s;
}

/// True when the witness is a genuine cycle of g with the recorded sign.
inline bool validate_witness(const SignedGraph& g, const CycleWitness& w) {
  try {
    return cycle_sign(g, w.vertices) == w.sign;
  } catch (const Error&) {
    return false;
  }
}

/// Rotates the cycle to start at its smallest vertex and picks the direction
/// whose second vertex is smaller.
inline std::vector<Vertex> canonical_cycle(std::vector<Vertex> cyc) {
  if (cyc.empty()) return cyc;
  auto smallest = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), smallest, cyc.end());
  if (cyc.size() > 2 && cyc.back() < cyc[1]) std::reverse(cyc.begin() + 1, cyc.end());
  return cyc;
}

/// Two-layer lift of a signed graph: vertex v becomes 2v (layer 0) and 2v+1
/// (layer 1). Positive edges stay inside a layer; negative edges cross.
struct DoubleCover {
  int order = 0;
  std::vector<std::vector<int>> adjacency;

  static int lift(Vertex v, int layer) noexcept { return 2 * v + layer; }
  static Vertex project(int lifted) noexcept { return lifted / 2; }
};

inline DoubleCover double_cover(const SignedGraph& g) {
  DoubleCover cover{2 * g.order(), std::vector<std::vector<int>>(static_cast<std::size_t>(2 * g.order()))};
  for (const auto& e : g.edges()) {
    for (int layer = 0; layer < 2; ++layer) {
      const int a = DoubleCover::lift(e.u, layer);
      const int b = DoubleCover::lift(e.v, e.sign > 0 ? layer : 1 - layer);
      cover.adjacency[static_cast<std::size_t>(a)].push_back(b);
      cover.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
  }
  for (auto& row : cover.adjacency) std::sort(row.begin(), row.end());
  return cover;
}

/// Shortest negative cycle. The shortest negative closed walk through v is a
/// shortest path between the two lifts of v; the global minimum over v is
/// always a simple cycle. Ties go to the lexicographically smallest canonical
/// witness.
inline std::optional<CycleWitness> negative_girth(const SignedGraph& g) {
  const DoubleCover cover = double_cover(g);
  std::optional<CycleWitness> best;
  std::vector<int> dist(static_cast<std::size_t>(cover.order));
  std::vector<int> parent(static_cast<std::size_t>(cover.order));
  for (Vertex v = 0; v < g.order(); ++v) {
    std::fill(dist.begin(), dist.end(), -1);
    const int source = DoubleCover::lift(v, 0);
    const int target = DoubleCover::lift(v, 1);
    std::queue<int> queue;
    dist[static_cast<std::size_t>(source)] = 0;
    parent[static_cast<std::size_t>(source)] = -1;
    queue.push(source);
    while (!queue.empty() && dist[static_cast<std::size_t>(target)] < 0) {
      const int x = queue.front();
      queue.pop();
      if (best && dist[static_cast<std::size_t>(x)] + 1 > static_cast<int>(best->length())) break;
      for (int y : cover.adjacency[static_cast<std::size_t>(x)]) {
        if (dist[static_cast<std::size_t>(y)] >= 0) continue;
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        parent[static_cast<std::size_t>(y)] = x;
        queue.push(y);
      }
    }
    const int len = dist[static_cast<std::size_t>(target)];
    if (len < 0) continue;
    if (best && len > static_cast<int>(best->length())) continue;
    std::vector<Vertex> walk;
    for (int x = parent[static_cast<std::size_t>(target)]; x >= 0; x = parent[static_cast<std::size_t>(x)]) {
      walk.push_back(DoubleCover::project(x));
    }
    std::reverse(walk.begin(), walk.end());
    CycleWitness candidate{canonical_cycle(std::move(walk)), -1};
    if (!best || candidate.length() < best->length() ||
        (candidate.length() == best->length() && candidate.vertices < best->vertices)) {
      best = std::move(candidate);
    }
  }
  return best;
}

inline constexpr std::uint64_t kDefaultPathCap = 100'000'000;

namespace detail {

// Depth-first extension of simple paths. The final vertex is chosen by mask
// arithmetic: among common neighbors of the path tail and the closing vertex,
// the two-step sign is (neg[tail] ^ neg[close]) bitwise.
struct NegativePathSearch {
  const SignedGraph& g;
  Vertex close;          // the path must end adjacent to this vertex
  int closing_sign;      // sign contributed by the closing edge(s) other than the final two-step
  int inner_needed;      // vertices to place before the final mask step
  Mask allowed;
  std::uint64_t cap;
  std::uint64_t expanded = 0;
  std::vector<Vertex> path;

  // Returns the final vertex on success, -1 otherwise.
  Vertex finish(Vertex tail, int path_sign, Mask used) const {
    const Mask candidates = g.neighbors(tail) & g.neighbors(close) & allowed & ~used;
    if (!candidates) return -1;
    const Mask negative_two_step = (g.negative_neighbors(tail) ^ g.negative_neighbors(close)) & candidates;
    const Mask wanted = (path_sign * closing_sign > 0) ? negative_two_step : candidates & ~negative_two_step;
    return wanted ? std::countr_zero(wanted) : -1;
  }

  bool extend(Vertex tail, int path_sign, Mask used) {
    if (static_cast<int>(path.size()) == inner_needed) {
      const Vertex last = finish(tail, path_sign, used);
      if (last < 0) return false;
      path.push_back(last);
      return true;
    }
    for (Mask next = g.neighbors(tail) & allowed & ~used; next; next &= next - 1) {
      const Vertex w = std::countr_zero(next);
      if (++expanded > cap) throw Error(ErrorCode::CapExceeded, "path enumeration cap reached");
      path.push_back(w);
      if (extend(w, path_sign * g.sign(tail, w), used | bit(w))) return true;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace detail

/// Finds a negative cycle of exactly length r. Each cycle is searched from its
/// smallest vertex only; paths grow through larger vertices.
inline std::optional<CycleWitness> has_negative_cycle_of_length(const SignedGraph& g, int r,
                                                                std::uint64_t cap = kDefaultPathCap) {
  if (r < 3) throw Error(ErrorCode::InvalidRange, "cycle length must be at least 3");
  const int n = g.order();
  if (r > n) return std::nullopt;
  std::uint64_t budget = cap;
  for (Vertex s = 0; s + r <= n; ++s) {
    if (g.degree(s) < 2) continue;
    const Mask later = g.vertex_mask() & ~low_mask(s + 1);
    // path s = p0, p1 .. p(r-2) by DFS, then p(r-1) adjacent to s by mask.
    detail::NegativePathSearch search{g, s, 1, r - 1, later, budget, 0, {s}};
    const bool found = search.extend(s, 1, bit(s));
    budget -= std::min(budget, search.expanded);
    if (found) {
      CycleWitness w{canonical_cycle(search.path), -1};
      return w;
    }
  }
  return std::nullopt;
}

/// Negative cycle of length r that uses edge uv (which must exist).
inline std::optional<CycleWitness> negative_cycle_through_edge(const SignedGraph& g, Vertex u, Vertex v, int r,
                                                               std::uint64_t cap = kDefaultPathCap) {
  if (r < 3) throw Error(ErrorCode::InvalidRange, "cycle length must be at least 3");
  const int edge_sign = g.sign(u, v);
  if (edge_sign == 0) throw Error(ErrorCode::InvalidEdge, "edge not present");
  if (r > g.order()) return std::nullopt;
  // path u = p0 .. p(r-2), then p(r-1) must close to v; v itself is excluded.
  detail::NegativePathSearch search{g, v, edge_sign, r - 2, g.vertex_mask() & ~bit(v), cap, 0, {u}};
  if (!search.extend(u, 1, bit(u))) return std::nullopt;
  search.path.push_back(v);
  return CycleWitness{canonical_cycle(search.path), -1};
}

inline constexpr int kMaxExactFrustrationOrder = 24;

/// Exact frustration index: minimum negative-edge count over the 2^(n-1)
/// switchings that keep vertex 0 fixed, visited in Gray-code order.
inline FrustrationResult frustration_index(const SignedGraph& g) {
  const int n = g.order();
  if (n > kMaxExactFrustrationOrder) {
    throw Error(ErrorCode::TooLargeForExact, "exact frustration needs n <= 24");
  }
  Mask current = 0;
  int negatives = g.negative_edge_count();
  FrustrationResult best{negatives, SwitchSet{}};
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < steps; ++i) {
    const Vertex v = 1 + std::countr_zero(i);
    const Mask in_set = (current & bit(v)) ? ~Mask{0} : Mask{0};
    const int negative_at_v = std::popcount(g.neighbors(v) & (g.negative_neighbors(v) ^ current ^ in_set));
    negatives += g.degree(v) - 2 * negative_at_v;
    current ^= bit(v);
    if (negatives < best.epsilon) best = {negatives, SwitchSet(current)};
  }
  return best;
}

}  // namespace signed_spectra
