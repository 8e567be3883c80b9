#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "signed_spectra/error.hpp"

namespace signed_spectra {

using Vertex = int;
using Mask = std::uint64_t;

inline constexpr int kMaxVertices = 64;

constexpr Mask bit(Vertex v) noexcept { return Mask{1} << v; }

constexpr Mask low_mask(int n) noexcept {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

struct SignedEdge {
  Vertex u = 0;
  Vertex v = 0;
  int sign = 1;

  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple signed graph on vertices 0..n-1.
///
/// Adjacency and negative-edge rows are bitmasks; row v of `negative` is a
/// subset of row v of `adjacent`. Values are immutable: modifiers return a
/// new graph.
class SignedGraph {
 public:
  SignedGraph() : SignedGraph(1) {}

  explicit SignedGraph(int order) : n_(order) {
    if (order < 1 || order > kMaxVertices) {
      throw Error(order < 1 ? ErrorCode::TooSmall : ErrorCode::TooLarge,
                  "order must lie in 1.." + std::to_string(kMaxVertices));
    }
  }

  int order() const noexcept { return n_; }
  int size() const noexcept { return m_; }

  Mask vertex_mask() const noexcept { return low_mask(n_); }
  Mask neighbors(Vertex v) const noexcept { return adj_[v]; }
  Mask negative_neighbors(Vertex v) const noexcept { return neg_[v]; }
  Mask positive_neighbors(Vertex v) const noexcept { return adj_[v] & ~neg_[v]; }
  int degree(Vertex v) const noexcept { return std::popcount(adj_[v]); }

  bool adjacent(Vertex u, Vertex v) const noexcept { return (adj_[u] & bit(v)) != 0; }

  /// +1, -1, or 0 for a non-edge.
  int sign(Vertex u, Vertex v) const noexcept {
    if (!adjacent(u, v)) return 0;
    return (neg_[u] & bit(v)) ? -1 : 1;
  }

  int negative_edge_count() const noexcept {
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += std::popcount(neg_[v]);
    return twice / 2;
  }

  /// Edges with u < v, in lexicographic order.
  std::vector<SignedEdge> edges() const {
    std::vector<SignedEdge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < n_; ++u) {
      Mask later = adj_[u] & ~low_mask(u + 1);
      while (later) {
        Vertex v = std::countr_zero(later);
        later &= later - 1;
        out.push_back({u, v, sign(u, v)});
      }
    }
    return out;
  }

  SignedGraph with_edge(Vertex u, Vertex v, int s) const {
    check_pair(u, v);
    if (adjacent(u, v)) throw Error(ErrorCode::DuplicateEdge, pair_text(u, v));
    if (s != 1 && s != -1) throw Error(ErrorCode::InvalidSign, "sign must be +1 or -1");
    SignedGraph g = *this;
    g.adj_[u] |= bit(v);
    g.adj_[v] |= bit(u);
    if (s < 0) {
      g.neg_[u] |= bit(v);
      g.neg_[v] |= bit(u);
    }
    ++g.m_;
    return g;
  }

  SignedGraph without_edge(Vertex u, Vertex v) const {
    check_pair(u, v);
    if (!adjacent(u, v)) throw Error(ErrorCode::InvalidEdge, "no edge " + pair_text(u, v));
    SignedGraph g = *this;
    g.adj_[u] &= ~bit(v);
    g.adj_[v] &= ~bit(u);
    g.neg_[u] &= ~bit(v);
    g.neg_[v] &= ~bit(u);
    --g.m_;
    return g;
  }

  SignedGraph with_flipped_sign(Vertex u, Vertex v) const {
    check_pair(u, v);
    if (!adjacent(u, v)) throw Error(ErrorCode::InvalidEdge, "no edge " + pair_text(u, v));
    SignedGraph g = *this;
    g.neg_[u] ^= bit(v);
    g.neg_[v] ^= bit(u);
    return g;
  }

  /// Replaces every negative-row mask at once. `negative[v]` must be a subset of
  /// `neighbors(v)` and symmetric; used by switching and class enumeration.
  SignedGraph with_negative_rows(std::span<const Mask> negative) const {
    SignedGraph g = *this;
    for (int v = 0; v < n_; ++v) g.neg_[v] = negative[static_cast<std::size_t>(v)] & adj_[v];
    return g;
  }

  friend bool operator==(const SignedGraph& a, const SignedGraph& b) noexcept {
    if (a.n_ != b.n_ || a.m_ != b.m_) return false;
    for (int v = 0; v < a.n_; ++v) {
      if (a.adj_[v] != b.adj_[v] || a.neg_[v] != b.neg_[v]) return false;
    }
    return true;
  }

 private:
  void check_pair(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw Error(ErrorCode::VertexOutOfRange, pair_text(u, v) + " with n=" + std::to_string(n_));
    }
    if (u == v) throw Error(ErrorCode::LoopEdge, pair_text(u, v));
  }

  static std::string pair_text(Vertex u, Vertex v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  }

  int n_ = 1;
  int m_ = 0;
  std::array<Mask, kMaxVertices> adj_{};
  std::array<Mask, kMaxVertices> neg_{};
};

inline SignedGraph make_signed_graph(int n, std::span<const SignedEdge> signed_edges) {
  SignedGraph g(n);
  for (const auto& e : signed_edges) g = g.with_edge(e.u, e.v, e.sign);
  return g;
}

inline SignedGraph make_signed_graph(int n, std::initializer_list<SignedEdge> signed_edges) {
  return make_signed_graph(n, std::span<const SignedEdge>(signed_edges.begin(), signed_edges.size()));
}

/// All-positive copy of g.
inline SignedGraph underlying(const SignedGraph& g) {
  std::array<Mask, kMaxVertices> none{};
  return g.with_negative_rows(none);
}

inline bool same_underlying(const SignedGraph& a, const SignedGraph& b) noexcept {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  for (int v = 0; v < a.order(); ++v) {
    if (a.neighbors(v) != b.neighbors(v)) return false;
  }
  return true;
}

/// Vertex subset for a switching operation.
class SwitchSet {
 public:
  SwitchSet() = default;
  explicit SwitchSet(Mask members) : members_(members) {}
  SwitchSet(std::initializer_list<Vertex> vertices) {
    for (Vertex v : vertices) members_ |= bit(v);
  }

  Mask members() const noexcept { return members_; }
  bool contains(Vertex v) const noexcept { return (members_ & bit(v)) != 0; }
  bool empty() const noexcept { return members_ == 0; }
  int count() const noexcept { return std::popcount(members_); }
  bool valid_for(const SignedGraph& g) const noexcept { return (members_ & ~g.vertex_mask()) == 0; }

  friend SwitchSet operator^(SwitchSet a, SwitchSet b) noexcept { return SwitchSet(a.members_ ^ b.members_); }
  friend bool operator==(const SwitchSet&, const SwitchSet&) = default;

 private:
  Mask members_ = 0;
};

/// Negates every edge with exactly one endpoint in s.
inline SignedGraph switch_at(const SignedGraph& g, SwitchSet s) {
  if (!s.valid_for(g)) throw Error(ErrorCode::VertexOutOfRange, "switch set exceeds vertex range");
  const Mask members = s.members();
  std::array<Mask, kMaxVertices> rows{};
  for (Vertex v = 0; v < g.order(); ++v) {
    const Mask crossing = s.contains(v) ? g.neighbors(v) & ~members : g.neighbors(v) & members;
    rows[v] = g.negative_neighbors(v) ^ crossing;
  }
  return g.with_negative_rows(rows);
}

/// Applies `perm` (old label -> new label).
inline SignedGraph relabel(const SignedGraph& g, std::span<const Vertex> perm) {
  SignedGraph out(g.order());
  std::vector<SignedEdge> moved;
  moved.reserve(static_cast<std::size_t>(g.size()));
  for (const auto& e : g.edges()) {
    Vertex a = perm[static_cast<std::size_t>(e.u)];
    Vertex b = perm[static_cast<std::size_t>(e.v)];
    moved.push_back({std::min(a, b), std::max(a, b), e.sign});
  }
  return make_signed_graph(g.order(), moved);
}

inline std::vector<Mask> connected_components(const SignedGraph& g) {
  std::vector<Mask> comps;
  Mask unseen = g.vertex_mask();
  while (unseen) {
    Mask comp = unseen & (~unseen + 1);
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= g.neighbors(std::countr_zero(f));
      frontier = next & ~comp;
      comp |= frontier;
    }
    comps.push_back(comp);
    unseen &= ~comp;
  }
  return comps;
}

inline bool is_connected(const SignedGraph& g) { return connected_components(g).size() == 1; }

/// Breadth-first spanning forest. Roots are the smallest vertex of each
/// component; neighbors are visited in increasing order.
struct SpanningForest {
  std::vector<Vertex> parent;  // -1 at roots
  std::vector<Vertex> order;   // BFS visiting order

  bool is_tree_edge(Vertex u, Vertex v) const noexcept {
    return parent[static_cast<std::size_t>(u)] == v || parent[static_cast<std::size_t>(v)] == u;
  }
};

inline SpanningForest spanning_forest(const SignedGraph& g) {
  const int n = g.order();
  SpanningForest forest{std::vector<Vertex>(static_cast<std::size_t>(n), -1), {}};
  forest.order.reserve(static_cast<std::size_t>(n));
  Mask seen = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (seen & bit(root)) continue;
    seen |= bit(root);
    std::size_t head = forest.order.size();
    forest.order.push_back(root);
    while (head < forest.order.size()) {
      Vertex v = forest.order[head++];
      for (Mask fresh = g.neighbors(v) & ~seen; fresh; fresh &= fresh - 1) {
        Vertex w = std::countr_zero(fresh);
        seen |= bit(w);
        forest.parent[static_cast<std::size_t>(w)] = v;
        forest.order.push_back(w);
      }
    }
  }
  return forest;
}

/// The switch that makes every edge of `forest` positive, and its result.
struct TreeNormalization {
  SwitchSet flip;
  SignedGraph normalized;
};

inline TreeNormalization tree_normalize(const SignedGraph& g, const SpanningForest& forest) {
  Mask flip = 0;
  for (Vertex v : forest.order) {
    Vertex p = forest.parent[static_cast<std::size_t>(v)];
    if (p < 0) continue;
    const bool parent_flipped = (flip & bit(p)) != 0;
    const bool negative = g.sign(p, v) < 0;
    if (parent_flipped != negative) flip |= bit(v);
  }
  return {SwitchSet(flip), switch_at(g, SwitchSet(flip))};
}

inline TreeNormalization tree_normalize(const SignedGraph& g) { return tree_normalize(g, spanning_forest(g)); }

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<SwitchSet> witness;       // switch(g1, *witness) == g2
  std::optional<ErrorCode> reason;        // set when the underlying graphs differ

  explicit operator bool() const noexcept { return equivalent; }
};

/// Decides switching equivalence of two signings of the same underlying graph
/// by normalizing both over a shared spanning forest. Components are handled
/// independently since each tree normalization is per component.
inline EquivalenceResult is_switching_equivalent(const SignedGraph& g1, const SignedGraph& g2) {
  if (!same_underlying(g1, g2)) return {false, std::nullopt, ErrorCode::UnderlyingMismatch};
  const SpanningForest forest = spanning_forest(g1);
  const TreeNormalization a = tree_normalize(g1, forest);
  const TreeNormalization b = tree_normalize(g2, forest);
  if (!(a.normalized == b.normalized)) return {false, std::nullopt, std::nullopt};
  return {true, a.flip ^ b.flip, std::nullopt};
}

inline constexpr int kMaxIsomorphismOrder = 10;

namespace detail {

struct IsoSearch {
  const SignedGraph& g1;
  const SignedGraph& g2;
  const SpanningForest& forest2;
  const SignedGraph& target;  // tree-normalized g2
  std::vector<Vertex> image;
  Mask used = 0;

  bool extend(Vertex v) {
    const int n = g1.order();
    if (v == n) {
      const SignedGraph moved = relabel(g1, image);
      return tree_normalize(moved, forest2).normalized == target;
    }
    for (Vertex w = 0; w < n; ++w) {
      if (used & bit(w)) continue;
      if (g1.degree(v) != g2.degree(w)) continue;
      bool consistent = true;
      for (Vertex u = 0; u < v && consistent; ++u) {
        consistent = g1.adjacent(u, v) == g2.adjacent(image[static_cast<std::size_t>(u)], w);
      }
      if (!consistent) continue;
      image[static_cast<std::size_t>(v)] = w;
      used |= bit(w);
      if (extend(v + 1)) return true;
      used &= ~bit(w);
    }
    return false;
  }
};

}  // namespace detail

/// True iff some relabeling of g1 is switching equivalent to g2. Backtracks over
/// degree- and adjacency-consistent permutations; capped at order 10.
inline bool is_switching_isomorphic(const SignedGraph& g1, const SignedGraph& g2) {
  if (g1.order() > kMaxIsomorphismOrder || g2.order() > kMaxIsomorphismOrder) {
    throw Error(ErrorCode::TooLarge, "switching isomorphism is brute force, order <= 10");
  }
  if (g1.order() != g2.order() || g1.size() != g2.size()) return false;
  std::vector<int> d1, d2;
  for (Vertex v = 0; v < g1.order(); ++v) {
    d1.push_back(g1.degree(v));
    d2.push_back(g2.degree(v));
  }
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  if (d1 != d2) return false;
  const SpanningForest forest2 = spanning_forest(g2);
  const SignedGraph target = tree_normalize(g2, forest2).normalized;
  detail::IsoSearch search{g1, g2, forest2, target, std::vector<Vertex>(static_cast<std::size_t>(g1.order()), -1)};
  return search.extend(0);
}

// Line format: "n m u v s u v s ..." with s in {+,-}.

inline std::string to_line(const SignedGraph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size();
  for (const auto& e : g.edges()) out << ' ' << e.u << ' ' << e.v << ' ' << (e.sign > 0 ? '+' : '-');
  return out.str();
}

inline SignedGraph parse_line(std::string_view line) {
  std::istringstream in{std::string(line)};
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw Error(ErrorCode::ParseError, "expected 'n m' header");
  if (m < 0) throw Error(ErrorCode::ParseError, "negative edge count");
  if (n < 1 || n > kMaxVertices) throw Error(ErrorCode::ParseError, "order out of range: " + std::to_string(n));
  std::vector<SignedEdge> edges;
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    std::string s;
    if (!(in >> u >> v >> s)) throw Error(ErrorCode::ParseError, "truncated edge list");
    if (s != "+" && s != "-") throw Error(ErrorCode::ParseError, "sign must be '+' or '-', got '" + s + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, std::to_string(u) + "," + std::to_string(v));
    }
    edges.push_back({static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)), s == "+" ? 1 : -1});
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::ParseError, "trailing tokens after " + std::to_string(m) + " edges");
  return make_signed_graph(static_cast<int>(n), edges);
}

}  // namespace signed_spectra
