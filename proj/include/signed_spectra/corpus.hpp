#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

inline constexpr int kMaxCanonicalOrder = 11;
inline constexpr int kMaxGeneratedOrder = 7;

struct CanonicalForm {
  std::uint64_t code = 0;     // upper triangle in graph6 order under `order`
  std::vector<Vertex> order;  // order[position] = original vertex
};

namespace detail {

/// Stable coloring by iterated degree refinement; colors are ranks of the
/// (color, sorted neighbor colors) signatures, so they are labeling-invariant.
inline std::vector<int> refined_colors(const SignedGraph& g) {
  const int n = g.order();
  std::vector<int> color(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = g.degree(v);
  int classes = -1;
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> signature(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      auto& sig = signature[static_cast<std::size_t>(v)];
      sig.first = color[static_cast<std::size_t>(v)];
      for (Mask nb = g.neighbors(v); nb; nb &= nb - 1) sig.second.push_back(color[static_cast<std::size_t>(std::countr_zero(nb))]);
      std::sort(sig.second.begin(), sig.second.end());
    }
    auto distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v) {
      color[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), signature[static_cast<std::size_t>(v)]) - distinct.begin());
    }
    if (static_cast<int>(distinct.size()) == classes) return color;
    classes = static_cast<int>(distinct.size());
  }
}

inline std::uint64_t code_under(const SignedGraph& g, const std::vector<Vertex>& order) {
  std::uint64_t code = 0;
  const int n = g.order();
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      code = (code << 1) | (g.adjacent(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) ? 1u : 0u);
    }
  }
  return code;
}

}  // namespace detail

/// Canonical form of the underlying graph: maximum adjacency code over all
/// orderings that list refinement cells in color order.
inline CanonicalForm canonical_form(const SignedGraph& g) {
  const int n = g.order();
  if (n > kMaxCanonicalOrder) throw Error(ErrorCode::TooLarge, "canonical form supports order <= 11");
  const std::vector<int> color = detail::refined_colors(g);
  std::vector<std::vector<Vertex>> cells(static_cast<std::size_t>(*std::max_element(color.begin(), color.end()) + 1));
  for (Vertex v = 0; v < n; ++v) cells[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])].push_back(v);

  CanonicalForm best;
  bool first = true;
  std::vector<Vertex> order;
  for (;;) {
    order.clear();
    for (const auto& cell : cells) order.insert(order.end(), cell.begin(), cell.end());
    const std::uint64_t code = detail::code_under(g, order);
    if (first || code > best.code) {
      best = {code, order};
      first = false;
    }
    std::size_t k = cells.size();
    while (k > 0 && !std::next_permutation(cells[k - 1].begin(), cells[k - 1].end())) --k;
    if (k == 0) break;
  }
  return best;
}

inline SignedGraph canonical_relabel(const SignedGraph& g) {
  const CanonicalForm form = canonical_form(g);
  std::vector<Vertex> perm(static_cast<std::size_t>(g.order()));
  for (std::size_t pos = 0; pos < form.order.size(); ++pos) perm[static_cast<std::size_t>(form.order[pos])] = static_cast<Vertex>(pos);
  return relabel(g, perm);
}

/// All connected graphs of order n up to isomorphism (as all-positive signed
/// graphs), ordered by edge count then canonical code. Every connected graph
/// has a non-cut vertex, so each one arises by attaching a vertex to a
/// connected graph of order n-1.
inline std::vector<SignedGraph> connected_graphs(int n) {
  if (n < 1) throw Error(ErrorCode::TooSmall, "order must be positive");
  if (n > kMaxGeneratedOrder) throw Error(ErrorCode::BudgetExceeded, "built-in generator covers n <= 7");
  if (n == 1) return {SignedGraph(1)};
  std::map<std::pair<int, std::uint64_t>, SignedGraph> unique;
  for (const SignedGraph& base : connected_graphs(n - 1)) {
    SignedGraph grown(n);
    for (const auto& e : base.edges()) grown = grown.with_edge(e.u, e.v, 1);
    for (Mask attach = 1; attach < bit(n - 1); ++attach) {
      SignedGraph h = grown;
      for (Mask a = attach; a; a &= a - 1) h = h.with_edge(std::countr_zero(a), n - 1, 1);
      const CanonicalForm form = canonical_form(h);
      const auto key = std::make_pair(h.size(), form.code);
      if (unique.contains(key)) continue;
      unique.emplace(key, canonical_relabel(h));
    }
  }
  std::vector<SignedGraph> out;
  out.reserve(unique.size());
  for (auto& [key, g] : unique) out.push_back(std::move(g));
  return out;
}

}  // namespace signed_spectra
