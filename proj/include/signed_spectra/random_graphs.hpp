#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

using Rng = std::mt19937_64;

/// G(n, p) with each edge negative with probability p_negative.
inline SignedGraph random_signed_graph(Rng& rng, int n, double p_edge, double p_negative) {
  std::bernoulli_distribution edge(p_edge), negative(p_negative);
  SignedGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (edge(rng)) g = g.with_edge(u, v, negative(rng) ? -1 : 1);
    }
  }
  return g;
}

/// Random recursive spanning tree plus G(n, p) extra edges.
inline SignedGraph random_connected_signed_graph(Rng& rng, int n, double p_edge, double p_negative) {
  std::bernoulli_distribution edge(p_edge), negative(p_negative);
  std::vector<Vertex> labels(static_cast<std::size_t>(n));
  std::iota(labels.begin(), labels.end(), 0);
  std::shuffle(labels.begin(), labels.end(), rng);
  SignedGraph g(n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    const Vertex a = labels[static_cast<std::size_t>(i)];
    const Vertex b = labels[static_cast<std::size_t>(pick(rng))];
    g = g.with_edge(std::min(a, b), std::max(a, b), negative(rng) ? -1 : 1);
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v) && edge(rng)) g = g.with_edge(u, v, negative(rng) ? -1 : 1);
    }
  }
  return g;
}

inline SwitchSet random_switch_set(Rng& rng, int n) {
  return SwitchSet(rng() & low_mask(n));
}

inline std::vector<Vertex> random_permutation(Rng& rng, int n) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace signed_spectra
