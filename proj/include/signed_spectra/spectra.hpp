#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

inline constexpr double kZeroEntryThreshold = 1e-7;
inline constexpr double kNonNegativeTolerance = 1e-9;

/// Row-major dense square matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  int rows() const noexcept { return n_; }
  double& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
  double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> data_;
};

inline DenseMatrix adjacency_matrix(const SignedGraph& g) {
  DenseMatrix a(g.order());
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = e.sign;
    a(e.v, e.u) = e.sign;
  }
  return a;
}

struct EigenDecomposition {
  std::vector<double> values;  // descending
  DenseMatrix vectors;         // column k pairs with values[k]; empty unless requested
  int sweeps = 0;
};

inline constexpr int kMaxJacobiSweeps = 100;

inline double off_diagonal_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.rows(); ++j) sum += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * sum);
}

/// Cyclic Jacobi eigensolver for a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12 * n.
inline EigenDecomposition jacobi_eigen(DenseMatrix a, bool want_vectors) {
  const int n = a.rows();
  DenseMatrix v;
  if (want_vectors) {
    v = DenseMatrix(n);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  }
  const double tolerance = 1e-12 * std::max(n, 1);
  int sweep = 0;
  for (;; ++sweep) {
    if (off_diagonal_norm(a) < tolerance) break;
    if (sweep == kMaxJacobiSweeps) {
      throw Error(ErrorCode::ConvergenceFailure, "Jacobi sweep budget exhausted");
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });
  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.reserve(static_cast<std::size_t>(n));
  for (int k : order) out.values.push_back(a(k, k));
  if (want_vectors) {
    out.vectors = DenseMatrix(n);
    for (int col = 0; col < n; ++col) {
      for (int row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[static_cast<std::size_t>(col)]);
    }
  }
  return out;
}

struct SpectralResult {
  double lambda1 = 0.0;
  std::vector<double> eigvec;  // unit length
  double residual = 0.0;       // ||A x - lambda1 x||_2
  std::optional<std::vector<double>> full_spectrum;
};

/// ||A x - lambda x||_2 evaluated straight from the signed adjacency.
inline double eigen_residual(const SignedGraph& g, double lambda, std::span<const double> x) {
  double sum = 0.0;
  for (Vertex i = 0; i < g.order(); ++i) {
    double ax = 0.0;
    for (Mask nb = g.neighbors(i); nb; nb &= nb - 1) {
      const Vertex j = std::countr_zero(nb);
      ax += g.sign(i, j) * x[static_cast<std::size_t>(j)];
    }
    const double r = ax - lambda * x[static_cast<std::size_t>(i)];
    sum += r * r;
  }
  return std::sqrt(sum);
}

inline double residual_bound(double lambda1) { return 1e-8 * std::max(1.0, std::abs(lambda1)); }

/// Orients x so its entry sum is positive (first clearly nonzero entry when
/// the sum vanishes).
inline void orient(std::vector<double>& x) {
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  double pivot = sum;
  if (std::abs(sum) < 1e-12) {
    auto it = std::find_if(x.begin(), x.end(), [](double e) { return std::abs(e) > 1e-9; });
    pivot = it == x.end() ? 1.0 : *it;
  }
  if (pivot < 0) {
    for (double& e : x) e = -e;
  }
}

/// Largest eigenvalue of A(g) with a unit eigenvector.
inline SpectralResult index(const SignedGraph& g, bool keep_spectrum = true) {
  const int n = g.order();
  EigenDecomposition eig = jacobi_eigen(adjacency_matrix(g), true);
  SpectralResult res;
  res.lambda1 = eig.values.front();
  res.eigvec.resize(static_cast<std::size_t>(n));
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    res.eigvec[static_cast<std::size_t>(i)] = eig.vectors(i, 0);
    norm += eig.vectors(i, 0) * eig.vectors(i, 0);
  }
  norm = std::sqrt(norm);
  for (double& e : res.eigvec) e /= norm;
  orient(res.eigvec);
  res.residual = eigen_residual(g, res.lambda1, res.eigvec);
  if (keep_spectrum) res.full_spectrum = std::move(eig.values);
#ifdef SIGNED_SPECTRA_CHECK_INVARIANTS
  if (res.residual > residual_bound(res.lambda1)) {
    throw Error(ErrorCode::ConvergenceFailure, "residual " + std::to_string(res.residual) + " above bound");
  }
#endif
  return res;
}

/// lambda1 only; skips eigenvector accumulation.
inline double largest_eigenvalue(const SignedGraph& g) {
  return jacobi_eigen(adjacency_matrix(g), false).values.front();
}

inline std::vector<double> spectrum(const SignedGraph& g) {
  return jacobi_eigen(adjacency_matrix(g), false).values;
}

struct NormalizedGraph {
  SignedGraph graph;
  SpectralResult spectrum;
  SwitchSet applied;  // graph == switch_at(input, applied)
};

/// Switches g so that its lambda1-eigenvector is entrywise non-negative.
/// Switching at the negative entries of x maps x to |x|; when lambda1 is
/// simple one pass suffices, a second pass is allowed for degenerate cases.
inline NormalizedGraph normalize_nonnegative(const SignedGraph& g) {
  NormalizedGraph cur{g, index(g), SwitchSet{}};
  for (int pass = 0; pass < 2; ++pass) {
    Mask negative = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      if (cur.spectrum.eigvec[static_cast<std::size_t>(v)] < 0) negative |= bit(v);
    }
    if (negative == 0) return cur;
    const SwitchSet s(negative);
    cur.graph = switch_at(cur.graph, s);
    cur.applied = cur.applied ^ s;
    cur.spectrum = index(cur.graph);
  }
  const double lowest = *std::min_element(cur.spectrum.eigvec.begin(), cur.spectrum.eigvec.end());
  if (lowest < -kNonNegativeTolerance) {
    throw Error(ErrorCode::NormalizationFailure, "eigenvector keeps negative entries for graph " + to_line(g));
  }
  return cur;
}

inline int zero_components(std::span<const double> x, double threshold = kZeroEntryThreshold) {
  return static_cast<int>(std::count_if(x.begin(), x.end(), [&](double e) { return std::abs(e) < threshold; }));
}

inline int zero_components(const SpectralResult& res, double threshold = kZeroEntryThreshold) {
  return zero_components(res.eigvec, threshold);
}

enum class PerturbationMove { AddPositiveEdges, RemoveNegativeEdges, NegateNegativeEdges };

struct PerturbationResult {
  SignedGraph graph;
  double delta = 0.0;            // lambda1(graph) - lambda1(input)
  bool strict_certified = false;  // every touched endpoint has entry > 1e-7
};

/// Applies one kind of index-monotone move to every listed edge and reports
/// the change in lambda1. The input should already carry a non-negative
/// principal eigenvector (see normalize_nonnegative).
inline PerturbationResult perturb_and_compare(const SignedGraph& g, PerturbationMove move, std::span<const Edge> edges) {
  const SpectralResult before = index(g, false);
  SignedGraph out = g;
  bool strict = !edges.empty();
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= g.order() || e.v >= g.order() || e.u == e.v) {
      throw Error(ErrorCode::InvalidMoveEdge, "invalid pair");
    }
    switch (move) {
      case PerturbationMove::AddPositiveEdges:
        if (out.adjacent(e.u, e.v)) throw Error(ErrorCode::InvalidMoveEdge, "edge already present");
        out = out.with_edge(e.u, e.v, 1);
        break;
      case PerturbationMove::RemoveNegativeEdges:
        if (out.sign(e.u, e.v) != -1) throw Error(ErrorCode::InvalidMoveEdge, "not a negative edge");
        out = out.without_edge(e.u, e.v);
        break;
      case PerturbationMove::NegateNegativeEdges:
        if (out.sign(e.u, e.v) != -1) throw Error(ErrorCode::InvalidMoveEdge, "not a negative edge");
        out = out.with_flipped_sign(e.u, e.v);
        break;
    }
    strict = strict && before.eigvec[static_cast<std::size_t>(e.u)] > kZeroEntryThreshold &&
             before.eigvec[static_cast<std::size_t>(e.v)] > kZeroEntryThreshold;
  }
  const double after = edges.empty() ? before.lambda1 : largest_eigenvalue(out);
  return {out, after - before.lambda1, strict};
}

}  // namespace signed_spectra
