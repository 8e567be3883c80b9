#pragma once

#include <cmath>
#include <string>

#include "signed_spectra/constructions.hpp"
#include "signed_spectra/cycles.hpp"
#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"
#include "signed_spectra/spectra.hpp"

namespace signed_spectra {

/// Slack below this is reported as tight.
inline constexpr double kTightSlack = 1e-8;

namespace detail {

inline double checked_root(const SignedGraph& g, long long radicand) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "bound requires a connected graph");
  if (radicand < 0) throw Error(ErrorCode::NegativeRadicand, std::to_string(radicand));
  return std::sqrt(static_cast<double>(radicand));
}

}  // namespace detail

/// sqrt(2e - n + 1), an upper bound on lambda1 of the underlying graph.
inline double hong_bound(const SignedGraph& g) {
  return detail::checked_root(g, 2LL * g.size() - g.order() + 1);
}

/// sqrt(2(e - epsilon) - n + 1) for a known frustration index.
inline double stanic_bound(const SignedGraph& g, int epsilon) {
  return detail::checked_root(g, 2LL * (g.size() - epsilon) - g.order() + 1);
}

inline double stanic_bound(const SignedGraph& g) {
  if (!is_connected(g)) throw Error(ErrorCode::Disconnected, "bound requires a connected graph");
  return stanic_bound(g, frustration_index(g).epsilon);
}

/// lambda1(gamma1(n)) - (n - 3).
inline double gamma1_margin(int n) {
  if (n < 5) throw Error(ErrorCode::TooSmall, "gamma1 needs n >= 5");
  return largest_eigenvalue(gamma1(n)) - (n - 3);
}

struct EdgeBudget {
  long long h = 0;  // missing edges relative to K_n
  bool within = false;  // h <= 2n - 6
};

inline EdgeBudget edge_budget_check(const SignedGraph& g) {
  const long long n = g.order();
  const long long h = n * (n - 1) / 2 - g.size();
  return {h, h <= 2 * n - 6};
}

struct BoundReport {
  std::string graph_id;
  double lambda1 = 0.0;
  double hong = 0.0;
  double stanic = 0.0;
  double slack_hong = 0.0;
  double slack_stanic = 0.0;

  bool violated(double tolerance = kTightSlack) const noexcept {
    return slack_stanic < -tolerance || hong - stanic < -tolerance;
  }
};

inline BoundReport bound_report(std::string graph_id, const SignedGraph& g) {
  BoundReport r;
  r.graph_id = std::move(graph_id);
  r.lambda1 = largest_eigenvalue(g);
  r.hong = hong_bound(g);
  r.stanic = stanic_bound(g);
  r.slack_hong = r.hong - r.lambda1;
  r.slack_stanic = r.stanic - r.lambda1;
  return r;
}

}  // namespace signed_spectra
