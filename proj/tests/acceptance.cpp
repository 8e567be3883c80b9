// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signed_spectra/signed_spectra.hpp"
#include "support/charpoly_oracle.hpp"
#include "support/oracles.hpp"

namespace ss = signed_spectra;

namespace {

constexpr double kTieTol = 1e-8;
constexpr double kBoundTol = 1e-8;
constexpr double kSpectrumTol = 1e-8;
constexpr double kPositiveEntry = 1e-7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

std::vector<ss::ExtremalReport> g_exhaustive;  // filled by criterion 1, audited by 7

Outcome c4_theorem() {
  std::ostringstream detail;
  bool pass = true;
  const int threads = ss::resolve_threads();
  for (int n = 5; n <= 7; ++n) {
    ss::ExhaustiveOptions opt;
    opt.threads = threads;
    ss::ExtremalReport report = ss::exhaustive_extremal(n, 4, opt);
    const double gap = std::abs(report.max_lambda1 - report.gamma1_lambda1);
    bool all_gamma1 = !report.argmax.empty();
    for (const auto& rec : report.argmax) all_gamma1 = all_gamma1 && ss::is_switching_isomorphic(rec.graph, ss::gamma1(n));
    const bool ok = gap <= kTieTol && all_gamma1;
    pass = pass && ok;
    detail << "n=" << n << " classes=" << report.classes_scanned << " candidates=" << report.candidates
           << " max=" << ss::format_real(report.max_lambda1) << " argmax=" << report.argmax.size()
           << (all_gamma1 ? " all~gamma1" : " NOT-gamma1") << "; ";
    g_exhaustive.push_back(std::move(report));
  }
  return {pass, detail.str()};
}

Outcome gamma1_sweep() {
  double smallest = std::numeric_limits<double>::infinity(), worst_residual = 0.0;
  int smallest_at = 0;
  bool pass = true;
  for (int n = 5; n <= 40; ++n) {
    const ss::SpectralResult res = ss::index(ss::gamma1(n), false);
    const double margin = res.lambda1 - (n - 3);
    pass = pass && margin > 0 && res.residual <= ss::residual_bound(res.lambda1);
    worst_residual = std::max(worst_residual, res.residual);
    if (margin < smallest) {
      smallest = margin;
      smallest_at = n;
    }
  }
  std::ostringstream detail;
  detail << "min margin " << ss::format_real(smallest) << " at n=" << smallest_at << ", max residual " << worst_residual;
  return {pass, detail.str()};
}

Outcome bound_audit() {
  std::size_t audited = 0, violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  auto check = [&](const ss::SignedGraph& g) {
    const ss::BoundReport r = ss::bound_report("", g);
    ++audited;
    if (r.lambda1 > r.stanic + kBoundTol || r.stanic > r.hong + kBoundTol) ++violations;
    tightest = std::min(tightest, r.slack_stanic);
  };
  for (int n = 1; n <= 6; ++n) {
    for (const auto& base : ss::connected_graphs(n)) {
      ss::for_each_switching_class(base, [&](const ss::SignedGraph& rep, std::uint64_t) { check(rep); });
    }
  }
  const std::size_t classes = audited;
  ss::Rng rng(20240601);
  std::uniform_int_distribution<int> order(2, 15);
  std::uniform_real_distribution<double> density(0.05, 0.95), negative(0.0, 1.0);
  std::vector<ss::SignedGraph> random;
  for (int i = 0; i < 10'000; ++i) {
    const int n = order(rng);
    random.push_back(ss::random_connected_signed_graph(rng, n, density(rng), negative(rng)));
  }
  const auto reports = ss::parallel_map(random.size(), ss::resolve_threads(),
                                        [&](std::size_t i) { return ss::bound_report("", random[i]); });
  for (const auto& r : reports) {
    ++audited;
    if (r.lambda1 > r.stanic + kBoundTol || r.stanic > r.hong + kBoundTol) ++violations;
    tightest = std::min(tightest, r.slack_stanic);
  }
  std::ostringstream detail;
  detail << classes << " classes + " << random.size() << " random graphs, " << violations
         << " violations, smallest stanic slack " << ss::format_real(tightest);
  return {violations == 0, detail.str()};
}

Outcome oracle_equivalences() {
  ss::Rng rng(4242);
  int girth_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto g = ss::random_signed_graph(rng, n, 0.25 + 0.5 * static_cast<double>(rng() % 100) / 100, 0.35);
    const auto fast = ss::negative_girth(g);
    const auto slow = oracle::negative_girth(g);
    const bool same = fast.has_value() == slow.has_value() && (!fast || static_cast<int>(fast->length()) == *slow);
    if (!same || (fast && !ss::validate_witness(g, *fast))) ++girth_mismatch;
  }

  int frustration_mismatch = 0, frustration_checked = 0;
  while (frustration_checked < 100) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto g = ss::random_signed_graph(rng, n, 0.55, 0.5);
    if (g.size() > 14) continue;
    ++frustration_checked;
    if (ss::frustration_index(g).epsilon != oracle::frustration_by_deletion(g)) ++frustration_mismatch;
  }

  int spectra_checked = 0, spectra_mismatch = 0;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& base : ss::connected_graphs(n)) {
      ss::for_each_switching_class(base, [&](const ss::SignedGraph& rep, std::uint64_t) {
        ++spectra_checked;
        const auto exact = oracle::eigenvalues(rep);
        const auto numeric = ss::spectrum(rep);
        bool ok = exact.size() == numeric.size();
        for (std::size_t i = 0; ok && i < exact.size(); ++i) {
          worst = std::max(worst, std::abs(exact[i] - numeric[i]));
          ok = std::abs(exact[i] - numeric[i]) <= kSpectrumTol;
        }
        if (!ok) ++spectra_mismatch;
      });
    }
  }
  std::ostringstream detail;
  detail << "(a) girth 500 graphs, " << girth_mismatch << " mismatches; (b) frustration " << frustration_checked
         << " graphs, " << frustration_mismatch << " mismatches; (c) spectra " << spectra_checked << " classes, "
         << spectra_mismatch << " mismatches, max error " << worst;
  return {girth_mismatch == 0 && frustration_mismatch == 0 && spectra_mismatch == 0, detail.str()};
}

Outcome perturbation_monotonicity() {
  ss::Rng rng(99);
  int accepted = 0, sampled = 0, moves = 0, non_positive = 0;
  double smallest = std::numeric_limits<double>::infinity();
  while (accepted < 200) {
    ++sampled;
    const int n = 4 + static_cast<int>(rng() % 9);
    const auto g = ss::random_connected_signed_graph(rng, n, 0.35, 0.4);
    ss::NormalizedGraph norm;
    try {
      norm = ss::normalize_nonnegative(g);
    } catch (const ss::Error&) {
      continue;
    }
    const auto& x = norm.spectrum.eigvec;
    if (*std::min_element(x.begin(), x.end()) <= kPositiveEntry) continue;
    ++accepted;
    const ss::SignedGraph& h = norm.graph;
    auto record = [&](const ss::PerturbationResult& res) {
      ++moves;
      smallest = std::min(smallest, res.delta);
      if (!(res.delta > 0.0)) ++non_positive;
    };
    for (ss::Vertex u = 0; u < n; ++u) {
      for (ss::Vertex v = u + 1; v < n; ++v) {
        const std::vector<ss::Edge> e{{u, v}};
        if (!h.adjacent(u, v)) {
          record(ss::perturb_and_compare(h, ss::PerturbationMove::AddPositiveEdges, e));
        } else if (h.sign(u, v) < 0) {
          record(ss::perturb_and_compare(h, ss::PerturbationMove::RemoveNegativeEdges, e));
          record(ss::perturb_and_compare(h, ss::PerturbationMove::NegateNegativeEdges, e));
        }
      }
    }
  }
  std::ostringstream detail;
  detail << accepted << " graphs (" << sampled << " sampled), " << moves << " moves, " << non_positive
         << " with delta <= 0, smallest delta " << smallest;
  return {non_positive == 0, detail.str()};
}

Outcome refutation_search() {
  const std::pair<int, int> cases[] = {{12, 5}, {13, 5}, {15, 4}, {15, 6}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [n, r] : cases) {
    ss::LocalSearchOptions opt;
    opt.seed = 1;
    opt.iterations = 50'000;
    opt.restarts = 32;
    opt.threads = ss::resolve_threads();
    const auto start = std::chrono::steady_clock::now();
    const ss::ExtremalReport report = ss::local_search(n, r, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool feasible = true;
    for (const auto& rec : report.argmax) {
      feasible = feasible && !ss::is_balanced(rec.graph) && !ss::has_negative_cycle_of_length(rec.graph, r);
    }
    const bool ok = feasible && report.max_lambda1 <= report.gamma1_lambda1 + kTieTol;
    pass = pass && ok;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    detail << "(" << n << "," << r << ") best=" << ss::format_real(report.max_lambda1)
           << " gamma1=" << ss::format_real(report.gamma1_lambda1) << " " << ss::to_string(report.verdict) << " " << buf
           << "; ";
  }
  return {pass, detail.str()};
}

Outcome structural_audit() {
  if (g_exhaustive.empty()) return {false, "criterion 1 produced no reports"};
  bool pass = true;
  int audited = 0;
  std::ostringstream detail;
  for (const auto& report : g_exhaustive) {
    for (const auto& rec : report.argmax) {
      const ss::WinnerAudit audit = ss::audit_winner(rec, report.n);
      ++audited;
      if (!audit.matches_all()) {
        pass = false;
        detail << "n=" << report.n << " " << rec.provenance << " negatives=" << audit.negative_edges
               << " h=" << audit.h << " max-entry degree=" << audit.max_entry_degree << "; ";
      }
    }
  }
  detail << audited << " winners audited";
  return {pass, detail.str()};
}

Outcome class_count_identity() {
  bool pass = true;
  std::ostringstream detail;
  for (int n = 1; n <= 7; ++n) {
    const auto corpus = ss::connected_graphs(n);
    std::uint64_t expected = 0;
    for (const auto& g : corpus) expected += std::uint64_t{1} << (g.size() - g.order() + 1);
    std::uint64_t seen = 0;
    const std::uint64_t emitted =
        ss::enumerate_switching_classes(corpus, [&](const ss::SignedGraph&, const ss::ClassProvenance&) { ++seen; });
    bool ok = emitted == expected && seen == expected;
    for (const auto& report : g_exhaustive) {
      if (report.n == n) ok = ok && report.classes_scanned == expected;
    }
    pass = pass && ok;
    detail << "n=" << n << ":" << emitted << (ok ? "" : "(expected " + std::to_string(expected) + ")") << " ";
  }
  return {pass, detail.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "C4 theorem at n = 5, 6, 7", c4_theorem},
      {2, "gamma1 margin over n-3 for n = 5..40", gamma1_sweep},
      {3, "spectral bound audit", bound_audit},
      {4, "oracle equivalences", oracle_equivalences},
      {5, "perturbation monotonicity", perturbation_monotonicity},
      {6, "refutation search", refutation_search},
      {7, "structural audit of exhaustive winners", structural_audit},
      {8, "switching class count identity", class_count_identity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s criterion %d: %s [%.1fs] %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
