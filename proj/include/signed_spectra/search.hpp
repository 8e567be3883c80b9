#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "signed_spectra/constructions.hpp"
#include "signed_spectra/corpus.hpp"
#include "signed_spectra/cycles.hpp"
#include "signed_spectra/error.hpp"
#include "signed_spectra/parallel.hpp"
#include "signed_spectra/random_graphs.hpp"
#include "signed_spectra/signed_graph.hpp"
#include "signed_spectra/spectra.hpp"
#include "signed_spectra/bounds.hpp"

namespace signed_spectra {

inline constexpr double kTieTolerance = 1e-8;
inline constexpr int kMaxSweepOrder = 8;
inline constexpr int kMaxExhaustiveOrder = 7;
inline constexpr int kMaxLocalSearchOrder = 60;
inline constexpr std::uint64_t kDefaultClassBudget = std::uint64_t{1} << 32;

struct SearchRecord {
  SignedGraph graph;
  double lambda1 = 0.0;
  bool unbalanced = false;
  std::map<int, bool> crfree;  // r -> no negative cycle of length r
  std::string provenance;
};

enum class Verdict { UniqueGamma1, Tie, Counterexample, Inconclusive };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::UniqueGamma1: return "unique-gamma1";
    case Verdict::Tie: return "tie";
    case Verdict::Counterexample: return "counterexample";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

struct ExtremalReport {
  std::string mode;  // "exhaustive" or "local-search"
  int n = 0;
  int r = 0;
  bool within_theorem_range = false;  // 4 <= r <= floor(n/3) + 1
  double max_lambda1 = 0.0;
  std::vector<SearchRecord> argmax;
  double gamma1_lambda1 = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t classes_scanned = 0;  // exhaustive mode
  std::uint64_t candidates = 0;
  std::uint64_t evaluations = 0;      // local-search mode: move evaluations over all restarts
  std::optional<std::uint64_t> seed;
  std::uint64_t iterations = 0;
  int restarts = 0;
};

inline bool within_theorem_range(int n, int r) noexcept { return r >= 4 && r <= n / 3 + 1; }

inline SearchRecord make_search_record(const SignedGraph& g, int r, std::string provenance) {
  SearchRecord rec{g, largest_eigenvalue(g), !is_balanced(g), {}, std::move(provenance)};
  rec.crfree[r] = !has_negative_cycle_of_length(g, r).has_value();
  return rec;
}

/// True iff g is switching isomorphic to gamma1(n). Any relabeling maps the two
/// adjacent degree-2 vertices with a common neighbor onto {0,1}; the cycle
/// space of that underlying graph is spanned by the triangle and the cycles of
/// the clique, so the class is fixed by a negative triangle and a balanced
/// clique.
inline bool is_gamma1_class(const SignedGraph& g) {
  const int n = g.order();
  if (n < 5 || g.size() != (n - 2) * (n - 3) / 2 + 3) return false;
  for (Vertex a = 0; a < n; ++a) {
    if (g.degree(a) != 2) continue;
    for (Mask nb = g.neighbors(a); nb; nb &= nb - 1) {
      const Vertex b = std::countr_zero(nb);
      if (b < a || g.degree(b) != 2) continue;
      const Mask shared = g.neighbors(a) & g.neighbors(b);
      if (std::popcount(shared) != 1) continue;
      const Vertex c = std::countr_zero(shared);
      const Mask rest = g.vertex_mask() & ~bit(a) & ~bit(b);
      bool clique = true;
      for (Mask m = rest; m && clique; m &= m - 1) {
        const Vertex v = std::countr_zero(m);
        clique = (g.neighbors(v) & rest) == (rest & ~bit(v));
      }
      if (!clique) continue;
      if (g.sign(a, b) * g.sign(b, c) * g.sign(c, a) != -1) continue;
      const SignedGraph clique_only = g.without_edge(a, b).without_edge(a, c).without_edge(b, c);
      if (is_balanced(clique_only)) return true;
    }
  }
  return false;
}

/// Brute-force switching isomorphism up to order 10, structural recognition above.
inline bool is_gamma1_equivalent(const SignedGraph& g) {
  if (g.order() < 5) return false;
  if (g.order() <= kMaxIsomorphismOrder) return is_switching_isomorphic(g, gamma1(g.order()));
  return is_gamma1_class(g);
}

// ---------------------------------------------------------------------------
// Switching-class enumeration

struct ClassProvenance {
  std::size_t graph_index = 0;
  std::uint64_t class_index = 0;  // bitmask over co-tree edges set negative

  std::string str() const { return "g" + std::to_string(graph_index) + ":c" + std::to_string(class_index); }
};

inline std::uint64_t switching_class_count(const SignedGraph& underlying_graph) {
  if (!is_connected(underlying_graph)) throw Error(ErrorCode::Disconnected, "class count needs a connected graph");
  const int cyclomatic = underlying_graph.size() - underlying_graph.order() + 1;
  if (cyclomatic >= 63) throw Error(ErrorCode::BudgetExceeded, "too many switching classes");
  return std::uint64_t{1} << cyclomatic;
}

/// Calls sink(representative, class_index) once per switching class of a
/// connected underlying graph. Fixing the spanning-forest edges positive
/// leaves the co-tree signs free, one representative per class.
template <class Sink>
void for_each_switching_class(const SignedGraph& underlying_graph, Sink&& sink) {
  const std::uint64_t classes = switching_class_count(underlying_graph);
  const SpanningForest forest = spanning_forest(underlying_graph);
  std::vector<Edge> cotree;
  for (const auto& e : underlying_graph.edges()) {
    if (!forest.is_tree_edge(e.u, e.v)) cotree.push_back({e.u, e.v});
  }
  const SignedGraph base = underlying(underlying_graph);
  std::array<Mask, kMaxVertices> rows{};
  for (std::uint64_t cls = 0; cls < classes; ++cls) {
    rows.fill(0);
    for (std::uint64_t m = cls; m; m &= m - 1) {
      const Edge& e = cotree[static_cast<std::size_t>(std::countr_zero(m))];
      rows[e.u] |= bit(e.v);
      rows[e.v] |= bit(e.u);
    }
    sink(base.with_negative_rows(rows), cls);
  }
}

/// Emits every switching class of every graph in the corpus; returns the total,
/// which equals the sum of 2^(e - n + 1).
template <class Sink>
std::uint64_t enumerate_switching_classes(std::span<const SignedGraph> corpus, Sink&& sink,
                                          std::uint64_t budget = kDefaultClassBudget) {
  std::uint64_t expected = 0;
  for (const auto& g : corpus) {
    if (g.order() > kMaxSweepOrder) throw Error(ErrorCode::BudgetExceeded, "full sweeps are capped at n <= 8");
    expected += switching_class_count(g);
    if (expected > budget) throw Error(ErrorCode::BudgetExceeded, "class budget exceeded");
  }
  std::uint64_t emitted = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for_each_switching_class(corpus[i], [&](const SignedGraph& rep, std::uint64_t cls) {
      sink(rep, ClassProvenance{i, cls});
      ++emitted;
    });
  }
  return emitted;
}

// ---------------------------------------------------------------------------
// Verdicts

namespace detail {

inline void settle_verdict(ExtremalReport& report) {
  const double top = report.max_lambda1;
  if (report.argmax.empty()) {
    report.verdict = Verdict::Inconclusive;
  } else if (top > report.gamma1_lambda1 + kTieTolerance) {
    report.verdict = Verdict::Counterexample;
  } else if (top >= report.gamma1_lambda1 - kTieTolerance) {
    const bool all_gamma1 = std::all_of(report.argmax.begin(), report.argmax.end(),
                                        [](const SearchRecord& rec) { return is_gamma1_equivalent(rec.graph); });
    report.verdict = all_gamma1 ? Verdict::UniqueGamma1 : Verdict::Tie;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
}

inline void keep_near_max(std::vector<SearchRecord>& records, double top) {
  std::erase_if(records, [&](const SearchRecord& rec) { return rec.lambda1 < top - kTieTolerance; });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive extremal scan

/// One CSV row per switching class: provenance,n,e,lambda1,unbalanced,crfree_r.
struct ClassRow {
  std::string provenance;
  int n = 0;
  int e = 0;
  double lambda1 = 0.0;
  bool unbalanced = false;
  bool crfree = false;
};

struct ExhaustiveOptions {
  std::optional<std::vector<SignedGraph>> corpus;  // underlying graphs; built-in generator when unset
  int threads = 1;
  std::function<void(const ClassRow&)> row_sink;   // every class, in corpus order
};

/// Scans every connected switching class of order n and keeps the unbalanced
/// ones without a negative r-cycle, reporting the largest index among them.
inline ExtremalReport exhaustive_extremal(int n, int r, const ExhaustiveOptions& options = {}) {
  if (n > kMaxExhaustiveOrder) throw Error(ErrorCode::BudgetExceeded, "exhaustive scan is capped at n <= 7");
  if (n < 5) throw Error(ErrorCode::InvalidRange, "extremal comparison against gamma1 needs n >= 5");
  if (r < 4 || r > n) throw Error(ErrorCode::InvalidRange, "r must lie in 4..n");

  std::vector<SignedGraph> corpus;
  if (options.corpus) {
    for (const auto& g : *options.corpus) {
      if (g.order() == n && is_connected(g)) corpus.push_back(g);
    }
    if (corpus.empty()) throw Error(ErrorCode::CorpusMissing, "corpus has no connected graph of order " + std::to_string(n));
  } else {
    corpus = connected_graphs(n);
  }

  struct Partial {
    std::uint64_t classes = 0;
    std::uint64_t candidates = 0;
    double top = -1e300;
    std::vector<SearchRecord> near_top;
    std::vector<ClassRow> rows;
  };
  const bool stream = static_cast<bool>(options.row_sink);
  auto scan = [&](std::size_t i) {
    Partial part;
    for_each_switching_class(corpus[i], [&](const SignedGraph& rep, std::uint64_t cls) {
      ++part.classes;
      const bool unbalanced = !is_balanced(rep);
      const bool crfree = !has_negative_cycle_of_length(rep, r).has_value();
      const bool candidate = unbalanced && crfree;
      if (!candidate && !stream) return;
      const double lambda = largest_eigenvalue(rep);
      const ClassProvenance prov{i, cls};
      if (stream) part.rows.push_back({prov.str(), n, rep.size(), lambda, unbalanced, crfree});
      if (!candidate) return;
      ++part.candidates;
      if (lambda < part.top - kTieTolerance) return;
      part.top = std::max(part.top, lambda);
      SearchRecord rec{rep, lambda, true, {{r, true}}, prov.str()};
      part.near_top.push_back(std::move(rec));
      detail::keep_near_max(part.near_top, part.top);
    });
    return part;
  };
  std::vector<Partial> parts = parallel_map(corpus.size(), options.threads, scan);

  ExtremalReport report;
  report.mode = "exhaustive";
  report.n = n;
  report.r = r;
  report.within_theorem_range = within_theorem_range(n, r);
  report.gamma1_lambda1 = largest_eigenvalue(gamma1(n));
  report.max_lambda1 = -1e300;
  for (auto& part : parts) {
    report.classes_scanned += part.classes;
    report.candidates += part.candidates;
    report.max_lambda1 = std::max(report.max_lambda1, part.top);
    if (stream) {
      for (const auto& row : part.rows) options.row_sink(row);
    }
  }
  for (auto& part : parts) {
    for (auto& rec : part.near_top) report.argmax.push_back(std::move(rec));
  }
  detail::keep_near_max(report.argmax, report.max_lambda1);
  detail::settle_verdict(report);
  return report;
}

// ---------------------------------------------------------------------------
// Local search

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 50'000;  // move evaluations per restart
  int restarts = 32;
  int threads = 1;
  bool allow_r4_outside_range = true;
};

enum class MoveKind { Add, Remove, Flip };

struct Move {
  MoveKind kind = MoveKind::Add;
  Vertex u = 0;
  Vertex v = 0;
  int sign = 1;  // for Add
};

/// Applies a move if the result stays unbalanced and free of negative r-cycles.
/// Only cycles through the touched edge can change, so the cycle check is local.
inline std::optional<SignedGraph> apply_feasible_move(const SignedGraph& g, const Move& m, int r) {
  switch (m.kind) {
    case MoveKind::Add: {
      SignedGraph h = g.with_edge(m.u, m.v, m.sign);
      if (negative_cycle_through_edge(h, m.u, m.v, r)) return std::nullopt;
      return h;  // adding an edge keeps every existing negative cycle
    }
    case MoveKind::Remove: {
      SignedGraph h = g.without_edge(m.u, m.v);
      if (is_balanced(h)) return std::nullopt;
      return h;
    }
    case MoveKind::Flip: {
      SignedGraph h = g.with_flipped_sign(m.u, m.v);
      if (is_balanced(h)) return std::nullopt;
      if (negative_cycle_through_edge(h, m.u, m.v, r)) return std::nullopt;
      return h;
    }
  }
  return std::nullopt;
}

inline std::vector<Move> neighborhood(const SignedGraph& g) {
  std::vector<Move> moves;
  for (Vertex u = 0; u < g.order(); ++u) {
    for (Vertex v = u + 1; v < g.order(); ++v) {
      if (g.adjacent(u, v)) {
        moves.push_back({MoveKind::Remove, u, v, 0});
        moves.push_back({MoveKind::Flip, u, v, 0});
      } else {
        moves.push_back({MoveKind::Add, u, v, 1});
        moves.push_back({MoveKind::Add, u, v, -1});
      }
    }
  }
  return moves;
}

namespace detail {

inline constexpr int kSteepestMaxOrder = 20;
inline constexpr int kEscapeFlips = 3;
inline constexpr double kRandomStartDensity = 0.8;
inline constexpr int kStartMutations = 5;
inline constexpr double kImprovement = 1e-12;

inline Move random_move(Rng& rng, const SignedGraph& g) {
  std::uniform_int_distribution<Vertex> pick(0, g.order() - 1);
  Vertex u = pick(rng), v = pick(rng);
  while (v == u) v = pick(rng);
  if (u > v) std::swap(u, v);
  const bool coin = (rng() & 1) != 0;
  if (g.adjacent(u, v)) return {coin ? MoveKind::Remove : MoveKind::Flip, u, v, 0};
  return {MoveKind::Add, u, v, coin ? 1 : -1};
}

class Climber {
 public:
  Climber(int n, int r, std::uint64_t seed, int restart, std::uint64_t budget)
      : n_(n), r_(r), budget_(budget), restart_(restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    rng_.seed(seq);
  }

  SearchRecord run() {
    std::optional<SignedGraph> start;
    if (restart_ % 2 == 0) start = random_start();
    current_ = start ? *start : mutated_gamma1();
    current_lambda_ = largest_eigenvalue(current_);
    best_ = current_;
    best_lambda_ = current_lambda_;
    while (used_ < budget_) {
      const bool improved = n_ <= kSteepestMaxOrder ? steepest_step() : first_improvement_step();
      if (!improved && used_ < budget_) escape();
    }
    SearchRecord rec = make_search_record(best_, r_, "restart " + std::to_string(restart_) + " step " +
                                                         std::to_string(best_step_));
    return rec;
  }

 private:
  std::optional<SignedGraph> random_start() {
    for (int attempt = 0; attempt < 20; ++attempt) {
      SignedGraph g = random_signed_graph(rng_, n_, kRandomStartDensity, 0.5);
      while (auto witness = has_negative_cycle_of_length(g, r_)) {
        const auto& cyc = witness->vertices;
        std::uniform_int_distribution<std::size_t> pick(0, cyc.size() - 1);
        const std::size_t i = pick(rng_);
        g = g.without_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
      }
      if (!is_balanced(g)) return g;
    }
    return std::nullopt;
  }

  SignedGraph mutated_gamma1() {
    SignedGraph g = relabel(gamma1(n_), random_permutation(rng_, n_));
    int applied = 0;
    for (int attempt = 0; attempt < 1000 && applied < kStartMutations; ++attempt) {
      if (auto h = apply_feasible_move(g, random_move(rng_, g), r_)) {
        g = *h;
        ++applied;
      }
    }
    return g;
  }

  void accept(SignedGraph g, double lambda) {
    current_ = std::move(g);
    current_lambda_ = lambda;
    if (current_lambda_ > best_lambda_) {
      best_ = current_;
      best_lambda_ = current_lambda_;
      best_step_ = used_;
    }
  }

  bool steepest_step() {
    std::optional<SignedGraph> chosen;
    double chosen_lambda = current_lambda_ + kImprovement;
    for (const Move& m : neighborhood(current_)) {
      if (used_ >= budget_) break;
      ++used_;
      auto h = apply_feasible_move(current_, m, r_);
      if (!h) continue;
      const double lambda = largest_eigenvalue(*h);
      if (lambda > chosen_lambda) {
        chosen = std::move(h);
        chosen_lambda = lambda;
      }
    }
    if (!chosen) return false;
    accept(std::move(*chosen), chosen_lambda);
    return true;
  }

  bool first_improvement_step() {
    const std::uint64_t patience = static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(n_ - 1);
    for (std::uint64_t tries = 0; tries < patience && used_ < budget_; ++tries) {
      ++used_;
      auto h = apply_feasible_move(current_, random_move(rng_, current_), r_);
      if (!h) continue;
      const double lambda = largest_eigenvalue(*h);
      if (lambda > current_lambda_ + kImprovement) {
        accept(std::move(*h), lambda);
        return true;
      }
    }
    return false;
  }

  // Plateau escape: a few random feasible sign flips, accepted regardless of lambda.
  void escape() {
    int flipped = 0;
    for (int attempt = 0; attempt < 10 * kEscapeFlips && flipped < kEscapeFlips && used_ < budget_; ++attempt) {
      ++used_;
      const auto edges = current_.edges();
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      const auto& e = edges[pick(rng_)];
      if (auto h = apply_feasible_move(current_, {MoveKind::Flip, e.u, e.v, 0}, r_)) {
        current_ = *h;
        ++flipped;
      }
    }
    if (flipped > 0) accept(current_, largest_eigenvalue(current_));
  }

  int n_;
  int r_;
  std::uint64_t budget_;
  int restart_;
  Rng rng_;
  std::uint64_t used_ = 0;
  SignedGraph current_;
  double current_lambda_ = 0.0;
  SignedGraph best_;
  double best_lambda_ = 0.0;
  std::uint64_t best_step_ = 0;
};

}  // namespace detail

inline void check_local_search_range(int n, int r, bool allow_r4_outside_range) {
  if (n > kMaxLocalSearchOrder) throw Error(ErrorCode::TooLarge, "local search supports n <= 60");
  if (n < 5) throw Error(ErrorCode::InvalidRange, "local search needs n >= 5");
  const bool r4_exception = allow_r4_outside_range && r == 4;
  if (!within_theorem_range(n, r) && !r4_exception) {
    throw Error(ErrorCode::InvalidRange,
                "r must lie in 4.." + std::to_string(n / 3 + 1) + " for n=" + std::to_string(n));
  }
}

/// Hill-climbs lambda1 over unbalanced signed graphs of order n without a
/// negative r-cycle, trying to beat gamma1(n). Restarts are independent and
/// merged in restart order, so the report depends only on the options.
inline ExtremalReport local_search(int n, int r, const LocalSearchOptions& options = {}) {
  check_local_search_range(n, r, options.allow_r4_outside_range);
  if (options.restarts < 1 || options.iterations < 1) {
    throw Error(ErrorCode::InvalidRange, "restarts and iterations must be positive");
  }
  std::vector<SearchRecord> winners = parallel_map(
      static_cast<std::size_t>(options.restarts), options.threads, [&](std::size_t restart) {
        return detail::Climber(n, r, options.seed, static_cast<int>(restart), options.iterations).run();
      });

  ExtremalReport report;
  report.mode = "local-search";
  report.n = n;
  report.r = r;
  report.within_theorem_range = within_theorem_range(n, r);
  report.gamma1_lambda1 = largest_eigenvalue(gamma1(n));
  report.seed = options.seed;
  report.iterations = options.iterations;
  report.restarts = options.restarts;
  report.evaluations = static_cast<std::uint64_t>(options.restarts) * options.iterations;
  report.candidates = winners.size();
  report.max_lambda1 = -1e300;
  for (const auto& w : winners) {
    if (!w.unbalanced || !w.crfree.at(r)) {
      throw Error(ErrorCode::PreconditionNotMet, "search produced an infeasible winner: " + to_line(w.graph));
    }
    report.max_lambda1 = std::max(report.max_lambda1, w.lambda1);
  }
  for (auto& w : winners) {
    if (w.lambda1 < report.max_lambda1 - kTieTolerance) continue;
    const bool duplicate = std::any_of(report.argmax.begin(), report.argmax.end(),
                                       [&](const SearchRecord& seen) { return seen.graph == w.graph; });
    if (!duplicate) report.argmax.push_back(std::move(w));
  }
  detail::settle_verdict(report);
  return report;
}

// ---------------------------------------------------------------------------
// Structural audit of a winner

struct WinnerAudit {
  SignedGraph normalized;
  int negative_edges = 0;
  long long h = 0;
  bool h_within_budget = false;  // h <= 2n - 6
  Vertex max_entry_vertex = 0;
  int max_entry_degree = 0;
  bool max_entry_full_degree = false;  // degree n - 1

  bool one_negative_edge() const noexcept { return negative_edges == 1; }
  bool matches_all() const noexcept { return one_negative_edge() && h_within_budget && max_entry_full_degree; }
};

/// Normalizes a winner to a non-negative eigenvector and records the structure
/// the extremal graph is expected to have. Mismatches are reported, not thrown.
inline WinnerAudit audit_winner(const SearchRecord& rec, int n) {
  if (rec.graph.order() != n) throw Error(ErrorCode::PreconditionNotMet, "record order differs from n");
  if (is_balanced(rec.graph)) throw Error(ErrorCode::NotUnbalanced, "audit needs an unbalanced graph");
  const NormalizedGraph norm = normalize_nonnegative(rec.graph);
  if (norm.spectrum.lambda1 < n - 3) {
    throw Error(ErrorCode::PreconditionNotMet, "audit needs lambda1 >= n - 3");
  }
  WinnerAudit audit{norm.graph};
  audit.negative_edges = norm.graph.negative_edge_count();
  const EdgeBudget budget = edge_budget_check(norm.graph);
  audit.h = budget.h;
  audit.h_within_budget = budget.within;
  const auto& x = norm.spectrum.eigvec;
  audit.max_entry_vertex = static_cast<Vertex>(std::max_element(x.begin(), x.end()) - x.begin());
  audit.max_entry_degree = norm.graph.degree(audit.max_entry_vertex);
  audit.max_entry_full_degree = audit.max_entry_degree == n - 1;
  return audit;
}

}  // namespace signed_spectra
