// signed-spectra: command-line front end.
//
// Exit codes: 0 success or verified, 1 counterexample found, 2 usage or
// precondition error.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "signed_spectra/signed_spectra.hpp"

namespace ss = signed_spectra;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::optional<int> threads;
  std::string output;
  std::string format = "csv";
  bool no_header = false;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

IntRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    if (lo > hi) throw ss::Error(ss::ErrorCode::InvalidRange, "empty range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ss::Error(ss::ErrorCode::ParseError, "expected N or A..B, got '" + text + "'");
  }
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

/// Collects output and writes it to --output or stdout at the end.
class Sink {
 public:
  Sink(const Common& common, std::string command) : common_(common), command_(std::move(command)) {}

  bool json_mode() const { return common_.format == "json"; }

  void csv_header(const char* columns) {
    if (!common_.no_header) out_ << "# signed-spectra " << command_ << " " << timestamp() << "\n";
    out_ << columns << "\n";
  }

  void line(const std::string& text) { out_ << text << "\n"; }

  void document(json doc) {
    if (!common_.no_header) doc["generated"] = "signed-spectra " + command_ + " " + timestamp();
    out_ << doc.dump(2) << "\n";
  }

  void flush() {
    if (common_.output.empty()) {
      std::cout << out_.str();
      std::cout.flush();
      return;
    }
    std::ofstream file(common_.output);
    if (!file) throw ss::Error(ss::ErrorCode::ParseError, "cannot write " + common_.output);
    file << out_.str();
  }

 private:
  const Common& common_;
  std::string command_;
  std::ostringstream out_;
};

void add_common(CLI::App* cmd, Common& common, bool formats = true) {
  cmd->add_option("--threads", common.threads, "worker threads (default $SIGNED_SPECTRA_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--output,-o", common.output, "write results to this file instead of stdout");
  if (formats) cmd->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--no-header", common.no_header, "omit the timestamp header line");
}

ss::SignedGraph read_graph(const std::string& line, const std::string& graph6, const std::string& signs) {
  if (!graph6.empty()) return ss::from_graph6_with_signs(graph6, signs);
  if (!line.empty()) return ss::parse_line(line);
  throw ss::Error(ss::ErrorCode::ParseError, "give a graph in line format or --graph6 with --signs");
}

int verdict_exit(ss::Verdict v) {
  return v == ss::Verdict::Counterexample ? kExitCounterexample : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_verify_c4(const Common& common, const std::string& range_text) {
  const IntRange range = parse_range(range_text);
  if (range.lo < 5) throw ss::Error(ss::ErrorCode::InvalidRange, "the C4 theorem needs n >= 5");
  if (range.hi > ss::kMaxExhaustiveOrder) {
    throw ss::Error(ss::ErrorCode::BudgetExceeded, "verify-c4 is capped at n <= 7");
  }
  Sink sink(common, "verify-c4");
  const int threads = ss::resolve_threads(common.threads);
  json reports = json::array();
  bool all_unique = true;
  if (!sink.json_mode()) sink.csv_header(ss::kClassCsvHeader);
  for (int n = range.lo; n <= range.hi; ++n) {
    ss::ExhaustiveOptions opt;
    opt.threads = threads;
    if (!sink.json_mode()) opt.row_sink = [&](const ss::ClassRow& row) { sink.line(ss::csv_row(row)); };
    const ss::ExtremalReport report = ss::exhaustive_extremal(n, 4, opt);
    all_unique = all_unique && report.verdict == ss::Verdict::UniqueGamma1;
    reports.push_back(ss::to_json(report));
    std::cerr << "n=" << n << " classes=" << report.classes_scanned << " candidates=" << report.candidates
              << " max_lambda1=" << ss::format_real(report.max_lambda1) << " verdict=" << ss::to_string(report.verdict)
              << "\n";
  }
  if (sink.json_mode()) sink.document({{"schema", ss::kReportSchema}, {"command", "verify-c4"}, {"reports", reports}});
  sink.flush();
  return all_unique ? kExitOk : kExitCounterexample;
}

struct SearchArgs {
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 50'000;
  int restarts = 32;
  bool strict_range = false;
};

int cmd_search(const Common& common, const SearchArgs& args) {
  ss::LocalSearchOptions opt;
  opt.seed = args.seed;
  opt.iterations = args.iterations;
  opt.restarts = args.restarts;
  opt.threads = ss::resolve_threads(common.threads);
  opt.allow_r4_outside_range = !args.strict_range;
  const ss::ExtremalReport report = ss::local_search(args.n, args.r, opt);
  Sink sink(common, "search");
  if (sink.json_mode()) {
    sink.document(ss::to_json(report));
  } else {
    sink.csv_header(ss::kClassCsvHeader);
    for (const auto& rec : report.argmax) {
      sink.line(ss::csv_row(ss::ClassRow{rec.provenance, args.n, rec.graph.size(), rec.lambda1, rec.unbalanced,
                                         rec.crfree.at(args.r)}));
    }
  }
  sink.flush();
  std::cerr << "verdict=" << ss::to_string(report.verdict) << " max_lambda1=" << ss::format_real(report.max_lambda1)
            << " gamma1_lambda1=" << ss::format_real(report.gamma1_lambda1) << "\n";
  if (report.verdict == ss::Verdict::Counterexample) {
    for (const auto& rec : report.argmax) std::cerr << "counterexample: " << ss::to_line(rec.graph) << "\n";
  }
  return verdict_exit(report.verdict);
}

struct AuditArgs {
  std::string corpus;
  std::string lines;
  int classes_up_to = 0;
  int random_count = 0;
  int random_max_n = 15;
  std::uint64_t seed = 0;
  std::string gamma1_range;
};

int cmd_bounds_audit(const Common& common, const AuditArgs& args) {
  std::vector<std::pair<std::string, ss::SignedGraph>> graphs;
  if (!args.corpus.empty()) {
    const auto corpus = ss::read_graph6_file(args.corpus);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (!ss::is_connected(corpus[i])) continue;
      if (corpus[i].order() <= ss::kMaxSweepOrder) {
        ss::for_each_switching_class(corpus[i], [&](const ss::SignedGraph& rep, std::uint64_t cls) {
          graphs.push_back({"corpus:" + ss::ClassProvenance{i, cls}.str(), rep});
        });
      } else {
        graphs.push_back({"corpus:g" + std::to_string(i), corpus[i]});
      }
    }
  }
  if (!args.lines.empty()) {
    std::ifstream in(args.lines);
    if (!in) throw ss::Error(ss::ErrorCode::CorpusMissing, "cannot open " + args.lines);
    std::string text;
    for (int i = 0; std::getline(in, text);) {
      if (text.empty() || text[0] == '#') continue;
      graphs.push_back({"line" + std::to_string(i++), ss::parse_line(text)});
    }
  }
  if (args.classes_up_to > 0) {
    if (args.classes_up_to > ss::kMaxGeneratedOrder) {
      throw ss::Error(ss::ErrorCode::BudgetExceeded, "--classes-up-to is capped at 7");
    }
    for (int n = 2; n <= args.classes_up_to; ++n) {
      const auto corpus = ss::connected_graphs(n);
      ss::enumerate_switching_classes(corpus, [&](const ss::SignedGraph& rep, const ss::ClassProvenance& prov) {
        graphs.push_back({"n" + std::to_string(n) + ":" + prov.str(), rep});
      });
    }
  }
  if (args.random_count > 0) {
    if (args.random_max_n < 2 || args.random_max_n > ss::kMaxExactFrustrationOrder) {
      throw ss::Error(ss::ErrorCode::InvalidRange, "--random-max-n must lie in 2..24");
    }
    ss::Rng rng(args.seed);
    std::uniform_int_distribution<int> order(2, args.random_max_n);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    for (int i = 0; i < args.random_count; ++i) {
      const int n = order(rng);
      graphs.push_back({"random" + std::to_string(i), ss::random_connected_signed_graph(rng, n, density(rng), 0.5)});
    }
  }
  if (!args.gamma1_range.empty()) {
    const IntRange range = parse_range(args.gamma1_range);
    for (int n = range.lo; n <= range.hi; ++n) graphs.push_back({"gamma1_" + std::to_string(n), ss::gamma1(n)});
  }
  if (graphs.empty()) throw ss::Error(ss::ErrorCode::CorpusMissing, "nothing to audit");

  const auto reports = ss::parallel_map(graphs.size(), ss::resolve_threads(common.threads), [&](std::size_t i) {
    return ss::bound_report(graphs[i].first, graphs[i].second);
  });
  std::size_t violations = 0;
  Sink sink(common, "bounds-audit");
  json rows = json::array();
  if (!sink.json_mode()) sink.csv_header(ss::kBoundCsvHeader);
  for (const auto& r : reports) {
    if (r.violated()) {
      ++violations;
      std::cerr << "violation: " << r.graph_id << "\n";
    }
    if (sink.json_mode()) {
      rows.push_back({{"graph_id", r.graph_id},
                      {"lambda1", ss::round_real(r.lambda1)},
                      {"hong", ss::round_real(r.hong)},
                      {"stanic", ss::round_real(r.stanic)},
                      {"slack_hong", ss::round_real(r.slack_hong)},
                      {"slack_stanic", ss::round_real(r.slack_stanic)}});
    } else {
      sink.line(ss::csv_row(r));
    }
  }
  if (sink.json_mode()) {
    sink.document({{"schema", ss::kReportSchema},
                   {"command", "bounds-audit"},
                   {"graphs", reports.size()},
                   {"violations", violations},
                   {"rows", rows}});
  }
  sink.flush();
  std::cerr << "audited=" << reports.size() << " violations=" << violations << "\n";
  return violations == 0 ? kExitOk : kExitCounterexample;
}

int cmd_gamma1_table(const Common& common, const std::string& range_text) {
  const IntRange range = parse_range(range_text);
  if (range.lo < 5) throw ss::Error(ss::ErrorCode::TooSmall, "gamma1 needs n >= 5");
  Sink sink(common, "gamma1-table");
  json rows = json::array();
  if (!sink.json_mode()) sink.csv_header(ss::kGamma1CsvHeader);
  bool positive = true;
  for (int n = range.lo; n <= range.hi; ++n) {
    const ss::Gamma1Row row = ss::gamma1_row(n);
    positive = positive && row.margin > 0;
    if (sink.json_mode()) {
      rows.push_back({{"n", row.n},
                      {"lambda1", ss::round_real(row.lambda1)},
                      {"margin_over_n_minus_3", ss::round_real(row.margin)},
                      {"frustration", row.frustration},
                      {"negative_girth", row.negative_girth}});
    } else {
      sink.line(ss::csv_row(row));
    }
  }
  if (sink.json_mode()) sink.document({{"schema", ss::kReportSchema}, {"command", "gamma1-table"}, {"rows", rows}});
  sink.flush();
  return positive ? kExitOk : kExitCounterexample;
}

int cmd_single(const Common& common, const std::string& which, const ss::SignedGraph& g) {
  json doc = {{"schema", ss::kReportSchema}, {"command", which}, {"graph", ss::to_line(g)}};
  std::string plain;
  if (which == "frustration") {
    const auto res = ss::frustration_index(g);
    json witness = json::array();
    for (ss::Vertex v = 0; v < g.order(); ++v) {
      if (res.witness.contains(v)) witness.push_back(v);
    }
    doc["epsilon"] = res.epsilon;
    doc["switch_set"] = witness;
    plain = std::to_string(res.epsilon);
  } else if (which == "girth") {
    const auto w = ss::negative_girth(g);
    doc["negative_girth"] = w ? json(w->length()) : json(nullptr);
    doc["cycle"] = w ? json(w->vertices) : json(nullptr);
    plain = w ? std::to_string(w->length()) : "none";
  } else {
    const auto res = ss::index(g);
    json spectrum = json::array();
    for (double x : *res.full_spectrum) spectrum.push_back(ss::round_real(x));
    json vec = json::array();
    for (double x : res.eigvec) vec.push_back(ss::round_real(x));
    doc["lambda1"] = ss::round_real(res.lambda1);
    doc["residual"] = res.residual;
    doc["eigvec"] = vec;
    doc["spectrum"] = spectrum;
    plain = ss::format_real(res.lambda1);
  }
  Sink sink(common, which);
  if (sink.json_mode()) {
    sink.document(doc);
  } else {
    sink.line(plain);
  }
  sink.flush();
  return kExitOk;
}

int cmd_generate(const Common& common, int n) {
  Sink sink(common, "generate-corpus");
  for (const auto& g : ss::connected_graphs(n)) sink.line(ss::to_graph6(g));
  sink.flush();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-graph spectral toolkit: switching, frustration, negative cycles, index, extremal search"};
  app.require_subcommand(1);

  Common common;

  std::string c4_range = "5..7";
  auto* verify = app.add_subcommand("verify-c4", "exhaustive check of the negative C4 theorem for n in a range");
  verify->add_option("--n", c4_range, "order or range A..B (5 <= n <= 7)");
  add_common(verify, common);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "randomized local search for an index above gamma1(n)");
  search->add_option("--n", search_args.n, "order")->required();
  search->add_option("--r", search_args.r, "forbidden negative cycle length")->required();
  search->add_option("--seed", search_args.seed, "random seed");
  search->add_option("--iters", search_args.iterations, "move evaluations per restart")->check(CLI::PositiveNumber);
  search->add_option("--restarts", search_args.restarts, "independent restarts")->check(CLI::PositiveNumber);
  search->add_flag("--strict-range", search_args.strict_range, "reject r = 4 outside 4 <= r <= n/3 + 1");
  add_common(search, common);

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("bounds-audit", "check lambda1 <= stanic <= hong over a set of graphs");
  audit->add_option("--corpus", audit_args.corpus, "graph6 file; every switching class of each graph is audited");
  audit->add_option("--lines", audit_args.lines, "file of signed graphs in line format");
  audit->add_option("--classes-up-to", audit_args.classes_up_to, "all switching classes of connected graphs up to n");
  audit->add_option("--random", audit_args.random_count, "number of random connected signed graphs");
  audit->add_option("--random-max-n", audit_args.random_max_n, "largest order for random graphs");
  audit->add_option("--seed", audit_args.seed, "seed for random graphs");
  audit->add_option("--gamma1", audit_args.gamma1_range, "also audit gamma1(n) for n in A..B");
  add_common(audit, common);

  std::string table_range = "5..40";
  auto* table = app.add_subcommand("gamma1-table", "index and margin of gamma1(n)");
  table->add_option("--n", table_range, "order or range A..B");
  add_common(table, common);

  std::string line, graph6, signs;
  std::vector<std::pair<std::string, CLI::App*>> singles;
  for (const char* name : {"frustration", "girth", "index"}) {
    auto* cmd = app.add_subcommand(name, std::string("single-graph ") + name);
    cmd->add_option("graph", line, "signed graph 'n m u v s ...'");
    cmd->add_option("--graph6", graph6, "underlying graph in graph6");
    cmd->add_option("--signs", signs, "one '+'/'-' per edge in lexicographic order");
    add_common(cmd, common);
    singles.push_back({name, cmd});
  }

  int generate_n = 0;
  auto* generate = app.add_subcommand("generate-corpus", "all connected graphs of order n as graph6");
  generate->add_option("--n", generate_n, "order (1..7)")->required();
  add_common(generate, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify_c4(common, c4_range);
    if (search->parsed()) {
      if (search->get_option("--format")->count() == 0) common.format = "json";
      return cmd_search(common, search_args);
    }
    if (audit->parsed()) return cmd_bounds_audit(common, audit_args);
    if (table->parsed()) return cmd_gamma1_table(common, table_range);
    if (generate->parsed()) return cmd_generate(common, generate_n);
    for (const auto& [name, cmd] : singles) {
      if (cmd->parsed()) return cmd_single(common, name, read_graph(line, graph6, signs));
    }
  } catch (const ss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
