#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include <json.hpp>

#include "signed_spectra/bounds.hpp"
#include "signed_spectra/search.hpp"

namespace signed_spectra {

inline constexpr int kReportSchema = 1;

/// Twelve significant digits, the precision used in every emitted file.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double round_real(double x) { return std::strtod(format_real(x).c_str(), nullptr); }

inline nlohmann::json to_json(const SearchRecord& rec) {
  nlohmann::json crfree = nlohmann::json::object();
  for (const auto& [r, free] : rec.crfree) crfree[std::to_string(r)] = free;
  return {
      {"graph", to_line(rec.graph)},
      {"lambda1", round_real(rec.lambda1)},
      {"unbalanced", rec.unbalanced},
      {"crfree", crfree},
      {"provenance", rec.provenance},
  };
}

inline nlohmann::json to_json(const ExtremalReport& report) {
  nlohmann::json argmax = nlohmann::json::array();
  for (const auto& rec : report.argmax) argmax.push_back(to_json(rec));
  nlohmann::json j = {
      {"schema", kReportSchema},
      {"mode", report.mode},
      {"n", report.n},
      {"r", report.r},
      {"within_theorem_range", report.within_theorem_range},
      {"max_lambda1", round_real(report.max_lambda1)},
      {"gamma1_lambda1", round_real(report.gamma1_lambda1)},
      {"verdict", std::string(to_string(report.verdict))},
      {"classes_scanned", report.classes_scanned},
      {"candidates", report.candidates},
      {"argmax", argmax},
  };
  if (report.seed) {
    j["seed"] = *report.seed;
    j["iterations"] = report.iterations;
    j["restarts"] = report.restarts;
    j["evaluations"] = report.evaluations;
  }
  return j;
}

inline constexpr const char* kBoundCsvHeader = "graph_id,lambda1,hong,stanic,slack_hong,slack_stanic";
inline constexpr const char* kClassCsvHeader = "provenance,n,e,lambda1,unbalanced,crfree_r";
inline constexpr const char* kGamma1CsvHeader = "n,lambda1,margin_over_n_minus_3,frustration,negative_girth";

inline std::string csv_row(const BoundReport& b) {
  return b.graph_id + "," + format_real(b.lambda1) + "," + format_real(b.hong) + "," + format_real(b.stanic) + "," +
         format_real(b.slack_hong) + "," + format_real(b.slack_stanic);
}

inline std::string csv_row(const ClassRow& row) {
  return row.provenance + "," + std::to_string(row.n) + "," + std::to_string(row.e) + "," + format_real(row.lambda1) +
         "," + (row.unbalanced ? "true" : "false") + "," + (row.crfree ? "true" : "false");
}

struct Gamma1Row {
  int n = 0;
  double lambda1 = 0.0;
  double margin = 0.0;
  int frustration = 0;
  int negative_girth = 0;
  double residual = 0.0;
};

inline Gamma1Row gamma1_row(int n) {
  const SignedGraph g = gamma1(n);
  const SpectralResult spec = index(g, false);
  const auto girth = negative_girth(g);
  // past the exact limit: one negative edge on an unbalanced graph means epsilon = 1
  const int epsilon = n <= kMaxExactFrustrationOrder ? frustration_index(g).epsilon : g.negative_edge_count();
  return {n, spec.lambda1, spec.lambda1 - (n - 3), epsilon,
          girth ? static_cast<int>(girth->length()) : 0, spec.residual};
}

inline std::string csv_row(const Gamma1Row& row) {
  return std::to_string(row.n) + "," + format_real(row.lambda1) + "," + format_real(row.margin) + "," +
         std::to_string(row.frustration) + "," + std::to_string(row.negative_girth);
}

}  // namespace signed_spectra
