#pragma once

#include <algorithm>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"

namespace signed_spectra {

// graph6: order byte(s), then the upper triangle column by column
// (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed six bits per printable byte.

inline std::string to_graph6(const SignedGraph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0, bits = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

/// Decodes one graph6 line into an all-positive SignedGraph.
inline SignedGraph from_graph6(std::string_view text) {
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty graph6 string");
  for (char c : text) {
    if (c < 63 || c > 126) throw Error(ErrorCode::ParseError, "graph6 byte out of range");
  }
  std::size_t pos = 0;
  int n = 0;
  if (text[0] != 126) {
    n = text[0] - 63;
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == 126) throw Error(ErrorCode::ParseError, "unsupported graph6 order");
    n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
    pos = 4;
  }
  if (n < 1) throw Error(ErrorCode::ParseError, "graph6 order must be positive");
  if (n > kMaxVertices) throw Error(ErrorCode::TooLarge, "graph6 order " + std::to_string(n));
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  const std::size_t bytes = (pairs + 5) / 6;
  if (text.size() - pos != bytes) throw Error(ErrorCode::ParseError, "graph6 length does not match order");
  std::vector<SignedEdge> edges;
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if (byte & (32 >> (k % 6))) edges.push_back({i, j, 1});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const SignedEdge& a, const SignedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return make_signed_graph(n, edges);
}

inline std::vector<SignedGraph> read_graph6_stream(std::istream& in) {
  std::vector<SignedGraph> graphs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    graphs.push_back(from_graph6(line));
  }
  return graphs;
}

inline std::vector<SignedGraph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::CorpusMissing, "cannot open corpus " + path);
  return read_graph6_stream(in);
}

/// Signed graph from graph6 plus one '+'/'-' per edge in lexicographic order.
inline SignedGraph from_graph6_with_signs(std::string_view graph6, std::string_view signs) {
  const SignedGraph base = from_graph6(graph6);
  const auto edges = base.edges();
  if (signs.size() != edges.size()) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(edges.size()) + " signs");
  }
  SignedGraph g = base;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (signs[i] == '-') {
      g = g.with_flipped_sign(edges[i].u, edges[i].v);
    } else if (signs[i] != '+') {
      throw Error(ErrorCode::ParseError, "sign list may only contain '+' and '-'");
    }
  }
  return g;
}

}  // namespace signed_spectra
