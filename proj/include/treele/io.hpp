#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "treele/error.hpp"
#include "treele/tree.hpp"

namespace treele {

// Edge-list text format: a line "n" followed by n-1 lines "u v".
inline std::string to_edge_list_text(const Tree& t) {
  std::ostringstream out;
  out << t.size() << '\n';
  for (const auto& [u, v] : t.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

namespace detail {

inline bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace detail

/// Reads one tree block; returns nullopt at clean end of input. Blank lines
/// and '#' comments between blocks are skipped, so a stream of blocks (as the
/// enumerate command writes) can be read back tree by tree.
inline std::optional<Tree> read_edge_list(std::istream& in) {
  std::string line;
  if (!detail::next_data_line(in, line)) return std::nullopt;
  long n = 0;
  {
    std::istringstream header(line);
    if (!(header >> n) || n < 1) throw Error(ErrorCode::io_error, "bad vertex count line '" + line + "'");
  }
  std::vector<Edge> edges;
  for (long i = 0; i + 1 < n; ++i) {
    if (!detail::next_data_line(in, line)) throw Error(ErrorCode::io_error, "expected " + std::to_string(n - 1) + " edges");
    std::istringstream row(line);
    long u = 0, v = 0;
    if (!(row >> u >> v)) throw Error(ErrorCode::io_error, "bad edge line '" + line + "'");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return from_edge_list(static_cast<std::size_t>(n), edges);
}

inline Tree parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  auto t = read_edge_list(in);
  if (!t) throw Error(ErrorCode::io_error, "empty edge list");
  return *t;
}

// Comma-separated labels, e.g. "1,1" (the empty string is the sequence of P_2).
inline std::vector<Vertex> parse_pruefer(const std::string& text) {
  std::vector<Vertex> seq;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    try {
      seq.push_back(static_cast<Vertex>(std::stol(item)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::bad_label, "not a label: '" + item + "'");
    }
  }
  return seq;
}

inline std::string format_pruefer(const std::vector<Vertex>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq[i]);
  }
  return out;
}

}  // namespace treele
