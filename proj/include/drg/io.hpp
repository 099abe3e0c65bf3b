#pragma once

// graph6 codec and edge-list text parsing.
//
// graph6: 6-bit big-endian groups biased by 63, upper-triangle bits in
// column order. write_graph6 always emits the canonical form (minimal
// size field, zero padding); parse_graph6 accepts any legal encoding
// but rejects trailing bytes.

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "drg/core.hpp"
#include "drg/graph.hpp"

namespace drg {

namespace detail {

inline constexpr std::string_view kGraph6Header = ">>graph6<<";

inline std::uint64_t graph6_decode_size(std::string_view& s) {
  if (s.empty()) fail(errc::truncated_bit_vector, "empty graph6 payload");
  auto take = [&](std::size_t count) {
    if (s.size() < count) fail(errc::truncated_bit_vector, "graph6 size field");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      unsigned char c = static_cast<unsigned char>(s[i]);
      if (c < 63 || c > 126)
        fail(errc::invalid_character, "byte " + std::to_string(int(c)) + " in size field");
      value = (value << 6) | (c - 63);
    }
    s.remove_prefix(count);
    return value;
  };
  if (static_cast<unsigned char>(s[0]) != '~') return take(1);
  s.remove_prefix(1);
  if (s.empty()) fail(errc::truncated_bit_vector, "graph6 size field");
  if (static_cast<unsigned char>(s[0]) != '~') return take(3);
  s.remove_prefix(1);
  return take(6);
}

inline void graph6_encode_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  } else {
    out.push_back('~');
    out.push_back('~');
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
}

}  // namespace detail

/// Decodes one graph6 line (optional ">>graph6<<" prefix, optional
/// trailing newline). Anything after the encoded bits is rejected.
inline Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.starts_with(">>")) {
    if (!text.starts_with(detail::kGraph6Header))
      fail(errc::malformed_header, "expected '>>graph6<<'");
    text.remove_prefix(detail::kGraph6Header.size());
  }
  std::uint64_t n64 = detail::graph6_decode_size(text);
  if (n64 > 10'000'000) fail(errc::unsupported_parameters, "graph6 order too large for this tool");
  Vertex n = static_cast<Vertex>(n64);

  std::uint64_t bits = n64 * (n64 - 1) / 2;
  std::uint64_t need = (bits + 5) / 6;
  if (text.size() < need) fail(errc::truncated_bit_vector, "graph6 bit vector");
  if (text.size() > need) fail(errc::trailing_garbage, "bytes after graph6 bit vector");

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint64_t bit = 0;
  int buffered = 0;
  unsigned value = 0;
  std::size_t pos = 0;
  for (Vertex col = 1; col < n; ++col) {
    for (Vertex rowv = 0; rowv < col; ++rowv, ++bit) {
      if (buffered == 0) {
        unsigned char c = static_cast<unsigned char>(text[pos++]);
        if (c < 63 || c > 126)
          fail(errc::invalid_character, "byte " + std::to_string(int(c)) + " in bit vector");
        value = c - 63;
        buffered = 6;
      }
      --buffered;
      if ((value >> buffered) & 1u) edges.emplace_back(rowv, col);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

/// Canonical graph6 encoding; parse_graph6(write_graph6(g)) == g.
inline std::string write_graph6(const Graph& g) {
  std::string out;
  detail::graph6_encode_size(out, static_cast<std::uint64_t>(g.n()));
  unsigned value = 0;
  int filled = 0;
  for (Vertex col = 1; col < g.n(); ++col) {
    for (Vertex rowv = 0; rowv < col; ++rowv) {
      value = (value << 1) | (g.has_edge(rowv, col) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(value + 63));
        value = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((value << (6 - filled)) + 63));
  return out;
}

/// Edge-list text: lines "u v", optionally preceded by a "n <count>"
/// line fixing the vertex count. Blank lines are ignored. Duplicate
/// edges collapse; self-loops are an error.
inline Graph parse_edge_list(std::string_view text) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::optional<Vertex> declared_n;
  Vertex max_seen = -1;

  std::size_t line_no = 0;
  std::size_t start = 0;
  bool first_content_line = true;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream iss(line);
    std::string first;
    if (!(iss >> first)) continue;  // blank line

    auto bad = [&](const std::string& why) {
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": " + why);
    };

    if (first == "n") {
      if (!first_content_line) bad("'n' line must come first");
      long long count = 0;
      if (!(iss >> count) || count < 0) bad("expected 'n <count>'");
      std::string rest;
      if (iss >> rest) bad("trailing tokens");
      declared_n = static_cast<Vertex>(count);
      first_content_line = false;
      continue;
    }

    long long u = 0, v = 0;
    try {
      std::size_t used = 0;
      u = std::stoll(first, &used);
      if (used != first.size()) bad("not an integer: '" + first + "'");
    } catch (const std::logic_error&) {
      bad("not an integer: '" + first + "'");
    }
    if (!(iss >> v)) bad("expected two endpoints");
    std::string rest;
    if (iss >> rest) bad("trailing tokens");
    if (u < 0 || v < 0) bad("negative vertex");
    if (u == v)
      fail(errc::self_loop, "line " + std::to_string(line_no) + ": loop at " + std::to_string(u));
    if (declared_n && (u >= *declared_n || v >= *declared_n))
      fail(errc::vertex_out_of_range,
           "line " + std::to_string(line_no) + ": vertex beyond declared n=" + std::to_string(*declared_n));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    max_seen = std::max({max_seen, static_cast<Vertex>(u), static_cast<Vertex>(v)});
    first_content_line = false;
  }

  Vertex n = declared_n ? *declared_n : max_seen + 1;
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace drg
