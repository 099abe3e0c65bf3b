#pragma once

// Core vocabulary shared by every drg header: vertex indices, error
// reporting, and sorted vertex subsets.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace drg {

using Vertex = std::int32_t;

/// Sentinel for "no path"; never a valid distance.
inline constexpr Vertex kUnreachable = -1;

enum class errc {
  malformed_header,
  invalid_character,
  truncated_bit_vector,
  trailing_garbage,
  self_loop,
  vertex_out_of_range,
  parse_error,
  disconnected,
  empty_subset,
  not_regular,
  eigen_failure,
  non_integer_multiplicity,
  dense_limit_exceeded,
  oracle_mismatch,
  degenerate_denominator,
  degenerate_dual,
  non_positive_entry,
  non_integer_entry,
  hypothesis_violated,
  certification_failed,
  unsupported_parameters,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_header: return "malformed_header";
    case errc::invalid_character: return "invalid_character";
    case errc::truncated_bit_vector: return "truncated_bit_vector";
    case errc::trailing_garbage: return "trailing_garbage";
    case errc::self_loop: return "self_loop";
    case errc::vertex_out_of_range: return "vertex_out_of_range";
    case errc::parse_error: return "parse_error";
    case errc::disconnected: return "disconnected";
    case errc::empty_subset: return "empty_subset";
    case errc::not_regular: return "not_regular";
    case errc::eigen_failure: return "eigen_failure";
    case errc::non_integer_multiplicity: return "non_integer_multiplicity";
    case errc::dense_limit_exceeded: return "dense_limit_exceeded";
    case errc::oracle_mismatch: return "oracle_mismatch";
    case errc::degenerate_denominator: return "degenerate_denominator";
    case errc::degenerate_dual: return "degenerate_dual";
    case errc::non_positive_entry: return "non_positive_entry";
    case errc::non_integer_entry: return "non_integer_entry";
    case errc::hypothesis_violated: return "hypothesis_violated";
    case errc::certification_failed: return "certification_failed";
    case errc::unsupported_parameters: return "unsupported_parameters";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

/// Sorted set of vertex indices of some parent graph. Indices are kept
/// strictly increasing; membership is a binary search.
class VertexSubset {
 public:
  VertexSubset() = default;

  explicit VertexSubset(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static VertexSubset single(Vertex v) { return VertexSubset(std::vector<Vertex>{v}); }

  bool contains(Vertex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  bool contains_all(const VertexSubset& other) const {
    return std::includes(members_.begin(), members_.end(),
                         other.members_.begin(), other.members_.end());
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  const std::vector<Vertex>& members() const noexcept { return members_; }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool operator==(const VertexSubset&) const = default;

 private:
  std::vector<Vertex> members_;
};

}  // namespace drg
