#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace flipdist {

enum class ErrorCode {
  invalid_argument,
  coordinate_range,
  duplicate_point,
  degenerate_point_set,
  index_out_of_range,
  degenerate_triangle,
  duplicate_triangle,
  wrong_counts,
  overlapping_triangles,
  bad_edge_incidence,
  unused_point,
  edge_not_found,
  boundary_edge,
  inadmissible_flip,
  point_set_mismatch,
  not_a_permutation,
  syntax,
  budget_exceeded,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `position()` carries the 1-based flip
/// index for sequence errors and the line number for syntax errors.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(message), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

}  // namespace flipdist
