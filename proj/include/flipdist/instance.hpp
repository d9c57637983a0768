#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

/// Raw contents of an instance file, as written.
///
///   flipdist v1
///   points N        followed by N lines "x y"
///   initial M       followed by M lines "a b c"
///   final M         followed by M lines "a b c"
///   k K             optional
///
/// Blank lines and lines starting with '#' are ignored.
struct InstanceFile {
  std::vector<std::array<std::int32_t, 2>> points;
  std::vector<std::array<std::uint32_t, 3>> initial;
  std::vector<std::array<std::uint32_t, 3>> final;
  std::optional<std::uint32_t> k;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// A validated instance: both triangulations share one point set.
struct Instance {
  InstanceFile file;
  Triangulation initial;
  Triangulation target;
};

/// Syntax only. Throws `ErrorCode::syntax` with the offending line number.
InstanceFile parse_instance_file(std::string_view text);

/// Builds both triangulations. Validation errors keep their code and name
/// the triangulation at fault.
Instance validate_instance(InstanceFile file);

inline Instance parse_instance(std::string_view text) {
  return validate_instance(parse_instance_file(text));
}

std::string render_instance(const InstanceFile& file);

enum class HullShape {
  scatter,  // uniform points, interior points allowed
  polygon,  // points in convex position
};

std::optional<HullShape> parse_hull_shape(std::string_view name);
const char* to_string(HullShape shape) noexcept;

struct GeneratorOptions {
  std::uint32_t n = 6;
  HullShape shape = HullShape::scatter;
  std::uint32_t scramble = 3;
  std::uint64_t seed = 1;
};

/// Random points with no three collinear, an incremental-insertion initial
/// triangulation, and a final one `scramble` random admissible flips away.
/// `k` is left unset.
Instance generate_instance(const GeneratorOptions& options);

/// Sweep-order incremental insertion. Works for any non-degenerate point set.
Triangulation incremental_triangulation(std::shared_ptr<const PointSet> points);

std::vector<std::array<std::uint32_t, 3>> triangle_list(const Triangulation& t);

}  // namespace flipdist
