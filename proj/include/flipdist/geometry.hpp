#pragma once

#include <cstdint>

namespace flipdist {

using PointId = std::uint32_t;

/// Integer planar point. `id` is its index in the owning point set.
struct Point {
  PointId id = 0;
  std::int32_t x = 0;
  std::int32_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Orientation : std::int8_t { right = -1, collinear = 0, left = 1 };

constexpr Orientation operator-(Orientation o) noexcept {
  return static_cast<Orientation>(-static_cast<std::int8_t>(o));
}

/// Sign of (q - p) x (r - p), computed exactly.
Orientation orientation(const Point& p, const Point& q, const Point& r) noexcept;

/// Twice the signed area of triangle pqr. Exact for any 32-bit coordinates.
__int128 doubled_signed_area(const Point& p, const Point& q, const Point& r) noexcept;

/// True iff the open segments (a,b) and (c,d) cross at a point interior to
/// both. Touching at an endpoint and collinear overlap both report false.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) noexcept;

/// a, b, c, d in cyclic boundary order. Any collinear consecutive triple
/// makes the quadrilateral non-convex.
bool is_strictly_convex_quad(const Point& a, const Point& b, const Point& c,
                             const Point& d) noexcept;

}  // namespace flipdist
