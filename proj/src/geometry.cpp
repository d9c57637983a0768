#include "flipdist/geometry.hpp"

namespace flipdist {

__int128 doubled_signed_area(const Point& p, const Point& q, const Point& r) noexcept {
  // 33-bit differences; the 128-bit products cannot overflow.
  const __int128 ux = std::int64_t{q.x} - p.x;
  const __int128 uy = std::int64_t{q.y} - p.y;
  const __int128 vx = std::int64_t{r.x} - p.x;
  const __int128 vy = std::int64_t{r.y} - p.y;
  return ux * vy - uy * vx;
}

Orientation orientation(const Point& p, const Point& q, const Point& r) noexcept {
  const __int128 cross = doubled_signed_area(p, q, r);
  if (cross > 0) return Orientation::left;
  if (cross < 0) return Orientation::right;
  return Orientation::collinear;
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  const Orientation o1 = orientation(a, b, c);
  const Orientation o2 = orientation(a, b, d);
  const Orientation o3 = orientation(c, d, a);
  const Orientation o4 = orientation(c, d, b);
  if (o1 == Orientation::collinear || o2 == Orientation::collinear ||
      o3 == Orientation::collinear || o4 == Orientation::collinear) {
    return false;
  }
  return o1 != o2 && o3 != o4;
}

bool is_strictly_convex_quad(const Point& a, const Point& b, const Point& c,
                             const Point& d) noexcept {
  const Orientation first = orientation(a, b, c);
  if (first == Orientation::collinear) return false;
  return orientation(b, c, d) == first && orientation(c, d, a) == first &&
         orientation(d, a, b) == first;
}

}  // namespace flipdist
