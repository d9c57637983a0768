#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "flipdist/geometry.hpp"

namespace flipdist {

/// Unordered pair of point ids, stored smaller id first.
struct Edge {
  PointId lo = 0;
  PointId hi = 0;

  static Edge make(PointId a, PointId b);

  bool has_endpoint(PointId v) const noexcept { return lo == v || hi == v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

/// Unordered triple of point ids, stored sorted.
struct Triangle {
  std::array<PointId, 3> v{};

  static Triangle make(PointId a, PointId b, PointId c);

  std::array<Edge, 3> edges() const noexcept;
  bool contains(PointId p) const noexcept { return v[0] == p || v[1] == p || v[2] == p; }
  bool contains(const Edge& e) const noexcept { return contains(e.lo) && contains(e.hi); }
  /// The vertex not on `e`. Requires contains(e).
  PointId opposite(const Edge& e) const noexcept;

  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

/// Immutable point set with its convex hull. Points on the hull boundary
/// (including straight-angle ones) count towards `hull_size()`.
class PointSet {
public:
  /// Coordinates are taken in order; point i gets id i. Throws on duplicates.
  static std::shared_ptr<const PointSet> create(
      std::span<const std::array<std::int32_t, 2>> coordinates);

  std::size_t size() const noexcept { return points_.size(); }
  /// Fewer than three points, or all collinear. Such a set has no triangulation.
  bool degenerate() const noexcept { return hull_.empty(); }
  const Point& operator[](PointId id) const { return points_.at(id); }
  std::span<const Point> points() const noexcept { return points_; }

  /// Boundary points in counterclockwise order.
  std::span<const PointId> hull() const noexcept { return hull_; }
  std::size_t hull_size() const noexcept { return hull_.size(); }
  bool is_hull_edge(const Edge& e) const;
  /// Twice the hull area.
  __int128 doubled_hull_area() const noexcept { return doubled_hull_area_; }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

private:
  std::vector<Point> points_;
  std::vector<PointId> hull_;
  std::vector<Edge> hull_edges_;  // sorted
  __int128 doubled_hull_area_ = 0;
};

/// Edges that share a triangle with a given edge; at most four.
class AdjacentEdges {
public:
  void push(const Edge& e) { items_[count_++] = e; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  const Edge& operator[](std::size_t i) const noexcept { return items_[i]; }
  const Edge* begin() const noexcept { return items_.data(); }
  const Edge* end() const noexcept { return items_.data() + count_; }
  bool contains(const Edge& e) const noexcept;
  std::vector<Edge> to_vector() const { return {begin(), end()}; }

private:
  std::array<Edge, 4> items_{};
  std::size_t count_ = 0;
};

/// Byte-comparable encoding of a triangulation's edge set.
struct CanonicalKey {
  std::string bytes;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct FlipResult;

/// A triangulation of a point set. Immutable value: `flip` returns a new one.
class Triangulation {
public:
  /// Validates every structural invariant and throws `Error` on the first
  /// violation found.
  static Triangulation build(std::shared_ptr<const PointSet> points,
                             std::span<const Triangle> triangles);

  const PointSet& points() const noexcept { return *points_; }
  const std::shared_ptr<const PointSet>& point_set() const noexcept { return points_; }
  const Point& point(PointId id) const { return (*points_)[id]; }

  std::size_t point_count() const noexcept { return points_->size(); }
  std::size_t hull_size() const noexcept { return points_->hull_size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// All edges in canonical (sorted) order.
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// All triangles in canonical (sorted) order.
  std::vector<Triangle> triangles() const;

  bool contains(const Edge& e) const noexcept { return find(e) >= 0; }
  bool is_interior(const Edge& e) const noexcept;
  bool is_boundary(const Edge& e) const noexcept;

  /// (a, c, b, d) in counterclockwise order, where e = (a, b) with a the
  /// smaller id, and c, d are the apexes of the two incident triangles.
  std::array<PointId, 4> quadrilateral_of(const Edge& e) const;

  /// e present, interior, and its quadrilateral strictly convex.
  bool is_admissible(const Edge& e) const noexcept;

  /// Replaces e by the other diagonal of its quadrilateral.
  FlipResult flip(const Edge& e) const;

  /// Distinct edges other than e lying on a triangle with e, sorted.
  AdjacentEdges edges_sharing_triangle(const Edge& e) const;

  /// Distinct edges a and b are both sides of one triangle.
  bool share_triangle(const Edge& a, const Edge& b) const noexcept;

  CanonicalKey canonical_key() const;

  /// Same point set (by value) and same triangle set.
  friend bool operator==(const Triangulation& a, const Triangulation& b);

private:
  Triangulation() = default;

  std::ptrdiff_t find(const Edge& e) const noexcept;

  std::shared_ptr<const PointSet> points_;
  std::vector<Triangle> triangles_;                // slot storage, unordered
  std::vector<Edge> edges_;                        // sorted
  std::vector<std::array<std::int32_t, 2>> incident_;  // triangle slots per edge, -1 if none
};

struct FlipResult {
  Triangulation triangulation;
  Edge created;
};

bool same_point_set(const Triangulation& a, const Triangulation& b) noexcept;

/// Edges of `from` that are absent from `to`, sorted. Throws on point-set
/// mismatch.
std::vector<Edge> changed_edges(const Triangulation& from, const Triangulation& to);

}  // namespace flipdist

template <>
struct std::hash<flipdist::CanonicalKey> {
  std::size_t operator()(const flipdist::CanonicalKey& k) const noexcept {
    return std::hash<std::string>{}(k.bytes);
  }
};

template <>
struct std::hash<flipdist::Edge> {
  std::size_t operator()(const flipdist::Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{e.lo} << 32) | e.hi);
  }
};
