#include "flipdist/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "flipdist/error.hpp"

namespace flipdist {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::coordinate_range: return "coordinate out of range";
    case ErrorCode::duplicate_point: return "duplicate point";
    case ErrorCode::degenerate_point_set: return "degenerate point set";
    case ErrorCode::index_out_of_range: return "index out of range";
    case ErrorCode::degenerate_triangle: return "degenerate triangle";
    case ErrorCode::duplicate_triangle: return "duplicate triangle";
    case ErrorCode::wrong_counts: return "wrong counts";
    case ErrorCode::overlapping_triangles: return "overlapping triangles";
    case ErrorCode::bad_edge_incidence: return "bad edge incidence";
    case ErrorCode::unused_point: return "unused point";
    case ErrorCode::edge_not_found: return "edge not found";
    case ErrorCode::boundary_edge: return "boundary edge";
    case ErrorCode::inadmissible_flip: return "inadmissible flip";
    case ErrorCode::point_set_mismatch: return "point set mismatch";
    case ErrorCode::not_a_permutation: return "not a permutation";
    case ErrorCode::syntax: return "syntax error";
    case ErrorCode::budget_exceeded: return "budget exceeded";
  }
  return "unknown error";
}

Edge Edge::make(PointId a, PointId b) {
  if (a == b) {
    throw Error(ErrorCode::invalid_argument, "edge endpoints must differ: " + std::to_string(a));
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")";
}

Triangle Triangle::make(PointId a, PointId b, PointId c) {
  Triangle t{{a, b, c}};
  std::sort(t.v.begin(), t.v.end());
  return t;
}

std::array<Edge, 3> Triangle::edges() const noexcept {
  return {Edge{v[0], v[1]}, Edge{v[0], v[2]}, Edge{v[1], v[2]}};
}

PointId Triangle::opposite(const Edge& e) const noexcept {
  for (PointId p : v) {
    if (p != e.lo && p != e.hi) return p;
  }
  return v[0];
}

bool AdjacentEdges::contains(const Edge& e) const noexcept {
  return std::find(begin(), end(), e) != end();
}

// ---------------------------------------------------------------------------
// PointSet

std::shared_ptr<const PointSet> PointSet::create(
    std::span<const std::array<std::int32_t, 2>> coordinates) {
  auto ps = std::make_shared<PointSet>();
  ps->points_.reserve(coordinates.size());
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    ps->points_.push_back(Point{static_cast<PointId>(i), coordinates[i][0], coordinates[i][1]});
  }

  std::vector<Point> sorted = ps->points_;
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].x == sorted[i - 1].x && sorted[i].y == sorted[i - 1].y) {
      std::ostringstream msg;
      msg << "points " << sorted[i - 1].id << " and " << sorted[i].id << " coincide at ("
          << sorted[i].x << "," << sorted[i].y << ")";
      throw Error(ErrorCode::duplicate_point, msg.str());
    }
  }

  if (sorted.size() < 3) return ps;

  // Strict hull by monotone chain, counterclockwise.
  std::vector<Point> chain(2 * sorted.size());
  std::size_t k = 0;
  for (const Point& p : sorted) {
    while (k >= 2 && orientation(chain[k - 2], chain[k - 1], p) != Orientation::left) --k;
    chain[k++] = p;
  }
  for (std::size_t i = sorted.size() - 1, lower = k + 1; i-- > 0;) {
    const Point& p = sorted[i];
    while (k >= lower && orientation(chain[k - 2], chain[k - 1], p) != Orientation::left) --k;
    chain[k++] = p;
  }
  chain.resize(k - 1);
  if (chain.size() < 3) return ps;  // all collinear: no hull, no triangulation

  // Insert points lying on hull edges, ordered along each edge.
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Point& a = chain[i];
    const Point& b = chain[(i + 1) % chain.size()];
    ps->hull_.push_back(a.id);
    std::vector<Point> on_edge;
    for (const Point& p : ps->points_) {
      if (p.id == a.id || p.id == b.id) continue;
      if (orientation(a, b, p) != Orientation::collinear) continue;
      const std::int64_t dot_a = (std::int64_t{p.x} - a.x) * (std::int64_t{b.x} - a.x) +
                                 (std::int64_t{p.y} - a.y) * (std::int64_t{b.y} - a.y);
      const std::int64_t dot_b = (std::int64_t{p.x} - b.x) * (std::int64_t{a.x} - b.x) +
                                 (std::int64_t{p.y} - b.y) * (std::int64_t{a.y} - b.y);
      if (dot_a > 0 && dot_b > 0) on_edge.push_back(p);
    }
    std::sort(on_edge.begin(), on_edge.end(), [&](const Point& p, const Point& q) {
      const std::int64_t dp = std::abs(std::int64_t{p.x} - a.x) + std::abs(std::int64_t{p.y} - a.y);
      const std::int64_t dq = std::abs(std::int64_t{q.x} - a.x) + std::abs(std::int64_t{q.y} - a.y);
      return dp < dq;
    });
    for (const Point& p : on_edge) ps->hull_.push_back(p.id);
  }

  for (std::size_t i = 0; i < ps->hull_.size(); ++i) {
    ps->hull_edges_.push_back(Edge::make(ps->hull_[i], ps->hull_[(i + 1) % ps->hull_.size()]));
  }
  std::sort(ps->hull_edges_.begin(), ps->hull_edges_.end());

  const Point& origin = ps->points_[ps->hull_[0]];
  for (std::size_t i = 1; i + 1 < ps->hull_.size(); ++i) {
    ps->doubled_hull_area_ += doubled_signed_area(origin, ps->points_[ps->hull_[i]],
                                                  ps->points_[ps->hull_[i + 1]]);
  }
  return ps;
}

bool PointSet::is_hull_edge(const Edge& e) const {
  return std::binary_search(hull_edges_.begin(), hull_edges_.end(), e);
}

// ---------------------------------------------------------------------------
// Triangulation

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

std::string describe(const Triangle& t) {
  return "(" + std::to_string(t.v[0]) + "," + std::to_string(t.v[1]) + "," +
         std::to_string(t.v[2]) + ")";
}

}  // namespace

Triangulation Triangulation::build(std::shared_ptr<const PointSet> points,
                                   std::span<const Triangle> triangles) {
  if (!points) fail(ErrorCode::invalid_argument, "null point set");
  const PointSet& ps = *points;
  const std::size_t n = ps.size();
  const std::size_t h = ps.hull_size();

  std::vector<Triangle> tris;
  tris.reserve(triangles.size());
  for (const Triangle& raw : triangles) {
    for (PointId v : raw.v) {
      if (v >= n) {
        fail(ErrorCode::index_out_of_range,
             "triangle " + describe(raw) + " references point " + std::to_string(v) +
                 " but there are only " + std::to_string(n) + " points");
      }
    }
    const Triangle t = Triangle::make(raw.v[0], raw.v[1], raw.v[2]);
    if (t.v[0] == t.v[1] || t.v[1] == t.v[2] ||
        orientation(ps[t.v[0]], ps[t.v[1]], ps[t.v[2]]) == Orientation::collinear) {
      fail(ErrorCode::degenerate_triangle, "triangle " + describe(t) + " is degenerate");
    }
    tris.push_back(t);
  }
  if (ps.degenerate()) {
    fail(ErrorCode::degenerate_point_set, "fewer than 3 points or all points collinear");
  }
  {
    std::vector<Triangle> sorted = tris;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      fail(ErrorCode::duplicate_triangle, "triangle " + describe(*dup) + " listed twice");
    }
  }

  const std::size_t expected_triangles = 2 * n - h - 2;
  if (tris.size() != expected_triangles) {
    fail(ErrorCode::wrong_counts, "expected " + std::to_string(expected_triangles) +
                                      " triangles for " + std::to_string(n) + " points with " +
                                      std::to_string(h) + " on the hull, got " +
                                      std::to_string(tris.size()));
  }

  std::map<Edge, std::vector<std::int32_t>> incidence;
  for (std::size_t slot = 0; slot < tris.size(); ++slot) {
    for (const Edge& e : tris[slot].edges()) {
      incidence[e].push_back(static_cast<std::int32_t>(slot));
    }
  }

  Triangulation tri;
  tri.points_ = std::move(points);
  tri.edges_.reserve(incidence.size());
  tri.incident_.reserve(incidence.size());
  // Overlaps first: a folded pair of triangles also breaks incidence
  // elsewhere, and the overlap is the more useful report.
  for (const auto& [e, slots] : incidence) {
    if (slots.size() > 2) {
      fail(ErrorCode::bad_edge_incidence,
           "edge " + to_string(e) + " is shared by " + std::to_string(slots.size()) + " triangles");
    }
    if (slots.size() == 2) {
      const PointId c = tris[slots[0]].opposite(e);
      const PointId d = tris[slots[1]].opposite(e);
      if (orientation(ps[e.lo], ps[e.hi], ps[c]) == orientation(ps[e.lo], ps[e.hi], ps[d])) {
        fail(ErrorCode::overlapping_triangles,
             "triangles " + describe(tris[slots[0]]) + " and " + describe(tris[slots[1]]) +
                 " lie on the same side of edge " + to_string(e));
      }
    }
  }
  for (const auto& [e, slots] : incidence) {
    if (slots.size() == 2 && ps.is_hull_edge(e)) {
      fail(ErrorCode::bad_edge_incidence, "hull edge " + to_string(e) + " has two triangles");
    }
    if (slots.size() == 1 && !ps.is_hull_edge(e)) {
      fail(ErrorCode::bad_edge_incidence,
           "edge " + to_string(e) + " has one triangle but is not a hull edge");
    }
    tri.edges_.push_back(e);
    tri.incident_.push_back({slots[0], slots.size() == 2 ? slots[1] : -1});
  }
  for (std::size_t i = 0; i < h; ++i) {
    const Edge e = Edge::make(ps.hull()[i], ps.hull()[(i + 1) % h]);
    if (!incidence.contains(e)) {
      fail(ErrorCode::bad_edge_incidence, "hull edge " + to_string(e) + " is not covered");
    }
  }
  const std::size_t expected_edges = 3 * n - h - 3;
  if (tri.edges_.size() != expected_edges) {
    fail(ErrorCode::wrong_counts, "expected " + std::to_string(expected_edges) + " edges, got " +
                                      std::to_string(tri.edges_.size()));
  }

  std::vector<bool> used(n, false);
  __int128 area = 0;
  for (const Triangle& t : tris) {
    for (PointId v : t.v) used[v] = true;
    const __int128 a = doubled_signed_area(ps[t.v[0]], ps[t.v[1]], ps[t.v[2]]);
    area += a < 0 ? -a : a;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!used[v]) fail(ErrorCode::unused_point, "point " + std::to_string(v) + " is in no triangle");
  }
  if (area != ps.doubled_hull_area()) {
    fail(ErrorCode::overlapping_triangles, "triangle areas do not sum to the hull area");
  }

  tri.triangles_ = std::move(tris);
  return tri;
}

std::vector<Triangle> Triangulation::triangles() const {
  std::vector<Triangle> out = triangles_;
  std::sort(out.begin(), out.end());
  return out;
}

std::ptrdiff_t Triangulation::find(const Edge& e) const noexcept {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return -1;
  return it - edges_.begin();
}

bool Triangulation::is_interior(const Edge& e) const noexcept {
  const auto i = find(e);
  return i >= 0 && incident_[i][1] >= 0;
}

bool Triangulation::is_boundary(const Edge& e) const noexcept {
  const auto i = find(e);
  return i >= 0 && incident_[i][1] < 0;
}

std::array<PointId, 4> Triangulation::quadrilateral_of(const Edge& e) const {
  const auto i = find(e);
  if (i < 0) throw Error(ErrorCode::edge_not_found, "edge " + to_string(e) + " is not in the triangulation");
  if (incident_[i][1] < 0) throw Error(ErrorCode::boundary_edge, "edge " + to_string(e) + " is a boundary edge");
  PointId c = triangles_[incident_[i][0]].opposite(e);
  PointId d = triangles_[incident_[i][1]].opposite(e);
  if (orientation(point(e.lo), point(c), point(e.hi)) != Orientation::left) std::swap(c, d);
  return {e.lo, c, e.hi, d};
}

bool Triangulation::is_admissible(const Edge& e) const noexcept {
  if (!is_interior(e)) return false;
  const auto q = quadrilateral_of(e);
  return is_strictly_convex_quad(point(q[0]), point(q[1]), point(q[2]), point(q[3]));
}

FlipResult Triangulation::flip(const Edge& e) const {
  if (!is_admissible(e)) {
    throw Error(ErrorCode::inadmissible_flip, "flip of edge " + to_string(e) + " is not admissible");
  }
  const auto index = find(e);
  const auto [a, c, b, d] = quadrilateral_of(e);
  const std::int32_t s0 = incident_[index][0];
  const std::int32_t s1 = incident_[index][1];

  Triangulation out = *this;
  out.triangles_[s0] = Triangle::make(c, b, d);
  out.triangles_[s1] = Triangle::make(d, a, c);

  const Edge boundary[4] = {Edge::make(a, c), Edge::make(c, b), Edge::make(b, d), Edge::make(d, a)};
  for (const Edge& side : boundary) {
    auto& slots = out.incident_[out.find(side)];
    const std::int32_t now = out.triangles_[s0].contains(side) ? s0 : s1;
    for (auto& s : slots) {
      if (s == s0 || s == s1) {
        s = now;
        break;
      }
    }
  }

  out.edges_.erase(out.edges_.begin() + index);
  out.incident_.erase(out.incident_.begin() + index);
  const Edge created = Edge::make(c, d);
  auto pos = std::lower_bound(out.edges_.begin(), out.edges_.end(), created);
  const auto at = pos - out.edges_.begin();
  out.edges_.insert(pos, created);
  out.incident_.insert(out.incident_.begin() + at, {s0, s1});
  return FlipResult{std::move(out), created};
}

AdjacentEdges Triangulation::edges_sharing_triangle(const Edge& e) const {
  const auto i = find(e);
  if (i < 0) throw Error(ErrorCode::edge_not_found, "edge " + to_string(e) + " is not in the triangulation");
  std::array<Edge, 4> found{};
  std::size_t count = 0;
  for (std::int32_t slot : incident_[i]) {
    if (slot < 0) continue;
    for (const Edge& side : triangles_[slot].edges()) {
      if (side != e) found[count++] = side;
    }
  }
  std::sort(found.begin(), found.begin() + count);
  AdjacentEdges out;
  for (std::size_t j = 0; j < count; ++j) {
    if (j == 0 || found[j] != found[j - 1]) out.push(found[j]);
  }
  return out;
}

bool Triangulation::share_triangle(const Edge& a, const Edge& b) const noexcept {
  if (a == b) return false;
  const auto i = find(a);
  if (i < 0) return false;
  for (std::int32_t slot : incident_[i]) {
    if (slot >= 0 && triangles_[slot].contains(b)) return true;
  }
  return false;
}

CanonicalKey Triangulation::canonical_key() const {
  CanonicalKey key;
  key.bytes.resize(edges_.size() * 8);
  char* out = key.bytes.data();
  for (const Edge& e : edges_) {
    for (PointId v : {e.lo, e.hi}) {
      *out++ = static_cast<char>((v >> 24) & 0xff);
      *out++ = static_cast<char>((v >> 16) & 0xff);
      *out++ = static_cast<char>((v >> 8) & 0xff);
      *out++ = static_cast<char>(v & 0xff);
    }
  }
  return key;
}

bool operator==(const Triangulation& a, const Triangulation& b) {
  return same_point_set(a, b) && a.edges_ == b.edges_;
}

bool same_point_set(const Triangulation& a, const Triangulation& b) noexcept {
  return a.point_set() == b.point_set() || a.points() == b.points();
}

std::vector<Edge> changed_edges(const Triangulation& from, const Triangulation& to) {
  if (!same_point_set(from, to)) {
    throw Error(ErrorCode::point_set_mismatch, "triangulations are over different point sets");
  }
  std::vector<Edge> out;
  std::set_difference(from.edges().begin(), from.edges().end(), to.edges().begin(),
                      to.edges().end(), std::back_inserter(out));
  return out;
}

}  // namespace flipdist
