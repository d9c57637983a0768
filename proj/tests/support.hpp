#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "flipdist/flip_dag.hpp"
#include "flipdist/geometry.hpp"
#include "flipdist/instance.hpp"
#include "flipdist/triangulation.hpp"

namespace fixtures {

using namespace flipdist;
using Coords = std::vector<std::array<std::int32_t, 2>>;
using TriList = std::vector<std::array<std::uint32_t, 3>>;

inline Triangulation make(const Coords& coords, const TriList& tris) {
  auto points = PointSet::create(coords);
  std::vector<Triangle> ts;
  for (const auto& t : tris) ts.push_back(Triangle::make(t[0], t[1], t[2]));
  return Triangulation::build(points, ts);
}

inline Triangulation make_on(const Triangulation& like, const TriList& tris) {
  std::vector<Triangle> ts;
  for (const auto& t : tris) ts.push_back(Triangle::make(t[0], t[1], t[2]));
  return Triangulation::build(like.point_set(), ts);
}

// Unit square 0=(0,0) 1=(1,0) 2=(1,1) 3=(0,1), diagonal 0-2.
inline const Coords square_points{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
inline Triangulation square() { return make(square_points, {{0, 1, 2}, {0, 2, 3}}); }
inline Triangulation square_flipped() { return make(square_points, {{0, 1, 3}, {1, 2, 3}}); }

// Convex pentagon, vertices counterclockwise.
inline const Coords pentagon_points{{0, -10}, {10, -3}, {6, 8}, {-6, 8}, {-10, -3}};
inline Triangulation pentagon_fan(std::uint32_t apex) {
  TriList tris;
  for (std::uint32_t i = 1; i + 1 < 5; ++i) {
    tris.push_back({apex, (apex + i) % 5, (apex + i + 1) % 5});
  }
  return make(pentagon_points, tris);
}

// Convex hexagon 0..5 counterclockwise with diagonals 0-2, 0-3, 3-5. The
// quadrilaterals around 0-2 and 3-5 have no triangle in common.
inline const Coords hexagon_points{{0, -10}, {9, -5}, {9, 5}, {0, 10}, {-9, 5}, {-9, -5}};
inline Triangulation hexagon_zigzag() {
  return make(hexagon_points, {{0, 1, 2}, {0, 2, 3}, {0, 3, 5}, {3, 4, 5}});
}

inline std::vector<Edge> interior_edges(const Triangulation& t) {
  std::vector<Edge> out;
  for (const Edge& e : t.edges()) {
    if (t.is_interior(e)) out.push_back(e);
  }
  return out;
}

inline std::vector<Edge> admissible_edges(const Triangulation& t) {
  std::vector<Edge> out;
  for (const Edge& e : t.edges()) {
    if (t.is_admissible(e)) out.push_back(e);
  }
  return out;
}

/// Random points with no three collinear, in [0, range)^2.
inline Coords random_general_points(std::mt19937_64& rng, std::size_t n, std::int32_t range) {
  std::uniform_int_distribution<std::int32_t> coord(0, range - 1);
  Coords out;
  while (out.size() < n) {
    const std::array<std::int32_t, 2> c{coord(rng), coord(rng)};
    bool ok = true;
    const Point p{0, c[0], c[1]};
    for (std::size_t i = 0; i < out.size() && ok; ++i) {
      const Point a{0, out[i][0], out[i][1]};
      if (a == p) ok = false;
      for (std::size_t j = i + 1; j < out.size() && ok; ++j) {
        if (orientation(a, Point{0, out[j][0], out[j][1]}, p) == Orientation::collinear) ok = false;
      }
    }
    if (ok) out.push_back(c);
  }
  return out;
}

/// Random walk of `steps` admissible flips.
inline Triangulation random_walk(const Triangulation& start, std::size_t steps, std::mt19937_64& rng) {
  Triangulation t = start;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto adm = admissible_edges(t);
    if (adm.empty()) break;
    t = t.flip(adm[std::uniform_int_distribution<std::size_t>(0, adm.size() - 1)(rng)]).triangulation;
  }
  return t;
}

/// Random triangulation of `n` random points in general position.
inline Triangulation random_triangulation(std::mt19937_64& rng, std::size_t n) {
  auto points = PointSet::create(random_general_points(rng, n, static_cast<std::int32_t>(4 * n + 8)));
  return random_walk(incremental_triangulation(points), 3 * n, rng);
}

// ---------------------------------------------------------------------------
// Reference oracles. These deliberately avoid Triangulation's own adjacency
// and flip code: they work on raw edge sets and the geometric predicates.

using EdgeSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;

inline EdgeSet edge_set(const Triangulation& t) {
  EdgeSet s;
  for (const Edge& e : t.edges()) s.insert({e.lo, e.hi});
  return s;
}

inline bool proper_cross(const std::vector<Point>& p, std::pair<std::uint32_t, std::uint32_t> a,
                         std::pair<std::uint32_t, std::uint32_t> b) {
  if (a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second) return false;
  auto side = [&](std::uint32_t u, std::uint32_t v, std::uint32_t w) {
    const std::int64_t cross = std::int64_t(p[v].x - p[u].x) * (p[w].y - p[u].y) -
                               std::int64_t(p[v].y - p[u].y) * (p[w].x - p[u].x);
    return (cross > 0) - (cross < 0);
  };
  return side(a.first, a.second, b.first) * side(a.first, a.second, b.second) < 0 &&
         side(b.first, b.second, a.first) * side(b.first, b.second, a.second) < 0;
}

/// Every triangulation of a point set in general position, as maximal sets of
/// pairwise non-crossing segments.
inline std::vector<EdgeSet> brute_force_triangulations(std::span<const Point> pts) {
  const std::vector<Point> p(pts.begin(), pts.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> segs;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    for (std::uint32_t j = i + 1; j < p.size(); ++j) segs.push_back({i, j});
  }
  std::vector<std::vector<bool>> crosses(segs.size(), std::vector<bool>(segs.size()));
  for (std::size_t a = 0; a < segs.size(); ++a) {
    for (std::size_t b = 0; b < segs.size(); ++b) crosses[a][b] = proper_cross(p, segs[a], segs[b]);
  }
  std::vector<EdgeSet> out;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto& self, std::size_t next) -> void {
    if (next == segs.size()) {
      // Maximal: every unchosen segment crosses something chosen.
      for (std::size_t s = 0; s < segs.size(); ++s) {
        if (std::find(chosen.begin(), chosen.end(), s) != chosen.end()) continue;
        bool blocked = false;
        for (std::size_t c : chosen) blocked = blocked || crosses[s][c];
        if (!blocked) return;
      }
      EdgeSet set;
      for (std::size_t c : chosen) set.insert(segs[c]);
      out.push_back(std::move(set));
      return;
    }
    bool free = true;
    for (std::size_t c : chosen) free = free && !crosses[next][c];
    if (free) {
      chosen.push_back(next);
      self(self, next + 1);
      chosen.pop_back();
    }
    // Skipping a segment is only useful if something chosen later can block it.
    self(self, next + 1);
  };
  rec(rec, 0);
  return out;
}

/// Flip graph over brute-force triangulations: two are adjacent iff their
/// edge sets differ by exactly one edge each way.
inline std::vector<std::vector<std::size_t>> brute_force_flip_graph(const std::vector<EdgeSet>& all) {
  std::vector<std::vector<std::size_t>> adj(all.size());
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      std::size_t missing = 0;
      for (const auto& e : all[a]) missing += all[b].contains(e) ? 0 : 1;
      if (missing == 1) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  }
  return adj;
}

inline int brute_force_distance(const std::vector<EdgeSet>& all,
                                const std::vector<std::vector<std::size_t>>& adj, const EdgeSet& from,
                                const EdgeSet& to) {
  const auto index = [&](const EdgeSet& s) {
    return static_cast<std::size_t>(std::find(all.begin(), all.end(), s) - all.begin());
  };
  const std::size_t src = index(from);
  const std::size_t dst = index(to);
  std::vector<int> dist(all.size(), -1);
  std::queue<std::size_t> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist[dst];
}

/// Arcs of the dependency DAG straight from the definition, using raw
/// triangle lists of the snapshots.
inline std::set<std::pair<std::size_t, std::size_t>> reference_arcs(const FlipSequence& seq) {
  std::set<std::pair<std::size_t, std::size_t>> arcs;
  const std::size_t r = seq.size();
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = i + 1; j <= r; ++j) {
      const Edge phi = seq.record(i).phi;
      const Edge eps = seq.record(j).eps;
      bool adjacent = phi == eps;
      for (const Triangle& t : seq.snapshot(j - 1).triangles()) {
        if (t.contains(phi) && t.contains(eps) && !(phi == eps)) adjacent = true;
      }
      bool flipped_between = false;
      for (std::size_t p = i + 1; p < j; ++p) flipped_between = flipped_between || seq.record(p).eps == phi;
      if (adjacent && !flipped_between) arcs.insert({i, j});
    }
  }
  return arcs;
}

/// Reachability by repeated relaxation over the arc list.
inline bool reference_reaches(const FlipDag& dag, std::size_t from, std::size_t to) {
  std::vector<bool> seen(dag.node_count() + 1);
  seen[from] = true;
  for (const Arc& a : dag.arcs()) {
    if (seen[a.from]) seen[a.to] = true;  // arcs sorted by from, and from < to
  }
  return seen[to];
}

}  // namespace fixtures
