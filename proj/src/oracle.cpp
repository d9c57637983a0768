#include "flipdist/oracle.hpp"

#include <deque>
#include <unordered_map>

#include "flipdist/error.hpp"

namespace flipdist {

std::vector<std::pair<Edge, Triangulation>> flip_neighbors(const Triangulation& t) {
  std::vector<std::pair<Edge, Triangulation>> out;
  for (const Edge& e : t.edges()) {
    if (t.is_admissible(e)) out.emplace_back(e, t.flip(e).triangulation);
  }
  return out;
}

namespace {

void require_same_points(const Triangulation& a, const Triangulation& b) {
  if (!same_point_set(a, b)) {
    throw Error(ErrorCode::point_set_mismatch, "triangulations are over different point sets");
  }
}

void over_budget(std::uint64_t budget) {
  throw Error(ErrorCode::budget_exceeded,
              "flip-graph search exceeded the node budget of " + std::to_string(budget));
}

/// BFS distances from `source`, up to `depth` levels.
std::unordered_map<CanonicalKey, std::uint32_t> distance_labels(const Triangulation& source,
                                                                std::uint32_t depth,
                                                                std::uint64_t budget) {
  std::unordered_map<CanonicalKey, std::uint32_t> dist;
  std::deque<std::pair<Triangulation, std::uint32_t>> queue;
  dist.emplace(source.canonical_key(), 0);
  queue.emplace_back(source, 0);
  while (!queue.empty()) {
    auto [t, d] = std::move(queue.front());
    queue.pop_front();
    if (d == depth) continue;
    for (auto& [edge, next] : flip_neighbors(t)) {
      if (dist.emplace(next.canonical_key(), d + 1).second) {
        if (dist.size() > budget) over_budget(budget);
        queue.emplace_back(std::move(next), d + 1);
      }
    }
  }
  return dist;
}

}  // namespace

OracleResult bfs_distance(const Triangulation& from, const Triangulation& to,
                          const OracleOptions& options) {
  require_same_points(from, to);
  OracleResult result;
  const CanonicalKey goal = to.canonical_key();
  if (from.canonical_key() == goal) {
    result.distance = 0;
    result.states_explored = 1;
    return result;
  }
  std::unordered_map<CanonicalKey, std::uint32_t> seen;
  std::deque<std::pair<Triangulation, std::uint32_t>> queue;
  seen.emplace(from.canonical_key(), 0);
  queue.emplace_back(from, 0);
  while (!queue.empty()) {
    auto [t, d] = std::move(queue.front());
    queue.pop_front();
    ++result.states_explored;
    if (d == options.cap) continue;
    for (auto& [edge, next] : flip_neighbors(t)) {
      CanonicalKey key = next.canonical_key();
      if (key == goal) {
        result.distance = d + 1;
        return result;
      }
      if (seen.emplace(std::move(key), d + 1).second) {
        if (seen.size() > options.node_budget) over_budget(options.node_budget);
        queue.emplace_back(std::move(next), d + 1);
      }
    }
  }
  return result;
}

std::vector<FlipSequence> enumerate_minimal_solutions(const Triangulation& from,
                                                      const Triangulation& to,
                                                      std::uint32_t distance, std::size_t limit,
                                                      const OracleOptions& options) {
  require_same_points(from, to);
  std::vector<FlipSequence> out;
  if (limit == 0) return out;
  // Labels are distances to the target; flips are reversible.
  const auto to_target = distance_labels(to, distance, options.node_budget);
  auto start = to_target.find(from.canonical_key());
  if (start == to_target.end() || start->second != distance) {
    throw Error(ErrorCode::invalid_argument,
                "distance " + std::to_string(distance) + " is not the flip distance");
  }

  std::vector<Edge> path;
  auto descend = [&](auto& self, const Triangulation& t, std::uint32_t left) -> void {
    if (out.size() >= limit) return;
    if (left == 0) {
      out.push_back(FlipSequence::apply(from, path));
      return;
    }
    for (auto& [edge, next] : flip_neighbors(t)) {
      auto it = to_target.find(next.canonical_key());
      if (it == to_target.end() || it->second != left - 1) continue;
      path.push_back(edge);
      self(self, next, left - 1);
      path.pop_back();
      if (out.size() >= limit) return;
    }
  };
  descend(descend, from, distance);
  return out;
}

std::vector<Triangulation> all_triangulations(const Triangulation& start, std::uint64_t node_budget) {
  std::unordered_map<CanonicalKey, bool> seen;
  std::vector<Triangulation> out{start};
  seen.emplace(start.canonical_key(), true);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto& [edge, next] : flip_neighbors(out[i])) {
      if (seen.emplace(next.canonical_key(), true).second) {
        if (seen.size() > node_budget) over_budget(node_budget);
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

}  // namespace flipdist
