#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flipdist/flip_dag.hpp"
#include "flipdist/triangulation.hpp"

namespace flipdist {

struct OracleOptions {
  std::uint32_t cap = 10;               // maximum search depth
  std::uint64_t node_budget = 1'000'000;  // distinct triangulations stored before aborting
};

struct OracleResult {
  std::optional<std::uint32_t> distance;  // empty if the distance exceeds the cap
  std::uint64_t states_explored = 0;
};

/// Every triangulation reachable by one admissible flip, in canonical edge order.
std::vector<std::pair<Edge, Triangulation>> flip_neighbors(const Triangulation& t);

/// Exact flip distance by breadth-first search over the flip graph.
/// Throws `ErrorCode::point_set_mismatch`, or `ErrorCode::budget_exceeded`
/// when more than `node_budget` triangulations would be stored.
OracleResult bfs_distance(const Triangulation& from, const Triangulation& to,
                          const OracleOptions& options = {});

/// Up to `limit` distinct shortest flip sequences of length `distance` from
/// `from` to `to`, in canonical edge order. `distance` must be the value
/// returned by bfs_distance.
std::vector<FlipSequence> enumerate_minimal_solutions(const Triangulation& from,
                                                      const Triangulation& to,
                                                      std::uint32_t distance, std::size_t limit,
                                                      const OracleOptions& options = {});

/// The connected component of the flip graph containing `start`, which is
/// every triangulation of the point set. Throws on budget overrun.
std::vector<Triangulation> all_triangulations(const Triangulation& start,
                                              std::uint64_t node_budget = 1'000'000);

}  // namespace flipdist
