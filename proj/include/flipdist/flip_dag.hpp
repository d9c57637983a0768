#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

/// One performed flip: `eps` is the edge removed, `phi` the diagonal created.
/// `position` is 1-based.
struct FlipRecord {
  std::size_t position = 0;
  Edge eps;
  Edge phi;
};

/// A validated flip sequence with every intermediate triangulation kept.
/// snapshot(i) is the triangulation after the first i flips.
class FlipSequence {
public:
  /// Flips `edges` in order starting from `base`. Throws
  /// `ErrorCode::inadmissible_flip` with the 1-based position of the first
  /// flip that cannot be performed.
  static FlipSequence apply(const Triangulation& base, std::span<const Edge> edges);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const Triangulation& base() const noexcept { return snapshots_.front(); }
  const Triangulation& final_triangulation() const noexcept { return snapshots_.back(); }
  const Triangulation& snapshot(std::size_t i) const { return snapshots_.at(i); }
  /// Record for 1-based position i.
  const FlipRecord& record(std::size_t i) const { return records_.at(i - 1); }
  std::span<const FlipRecord> records() const noexcept { return records_; }
  std::vector<Edge> flipped_edges() const;

private:
  std::vector<FlipRecord> records_;
  std::vector<Triangulation> snapshots_;
};

inline FlipSequence apply_sequence(const Triangulation& base, std::span<const Edge> edges) {
  return FlipSequence::apply(base, edges);
}

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Dependency DAG over the flips of a sequence. Nodes are 1..node_count();
/// every arc goes from a smaller to a larger index.
class FlipDag {
public:
  FlipDag(std::size_t node_count, std::vector<Arc> arcs);

  std::size_t node_count() const noexcept { return successors_.size(); }
  /// Sorted by (from, to).
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::span<const std::size_t> successors(std::size_t node) const { return successors_.at(node - 1); }
  std::span<const std::size_t> predecessors(std::size_t node) const { return predecessors_.at(node - 1); }
  std::size_t indegree(std::size_t node) const { return predecessors(node).size(); }
  std::size_t max_indegree() const noexcept;
  bool has_arc(std::size_t from, std::size_t to) const;

private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<std::size_t>> predecessors_;
};

/// Arc i -> j (i < j) iff phi(f_i) is eps(f_j) or shares a triangle with it in
/// the triangulation just before f_j, and phi(f_i) is not flipped by any f_p
/// with i < p < j.
FlipDag build_dag(const FlipSequence& sequence);

/// `order` lists 1-based nodes. Throws `ErrorCode::not_a_permutation`.
bool is_topological_sort(const FlipDag& dag, std::span<const std::size_t> order);

/// Performs the flips of `sequence` in `order`, each by its recorded eps.
/// Throws `ErrorCode::inadmissible_flip` (position = index within `order`)
/// if some flip cannot be performed.
Triangulation replay_permutation(const FlipSequence& sequence, std::span<const std::size_t> order);

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> components(const FlipDag& dag);

struct ComponentClass {
  std::vector<std::size_t> nodes;
  bool essential = false;
};

/// A component is essential iff one of its flips removes an edge of the
/// sequence's base that is absent from `target`.
std::vector<ComponentClass> classify_essential(const FlipDag& dag, const FlipSequence& sequence,
                                               const Triangulation& target);

/// Directed reachability; path_exists(d, i, i) is true.
bool path_exists(const FlipDag& dag, std::size_t from, std::size_t to);

/// Kahn's algorithm taking the smallest (or largest) available node each step.
std::vector<std::size_t> lexicographic_topological_sort(const FlipDag& dag, bool largest_first = false);

/// Kahn's algorithm with uniformly random choice among available nodes.
std::vector<std::size_t> random_topological_sort(const FlipDag& dag, std::mt19937_64& rng);

/// A topological sort in which each component occupies one consecutive
/// block, blocks following `component_order` (indices into components(dag)).
std::vector<std::size_t> block_topological_sort(const FlipDag& dag,
                                                std::span<const std::size_t> component_order);

}  // namespace flipdist
