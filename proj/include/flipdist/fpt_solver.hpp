#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "flipdist/triangulation.hpp"

namespace flipdist {

// The nondeterministic walker works on one "current edge" of the current
// triangulation and carries a stack of edges it created. Each action is one
// of five kinds; the kinds with a move component pick one of the (at most 4)
// edges sharing a triangle with the current edge, which gives at most
// 4 + 4 + 4 + 1 + 1 = 14 concrete actions per state.

enum class ActionKind : std::uint8_t {
  move,            // move to an adjacent edge
  flip_move,       // flip, then move to an edge adjacent before the flip
  flip_push_move,  // flip, push the created edge, then move
  flip_jump,       // flip, jump to the stack top
  flip_jump_pop,   // flip, jump to the stack top and pop it
};

const char* to_string(ActionKind kind) noexcept;

inline constexpr std::size_t max_actions_per_state = 14;

struct Action {
  ActionKind kind = ActionKind::move;
  /// Index into the sorted adjacent-edge list; set only for the three kinds
  /// with a move component.
  std::optional<std::uint8_t> choice;

  bool flips() const noexcept { return kind != ActionKind::move; }

  friend bool operator==(const Action&, const Action&) = default;
};

struct MachineState {
  Triangulation tri;
  Edge at;
  std::vector<Edge> stack;  // top is back()
  std::uint32_t flips_done = 0;
  std::uint32_t actions_done = 0;
};

struct Successor {
  Action action;
  MachineState state;
};

/// Every concrete action applicable in `state`, with the resulting state.
std::vector<Successor> legal_actions(const MachineState& state);

/// Ordered tuple of positive parts.
struct Composition {
  std::vector<std::uint32_t> parts;

  std::uint32_t total() const noexcept;
  friend bool operator==(const Composition&, const Composition&) = default;
};

/// All compositions of k in lexicographic order; k = 0 gives one empty
/// composition.
std::vector<Composition> compositions(std::uint32_t k);

/// Streams compositions of k in lexicographic order until `visit` returns false.
/// Returns false if stopped early.
bool for_each_composition(std::uint32_t k, const std::function<bool(const Composition&)>& visit);

enum class StackMode {
  cleared,     // every iteration starts with an empty stack
  persistent,  // the stack carries over between iterations
};

enum class OrderMode {
  fixed,          // one canonical ordering of the changed edges
  all_rotations,  // additionally try every rotation of that ordering
};

struct SolverOptions {
  /// Memoize machine states and iteration results. Never changes a decision.
  bool pruning = true;
  StackMode stack_mode = StackMode::cleared;
  OrderMode order_mode = OrderMode::fixed;
  /// Abort with `ErrorCode::budget_exceeded` after this many expanded
  /// states; 0 means unlimited.
  std::uint64_t state_budget = 0;
};

struct SolverStats {
  std::uint64_t states_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t iterations_run = 0;
  std::uint64_t iteration_cache_hits = 0;
  std::uint64_t compositions_tried = 0;
  std::size_t max_branching = 0;
  std::uint64_t branching_violations = 0;  // states with more than 14 actions

  void merge(const SolverStats& other) noexcept;
};

/// Triangulations reachable from (tri, start, empty stack) by action
/// sequences performing exactly `flips` flips within 2 * `flips` actions.
/// Returned in canonical-key order, without duplicates.
std::vector<Triangulation> run_iteration(const Triangulation& tri, const Edge& start,
                                         std::uint32_t flips, const SolverOptions& options = {},
                                         SolverStats* stats = nullptr);

struct Witness {
  Composition composition;
  std::vector<Edge> start_edges;  // one per iteration
  std::vector<Edge> flips;        // edges flipped, in order
};

struct SolveResult {
  bool accepted = false;
  std::optional<Witness> witness;
  SolverStats stats;
};

/// Simulates the walker over every composition of k. Iteration l starts at
/// the next edge of the sorted changed-edge list that is still present in the
/// current triangulation and must perform exactly k_l flips.
SolveResult solve_exact(const Triangulation& initial, const Triangulation& target, std::uint32_t k,
                        const SolverOptions& options = {});

bool exists_solution_with_exactly_k_flips(const Triangulation& initial, const Triangulation& target,
                                          std::uint32_t k, const SolverOptions& options = {},
                                          SolverStats* stats = nullptr);

/// True iff the walker accepts for k and rejects for every smaller value,
/// i.e. the flip distance is exactly k.
bool decide_flip_distance_eq(const Triangulation& initial, const Triangulation& target,
                             std::uint32_t k, const SolverOptions& options = {},
                             SolverStats* stats = nullptr);

}  // namespace flipdist
