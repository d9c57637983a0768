#include <random>

#include "doctest.h"
#include "flipdist/error.hpp"
#include "flipdist/fpt_solver.hpp"
#include "flipdist/oracle.hpp"
#include "support.hpp"

using namespace flipdist;
using namespace fixtures;

namespace {

std::size_t count_kind(const std::vector<Successor>& succ, ActionKind kind) {
  return static_cast<std::size_t>(
      std::count_if(succ.begin(), succ.end(), [&](const Successor& s) { return s.action.kind == kind; }));
}

/// Plain breadth-first expansion of the walker over one iteration, with no
/// memoization at all, straight from legal_actions.
std::set<CanonicalKey> naive_iteration(const Triangulation& t, const Edge& start, std::uint32_t flips) {
  std::set<CanonicalKey> out;
  std::vector<MachineState> frontier{MachineState{t, start, {}, 0, 0}};
  while (!frontier.empty()) {
    std::vector<MachineState> next;
    for (const MachineState& s : frontier) {
      if (s.flips_done == flips) {
        out.insert(s.tri.canonical_key());
        continue;
      }
      if (s.actions_done == 2 * flips) continue;
      for (Successor& succ : legal_actions(s)) next.push_back(std::move(succ.state));
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("compositions") {
  CHECK(compositions(0).size() == 1);
  CHECK(compositions(0)[0].parts.empty());
  CHECK(compositions(1) == std::vector<Composition>{{{1}}});
  CHECK(compositions(3) == std::vector<Composition>{{{1, 1, 1}}, {{1, 2}}, {{2, 1}}, {{3}}});
  for (std::uint32_t k = 1; k <= 12; ++k) {
    const auto all = compositions(k);
    CHECK(all.size() == (std::size_t{1} << (k - 1)));
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].total() == k);
      for (auto p : all[i].parts) CHECK(p >= 1);
      if (i > 0) CHECK(all[i - 1].parts < all[i].parts);
    }
  }
  std::size_t visited = 0;
  CHECK_FALSE(for_each_composition(10, [&](const Composition&) { return ++visited < 7; }));
  CHECK(visited == 7);
}

TEST_CASE("legal_actions examples") {
  const MachineState at_diagonal{square(), Edge::make(0, 2), {}, 0, 0};
  const auto succ = legal_actions(at_diagonal);
  CHECK(succ.size() == 12);
  CHECK(count_kind(succ, ActionKind::move) == 4);
  CHECK(count_kind(succ, ActionKind::flip_move) == 4);
  CHECK(count_kind(succ, ActionKind::flip_push_move) == 4);
  for (const Successor& s : succ) {
    CHECK(s.state.actions_done == 1);
    CHECK(s.state.flips_done == (s.action.flips() ? 1u : 0u));
    REQUIRE(s.action.choice);
    CHECK(*s.action.choice < 4);
    CHECK(s.state.tri.contains(s.state.at));
    if (s.action.kind == ActionKind::flip_push_move) {
      CHECK(s.state.stack == std::vector<Edge>{Edge::make(1, 3)});
    } else {
      CHECK(s.state.stack.empty());
    }
  }

  const MachineState at_boundary{square(), Edge::make(0, 1), {}, 0, 0};
  const auto moves = legal_actions(at_boundary);
  CHECK(moves.size() == 2);
  CHECK(count_kind(moves, ActionKind::move) == 2);

  // With a stack top that survives the flip, both jump kinds appear.
  const MachineState with_stack{pentagon_fan(0), Edge::make(0, 2), {Edge::make(0, 3)}, 0, 0};
  const auto jumps = legal_actions(with_stack);
  CHECK(jumps.size() == 14);
  for (const Successor& s : jumps) {
    if (s.action.kind == ActionKind::flip_jump) {
      CHECK(s.state.at == Edge::make(0, 3));
      CHECK(s.state.stack.size() == 1);
      CHECK_FALSE(s.action.choice);
    }
    if (s.action.kind == ActionKind::flip_jump_pop) {
      CHECK(s.state.at == Edge::make(0, 3));
      CHECK(s.state.stack.empty());
    }
  }

  // A stack top destroyed by the flip kills both jump kinds.
  const MachineState stale{square(), Edge::make(0, 2), {Edge::make(0, 2)}, 0, 0};
  CHECK(legal_actions(stale).size() == 12);
}

TEST_CASE("run_iteration examples") {
  const auto one = run_iteration(square(), Edge::make(0, 2), 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == square_flipped());

  // Start on a boundary edge: move to the diagonal, then flip.
  const auto from_boundary = run_iteration(square(), Edge::make(0, 1), 1);
  REQUIRE(from_boundary.size() == 1);
  CHECK(from_boundary[0] == square_flipped());

  CHECK_THROWS_AS(run_iteration(square(), Edge::make(1, 3), 1), Error);
}

TEST_CASE("run_iteration matches a memo-free expansion") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    const Triangulation t = random_triangulation(rng, 5 + trial % 3);
    const Edge start = t.edges()[std::uniform_int_distribution<std::size_t>(0, t.edge_count() - 1)(rng)];
    for (std::uint32_t flips = 1; flips <= 2; ++flips) {
      const auto expected = naive_iteration(t, start, flips);
      for (bool pruning : {true, false}) {
        SolverOptions opt;
        opt.pruning = pruning;
        std::set<CanonicalKey> got;
        for (const Triangulation& u : run_iteration(t, start, flips, opt)) {
          got.insert(u.canonical_key());
          const auto d = bfs_distance(t, u).distance;
          REQUIRE(d);
          CHECK(*d <= flips);
        }
        CHECK(got == expected);
      }
    }
  }
}

TEST_CASE("exists and decide examples") {
  CHECK(exists_solution_with_exactly_k_flips(square(), square(), 0));
  CHECK(exists_solution_with_exactly_k_flips(square(), square_flipped(), 1));
  CHECK_FALSE(exists_solution_with_exactly_k_flips(square(), square_flipped(), 0));
  CHECK(exists_solution_with_exactly_k_flips(pentagon_fan(0), pentagon_fan(1), 2));
  CHECK_FALSE(exists_solution_with_exactly_k_flips(pentagon_fan(0), pentagon_fan(1), 1));

  CHECK(decide_flip_distance_eq(square(), square(), 0));
  for (std::uint32_t k = 1; k <= 4; ++k) CHECK_FALSE(decide_flip_distance_eq(square(), square(), k));
  for (std::uint32_t k = 0; k <= 4; ++k) {
    CHECK(decide_flip_distance_eq(square(), square_flipped(), k) == (k == 1));
  }

  const Triangulation other = make({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {{0, 1, 2}, {0, 2, 3}});
  CHECK_THROWS_AS(decide_flip_distance_eq(square(), other, 1), Error);

  SolverOptions tiny;
  tiny.state_budget = 1;
  CHECK_THROWS_AS(exists_solution_with_exactly_k_flips(pentagon_fan(0), pentagon_fan(1), 2, tiny), Error);
}

TEST_CASE("witnesses replay to the target") {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 40; ++trial) {
    const Triangulation a = random_triangulation(rng, 5 + trial % 4);
    const Triangulation b = random_walk(a, 1 + trial % 4, rng);
    const auto d = bfs_distance(a, b).distance;
    REQUIRE(d);
    const SolveResult r = solve_exact(a, b, *d);
    REQUIRE(r.accepted);
    REQUIRE(r.witness);
    CHECK(r.witness->flips.size() == *d);
    CHECK(r.witness->composition.total() == *d);
    CHECK(r.witness->start_edges.size() == r.witness->composition.parts.size());
    CHECK(FlipSequence::apply(a, r.witness->flips).final_triangulation() == b);
    CHECK(r.stats.branching_violations == 0);
    CHECK(r.stats.max_branching <= max_actions_per_state);
  }
}

TEST_CASE("solver agrees with the oracle in every mode") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    const Triangulation a = random_triangulation(rng, 5 + trial % 3);
    const Triangulation b = random_walk(a, 1 + trial % 3, rng);
    const auto d = bfs_distance(a, b).distance;
    REQUIRE(d);
    for (bool pruning : {true, false}) {
      for (StackMode stack : {StackMode::cleared, StackMode::persistent}) {
        for (OrderMode order : {OrderMode::fixed, OrderMode::all_rotations}) {
          SolverOptions opt;
          opt.pruning = pruning;
          opt.stack_mode = stack;
          opt.order_mode = order;
          for (std::uint32_t k = 0; k <= *d; ++k) {
            CHECK(exists_solution_with_exactly_k_flips(a, b, k, opt) == (k == *d));
          }
        }
      }
    }
  }
}
