#include <numeric>
#include <random>

#include "doctest.h"
#include "flipdist/error.hpp"
#include "flipdist/flip_dag.hpp"
#include "support.hpp"

using namespace flipdist;
using namespace fixtures;

namespace {

std::vector<std::size_t> identity(std::size_t r) {
  std::vector<std::size_t> v(r);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

/// Random valid sequence of up to `max_len` flips, allowing flip-backs.
std::vector<Edge> random_sequence(const Triangulation& base, std::size_t max_len, std::mt19937_64& rng) {
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::vector<Edge> out;
  Triangulation t = base;
  for (std::size_t i = 0; i < len; ++i) {
    const auto adm = admissible_edges(t);
    if (adm.empty()) break;
    const Edge e = adm[std::uniform_int_distribution<std::size_t>(0, adm.size() - 1)(rng)];
    out.push_back(e);
    t = t.flip(e).triangulation;
  }
  return out;
}

}  // namespace

TEST_CASE("apply_sequence examples") {
  const FlipSequence empty = FlipSequence::apply(square(), {});
  CHECK(empty.empty());
  CHECK(empty.final_triangulation() == square());

  const std::vector<Edge> back_and_forth{Edge::make(0, 2), Edge::make(1, 3)};
  const FlipSequence s = FlipSequence::apply(square(), back_and_forth);
  CHECK(s.size() == 2);
  CHECK(s.final_triangulation() == square());
  CHECK(s.record(1).eps == Edge::make(0, 2));
  CHECK(s.record(1).phi == Edge::make(1, 3));
  CHECK(s.snapshot(1) == square_flipped());

  const std::vector<Edge> bad{Edge::make(0, 1)};
  try {
    FlipSequence::apply(square(), bad);
    FAIL("expected inadmissible_flip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inadmissible_flip);
    CHECK(e.position() == 1);
  }
  const std::vector<Edge> bad_second{Edge::make(0, 2), Edge::make(0, 2)};
  try {
    FlipSequence::apply(square(), bad_second);
    FAIL("expected inadmissible_flip");
  } catch (const Error& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("build_dag examples") {
  SUBCASE("flip and flip back") {
    const std::vector<Edge> edges{Edge::make(0, 2), Edge::make(1, 3)};
    const FlipDag dag = build_dag(FlipSequence::apply(square(), edges));
    CHECK(dag.node_count() == 2);
    REQUIRE(dag.arcs().size() == 1);
    CHECK(dag.arcs()[0] == Arc{1, 2});
    CHECK(path_exists(dag, 1, 2));
    CHECK_FALSE(path_exists(dag, 2, 1));
    CHECK(path_exists(dag, 2, 2));
  }
  SUBCASE("two independent flips") {
    const std::vector<Edge> edges{Edge::make(0, 2), Edge::make(3, 5)};
    const FlipSequence seq = FlipSequence::apply(hexagon_zigzag(), edges);
    const FlipDag dag = build_dag(seq);
    CHECK(dag.arcs().empty());
    CHECK(components(dag) == std::vector<std::vector<std::size_t>>{{1}, {2}});
    const std::vector<std::size_t> reversed{2, 1};
    CHECK(is_topological_sort(dag, reversed));
    CHECK(replay_permutation(seq, reversed) == seq.final_triangulation());
  }
  SUBCASE("pentagon chain") {
    const std::vector<Edge> edges{Edge::make(0, 2), Edge::make(0, 3)};
    const FlipDag dag = build_dag(FlipSequence::apply(pentagon_fan(0), edges));
    CHECK(dag.has_arc(1, 2));
    CHECK(components(dag).size() == 1);
  }
}

TEST_CASE("is_topological_sort") {
  const std::vector<Edge> edges{Edge::make(0, 2), Edge::make(1, 3)};
  const FlipDag dag = build_dag(FlipSequence::apply(square(), edges));
  CHECK(is_topological_sort(dag, identity(2)));
  const std::vector<std::size_t> swapped{2, 1};
  CHECK_FALSE(is_topological_sort(dag, swapped));
  const std::vector<std::size_t> not_perm{1, 1};
  CHECK_THROWS_AS(is_topological_sort(dag, not_perm), Error);
  const std::vector<std::size_t> short_perm{1};
  CHECK_THROWS_AS(is_topological_sort(dag, short_perm), Error);
}

TEST_CASE("components on hand-built DAGs") {
  CHECK(components(FlipDag(3, {})) == std::vector<std::vector<std::size_t>>{{1}, {2}, {3}});
  CHECK(components(FlipDag(2, {Arc{1, 2}})) == std::vector<std::vector<std::size_t>>{{1, 2}});
  const FlipDag d(5, {Arc{1, 4}, Arc{2, 5}, Arc{3, 5}});
  CHECK(components(d) == std::vector<std::vector<std::size_t>>{{1, 4}, {2, 3, 5}});
  CHECK(path_exists(d, 2, 5));
  CHECK_FALSE(path_exists(d, 2, 3));
}

TEST_CASE("classify_essential") {
  const std::vector<Edge> edges{Edge::make(0, 2), Edge::make(1, 3)};
  const FlipSequence seq = FlipSequence::apply(square(), edges);
  const auto classes = classify_essential(build_dag(seq), seq, square());
  REQUIRE(classes.size() == 1);
  CHECK_FALSE(classes[0].essential);

  const std::vector<Edge> one{Edge::make(0, 2)};
  const FlipSequence single = FlipSequence::apply(square(), one);
  const auto c1 = classify_essential(build_dag(single), single, square_flipped());
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].essential);
}

TEST_CASE("DAG properties on random sequences") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    const Triangulation base = random_triangulation(rng, 4 + trial % 5);
    const FlipSequence seq = FlipSequence::apply(base, random_sequence(base, 7, rng));
    const FlipDag dag = build_dag(seq);
    const std::size_t r = seq.size();

    std::set<std::pair<std::size_t, std::size_t>> arcs;
    for (const Arc& a : dag.arcs()) {
      CHECK(a.from < a.to);
      arcs.insert({a.from, a.to});
    }
    CHECK(arcs == reference_arcs(seq));
    CHECK(dag.arcs().size() == arcs.size());
    CHECK(dag.max_indegree() <= 5);
    CHECK(dag.arcs().size() <= 5 * r);

    for (std::size_t i = 1; i <= r; ++i) {
      for (std::size_t j = 1; j <= r; ++j) CHECK(path_exists(dag, i, j) == reference_reaches(dag, i, j));
    }

    std::vector<std::vector<std::size_t>> sorts{identity(r), lexicographic_topological_sort(dag),
                                                lexicographic_topological_sort(dag, true)};
    for (int s = 0; s < 5; ++s) sorts.push_back(random_topological_sort(dag, rng));
    for (const auto& order : sorts) {
      REQUIRE(is_topological_sort(dag, order));
      CHECK(replay_permutation(seq, order) == seq.final_triangulation());
    }

    // Component blocks in a random component order.
    const auto comps = components(dag);
    std::vector<std::size_t> comp_order(comps.size());
    std::iota(comp_order.begin(), comp_order.end(), 0);
    std::shuffle(comp_order.begin(), comp_order.end(), rng);
    const auto blocks = block_topological_sort(dag, comp_order);
    REQUIRE(is_topological_sort(dag, blocks));
    std::size_t at = 0;
    for (std::size_t c : comp_order) {
      std::vector<std::size_t> block(blocks.begin() + at, blocks.begin() + at + comps[c].size());
      std::sort(block.begin(), block.end());
      CHECK(block == comps[c]);
      at += comps[c].size();
    }
    CHECK(replay_permutation(seq, blocks) == seq.final_triangulation());
  }
}
