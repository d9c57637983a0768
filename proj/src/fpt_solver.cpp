#include "flipdist/fpt_solver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "flipdist/error.hpp"

namespace flipdist {

const char* to_string(ActionKind kind) noexcept {
  switch (kind) {
    case ActionKind::move: return "move";
    case ActionKind::flip_move: return "flip_move";
    case ActionKind::flip_push_move: return "flip_push_move";
    case ActionKind::flip_jump: return "flip_jump";
    case ActionKind::flip_jump_pop: return "flip_jump_pop";
  }
  return "?";
}

std::uint32_t Composition::total() const noexcept {
  std::uint32_t sum = 0;
  for (auto p : parts) sum += p;
  return sum;
}

void SolverStats::merge(const SolverStats& other) noexcept {
  states_expanded += other.states_expanded;
  memo_hits += other.memo_hits;
  iterations_run += other.iterations_run;
  iteration_cache_hits += other.iteration_cache_hits;
  compositions_tried += other.compositions_tried;
  max_branching = std::max(max_branching, other.max_branching);
  branching_violations += other.branching_violations;
}

namespace {

enum class StackEffect { none, push, pop };

/// Calls visit(action, next_tri, next_at, effect, created) for every legal
/// action. `next_tri` aliases `tri` for plain moves. Returns the number of
/// actions visited.
template <typename Visit>
std::size_t for_each_action(const Triangulation& tri, const Edge& at, const std::vector<Edge>& stack,
                            Visit&& visit) {
  const AdjacentEdges adjacent = tri.edges_sharing_triangle(at);
  std::size_t count = 0;
  for (std::size_t i = 0; i < adjacent.size(); ++i) {
    ++count;
    visit(Action{ActionKind::move, static_cast<std::uint8_t>(i)}, tri, adjacent[i],
          StackEffect::none, at);
  }
  if (!tri.is_admissible(at)) return count;

  // The four sides of the flipped quadrilateral survive the flip.
  const FlipResult flipped = tri.flip(at);
  for (std::size_t i = 0; i < adjacent.size(); ++i) {
    ++count;
    visit(Action{ActionKind::flip_move, static_cast<std::uint8_t>(i)}, flipped.triangulation,
          adjacent[i], StackEffect::none, flipped.created);
  }
  for (std::size_t i = 0; i < adjacent.size(); ++i) {
    ++count;
    visit(Action{ActionKind::flip_push_move, static_cast<std::uint8_t>(i)}, flipped.triangulation,
          adjacent[i], StackEffect::push, flipped.created);
  }
  // A jump to an edge that no longer exists kills the branch.
  if (!stack.empty() && flipped.triangulation.contains(stack.back())) {
    const Edge top = stack.back();
    ++count;
    visit(Action{ActionKind::flip_jump, std::nullopt}, flipped.triangulation, top,
          StackEffect::none, flipped.created);
    ++count;
    visit(Action{ActionKind::flip_jump_pop, std::nullopt}, flipped.triangulation, top,
          StackEffect::pop, flipped.created);
  }
  return count;
}

void append_edge(std::string& out, const Edge& e) {
  for (PointId v : {e.lo, e.hi}) {
    out.push_back(static_cast<char>(v >> 24));
    out.push_back(static_cast<char>(v >> 16));
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v));
  }
}

struct Outcome {
  Triangulation tri;
  std::vector<Edge> stack;
  std::vector<Edge> flips;
};

using Outcomes = std::vector<Outcome>;

/// Depth-first simulation of one iteration of the walker.
class IterationSearch {
public:
  IterationSearch(const SolverOptions& options, SolverStats& stats, std::uint32_t flips,
                  const CanonicalKey* stop_at)
      : options_(options), stats_(stats), target_flips_(flips), stop_at_(stop_at) {}

  Outcomes run(const Triangulation& tri, const Edge& start, std::vector<Edge> stack) {
    stack_ = std::move(stack);
    ++stats_.iterations_run;
    explore(tri, tri.canonical_key().bytes, start, 0, 0);
    return std::move(outcomes_);
  }

  bool stopped() const noexcept { return stopped_; }

private:
  void record(const Triangulation& tri, const std::string& tri_key) {
    std::string key = tri_key;
    if (options_.stack_mode == StackMode::persistent) {
      key.push_back('|');
      for (const Edge& e : stack_) append_edge(key, e);
    }
    if (!seen_outcomes_.insert(std::move(key)).second) return;
    outcomes_.push_back(Outcome{tri, stack_, flips_});
    if (stop_at_ != nullptr && tri_key == stop_at_->bytes) stopped_ = true;
  }

  void explore(const Triangulation& tri, const std::string& tri_key, const Edge& at,
               std::uint32_t flips_done, std::uint32_t actions_done) {
    if (stopped_) return;
    if (flips_done == target_flips_) {
      record(tri, tri_key);
      return;
    }
    const std::uint32_t action_limit = 2 * target_flips_;
    if (target_flips_ - flips_done > action_limit - actions_done) return;

    if (options_.pruning) {
      std::string key = tri_key;
      append_edge(key, at);
      for (const Edge& e : stack_) append_edge(key, e);
      key.push_back(static_cast<char>(flips_done));
      auto [it, inserted] = memo_.try_emplace(std::move(key), actions_done);
      if (!inserted) {
        if (it->second <= actions_done) {
          ++stats_.memo_hits;
          return;
        }
        it->second = actions_done;
      }
    }
    ++stats_.states_expanded;
    if (options_.state_budget != 0 && stats_.states_expanded > options_.state_budget) {
      throw Error(ErrorCode::budget_exceeded,
                  "solver exceeded the state budget of " + std::to_string(options_.state_budget));
    }

    std::string flipped_key;
    const std::size_t branching = for_each_action(
        tri, at, stack_,
        [&](const Action& action, const Triangulation& next, const Edge& next_at,
            StackEffect effect, const Edge& created) {
          if (stopped_) return;
          if (!action.flips()) {
            explore(tri, tri_key, next_at, flips_done, actions_done + 1);
            return;
          }
          if (flipped_key.empty()) flipped_key = next.canonical_key().bytes;
          flips_.push_back(at);
          switch (effect) {
            case StackEffect::none:
              explore(next, flipped_key, next_at, flips_done + 1, actions_done + 1);
              break;
            case StackEffect::push:
              stack_.push_back(created);
              explore(next, flipped_key, next_at, flips_done + 1, actions_done + 1);
              stack_.pop_back();
              break;
            case StackEffect::pop: {
              const Edge top = stack_.back();
              stack_.pop_back();
              explore(next, flipped_key, next_at, flips_done + 1, actions_done + 1);
              stack_.push_back(top);
              break;
            }
          }
          flips_.pop_back();
        });
    stats_.max_branching = std::max(stats_.max_branching, branching);
    if (branching > max_actions_per_state) ++stats_.branching_violations;
  }

  const SolverOptions& options_;
  SolverStats& stats_;
  std::uint32_t target_flips_;
  const CanonicalKey* stop_at_;
  bool stopped_ = false;

  std::vector<Edge> stack_;
  std::vector<Edge> flips_;
  std::unordered_map<std::string, std::uint32_t> memo_;  // state -> fewest actions seen
  std::unordered_set<std::string> seen_outcomes_;
  Outcomes outcomes_;
};

void require_same_points(const Triangulation& a, const Triangulation& b) {
  if (!same_point_set(a, b)) {
    throw Error(ErrorCode::point_set_mismatch, "triangulations are over different point sets");
  }
}

/// Runs the iterations of one composition, sharing caches across
/// compositions when pruning is on.
class CompositionDriver {
public:
  CompositionDriver(const Triangulation& target, std::vector<Edge> order,
                    const SolverOptions& options, SolverStats& stats)
      : target_(target),
        target_key_(target.canonical_key()),
        order_(std::move(order)),
        options_(options),
        stats_(stats) {}

  std::optional<Witness> try_composition(const Triangulation& initial, const Composition& c) {
    ++stats_.compositions_tried;
    composition_ = &c;
    witness_flips_.clear();
    witness_starts_.clear();
    if (!advance(initial, initial.canonical_key().bytes, 0, 0, {})) return std::nullopt;
    return Witness{c, witness_starts_, witness_flips_};
  }

private:
  bool advance(const Triangulation& tri, const std::string& tri_key, std::size_t part,
               std::size_t next_in_order, const std::vector<Edge>& stack) {
    const auto& parts = composition_->parts;
    while (next_in_order < order_.size() && !tri.contains(order_[next_in_order])) ++next_in_order;
    if (next_in_order == order_.size()) return false;

    std::string fail_key;
    if (options_.pruning) {
      fail_key = tri_key;
      fail_key.push_back('|');
      fail_key += std::to_string(next_in_order);
      for (std::size_t p = part; p < parts.size(); ++p) fail_key += "," + std::to_string(parts[p]);
      fail_key.push_back('|');
      for (const Edge& e : stack) append_edge(fail_key, e);
      if (failed_.contains(fail_key)) return false;
    }

    const Edge start = order_[next_in_order];
    const bool last = part + 1 == parts.size();
    const std::shared_ptr<const Outcomes> outcomes =
        iterate(tri, tri_key, start, parts[part], stack, last);

    for (const Outcome& o : *outcomes) {
      if (last) {
        if (o.tri == target_) {
          witness_starts_.insert(witness_starts_.begin(), start);
          witness_flips_.insert(witness_flips_.begin(), o.flips.begin(), o.flips.end());
          return true;
        }
        continue;
      }
      const std::vector<Edge> carried =
          options_.stack_mode == StackMode::persistent ? o.stack : std::vector<Edge>{};
      if (advance(o.tri, o.tri.canonical_key().bytes, part + 1, next_in_order + 1, carried)) {
        witness_starts_.insert(witness_starts_.begin(), start);
        witness_flips_.insert(witness_flips_.begin(), o.flips.begin(), o.flips.end());
        return true;
      }
    }
    if (options_.pruning) failed_.insert(std::move(fail_key));
    return false;
  }

  std::shared_ptr<const Outcomes> iterate(const Triangulation& tri, const std::string& tri_key,
                                          const Edge& start, std::uint32_t flips,
                                          const std::vector<Edge>& stack, bool last) {
    std::string cache_key;
    if (options_.pruning) {
      cache_key = tri_key;
      append_edge(cache_key, start);
      cache_key += "|" + std::to_string(flips) + "|";
      for (const Edge& e : stack) append_edge(cache_key, e);
      if (auto it = cache_.find(cache_key); it != cache_.end()) {
        ++stats_.iteration_cache_hits;
        return it->second;
      }
    }
    IterationSearch search(options_, stats_, flips, last ? &target_key_ : nullptr);
    auto outcomes = std::make_shared<const Outcomes>(search.run(tri, start, stack));
    if (options_.pruning && !search.stopped()) cache_.emplace(std::move(cache_key), outcomes);
    return outcomes;
  }

  const Triangulation& target_;
  CanonicalKey target_key_;
  std::vector<Edge> order_;
  const SolverOptions& options_;
  SolverStats& stats_;

  const Composition* composition_ = nullptr;
  std::vector<Edge> witness_flips_;
  std::vector<Edge> witness_starts_;
  std::unordered_map<std::string, std::shared_ptr<const Outcomes>> cache_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

std::vector<Successor> legal_actions(const MachineState& state) {
  std::vector<Successor> out;
  for_each_action(state.tri, state.at, state.stack,
                  [&](const Action& action, const Triangulation& next, const Edge& next_at,
                      StackEffect effect, const Edge& created) {
                    MachineState s{next, next_at, state.stack, state.flips_done,
                                   state.actions_done + 1};
                    if (action.flips()) ++s.flips_done;
                    if (effect == StackEffect::push) s.stack.push_back(created);
                    if (effect == StackEffect::pop) s.stack.pop_back();
                    out.push_back(Successor{action, std::move(s)});
                  });
  return out;
}

bool for_each_composition(std::uint32_t k, const std::function<bool(const Composition&)>& visit) {
  Composition current;
  auto rec = [&](auto& self, std::uint32_t left) -> bool {
    if (left == 0) return visit(current);
    for (std::uint32_t first = 1; first <= left; ++first) {
      current.parts.push_back(first);
      const bool go_on = self(self, left - first);
      current.parts.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(rec, k);
}

std::vector<Composition> compositions(std::uint32_t k) {
  std::vector<Composition> out;
  for_each_composition(k, [&](const Composition& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::vector<Triangulation> run_iteration(const Triangulation& tri, const Edge& start,
                                         std::uint32_t flips, const SolverOptions& options,
                                         SolverStats* stats) {
  if (!tri.contains(start)) {
    throw Error(ErrorCode::edge_not_found, "start edge " + to_string(start) + " is not in the triangulation");
  }
  SolverStats local;
  IterationSearch search(options, local, flips, nullptr);
  Outcomes outcomes = search.run(tri, start, {});
  if (stats) stats->merge(local);
  std::map<CanonicalKey, Triangulation> unique;
  for (Outcome& o : outcomes) unique.emplace(o.tri.canonical_key(), std::move(o.tri));
  std::vector<Triangulation> out;
  out.reserve(unique.size());
  for (auto& [key, t] : unique) out.push_back(std::move(t));
  return out;
}

SolveResult solve_exact(const Triangulation& initial, const Triangulation& target, std::uint32_t k,
                        const SolverOptions& options) {
  require_same_points(initial, target);
  SolveResult result;
  if (k == 0) {
    result.accepted = initial == target;
    if (result.accepted) result.witness = Witness{};
    return result;
  }
  const std::vector<Edge> changed = changed_edges(initial, target);
  if (changed.empty()) return result;

  const std::size_t rotations = options.order_mode == OrderMode::all_rotations ? changed.size() : 1;
  for (std::size_t r = 0; r < rotations && !result.accepted; ++r) {
    std::vector<Edge> order = changed;
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(r), order.end());
    CompositionDriver driver(target, std::move(order), options, result.stats);
    for_each_composition(k, [&](const Composition& c) {
      if (auto w = driver.try_composition(initial, c)) {
        result.accepted = true;
        result.witness = std::move(w);
        return false;
      }
      return true;
    });
  }
  return result;
}

bool exists_solution_with_exactly_k_flips(const Triangulation& initial, const Triangulation& target,
                                          std::uint32_t k, const SolverOptions& options,
                                          SolverStats* stats) {
  SolveResult r = solve_exact(initial, target, k, options);
  if (stats) stats->merge(r.stats);
  return r.accepted;
}

bool decide_flip_distance_eq(const Triangulation& initial, const Triangulation& target,
                             std::uint32_t k, const SolverOptions& options, SolverStats* stats) {
  for (std::uint32_t smaller = 0; smaller < k; ++smaller) {
    if (exists_solution_with_exactly_k_flips(initial, target, smaller, options, stats)) return false;
  }
  return exists_solution_with_exactly_k_flips(initial, target, k, options, stats);
}

}  // namespace flipdist
