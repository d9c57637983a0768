#include "flipdist/flipdist.h"

#include <chrono>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "flipdist/dag_report.hpp"
#include "flipdist/error.hpp"
#include "flipdist/fpt_solver.hpp"
#include "flipdist/instance.hpp"
#include "flipdist/oracle.hpp"

struct fd_instance {
  flipdist::Instance value;
};

namespace {

thread_local std::string last_error;

fd_status status_of(flipdist::ErrorCode code) {
  return code == flipdist::ErrorCode::budget_exceeded ? FD_ERR_BUDGET : FD_ERR_INPUT;
}

/// Runs `body`, translating exceptions into a status and the thread's last error.
template <typename Body>
fd_status guarded(Body&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const flipdist::Error& e) {
    last_error = std::string(flipdist::to_string(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FD_ERR_INTERNAL;
  }
}

fd_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return FD_ERR_INPUT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

flipdist::SolverOptions to_options(const fd_solver_options* options) {
  flipdist::SolverOptions o;
  if (options == nullptr) return o;
  o.pruning = options->pruning != 0;
  o.stack_mode = options->stack_mode == FD_STACK_PERSISTENT ? flipdist::StackMode::persistent
                                                            : flipdist::StackMode::cleared;
  o.order_mode = options->all_rotations != 0 ? flipdist::OrderMode::all_rotations
                                             : flipdist::OrderMode::fixed;
  o.state_budget = options->state_budget;
  return o;
}

void fill_stats(fd_search_stats* out, const flipdist::SolverStats& s, double millis) {
  if (out == nullptr) return;
  out->states_explored = s.states_expanded;
  out->memo_hits = s.memo_hits;
  out->max_branching = static_cast<uint32_t>(s.max_branching);
  out->branching_violations = s.branching_violations;
  out->millis = millis;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

extern "C" {

const char* fd_version(void) { return "1.0.0"; }

const char* fd_last_error(void) { return last_error.c_str(); }

fd_solver_options fd_default_solver_options(void) {
  return fd_solver_options{1, FD_STACK_CLEARED, 0, 0};
}

fd_status fd_instance_parse(const char* text, size_t length, fd_instance** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new fd_instance{flipdist::parse_instance(std::string_view(text, length))};
    return FD_OK;
  });
}

fd_status fd_instance_generate(uint32_t n, fd_hull_shape shape, uint32_t scramble, uint64_t seed,
                               fd_instance** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    flipdist::GeneratorOptions options;
    options.n = n;
    options.shape = shape == FD_SHAPE_POLYGON ? flipdist::HullShape::polygon
                                              : flipdist::HullShape::scatter;
    options.scramble = scramble;
    options.seed = seed;
    *out = new fd_instance{flipdist::generate_instance(options)};
    return FD_OK;
  });
}

void fd_instance_free(fd_instance* instance) { delete instance; }

fd_status fd_instance_render(const fd_instance* instance, char** out) {
  if (instance == nullptr) return null_argument("instance");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = copy_string(flipdist::render_instance(instance->value.file));
    return FD_OK;
  });
}

void fd_string_free(char* text) { delete[] text; }

uint32_t fd_instance_point_count(const fd_instance* instance) {
  return instance ? static_cast<uint32_t>(instance->value.initial.point_count()) : 0;
}

uint32_t fd_instance_hull_size(const fd_instance* instance) {
  return instance ? static_cast<uint32_t>(instance->value.initial.hull_size()) : 0;
}

uint32_t fd_instance_changed_edge_count(const fd_instance* instance) {
  if (instance == nullptr) return 0;
  return static_cast<uint32_t>(
      flipdist::changed_edges(instance->value.initial, instance->value.target).size());
}

int fd_instance_get_k(const fd_instance* instance, uint32_t* k) {
  if (instance == nullptr || !instance->value.file.k) return 0;
  if (k) *k = *instance->value.file.k;
  return 1;
}

void fd_instance_set_k(fd_instance* instance, uint32_t k) {
  if (instance) instance->value.file.k = k;
}

void fd_instance_clear_k(fd_instance* instance) {
  if (instance) instance->value.file.k.reset();
}

fd_status fd_oracle_distance(const fd_instance* instance, uint32_t cap, uint64_t node_budget,
                             uint32_t* distance, fd_search_stats* stats) {
  if (instance == nullptr) return null_argument("instance");
  if (distance == nullptr) return null_argument("distance");
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    const flipdist::OracleResult r = flipdist::bfs_distance(
        instance->value.initial, instance->value.target, flipdist::OracleOptions{cap, node_budget});
    if (stats) {
      *stats = fd_search_stats{};
      stats->states_explored = r.states_explored;
      stats->millis = elapsed_ms(start);
    }
    if (!r.distance) {
      last_error = "flip distance exceeds the cap of " + std::to_string(cap);
      return FD_ERR_BUDGET;
    }
    *distance = *r.distance;
    return FD_OK;
  });
}

fd_status fd_fpt_exists(const fd_instance* instance, uint32_t k, const fd_solver_options* options,
                        fd_search_stats* stats) {
  if (instance == nullptr) return null_argument("instance");
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    flipdist::SolverStats s;
    const bool ok = flipdist::exists_solution_with_exactly_k_flips(
        instance->value.initial, instance->value.target, k, to_options(options), &s);
    fill_stats(stats, s, elapsed_ms(start));
    return ok ? FD_OK : FD_REJECT;
  });
}

fd_status fd_fpt_decide(const fd_instance* instance, uint32_t k, const fd_solver_options* options,
                        fd_search_stats* stats) {
  if (instance == nullptr) return null_argument("instance");
  return guarded([&] {
    const auto start = std::chrono::steady_clock::now();
    flipdist::SolverStats s;
    const bool ok = flipdist::decide_flip_distance_eq(
        instance->value.initial, instance->value.target, k, to_options(options), &s);
    fill_stats(stats, s, elapsed_ms(start));
    return ok ? FD_OK : FD_REJECT;
  });
}

fd_status fd_dag_report(const fd_instance* instance, const uint32_t* flips, size_t count,
                        fd_dag_format format, char** out, size_t* bad_position) {
  if (instance == nullptr) return null_argument("instance");
  if (out == nullptr) return null_argument("out");
  if (flips == nullptr && count > 0) return null_argument("flips");
  if (bad_position) *bad_position = 0;
  return guarded([&] {
    try {
      std::vector<flipdist::Edge> edges;
      edges.reserve(count);
      for (size_t i = 0; i < count; ++i) {
        if (flips[2 * i] == flips[2 * i + 1]) {
          throw flipdist::Error(flipdist::ErrorCode::inadmissible_flip,
                                "flip " + std::to_string(i + 1) + " has equal endpoints", i + 1);
        }
        edges.push_back(flipdist::Edge::make(flips[2 * i], flips[2 * i + 1]));
      }
      *out = copy_string(flipdist::render_dag_report(
          instance->value, edges,
          format == FD_DAG_DOT ? flipdist::DagFormat::dot : flipdist::DagFormat::text));
    } catch (const flipdist::Error& e) {
      if (bad_position && e.position()) *bad_position = *e.position();
      throw;
    }
    return FD_OK;
  });
}

}  // extern "C"
