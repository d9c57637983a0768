#include "flipdist/flip_dag.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "flipdist/error.hpp"

namespace flipdist {

FlipSequence FlipSequence::apply(const Triangulation& base, std::span<const Edge> edges) {
  FlipSequence seq;
  seq.snapshots_.reserve(edges.size() + 1);
  seq.records_.reserve(edges.size());
  seq.snapshots_.push_back(base);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Triangulation& current = seq.snapshots_.back();
    if (!current.is_admissible(edges[i])) {
      throw Error(ErrorCode::inadmissible_flip,
                  "flip " + std::to_string(i + 1) + " of edge " + to_string(edges[i]) +
                      " is not admissible",
                  i + 1);
    }
    FlipResult next = current.flip(edges[i]);
    seq.records_.push_back(FlipRecord{i + 1, edges[i], next.created});
    seq.snapshots_.push_back(std::move(next.triangulation));
  }
  return seq;
}

std::vector<Edge> FlipSequence::flipped_edges() const {
  std::vector<Edge> out;
  out.reserve(records_.size());
  for (const FlipRecord& r : records_) out.push_back(r.eps);
  return out;
}

FlipDag::FlipDag(std::size_t node_count, std::vector<Arc> arcs)
    : arcs_(std::move(arcs)), successors_(node_count), predecessors_(node_count) {
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  for (const Arc& a : arcs_) {
    if (a.from < 1 || a.to > node_count || a.from >= a.to) {
      throw Error(ErrorCode::invalid_argument, "arc " + std::to_string(a.from) + " -> " +
                                                   std::to_string(a.to) + " is not forward");
    }
    successors_[a.from - 1].push_back(a.to);
    predecessors_[a.to - 1].push_back(a.from);
  }
}

std::size_t FlipDag::max_indegree() const noexcept {
  std::size_t best = 0;
  for (const auto& p : predecessors_) best = std::max(best, p.size());
  return best;
}

bool FlipDag::has_arc(std::size_t from, std::size_t to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), Arc{from, to});
}

FlipDag build_dag(const FlipSequence& sequence) {
  const std::size_t r = sequence.size();
  std::vector<Arc> arcs;
  for (std::size_t j = 1; j <= r; ++j) {
    const Triangulation& before = sequence.snapshot(j - 1);
    const Edge target = sequence.record(j).eps;
    for (std::size_t i = 1; i < j; ++i) {
      const Edge created = sequence.record(i).phi;
      if (created != target && !before.share_triangle(created, target)) continue;
      bool flipped_between = false;
      for (std::size_t p = i + 1; p < j && !flipped_between; ++p) {
        flipped_between = sequence.record(p).eps == created;
      }
      if (!flipped_between) arcs.push_back(Arc{i, j});
    }
  }
  return FlipDag(r, std::move(arcs));
}

namespace {

void require_permutation(std::size_t n, std::span<const std::size_t> order) {
  if (order.size() != n) {
    throw Error(ErrorCode::not_a_permutation, "expected " + std::to_string(n) + " entries, got " +
                                                  std::to_string(order.size()));
  }
  std::vector<bool> seen(n + 1, false);
  for (std::size_t v : order) {
    if (v < 1 || v > n || seen[v]) {
      throw Error(ErrorCode::not_a_permutation,
                  "entry " + std::to_string(v) + " is out of range or repeated");
    }
    seen[v] = true;
  }
}

}  // namespace

bool is_topological_sort(const FlipDag& dag, std::span<const std::size_t> order) {
  require_permutation(dag.node_count(), order);
  std::vector<std::size_t> rank(dag.node_count() + 1);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return std::all_of(dag.arcs().begin(), dag.arcs().end(),
                     [&](const Arc& a) { return rank[a.from] < rank[a.to]; });
}

Triangulation replay_permutation(const FlipSequence& sequence, std::span<const std::size_t> order) {
  require_permutation(sequence.size(), order);
  Triangulation current = sequence.base();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Edge e = sequence.record(order[i]).eps;
    if (!current.is_admissible(e)) {
      throw Error(ErrorCode::inadmissible_flip,
                  "replayed flip " + std::to_string(order[i]) + " (edge " + to_string(e) +
                      ") is not admissible at step " + std::to_string(i + 1),
                  i + 1);
    }
    current = current.flip(e).triangulation;
  }
  return current;
}

std::vector<std::vector<std::size_t>> components(const FlipDag& dag) {
  const std::size_t n = dag.node_count();
  std::vector<std::size_t> label(n + 1, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 1; start <= n; ++start) {
    if (label[start] != 0) continue;
    out.emplace_back();
    const std::size_t id = out.size();
    std::vector<std::size_t> pending{start};
    label[start] = id;
    while (!pending.empty()) {
      const std::size_t v = pending.back();
      pending.pop_back();
      out.back().push_back(v);
      for (auto nbrs : {dag.successors(v), dag.predecessors(v)}) {
        for (std::size_t w : nbrs) {
          if (label[w] == 0) {
            label[w] = id;
            pending.push_back(w);
          }
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

std::vector<ComponentClass> classify_essential(const FlipDag& dag, const FlipSequence& sequence,
                                               const Triangulation& target) {
  const std::vector<Edge> changed = changed_edges(sequence.base(), target);
  std::vector<ComponentClass> out;
  for (auto& nodes : components(dag)) {
    ComponentClass c;
    c.essential = std::any_of(nodes.begin(), nodes.end(), [&](std::size_t v) {
      return std::binary_search(changed.begin(), changed.end(), sequence.record(v).eps);
    });
    c.nodes = std::move(nodes);
    out.push_back(std::move(c));
  }
  return out;
}

bool path_exists(const FlipDag& dag, std::size_t from, std::size_t to) {
  if (from < 1 || from > dag.node_count() || to < 1 || to > dag.node_count()) {
    throw Error(ErrorCode::invalid_argument, "node out of range");
  }
  if (from == to) return true;
  if (from > to) return false;  // arcs only go forward
  std::vector<bool> seen(dag.node_count() + 1, false);
  std::vector<std::size_t> pending{from};
  seen[from] = true;
  while (!pending.empty()) {
    const std::size_t v = pending.back();
    pending.pop_back();
    for (std::size_t w : dag.successors(v)) {
      if (w == to) return true;
      if (!seen[w] && w < to) {
        seen[w] = true;
        pending.push_back(w);
      }
    }
  }
  return false;
}

namespace {

template <typename Pick>
std::vector<std::size_t> kahn(const FlipDag& dag, Pick pick) {
  const std::size_t n = dag.node_count();
  std::vector<std::size_t> remaining(n + 1, 0);
  std::vector<std::size_t> ready;
  for (std::size_t v = 1; v <= n; ++v) {
    remaining[v] = dag.indegree(v);
    if (remaining[v] == 0) ready.push_back(v);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t at = pick(ready);
    const std::size_t v = ready[at];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(at));
    order.push_back(v);
    for (std::size_t w : dag.successors(v)) {
      if (--remaining[w] == 0) ready.push_back(w);
    }
  }
  return order;
}

}  // namespace

std::vector<std::size_t> lexicographic_topological_sort(const FlipDag& dag, bool largest_first) {
  return kahn(dag, [largest_first](const std::vector<std::size_t>& ready) {
    auto it = largest_first ? std::max_element(ready.begin(), ready.end())
                            : std::min_element(ready.begin(), ready.end());
    return static_cast<std::size_t>(it - ready.begin());
  });
}

std::vector<std::size_t> random_topological_sort(const FlipDag& dag, std::mt19937_64& rng) {
  return kahn(dag, [&rng](const std::vector<std::size_t>& ready) {
    return std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng);
  });
}

std::vector<std::size_t> block_topological_sort(const FlipDag& dag,
                                                std::span<const std::size_t> component_order) {
  const auto comps = components(dag);
  require_permutation(comps.size(), [&] {
    std::vector<std::size_t> shifted;
    for (std::size_t c : component_order) shifted.push_back(c + 1);
    return shifted;
  }());
  std::vector<std::size_t> order;
  order.reserve(dag.node_count());
  for (std::size_t c : component_order) {
    // Arcs never leave a component, so its nodes in index order are a valid block.
    order.insert(order.end(), comps[c].begin(), comps[c].end());
  }
  return order;
}

}  // namespace flipdist
