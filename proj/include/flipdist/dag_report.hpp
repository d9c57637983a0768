#pragma once

#include <span>
#include <string>

#include "flipdist/instance.hpp"

namespace flipdist {

enum class DagFormat {
  text,  // nodes, "i -> j" arc lines, components with essentiality
  dot,   // Graphviz digraph
};

/// Applies `flips` to the instance's initial triangulation and describes the
/// resulting dependency DAG. Essentiality is judged against the instance's
/// final triangulation. Throws `ErrorCode::inadmissible_flip` with the
/// 1-based position of an invalid flip.
std::string render_dag_report(const Instance& instance, std::span<const Edge> flips,
                              DagFormat format);

}  // namespace flipdist
