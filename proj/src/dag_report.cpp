#include "flipdist/dag_report.hpp"

#include <sstream>

#include "flipdist/flip_dag.hpp"

namespace flipdist {

std::string render_dag_report(const Instance& instance, std::span<const Edge> flips,
                              DagFormat format) {
  const FlipSequence sequence = FlipSequence::apply(instance.initial, flips);
  const FlipDag dag = build_dag(sequence);
  const auto classes = classify_essential(dag, sequence, instance.target);

  std::ostringstream out;
  if (format == DagFormat::dot) {
    out << "digraph flips {\n";
    for (const FlipRecord& r : sequence.records()) {
      out << "  " << r.position << " [label=\"" << r.position << ": " << to_string(r.eps)
          << " -> " << to_string(r.phi) << "\"];\n";
    }
    for (const Arc& a : dag.arcs()) out << "  " << a.from << " -> " << a.to << ";\n";
    out << "}\n";
    return out.str();
  }

  out << "# nodes " << dag.node_count() << " arcs " << dag.arcs().size() << " components "
      << classes.size() << "\n";
  for (const FlipRecord& r : sequence.records()) {
    out << "node " << r.position << " eps " << r.eps.lo << " " << r.eps.hi << " phi " << r.phi.lo
        << " " << r.phi.hi << "\n";
  }
  for (const Arc& a : dag.arcs()) out << a.from << " -> " << a.to << "\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    out << "component " << c + 1 << (classes[c].essential ? " essential" : " nonessential") << ":";
    for (std::size_t v : classes[c].nodes) out << " " << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace flipdist
