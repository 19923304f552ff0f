#include "dyck/figures.hpp"

#include <vector>

#include "dyck/error.hpp"

namespace dyck {

Instance figure1_instance() {
  return parse_graph(
      "graph directed\n"
      "vertices 5\n"
      "alphabet dyck 1\n"
      "edge 0 l1 1\nedge 0 l1 2\nedge 1 l1 2\nedge 2 l1 1\n"
      "edge 1 l1 3\nedge 2 l1 4\nedge 3 l1 4\nedge 4 l1 1\n"
      "mark 0 4\n"
      "partition and 0 2\n");
}

Instance figure2_source() {
  return parse_graph(
      "graph directed\n"
      "vertices 2\n"
      "alphabet dyck 2\n"
      "edge 0 l1 1\nedge 1 l1bar 0\n"
      "mark 0 0\n");
}

Walk walk_through(const LabeledGraph& g, std::span<const VertexId> vertices) {
  if (vertices.empty()) throw PreconditionError("a walk visits at least one vertex");
  Walk w{vertices.front(), {}};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    std::optional<Label> found;
    for (std::uint32_t c = 0; c < g.alphabet().size(); ++c) {
      if (!g.has_edge(Edge{vertices[i - 1], Label{c}, vertices[i]})) continue;
      if (found) throw PreconditionError("several edges between consecutive walk vertices");
      found = Label{c};
    }
    if (!found) throw PreconditionError("no edge between consecutive walk vertices");
    w.steps.push_back(Step{*found, vertices[i]});
  }
  return w;
}

namespace {

constexpr VertexId kS1 = 0, kS2 = 1;
constexpr Label kL1{0}, kL1Bar{1};

VertexId lower(const CompiledReduction& g, std::uint32_t i) { return g.chain_vertex({kS1, kL1, kS2, i}); }
VertexId upper(const CompiledReduction& g, std::uint32_t i) { return g.chain_vertex({kS2, kL1Bar, kS1, i}); }

void require_figure2(const CompiledReduction& gadget) {
  if (gadget.kind() != ReductionKind::Dyck2ToUndirected || gadget.source_vertex_count() != 2)
    throw PreconditionError("expected the undirected gadget of the two-vertex source");
}

}  // namespace

Walk figure2_gamma1(const CompiledReduction& gadget) {
  require_figure2(gadget);
  const std::vector<VertexId> v{kS1, lower(gadget, 1), kS1, upper(gadget, 11), kS1};
  return walk_through(gadget.target().graph, v);
}

Walk figure2_gamma2(const CompiledReduction& gadget) {
  require_figure2(gadget);
  std::vector<VertexId> v{kS1};
  for (std::uint32_t i = 1; i <= 7; ++i) v.push_back(lower(gadget, i));
  v.push_back(lower(gadget, 6));
  v.push_back(lower(gadget, 5));
  for (std::uint32_t i = 6; i <= 11; ++i) v.push_back(lower(gadget, i));
  v.push_back(kS2);
  for (std::uint32_t i = 1; i <= 9; ++i) v.push_back(upper(gadget, i));
  v.push_back(upper(gadget, 8));
  v.push_back(upper(gadget, 7));
  for (std::uint32_t i = 8; i <= 11; ++i) v.push_back(upper(gadget, i));
  v.push_back(kS1);
  return walk_through(gadget.target().graph, v);
}

}  // namespace dyck
