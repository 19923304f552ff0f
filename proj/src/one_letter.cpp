#include "dyck/one_letter.hpp"

#include <numeric>

#include "dyck/error.hpp"

namespace dyck {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) const {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

ParityIndex::ParityIndex(VertexId vertex_count) : n_(vertex_count), cover_(2 * std::size_t(vertex_count)) {}

ParityIndex ParityIndex::from_graph(const LabeledGraph& g) {
  ParityIndex idx(g.vertex_count());
  for (const Edge& e : g.stored_edges()) idx.insert(e.from, e.to);
  return idx;
}

void ParityIndex::link(VertexId u, VertexId v) {
  cover_.unite(node(u, 0), node(v, 1));
  cover_.unite(node(u, 1), node(v, 0));
}

void ParityIndex::insert(VertexId u, VertexId v) {
  if (u >= n_ || v >= n_) throw PreconditionError("vertex out of range");
  ++edges_[{std::min(u, v), std::max(u, v)}];
  link(u, v);
}

void ParityIndex::erase(VertexId u, VertexId v) {
  auto it = edges_.find({std::min(u, v), std::max(u, v)});
  if (it == edges_.end()) throw UpdateError("missing edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  if (--it->second == 0) edges_.erase(it);
  rebuild();
}

void ParityIndex::rebuild() {
  cover_ = DisjointSets(2 * std::size_t(n_));
  for (const auto& [uv, count] : edges_) link(uv.first, uv.second);
}

bool ParityIndex::connected(VertexId u, int pu, VertexId v, int pv) const {
  return cover_.same(node(u, pu), node(v, pv));
}

ParityIndex parity_insert(ParityIndex idx, VertexId u, VertexId v) {
  idx.insert(u, v);
  return idx;
}

ParityIndex parity_delete(ParityIndex idx, VertexId u, VertexId v) {
  idx.erase(u, v);
  return idx;
}

void require_undirected_one_letter(const Instance& inst) {
  if (!inst.graph.undirected()) throw PreconditionError("one-letter criterion needs an undirected graph");
  const Alphabet& a = inst.graph.alphabet();
  if (a.kind() != AlphabetKind::Dyck || a.pairs() != 1)
    throw PreconditionError("one-letter criterion needs the dyck 1 alphabet");
}

bool prop1_conditions(const Instance& inst, const ParityIndex& parity) {
  require_undirected_one_letter(inst);
  if (inst.source == inst.sink) return true;
  const Label open = inst.graph.alphabet().open(0);
  const Label close = inst.graph.alphabet().close(0);
  bool open_at_source = false;
  bool close_at_sink = false;
  for (const Edge& e : inst.graph.stored_edges()) {
    const bool touches_source = e.from == inst.source || e.to == inst.source;
    const bool touches_sink = e.from == inst.sink || e.to == inst.sink;
    if (e.label == open && touches_source) open_at_source = true;
    if (e.label == close && touches_sink) close_at_sink = true;
  }
  return open_at_source && close_at_sink && parity.even_walk(inst.source, inst.sink);
}

bool prop1_check(const Instance& inst) {
  require_undirected_one_letter(inst);
  return prop1_conditions(inst, ParityIndex::from_graph(inst.graph));
}

DistanceGadget build_distance_gadget(VertexId vertex_count,
                                     std::span<const std::pair<VertexId, VertexId>> edges) {
  if (vertex_count == 0) throw PreconditionError("distance gadget needs at least one vertex");
  const VertexId n = vertex_count;
  const Alphabet a = Alphabet::dyck(1);
  LabeledGraph g(GraphMode::Directed, a, n + n * n);
  auto add = [&g](Edge e) {
    if (!g.has_edge(e)) g.insert(e);
  };
  for (auto [u, v] : edges) add(Edge{u, a.open(0), v});
  DistanceGadget gadget{Instance{LabeledGraph(GraphMode::Directed, a, 0), 0, 0, std::nullopt}, n};
  for (VertexId v = 0; v < n; ++v) {
    add(Edge{v, a.open(0), v});
    add(Edge{v, a.close(0), gadget.chain_vertex(v, 1)});
    for (VertexId k = 1; k < n; ++k) add(Edge{gadget.chain_vertex(v, k), a.close(0), gadget.chain_vertex(v, k + 1)});
  }
  gadget.instance = Instance{std::move(g), 0, 0, std::nullopt};
  return gadget;
}

std::optional<VertexId> gadget_distance(const DistanceGadget& gadget, const ReachIndex& index, VertexId s,
                                        VertexId t) {
  if (s == t) return 0;
  for (VertexId k = 1; k <= gadget.base_count; ++k)
    if (index.contains(s, gadget.chain_vertex(t, k))) return k;
  return std::nullopt;
}

}  // namespace dyck
