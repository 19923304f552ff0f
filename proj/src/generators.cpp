#include "dyck/generators.hpp"

#include <set>

#include "dyck/error.hpp"

namespace dyck {

Instance random_instance(Rng& rng, GraphMode mode, const Alphabet& alphabet, VertexId n, double density) {
  if (n == 0) throw PreconditionError("random instances need a vertex");
  LabeledGraph g(mode, alphabet, n);
  std::bernoulli_distribution coin(density);
  std::uniform_int_distribution<std::uint32_t> label(0, alphabet.size() - 1);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = (mode == GraphMode::Undirected ? u : 0); v < n; ++v)
      if (coin(rng)) g.insert(Edge{u, Label{label(rng)}, v});
  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  const VertexId s = vertex(rng);
  const VertexId t = vertex(rng);
  return Instance{std::move(g), s, t, std::nullopt};
}

Instance random_alternating(Rng& rng, VertexId n, double density) {
  if (n == 0) throw PreconditionError("random instances need a vertex");
  const Alphabet a = Alphabet::dyck(1);
  LabeledGraph g(GraphMode::Directed, a, n);
  std::bernoulli_distribution coin(density);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v)
      if (coin(rng)) g.insert(Edge{u, a.open(0), v});
  std::vector<Gate> gates(n);
  std::bernoulli_distribution and_gate(0.5);
  for (auto& gate : gates) gate = and_gate(rng) ? Gate::And : Gate::Or;
  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  const VertexId s = vertex(rng);
  const VertexId t = vertex(rng);
  return Instance{std::move(g), s, t, std::move(gates)};
}

std::vector<Edge> candidate_edges(const Instance& inst) {
  const LabeledGraph& g = inst.graph;
  const VertexId n = g.vertex_count();
  std::vector<Label> labels;
  if (inst.partition)
    labels.push_back(g.alphabet().open(0));
  else
    for (std::uint32_t c = 0; c < g.alphabet().size(); ++c) labels.push_back(Label{c});
  std::vector<Edge> out;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = (g.undirected() ? u : 0); v < n; ++v)
      for (Label l : labels) out.push_back(Edge{u, l, v});
  return out;
}

std::vector<UpdateOp> random_script(Rng& rng, const Instance& inst, std::size_t ops, double query_rate) {
  const auto candidates = candidate_edges(inst);
  LabeledGraph g = inst.graph;
  std::bernoulli_distribution query(query_rate);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::vector<UpdateOp> out;
  for (std::size_t i = 0; i < ops; ++i) {
    if (i + 1 == ops || candidates.empty() || query(rng)) {
      out.push_back(UpdateOp::query());
      continue;
    }
    const Edge e = candidates[pick(rng)];
    if (g.has_edge(e)) {
      g.erase(e);
      out.push_back(UpdateOp::del(e));
    } else {
      g.insert(e);
      out.push_back(UpdateOp::ins(e));
    }
  }
  return out;
}

namespace {

Instance dyck2_source(VertexId n, const std::vector<Edge>& edges) {
  LabeledGraph g(GraphMode::Directed, Alphabet::dyck(2), n);
  for (const Edge& e : edges) g.insert(e);
  return Instance{std::move(g), 0, n - 1, std::nullopt};
}

std::vector<Edge> all_dyck2_edges(VertexId n) {
  std::vector<Edge> out;
  for (VertexId u = 0; u < n; ++u)
    for (std::uint32_t c = 0; c < 4; ++c)
      for (VertexId v = 0; v < n; ++v) out.push_back(Edge{u, Label{c}, v});
  return out;
}

}  // namespace

std::vector<Instance> all_dyck2_sources(VertexId n, std::size_t max_edges) {
  const auto edges = all_dyck2_edges(n);
  std::vector<Instance> out;
  std::vector<Edge> chosen;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    out.push_back(dyck2_source(n, chosen));
    if (chosen.size() == max_edges) return;
    for (std::size_t i = from; i < edges.size(); ++i) {
      chosen.push_back(edges[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Instance> sample_dyck2_sources(Rng& rng, VertexId n, std::size_t count, std::size_t max_edges) {
  const auto edges = all_dyck2_edges(n);
  std::set<std::set<Edge>> seen;
  std::vector<Instance> out;
  std::uniform_int_distribution<std::size_t> size(1, max_edges);
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  for (std::size_t attempts = 0; out.size() < count && attempts < 100 * count; ++attempts) {
    std::set<Edge> chosen;
    const std::size_t k = size(rng);
    while (chosen.size() < k) chosen.insert(edges[pick(rng)]);
    if (!seen.insert(chosen).second) continue;
    out.push_back(dyck2_source(n, std::vector<Edge>(chosen.begin(), chosen.end())));
  }
  return out;
}

}  // namespace dyck
