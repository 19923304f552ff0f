#include <doctest.h>

#include "dyck/alternating.hpp"
#include "dyck/error.hpp"
#include "dyck/figures.hpp"
#include "dyck/generators.hpp"

using namespace dyck;

namespace {

Instance alt(VertexId n, VertexId s, VertexId t, std::vector<Gate> gates,
             std::initializer_list<std::pair<VertexId, VertexId>> arcs) {
  Instance inst{LabeledGraph(GraphMode::Directed, Alphabet::dyck(1), n), s, t, std::move(gates)};
  for (auto [u, v] : arcs) inst.graph.insert(Edge{u, Label{0}, v});
  return inst;
}

/// Least closed set, as the intersection of every closed subset.
std::vector<bool> least_fixpoint_by_subsets(const Instance& inst) {
  const VertexId n = inst.graph.vertex_count();
  std::vector<std::vector<VertexId>> succ(n);
  for (const Edge& e : inst.graph.edges()) succ[e.from].push_back(e.to);
  std::uint32_t meet = (1u << n) - 1;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    auto in = [&](VertexId v) { return (set >> v) & 1u; };
    bool closed = in(inst.sink);
    for (VertexId x = 0; x < n && closed; ++x) {
      bool any = false, all = true;
      for (VertexId y : succ[x]) any = any || in(y), all = all && in(y);
      const bool forced = (*inst.partition)[x] == Gate::Or ? any : all;
      if (forced && !in(x)) closed = false;
    }
    if (closed) meet &= set;
  }
  std::vector<bool> out(n);
  for (VertexId v = 0; v < n; ++v) out[v] = (meet >> v) & 1u;
  return out;
}

void check_against_oracles(const Instance& inst) {
  const AlternatingResult r = solve_alternating(inst);
  const auto x = least_fixpoint_by_subsets(inst);
  const VertexId n = inst.graph.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    CHECK(r.trace.contains(v) == bool(x[v]));
    const auto k = kappa(v, inst);
    CHECK(k.has_value() == bool(x[v]));
    if (k) CHECK(*k >= *r.trace.first_layer[v]);
  }
  CHECK(r.source_in_fixpoint == bool(x[inst.source]));
  const auto members = r.trace.ordered_members();
  CHECK(is_well_ordered(members, inst));
}

}  // namespace

TEST_CASE("figure 1 fixpoint and layers") {
  const Instance f = figure1_instance();
  const AlternatingResult r = solve_alternating(f);
  CHECK(r.source_in_fixpoint);
  REQUIRE(r.trace.layers.size() == 5);
  CHECK(r.trace.layers[0] == std::vector<bool>{false, false, false, false, true});
  const std::vector<std::uint32_t> iota{4, 2, 3, 1, 0};
  for (VertexId v = 0; v < 5; ++v) CHECK(r.trace.first_layer[v] == iota[v]);
  for (std::size_t i = 1; i < r.trace.layers.size(); ++i) CHECK(r.trace.layers[i] != r.trace.layers[i - 1]);
  check_against_oracles(f);
  CHECK(format_trace(r.trace, f).find("X4 = {0, 1, 2, 3, 4}") != std::string::npos);
}

TEST_CASE("fixpoint corner cases") {
  CHECK(solve_alternating(alt(2, 1, 1, {Gate::Or, Gate::Or}, {})).source_in_fixpoint);
  CHECK(solve_alternating(alt(2, 0, 1, {Gate::And, Gate::Or}, {})).source_in_fixpoint);
  CHECK_FALSE(solve_alternating(alt(2, 0, 1, {Gate::Or, Gate::Or}, {})).source_in_fixpoint);
  Instance plain{LabeledGraph(GraphMode::Directed, Alphabet::dyck(1), 2), 0, 1, std::nullopt};
  CHECK_THROWS_AS(solve_alternating(plain), PreconditionError);
}

TEST_CASE("well-ordered sequences and kappa on figure 1") {
  const Instance f = figure1_instance();
  const std::vector<VertexId> t_only{4};
  CHECK(is_well_ordered(t_only, f));
  const std::vector<VertexId> good{4, 3, 1, 2, 0};
  CHECK(is_well_ordered(good, f));
  const std::vector<VertexId> bad{4, 1, 3};
  CHECK_FALSE(is_well_ordered(bad, f));
  CHECK_FALSE(is_well_ordered(std::vector<VertexId>{}, f));
  CHECK(kappa(4, f) == 0u);
  CHECK(kappa(3, f) == 1u);
  CHECK(kappa(1, f) == 2u);
  CHECK(kappa(0, f) == 4u);

  const Instance dead = alt(3, 0, 2, {Gate::Or, Gate::Or, Gate::Or}, {{0, 1}});
  CHECK_FALSE(kappa(0, dead).has_value());
  CHECK_FALSE(solve_alternating(dead).source_in_fixpoint);

  Instance big = alt(13, 0, 1, std::vector<Gate>(13, Gate::Or), {});
  CHECK_THROWS_AS(kappa(0, big), PreconditionError);
}

TEST_CASE("property: exhaustive up to 3 vertices, all partitions and sinks") {
  for (VertexId n = 1; n <= 3; ++n) {
    const std::uint32_t pairs = n * n;
    for (std::uint32_t edges = 0; edges < (1u << pairs); ++edges)
      for (std::uint32_t gates = 0; gates < (1u << n); ++gates)
        for (VertexId t = 0; t < n; ++t) {
          std::vector<Gate> g(n);
          for (VertexId v = 0; v < n; ++v) g[v] = (gates >> v) & 1u ? Gate::And : Gate::Or;
          Instance inst{LabeledGraph(GraphMode::Directed, Alphabet::dyck(1), n), 0, t, g};
          for (std::uint32_t b = 0; b < pairs; ++b)
            if ((edges >> b) & 1u) inst.graph.insert(Edge{b / n, Label{0}, b % n});
          check_against_oracles(inst);
        }
  }
}

TEST_CASE("property: random graphs up to 5 vertices") {
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) check_against_oracles(random_alternating(rng, 1 + i % 5, 0.3));
}

TEST_CASE("property: monotonicity under edge insertion") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const Instance inst = random_alternating(rng, 5, 0.25);
    const auto before = solve_alternating(inst).trace;
    for (const Edge& e : candidate_edges(inst)) {
      if (inst.graph.has_edge(e)) continue;
      const auto after = solve_alternating(apply_update(inst, UpdateOp::ins(e))).trace;
      for (VertexId v = 0; v < 5; ++v) {
        if ((*inst.partition)[e.from] == Gate::Or && before.contains(v)) CHECK(after.contains(v));
        if ((*inst.partition)[e.from] == Gate::And && after.contains(v)) CHECK(before.contains(v));
      }
    }
  }
}
