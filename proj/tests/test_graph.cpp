#include <doctest.h>

#include <sstream>

#include "dyck/error.hpp"
#include "dyck/figures.hpp"
#include "dyck/generators.hpp"
#include "dyck/graph.hpp"

using namespace dyck;

TEST_CASE("alphabet tokens and the bar involution") {
  const Alphabet d = Alphabet::dyck(3);
  CHECK(d.size() == 6);
  CHECK(d.token(d.open(0)) == "l1");
  CHECK(d.token(d.close(2)) == "l3bar");
  CHECK(d.parse_token("l2bar") == d.close(1));
  CHECK_FALSE(d.parse_token("l4").has_value());
  for (std::uint32_t c = 0; c < d.size(); ++c) CHECK(d.bar(d.bar(Label{c})) == Label{c});

  const Alphabet nd = Alphabet::near_dyck(3);
  CHECK(nd.size() == 7);
  CHECK(nd.token(nd.bullet()) == "dot");
  CHECK(nd.parse_token("v2bar") == nd.close(2));
  CHECK(nd.is_bullet(*nd.parse_token("dot")));
  CHECK_THROWS_AS(nd.bar(nd.bullet()), Error);
  for (std::uint32_t c = 0; c + 1 < nd.size(); ++c) CHECK(nd.bar(nd.bar(Label{c})) == Label{c});
}

TEST_CASE("minimal graph file") {
  const Instance inst = parse_graph("graph directed\nvertices 1\nalphabet dyck 1\nmark 0 0\n");
  CHECK(inst.graph.vertex_count() == 1);
  CHECK(inst.graph.edge_count() == 0);
  CHECK(inst.source == 0);
  CHECK(inst.sink == 0);
  CHECK_FALSE(inst.partition.has_value());
}

TEST_CASE("figure 1 file") {
  std::ostringstream text;
  text << "# five vertices\n" << serialize(figure1_instance());
  const Instance inst = parse_graph(text.str());
  CHECK(inst.graph.vertex_count() == 5);
  CHECK(inst.graph.edge_count() == 8);
  REQUIRE(inst.partition.has_value());
  const std::vector<Gate> expected{Gate::And, Gate::Or, Gate::And, Gate::Or, Gate::Or};
  CHECK(*inst.partition == expected);
  CHECK(inst.source == 0);
  CHECK(inst.sink == 4);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_graph("graph directed\nvertices 2\nalphabet dyck 2\nedge 0 l3 1\nmark 0 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("unknown label") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_graph("graph directed\nvertices 2\nalphabet dyck 1\nedge 0 l1 2\nmark 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph directed\nvertices 2\nalphabet dyck 1\nmark 0 1\nmark 0 0\n"), ParseError);
  CHECK_THROWS_AS(
      parse_graph("graph directed\nvertices 2\nalphabet dyck 1\nmark 0 1\npartition and 0\npartition and 1\n"),
      ParseError);
  CHECK_THROWS_AS(parse_graph("graph directed\nvertices 2\nalphabet dyck 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("graph sideways\n"), ParseError);
}

TEST_CASE("apply_update semantics") {
  Instance inst{LabeledGraph(GraphMode::Directed, Alphabet::dyck(1), 2), 0, 1, std::nullopt};
  const Edge e{0, Label{0}, 1};
  const Instance one = apply_update(inst, UpdateOp::ins(e));
  CHECK(one.graph.edge_count() == 1);
  CHECK(inst.graph.edge_count() == 0);
  CHECK_THROWS_AS(apply_update(one, UpdateOp::ins(e)), UpdateError);
  CHECK_THROWS_AS(apply_update(inst, UpdateOp::del(e)), UpdateError);
  CHECK(apply_update(one, UpdateOp::del(e)) == inst);
  CHECK(apply_update(inst, UpdateOp::query()) == inst);
  CHECK_THROWS_AS(apply_update(inst, UpdateOp::ins(Edge{0, Label{0}, 5})), PreconditionError);
  CHECK_THROWS_AS(apply_update(inst, UpdateOp::ins(Edge{0, Label{2}, 1})), PreconditionError);
}

TEST_CASE("undirected edges are reported both ways") {
  Instance inst{LabeledGraph(GraphMode::Undirected, Alphabet::dyck(1), 2), 0, 1, std::nullopt};
  apply_in_place(inst, UpdateOp::ins(Edge{0, Label{0}, 1}));
  CHECK(inst.graph.has_edge(Edge{0, Label{0}, 1}));
  CHECK(inst.graph.has_edge(Edge{1, Label{0}, 0}));
  CHECK(inst.graph.edges().size() == 2);
  CHECK_THROWS_AS(apply_in_place(inst, UpdateOp::ins(Edge{1, Label{0}, 0})), UpdateError);
  apply_in_place(inst, UpdateOp::del(Edge{1, Label{0}, 0}));
  CHECK(inst.graph.edge_count() == 0);
}

TEST_CASE("property: serialize round-trips and updates invert") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const GraphMode mode = i % 2 ? GraphMode::Directed : GraphMode::Undirected;
    const Alphabet a = i % 3 == 0 ? Alphabet::near_dyck(1 + i % 4) : Alphabet::dyck(1 + i % 3);
    const VertexId n = a.kind() == AlphabetKind::NearDyck ? a.pairs() : 1 + i % 6;
    Instance inst = random_instance(rng, mode, a, n, 0.3);
    if (i % 5 == 0) {
      std::vector<Gate> gates(n, Gate::Or);
      gates[0] = Gate::And;
      inst.partition = gates;
    }
    CHECK(parse_graph(serialize(inst)) == inst);

    for (const Edge& e : candidate_edges(inst)) {
      if (inst.graph.has_edge(e)) continue;
      const Instance back = apply_update(apply_update(inst, UpdateOp::ins(e)), UpdateOp::del(e));
      CHECK(back == inst);
    }
  }
}

TEST_CASE("property: undirected symmetry survives random scripts") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng, GraphMode::Undirected, Alphabet::dyck(2), 5, 0.3);
    for (const UpdateOp& op : random_script(rng, inst, 40)) {
      apply_in_place(inst, op);
      for (const Edge& e : inst.graph.edges()) CHECK(inst.graph.has_edge(Edge{e.to, e.label, e.from}));
    }
  }
}

TEST_CASE("scripts: parse, line numbers, round trip") {
  const Alphabet a = Alphabet::dyck(2);
  std::vector<std::size_t> lines;
  const auto ops = parse_script("# header\nins 0 l1 1\n\nquery   # ask\ndel 0 l1 1\n", a, &lines);
  REQUIRE(ops.size() == 3);
  CHECK(ops[0] == UpdateOp::ins(Edge{0, Label{0}, 1}));
  CHECK(ops[1] == UpdateOp::query());
  CHECK(ops[2] == UpdateOp::del(Edge{0, Label{0}, 1}));
  CHECK(lines == std::vector<std::size_t>{2, 4, 5});
  CHECK(parse_script(serialize_script(ops, a), a) == ops);
  CHECK(parse_script("", a).empty());
  try {
    parse_script("query\nflip 0 l1 1\n", a);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(UpdateOp::ins(Edge{0, Label{0}, 1}).inverse() == UpdateOp::del(Edge{0, Label{0}, 1}));
}

TEST_CASE("walks") {
  const Instance inst = figure2_source();
  const Walk w{0, {Step{Label{0}, 1}, Step{Label{1}, 0}}};
  CHECK(is_walk(inst.graph, w));
  CHECK(w.end() == 0);
  CHECK(w.label() == Word{Label{0}, Label{1}});
  CHECK_FALSE(is_walk(inst.graph, Walk{0, {Step{Label{1}, 1}}}));
  CHECK(fingerprint(inst.graph) == fingerprint(figure2_source().graph));
  CHECK(fingerprint(inst.graph) != fingerprint(apply_update(inst, UpdateOp::del(Edge{0, Label{0}, 1})).graph));
}
