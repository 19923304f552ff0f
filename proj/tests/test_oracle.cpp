#include <doctest.h>

#include <map>

#include "dyck/cfl_reach.hpp"
#include "dyck/figures.hpp"
#include "dyck/generators.hpp"
#include "dyck/oracle.hpp"
#include "dyck/reductions.hpp"
#include "dyck/word_lab.hpp"
#include "support.hpp"

using namespace dyck;

namespace {

Instance chain4() {
  return parse_graph(
      "graph directed\nvertices 5\nalphabet dyck 2\n"
      "edge 0 l1 1\nedge 1 l1bar 2\nedge 2 l2 3\nedge 3 l2bar 4\nmark 0 4\n");
}

bool length_lex_sorted(const std::vector<Walk>& ws) {
  for (std::size_t i = 1; i < ws.size(); ++i) {
    const auto& a = ws[i - 1];
    const auto& b = ws[i];
    if (a.length() > b.length()) return false;
    if (a.length() == b.length() && !(a.steps < b.steps)) return false;
  }
  return true;
}

/// Number of Dyck words of each even length over `pairs` pairs, by the
/// first-return recursion D(m) = sum_j pairs * D(j) * D(m - 2 - j).
std::vector<std::size_t> dyck_counts(std::size_t pairs, std::size_t max_len) {
  std::vector<std::size_t> d(max_len + 1, 0);
  d[0] = 1;
  for (std::size_t m = 2; m <= max_len; m += 2)
    for (std::size_t j = 0; j + 2 <= m; j += 2) d[m] += pairs * d[j] * d[m - 2 - j];
  return d;
}

}  // namespace

TEST_CASE("enumerate_paths examples") {
  Instance empty{LabeledGraph(GraphMode::Directed, Alphabet::dyck(1), 2), 0, 0, std::nullopt};
  const auto e = enumerate_paths(empty, 1, 1, EnumerationBudget{}, LabelPredicate::dyck());
  REQUIRE(e.walks.size() == 1);
  CHECK(e.walks[0] == Walk{1, {}});
  CHECK_FALSE(e.truncated);

  const auto c = enumerate_paths(chain4(), 0, 4, EnumerationBudget{8}, LabelPredicate::dyck());
  REQUIRE(c.walks.size() == 1);
  CHECK(c.walks[0].length() == 4);
  CHECK(enumerate_paths(chain4(), 0, 4, EnumerationBudget{3}, LabelPredicate::any()).walks.empty());

  const CompiledReduction red = compile_dyck2_to_undirected(figure2_source());
  const auto g = enumerate_paths(red.target(), 0, 0, EnumerationBudget{4}, LabelPredicate::dyck());
  const Walk g1 = figure2_gamma1(red);
  CHECK(std::find(g.walks.begin(), g.walks.end(), g1) != g.walks.end());
  CHECK(length_lex_sorted(g.walks));
  for (const Walk& w : g.walks) CHECK(testing::stack_dyck(w.label()));
}

TEST_CASE("predicates agree with their definitions") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const Instance inst = random_instance(rng, i % 2 ? GraphMode::Directed : GraphMode::Undirected,
                                          Alphabet::dyck(2), 4, 0.3);
    const EnumerationBudget b{5, 100000};
    const auto all = enumerate_paths(inst, inst.source, inst.sink, b, LabelPredicate::any());
    REQUIRE_FALSE(all.truncated);
    CHECK(length_lex_sorted(all.walks));
    std::map<LabelPredicate::Kind, std::vector<Walk>> expected;
    for (const Walk& w : all.walks) {
      CHECK(is_walk(inst.graph, w));
      const Word l = w.label();
      if (testing::stack_dyck(l)) expected[LabelPredicate::Kind::Dyck].push_back(w);
      if (in_q(l)) expected[LabelPredicate::Kind::Factor].push_back(w);
      if (in_q_init(l)) expected[LabelPredicate::Kind::Prefix].push_back(w);
    }
    CHECK(enumerate_paths(inst, inst.source, inst.sink, b, LabelPredicate::dyck()).walks ==
          expected[LabelPredicate::Kind::Dyck]);
    CHECK(enumerate_paths(inst, inst.source, inst.sink, b, LabelPredicate::factor()).walks ==
          expected[LabelPredicate::Kind::Factor]);
    CHECK(enumerate_paths(inst, inst.source, inst.sink, b, LabelPredicate::prefix()).walks ==
          expected[LabelPredicate::Kind::Prefix]);
    const auto even = enumerate_paths(inst, inst.source, inst.sink, b,
                                      LabelPredicate::custom([](std::span<const Label> l) { return l.size() % 2 == 0; }));
    for (const Walk& w : even.walks) CHECK(w.length() % 2 == 0);
  }
}

TEST_CASE("determinism, caps and budget monotonicity") {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const Instance inst = random_instance(rng, GraphMode::Directed, Alphabet::dyck(1), 5, 0.4);
    const auto a = enumerate_paths(inst, 0, 0, EnumerationBudget{6}, LabelPredicate::dyck());
    const auto b = enumerate_paths(inst, 0, 0, EnumerationBudget{6}, LabelPredicate::dyck());
    CHECK(a.walks == b.walks);
    const auto bigger = enumerate_paths(inst, 0, 0, EnumerationBudget{8}, LabelPredicate::dyck());
    for (const Walk& w : a.walks) CHECK(std::find(bigger.walks.begin(), bigger.walks.end(), w) != bigger.walks.end());
    const auto capped = enumerate_paths(inst, 0, 0, EnumerationBudget{8, 2}, LabelPredicate::dyck());
    CHECK(capped.walks.size() <= 2);
    if (bigger.walks.size() > 2) {
      CHECK(capped.truncated);
      CHECK(std::equal(capped.walks.begin(), capped.walks.end(), bigger.walks.begin()));
    }
  }
}

TEST_CASE("brute_dyck_reach") {
  Instance empty{LabeledGraph(GraphMode::Directed, Alphabet::dyck(2), 4), 0, 3, std::nullopt};
  const BruteReach e = brute_dyck_reach(empty, EnumerationBudget{6});
  CHECK(e.pairs.count() == 4);

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Instance inst = random_instance(rng, GraphMode::Directed, Alphabet::dyck(1 + i % 2), 8, 0.15);
    const BruteReach br = brute_dyck_reach(inst, EnumerationBudget{6});
    const ReachIndex full = solve_dyck(inst);
    for (const auto& [u, v] : br.pairs.pairs()) CHECK(full.contains(u, v));
  }
  // Acyclic: forward edges only, budget covers the longest path.
  for (int i = 0; i < 50; ++i) {
    Instance inst = random_instance(rng, GraphMode::Directed, Alphabet::dyck(2), 6, 0.5);
    Instance dag{LabeledGraph(GraphMode::Directed, Alphabet::dyck(2), 6), 0, 5, std::nullopt};
    for (const Edge& x : inst.graph.stored_edges())
      if (x.from < x.to) dag.graph.insert(x);
    CHECK(brute_dyck_reach(dag, EnumerationBudget{6}).pairs == solve_dyck(dag).pairs);
  }
}

TEST_CASE("nominal enumeration") {
  const Instance src = figure2_source();
  const CompiledReduction red = compile_dyck2_to_undirected(src);
  const EnumerationBudget b{30, 500, 2'000'000};
  for (const Edge& e : src.graph.stored_edges()) {
    const auto th = enumerate_nominal_paths(red, NominalTag::through(e), b);
    bool has_psi = false;
    for (const Walk& w : th.walks) {
      const Word l = w.label();
      CHECK(in_q(l));
      CHECK(w.start == e.from);
      CHECK(w.end() == e.to);
      has_psi = has_psi || l == undirected_encoding(e.label);
      CHECK(nominal_shape_automaton(e.label).accepts(reduce(l)));
    }
    CHECK(has_psi);
  }
  // On a self-loop's chain, 0-only excursions belong to the loop class.
  Instance selfloop{LabeledGraph(GraphMode::Directed, Alphabet::dyck(2), 2), 0, 1, std::nullopt};
  selfloop.graph.insert(Edge{0, Label{2}, 0});
  const CompiledReduction sl = compile_dyck2_to_undirected(selfloop);
  const auto th = enumerate_nominal_paths(sl, NominalTag::through(Edge{0, Label{2}, 0}), b);
  CHECK_FALSE(th.walks.empty());
  for (const Walk& w : th.walks) {
    const Word l = w.label();
    CHECK(std::any_of(l.begin(), l.end(), [](Label x) { return x.code >= 2; }));
  }
  const auto sl_loops = enumerate_nominal_paths(sl, NominalTag::loop(0), EnumerationBudget{2});
  CHECK(std::any_of(sl_loops.walks.begin(), sl_loops.walks.end(),
                    [&](const Walk& w) { return sl.chain_of(w.steps[0].to)->lambda == Label{2}; }));

  const auto loops = enumerate_nominal_paths(red, NominalTag::loop(0), EnumerationBudget{8, 500});
  CHECK_FALSE(loops.walks.empty());
  for (const Walk& w : loops.walks) {
    CHECK(w.end() == 0);
    for (const Step& s : w.steps) CHECK(s.label.code < 2);
    CHECK(in_regular(reduce(w.label()), Regular::Varpi));
  }
}

TEST_CASE("exhaustive words") {
  const Alphabet d2 = Alphabet::dyck(2);
  const auto counts = dyck_counts(2, 8);
  for (std::size_t len = 0; len <= 8; len += 2) {
    const auto words = exhaustive_words(d2, len, [&](std::span<const Label> w) { return is_dyck(w, d2); });
    std::size_t expected = 0;
    for (std::size_t m = 0; m <= len; ++m) expected += counts[m];
    CHECK(words.size() == expected);
    CHECK(words.front().empty());
  }
  CHECK(counts[2] == 2);
  CHECK(counts[4] == 8);

  std::size_t n = 0;
  std::size_t last_len = 0;
  for_each_word(3, 3, [&](std::span<const Label> w) {
    CHECK(w.size() >= last_len);
    last_len = w.size();
    ++n;
  });
  CHECK(n == 1 + 3 + 9 + 27);
}

TEST_CASE("cyk and the graph-based factor test") {
  const Grammar g = Grammar::dyck(1);
  CHECK(cyk_derives(g, Word{}));
  CHECK(cyk_derives(g, testing::word({0, 1, 0, 1})));
  CHECK_FALSE(cyk_derives(g, testing::word({1, 0})));

  for_each_word(4, 6, [&](std::span<const Label> w) {
    const ApproxDyckVerdict v = approx_dyck_by_graph(w);
    CHECK(v.factor == in_q(w));
    CHECK(v.prefix == in_q_init(w));
  });
}
