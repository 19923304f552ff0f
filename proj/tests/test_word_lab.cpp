#include <doctest.h>

#include <functional>
#include <memory>
#include <set>

#include "dyck/cfl_reach.hpp"
#include "dyck/error.hpp"
#include "dyck/figures.hpp"
#include "dyck/generators.hpp"
#include "dyck/oracle.hpp"
#include "dyck/reductions.hpp"
#include "dyck/word_lab.hpp"
#include "support.hpp"

using namespace dyck;
using testing::word;

namespace {

// A backtracking-free regex matcher over position sets, written from the
// six expressions directly.
struct Re {
  enum K { Eps, Lit, Cat, Alt, Star } k;
  std::uint32_t code = 0;
  std::vector<std::shared_ptr<Re>> kids;
};
using P = std::shared_ptr<Re>;

P lit(std::uint32_t c) { return std::make_shared<Re>(Re{Re::Lit, c, {}}); }
P cat(std::vector<P> k) { return std::make_shared<Re>(Re{Re::Cat, 0, std::move(k)}); }
P alt(std::vector<P> k) { return std::make_shared<Re>(Re{Re::Alt, 0, std::move(k)}); }
P star(P k) { return std::make_shared<Re>(Re{Re::Star, 0, {std::move(k)}}); }

std::set<std::size_t> ends(const P& r, const Word& w, const std::set<std::size_t>& from) {
  std::set<std::size_t> out;
  switch (r->k) {
    case Re::Eps: return from;
    case Re::Lit:
      for (auto i : from)
        if (i < w.size() && w[i].code == r->code) out.insert(i + 1);
      return out;
    case Re::Cat: {
      std::set<std::size_t> cur = from;
      for (const auto& k : r->kids) cur = ends(k, w, cur);
      return cur;
    }
    case Re::Alt:
      for (const auto& k : r->kids) {
        auto e = ends(k, w, from);
        out.insert(e.begin(), e.end());
      }
      return out;
    case Re::Star: {
      out = from;
      std::set<std::size_t> frontier = from;
      while (!frontier.empty()) {
        std::set<std::size_t> next;
        for (auto i : ends(r->kids[0], w, frontier))
          if (out.insert(i).second) next.insert(i);
        frontier = std::move(next);
      }
      return out;
    }
  }
  return out;
}

bool matches(const P& r, const Word& w) { return ends(r, w, {0}).count(w.size()) > 0; }

// 0 = 0, 1 = 0bar, 2 = 1, 3 = 1bar
const P kWp = star(alt({cat({lit(0), lit(0)}), cat({lit(2), lit(2)})}));
const P kWm = star(alt({cat({lit(1), lit(1)}), cat({lit(3), lit(3)})}));
const P kW = star(alt({kWp, kWm, cat({lit(1), lit(0)})}));
const P kVp = cat({star(cat({kWp, lit(2), kWp, lit(2)})), kWp});
const P kVm = cat({star(cat({kWm, lit(3), kWm, lit(3)})), kWm});
const P kV = cat({star(cat({kW, lit(2), kW, lit(3)})), kW});

P local(Regular which) {
  switch (which) {
    case Regular::OmegaPlus: return kWp;
    case Regular::OmegaMinus: return kWm;
    case Regular::Omega: return kW;
    case Regular::VarpiPlus: return kVp;
    case Regular::VarpiMinus: return kVm;
    case Regular::Varpi: return kV;
  }
  return nullptr;
}

P local_shape(std::uint32_t lambda) {
  switch (lambda) {
    case 0: return cat({kV, lit(2), lit(2), lit(0), lit(0), kWp, lit(2), lit(0)});
    case 2: return cat({kV, lit(2), kWp, lit(0), lit(0), lit(2), lit(2), kWp, lit(0)});
    case 1: return cat({lit(1), lit(3), kWm, lit(1), lit(1), lit(3), lit(3), kV});
    default: return cat({lit(1), kWm, lit(3), lit(3), lit(1), lit(1), kWm, lit(3), kV});
  }
}

constexpr Regular kAll[] = {Regular::OmegaPlus,  Regular::OmegaMinus, Regular::Omega,
                            Regular::VarpiPlus, Regular::VarpiMinus, Regular::Varpi};

/// Cancellation in a random order.
Word random_reduce(Word w, Rng& rng) {
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i].code % 2 == 0 && w[i + 1].code == w[i].code + 1) spots.push_back(i);
    if (spots.empty()) return w;
    const std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    w.erase(w.begin() + i, w.begin() + i + 2);
  }
}

/// Factors and prefixes of Dyck words of length <= 12 over two pairs.
struct FactorOracle {
  std::set<Word> factors, prefixes;
  explicit FactorOracle(std::size_t keep) {
    Word w;
    std::vector<std::uint32_t> open;
    // Grows every Dyck word of length <= 12 letter by letter.
    std::function<void()> grow = [&] {
      if (open.empty()) add(w, keep);
      if (w.size() + open.size() + 2 <= 12)
        for (std::uint32_t k = 0; k < 2; ++k) {
          w.push_back(Label{2 * k});
          open.push_back(k);
          grow();
          open.pop_back();
          w.pop_back();
        }
      if (!open.empty()) {
        const std::uint32_t k = open.back();
        w.push_back(Label{2 * k + 1});
        open.pop_back();
        grow();
        open.push_back(k);
        w.pop_back();
      }
    };
    grow();
  }
  void add(const Word& w, std::size_t keep) {
    for (std::size_t i = 0; i <= w.size(); ++i)
      for (std::size_t len = 0; len <= keep && i + len <= w.size(); ++len) {
        Word f(w.begin() + i, w.begin() + i + len);
        if (i == 0) prefixes.insert(f);
        factors.insert(std::move(f));
      }
  }
};

}  // namespace

TEST_CASE("reduce examples") {
  CHECK(reduce(parse_binary_word("0 0bar")).empty());
  CHECK(reduce(parse_binary_word("0bar 0")) == parse_binary_word("0bar 0"));
  const Word journey = parse_binary_word("0 0bar 1 1 0 0 1 1 1 1 1bar 0");
  CHECK(reduce(journey) == parse_binary_word("1 1 0 0 1 1 1 0"));
  CHECK(reduce(parse_binary_word("0 1 1bar 0bar 1")) == parse_binary_word("1"));
}

TEST_CASE("property: reduce is confluent") {
  Rng rng(1);
  for (int i = 0; i < 3000; ++i) {
    std::uniform_int_distribution<std::uint32_t> letter(0, 3);
    Word w(1 + i % 20);
    for (auto& l : w) l = Label{letter(rng)};
    const Word r = reduce(w);
    CHECK(random_reduce(w, rng) == r);
    CHECK(random_reduce(w, rng) == r);
    CHECK(reduce(r) == r);
  }
}

TEST_CASE("Dyck membership") {
  const Alphabet d2 = Alphabet::dyck(2);
  CHECK(is_dyck(Word{}, d2));
  CHECK(is_dyck(parse_binary_word("0 1 1bar 0bar"), d2));
  CHECK_FALSE(is_dyck(parse_binary_word("0bar 0"), d2));
  const Word p = phi_undirected(word({0, 1}));
  CHECK(p == [] {
    Word w = undirected_encoding(Label{0});
    const Word& b = undirected_encoding(Label{1});
    w.insert(w.end(), b.begin(), b.end());
    return w;
  }());
  CHECK(is_dyck(p, d2));
  CHECK(is_dyck(phi_undirected(word({2, 3})), d2));
  CHECK_THROWS_AS(is_dyck(word({0}), Alphabet::near_dyck(1)), PreconditionError);

  const Grammar g = Grammar::dyck(2);
  for_each_word(4, 8, [&](std::span<const Label> w) {
    const bool d = is_dyck(w, d2);
    CHECK(d == testing::stack_dyck(w));
    CHECK(d == cyk_derives(g, w));
    CHECK(d == reduce(w).empty());
  });
}

TEST_CASE("near-Dyck membership and its encoding") {
  const Alphabet a = Alphabet::near_dyck(2);
  CHECK(is_near_dyck(parse_word("v1 dot v1bar", a), a));
  CHECK_FALSE(is_near_dyck(parse_word("v0 v1bar", a), a));
  CHECK(is_near_dyck(parse_word("eps", a), a));
  CHECK(format_ab_word(phi_neardyck(parse_word("dot", a), a)) == "a abar");
  CHECK(phi_neardyck(parse_word("v1", a), a).size() == 4);

  const Grammar g = Grammar::near_dyck(2);
  const Alphabet d2 = Alphabet::dyck(2);
  for_each_word(a.size(), 6, [&](std::span<const Label> w) {
    const bool nd = is_near_dyck(w, a);
    CHECK(nd == cyk_derives(g, w));
    CHECK(nd == is_dyck(phi_neardyck(w, a), d2));
  });
}

TEST_CASE("Q and Q_init examples") {
  CHECK_FALSE(in_q(parse_binary_word("1 0bar")));
  CHECK_FALSE(in_q(parse_binary_word("0 1bar")));
  CHECK(in_q(parse_binary_word("0bar 1")));
  CHECK_FALSE(in_q_init(parse_binary_word("0bar 1")));
  CHECK(in_q(Word{}));
  CHECK(in_q_init(Word{}));
}

TEST_CASE("property: Q and Q_init against factors of Dyck words") {
  const FactorOracle oracle(6);
  std::size_t in = 0;
  for_each_word(4, 6, [&](std::span<const Label> w) {
    const Word x(w.begin(), w.end());
    CHECK(in_q(w) == (oracle.factors.count(x) > 0));
    CHECK(in_q_init(w) == (oracle.prefixes.count(x) > 0));
    in += in_q(w);
  });
  CHECK(in > 0);
}

TEST_CASE("property: Q is factor-closed and contains Q_init") {
  for_each_word(4, 8, [&](std::span<const Label> w) {
    if (in_q_init(w)) CHECK(in_q(w));
    if (!in_q(w) || w.empty()) return;
    CHECK(in_q(w.subspan(1)));
    CHECK(in_q(w.first(w.size() - 1)));
  });
}

TEST_CASE("mu") {
  CHECK(mu(Word{}) == 0);
  CHECK(mu(word({0, 3})) == 0);
  CHECK(mu(word({0, 0, 3})) == 1);
}

TEST_CASE("regular languages") {
  for (Regular r : kAll) {
    CHECK(in_regular(Word{}, r));
    CHECK(parse_regular(to_string(r)) == r);
  }
  CHECK(in_regular(parse_binary_word("0bar 0"), Regular::Omega));
  CHECK_FALSE(in_regular(parse_binary_word("0bar 0"), Regular::OmegaPlus));
  const Word four_blocks = parse_binary_word("1 1 0 0 1 1 1 0");
  for (Regular r : kAll) CHECK(in_regular(four_blocks, r) == matches(local(r), four_blocks));

  for_each_word(4, 8, [&](std::span<const Label> w) {
    const Word x(w.begin(), w.end());
    for (Regular r : kAll) CHECK(in_regular(w, r) == matches(local(r), x));
  });
  Rng rng(2);
  std::uniform_int_distribution<std::uint32_t> letter(0, 3);
  for (int i = 0; i < 4000; ++i) {
    Word w(9 + i % 4);
    for (auto& l : w) l = Label{letter(rng)};
    for (Regular r : kAll) CHECK(in_regular(w, r) == matches(local(r), w));
  }
}

TEST_CASE("nominal shapes") {
  for (std::uint32_t c = 0; c < 4; ++c) {
    const Word r = reduce(undirected_encoding(Label{c}));
    CHECK(nominal_shape_automaton(Label{c}).accepts(r));
    CHECK(matches(local_shape(c), r));
    CHECK(Automaton::compile(nominal_shape(Label{c})).accepts(r));
  }
  Rng rng(3);
  std::uniform_int_distribution<std::uint32_t> letter(0, 3);
  for (int i = 0; i < 3000; ++i) {
    Word w(6 + i % 7);
    for (auto& l : w) l = Label{letter(rng)};
    for (std::uint32_t c = 0; c < 4; ++c) CHECK(nominal_shape_automaton(Label{c}).accepts(w) == matches(local_shape(c), w));
  }
}

TEST_CASE("free product and theta") {
  using F = FreeProductElement;
  CHECK((F::alpha() * F::alpha()).is_identity());
  CHECK(F::gamma().letters() == "ba");
  CHECK(F::gamma().inverse().letters() == "ab");
  CHECK((F::gamma() * F::gamma().inverse()).is_identity());
  CHECK(gamma_exponent(F{}) == 0L);
  CHECK(gamma_exponent(F::gamma() * F::gamma()) == 2L);
  CHECK(gamma_exponent(F::gamma().inverse()) == -1L);
  CHECK_FALSE(gamma_exponent(F::alpha()).has_value());
  CHECK_FALSE(gamma_exponent(F::beta() * F::alpha() * F::beta()).has_value());

  CHECK(theta(parse_binary_word("0 0bar")).is_identity());
  CHECK(theta(undirected_encoding(Label{0})) == F::gamma());
  CHECK(theta(undirected_encoding(Label{2})) == F::gamma());
  CHECK(theta(undirected_encoding(Label{1})) == F::gamma().inverse());
  CHECK(theta(undirected_encoding(Label{3})) == F::gamma().inverse());

  // Every varpi word up to length 12, walked through the automaton.
  const Automaton& v = automaton(Regular::Varpi);
  std::size_t seen = 0;
  Word w;
  std::function<void(std::uint32_t)> walk = [&](std::uint32_t state) {
    if (v.accepting(state)) {
      ++seen;
      CHECK(theta(w).is_identity());
    }
    if (w.size() == 12) return;
    for (std::uint32_t c = 0; c < 4; ++c) {
      const std::uint32_t next = v.step(state, Label{c});
      if (v.dead(next)) continue;
      w.push_back(Label{c});
      walk(next);
      w.pop_back();
    }
  };
  walk(0);
  CHECK(seen > 1000);
}

TEST_CASE("token parsing") {
  CHECK(parse_binary_word("a abar b bbar") == word({0, 1, 2, 3}));
  CHECK(parse_binary_word("l1 l1bar l2 l2bar") == word({0, 1, 2, 3}));
  CHECK(parse_binary_word("eps").empty());
  CHECK(parse_binary_word("").empty());
  CHECK(format_binary_word(word({0, 1, 2, 3})) == "0 0bar 1 1bar");
  CHECK(format_ab_word(word({0, 1, 2, 3})) == "a abar b bbar");
  CHECK_THROWS_AS(parse_binary_word("2"), ParseError);
  CHECK_THROWS_AS(parse_word("v3", Alphabet::near_dyck(2)), ParseError);
}

TEST_CASE("nominal decomposition on the two-edge cycle") {
  const Instance src = figure2_source();
  const CompiledReduction red = compile_dyck2_to_undirected(src);

  const Walk g2 = figure2_gamma2(red);
  CHECK(g2.length() == 32);
  CHECK(is_dyck(g2.label(), Alphabet::dyck(2)));
  const NominalDecomposition d2 = nominal_decompose(g2, red);
  const std::vector<Edge> cycle{Edge{0, Label{0}, 1}, Edge{1, Label{1}, 0}};
  CHECK(d2.ancestor == cycle);
  CHECK(d2.vertices == std::vector<VertexId>{0, 1, 0});
  CHECK(d2.ancestor_label() == word({0, 1}));
  std::size_t covered = 0;
  for (const auto& s : d2.segments) {
    CHECK(s.first_step == covered);
    covered = s.end_step;
  }
  CHECK(covered == g2.length());

  const NominalDecomposition d1 = nominal_decompose(figure2_gamma1(red), red);
  CHECK(d1.ancestor.empty());
  CHECK(d1.segments.size() == 2);
  for (const auto& s : d1.segments) CHECK_FALSE(s.source_label.has_value());

  // psi(e): the plain traversal of one chain.
  std::vector<VertexId> seq{0};
  for (std::uint32_t i = 1; i <= kChainInterior; ++i) seq.push_back(red.chain_vertex({0, Label{0}, 1, i}));
  seq.push_back(1);
  const Walk psi = walk_through(red.target().graph, seq);
  const NominalDecomposition dp = nominal_split(psi, red);
  REQUIRE(dp.segments.size() == 1);
  CHECK(dp.segments[0].source_label == Label{0});
  CHECK(dp.ancestor == std::vector<Edge>{Edge{0, Label{0}, 1}});
  CHECK_THROWS_AS(nominal_decompose(psi, red), PreconditionError);

  Walk stray{0, {Step{Label{0}, red.chain_vertex({0, Label{0}, 1, 1})}}};
  CHECK_THROWS_AS(nominal_split(stray, red), PreconditionError);
}
