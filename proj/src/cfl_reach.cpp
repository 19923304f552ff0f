#include "dyck/cfl_reach.hpp"

#include <utility>

#include "dyck/error.hpp"

namespace dyck {

namespace {

void require_dyck(const Instance& inst) {
  if (inst.graph.alphabet().kind() != AlphabetKind::Dyck)
    throw PreconditionError("Dyck solver needs a dyck alphabet");
}

// Worklist saturation for Dyck_n. Pair membership lives in a bit matrix and
// its transpose so both concatenation directions are row scans.
class DyckSaturator {
 public:
  DyckSaturator(const LabeledGraph& g, bool with_concat)
      : n_(g.vertex_count()),
        pairs_(g.alphabet().pairs()),
        concat_(with_concat),
        fwd_(n_),
        bwd_(n_),
        in_open_(std::size_t(n_) * pairs_),
        out_close_(std::size_t(n_) * pairs_) {
    const Alphabet& a = g.alphabet();
    for (const Edge& e : g.edges()) {
      const std::uint32_t k = a.pair_of(e.label);
      if (a.is_open(e.label))
        in_open_[slot(e.to, k)].push_back(e.from);
      else
        out_close_[slot(e.from, k)].push_back(e.to);
    }
  }

  void seed_identity() {
    for (VertexId x = 0; x < n_; ++x) add(x, x);
  }

  // Restart from a previously saturated relation.
  void load(const PairMatrix& pairs) {
    for (VertexId u = 0; u < n_; ++u)
      pairs.for_each_in_row(u, [&](VertexId v) {
        fwd_.set(u, v);
        bwd_.set(v, u);
      });
  }

  // Derivations whose wrap step uses `e`; everything else already holds.
  void seed_edge(const Edge& e, const Alphabet& a) {
    const std::uint32_t k = a.pair_of(e.label);
    if (a.is_open(e.label)) {
      std::vector<VertexId> inner;
      fwd_.for_each_in_row(e.to, [&](VertexId v) { inner.push_back(v); });
      for (VertexId v2 : inner)
        for (VertexId v : out_close_[slot(v2, k)]) add(e.from, v);
    } else {
      std::vector<VertexId> inner;
      bwd_.for_each_in_row(e.from, [&](VertexId u) { inner.push_back(u); });
      for (VertexId u2 : inner)
        for (VertexId u : in_open_[slot(u2, k)]) add(u, e.to);
    }
  }

  void run() {
    std::vector<VertexId> scratch;
    while (!work_.empty()) {
      auto [a, b] = work_.back();
      work_.pop_back();
      for (std::uint32_t k = 0; k < pairs_; ++k) {
        const auto& outs = out_close_[slot(b, k)];
        if (outs.empty()) continue;
        for (VertexId u : in_open_[slot(a, k)])
          for (VertexId v : outs) add(u, v);
      }
      if (!concat_) continue;
      scratch.clear();
      fwd_.for_each_in_row(b, [&](VertexId c) { scratch.push_back(c); });
      for (VertexId c : scratch) add(a, c);
      scratch.clear();
      bwd_.for_each_in_row(a, [&](VertexId c) { scratch.push_back(c); });
      for (VertexId c : scratch) add(c, b);
    }
  }

  PairMatrix take() { return std::move(fwd_); }

 private:
  std::size_t slot(VertexId v, std::uint32_t k) const { return std::size_t(v) * pairs_ + k; }

  void add(VertexId u, VertexId v) {
    if (fwd_.set(u, v)) {
      bwd_.set(v, u);
      work_.emplace_back(u, v);
    }
  }

  VertexId n_;
  std::uint32_t pairs_;
  bool concat_;
  PairMatrix fwd_;
  PairMatrix bwd_;
  std::vector<std::vector<VertexId>> in_open_;    // (to, pair) -> sources of open edges
  std::vector<std::vector<VertexId>> out_close_;  // (from, pair) -> targets of close edges
  std::vector<std::pair<VertexId, VertexId>> work_;
};

ReachIndex saturate(const Instance& inst, bool with_concat) {
  require_dyck(inst);
  DyckSaturator sat(inst.graph, with_concat);
  sat.seed_identity();
  sat.run();
  return ReachIndex{sat.take(), fingerprint(inst.graph)};
}

}  // namespace

ReachIndex solve_dyck(const Instance& inst) { return saturate(inst, true); }

ReachIndex solve_dyck_wrap_only(const Instance& inst) { return saturate(inst, false); }

ReachIndex resolve_after_update(const ReachIndex& index, const Instance& before, const UpdateOp& op) {
  require_dyck(before);
  if (index.graph_fingerprint != fingerprint(before.graph))
    throw PreconditionError("reach index does not belong to this instance");
  switch (op.kind) {
    case UpdateOp::Kind::Query: return index;
    case UpdateOp::Kind::Del: return solve_dyck(apply_update(before, op));
    case UpdateOp::Kind::Ins: break;
  }
  Instance after = apply_update(before, op);
  DyckSaturator sat(after.graph, true);
  sat.load(index.pairs);
  const Alphabet& a = after.graph.alphabet();
  sat.seed_edge(op.edge, a);
  if (after.graph.undirected() && op.edge.from != op.edge.to)
    sat.seed_edge(Edge{op.edge.to, op.edge.label, op.edge.from}, a);
  sat.run();
  return ReachIndex{sat.take(), fingerprint(after.graph)};
}

// Grammars -------------------------------------------------------------------

Nonterminal Grammar::add_nonterminal(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<Nonterminal>(names_.size() - 1);
}

void Grammar::add_production(Nonterminal lhs, const std::vector<Symbol>& rhs) {
  if (lhs >= names_.size()) throw PreconditionError("unknown nonterminal on the left-hand side");
  auto nonterminal = [&](const Symbol& s) -> const Nonterminal* {
    const Nonterminal* a = std::get_if<Nonterminal>(&s);
    if (a && *a >= names_.size()) throw PreconditionError("unknown nonterminal on the right-hand side");
    return a;
  };
  Production p;
  p.lhs = lhs;
  if (rhs.empty()) {
    p.shape = Production::Shape::Epsilon;
  } else if (rhs.size() == 1 && std::holds_alternative<Label>(rhs[0])) {
    p.shape = Production::Shape::Terminal;
    p.terminal = std::get<Label>(rhs[0]);
    if (!terminals_.contains(p.terminal)) throw PreconditionError("terminal outside the grammar alphabet");
  } else if (rhs.size() == 2 && nonterminal(rhs[0]) && nonterminal(rhs[1])) {
    p.shape = Production::Shape::Binary;
    p.left = std::get<Nonterminal>(rhs[0]);
    p.right = std::get<Nonterminal>(rhs[1]);
  } else {
    throw PreconditionError("production is not in binary normal form");
  }
  productions_.push_back(p);
}

namespace {

// Shared by the Dyck and near-Dyck grammars: S -> eps | S S | O_k C'_k.
Grammar bracket_grammar(Alphabet alphabet) {
  Grammar g(alphabet);
  const Nonterminal s = g.add_nonterminal("S");
  g.set_start(s);
  g.add_production(s, {});
  g.add_production(s, {s, s});
  for (std::uint32_t k = 0; k < alphabet.pairs(); ++k) {
    const std::string tok = alphabet.token(alphabet.open(k));
    const Nonterminal open = g.add_nonterminal("O_" + tok);
    const Nonterminal close = g.add_nonterminal("C_" + tok);
    const Nonterminal tail = g.add_nonterminal("T_" + tok);
    g.add_production(open, {alphabet.open(k)});
    g.add_production(close, {alphabet.close(k)});
    g.add_production(tail, {s, close});
    g.add_production(s, {open, tail});
  }
  return g;
}

}  // namespace

Grammar Grammar::dyck(std::uint32_t pairs) { return bracket_grammar(Alphabet::dyck(pairs)); }

Grammar Grammar::near_dyck(std::uint32_t vertex_count) {
  Alphabet a = Alphabet::near_dyck(vertex_count);
  Grammar g = bracket_grammar(a);
  g.add_production(g.start(), {a.bullet()});
  return g;
}

std::vector<PairMatrix> solve_cfl(const Instance& inst, const Grammar& g) {
  if (!(inst.graph.alphabet() == g.terminals()))
    throw PreconditionError("grammar terminals do not match the instance alphabet");
  const VertexId n = inst.graph.vertex_count();
  const std::size_t nts = g.nonterminal_count();

  std::vector<PairMatrix> fwd(nts, PairMatrix(n));
  std::vector<PairMatrix> bwd(nts, PairMatrix(n));
  std::vector<std::vector<Nonterminal>> by_terminal(g.terminals().size());
  std::vector<std::vector<std::pair<Nonterminal, Nonterminal>>> by_left(nts);   // B -> (A, C)
  std::vector<std::vector<std::pair<Nonterminal, Nonterminal>>> by_right(nts);  // C -> (A, B)

  struct Item {
    Nonterminal a;
    VertexId u, v;
  };
  std::vector<Item> work;
  auto add = [&](Nonterminal a, VertexId u, VertexId v) {
    if (fwd[a].set(u, v)) {
      bwd[a].set(v, u);
      work.push_back({a, u, v});
    }
  };

  for (const Production& p : g.productions()) {
    switch (p.shape) {
      case Production::Shape::Epsilon:
        for (VertexId x = 0; x < n; ++x) add(p.lhs, x, x);
        break;
      case Production::Shape::Terminal: by_terminal[p.terminal.code].push_back(p.lhs); break;
      case Production::Shape::Binary:
        by_left[p.left].emplace_back(p.lhs, p.right);
        by_right[p.right].emplace_back(p.lhs, p.left);
        break;
    }
  }
  for (const Edge& e : inst.graph.edges())
    for (Nonterminal a : by_terminal[e.label.code]) add(a, e.from, e.to);

  std::vector<VertexId> scratch;
  while (!work.empty()) {
    const Item it = work.back();
    work.pop_back();
    for (auto [a, c] : by_left[it.a]) {
      scratch.clear();
      fwd[c].for_each_in_row(it.v, [&](VertexId v) { scratch.push_back(v); });
      for (VertexId v : scratch) add(a, it.u, v);
    }
    for (auto [a, b] : by_right[it.a]) {
      scratch.clear();
      bwd[b].for_each_in_row(it.u, [&](VertexId x) { scratch.push_back(x); });
      for (VertexId x : scratch) add(a, x, it.v);
    }
  }
  return fwd;
}

}  // namespace dyck
