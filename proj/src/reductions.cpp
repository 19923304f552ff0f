#include "dyck/reductions.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "dyck/error.hpp"

namespace dyck {

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::AltToNearDyck: return "alt_to_neardyck";
    case ReductionKind::NearDyckToDyck2: return "neardyck_to_dyck2";
    case ReductionKind::Dyck2ToUndirected: return "dyck2_to_undirected";
  }
  return "?";
}

std::optional<ReductionKind> parse_reduction_kind(std::string_view name) {
  for (auto k : {ReductionKind::AltToNearDyck, ReductionKind::NearDyckToDyck2, ReductionKind::Dyck2ToUndirected})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

TranslationBound translation_bound(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::AltToNearDyck: return {1, 2};
    case ReductionKind::NearDyckToDyck2: return {1, 1};
    case ReductionKind::Dyck2ToUndirected: return {kChainLength, kChainLength};
  }
  return {};
}

namespace {

// dyck(2) letters; the same codes serve as a/abar/b/bbar and 0/0bar/1/1bar.
constexpr Label kA{0}, kABar{1}, kB{2}, kBBar{3};

Word make_word(std::initializer_list<Label> letters) { return Word(letters); }

}  // namespace

const Word& undirected_encoding(Label lambda) {
  constexpr Label z = kA, zb = kABar, o = kB, ob = kBBar;
  static const std::array<Word, 4> table{
      make_word({z, zb, o, o, z, z, o, o, o, o, ob, z}),         // l1
      make_word({zb, o, ob, ob, ob, ob, zb, zb, ob, ob, z, zb}),  // l1bar
      make_word({z, zb, o, z, z, o, o, z, z, o, ob, z}),          // l2
      make_word({zb, o, ob, zb, zb, ob, ob, zb, zb, ob, z, zb}),  // l2bar
  };
  if (lambda.code >= table.size()) throw PreconditionError("undirected encoding is defined on dyck 2 labels");
  return table[lambda.code];
}

// Layouts -----------------------------------------------------------------------

VertexId CompiledReduction::and_chain(VertexId x, std::uint32_t i) const {
  if (kind_ != ReductionKind::AltToNearDyck || gates_.at(x) != Gate::And || i > source_vertices_)
    throw PreconditionError("no such and-chain vertex");
  return source_vertices_ + and_rank_[x] * (source_vertices_ + 1) + i;
}

VertexId CompiledReduction::bullet_vertex(VertexId x) const {
  if (kind_ != ReductionKind::NearDyckToDyck2 || x >= source_vertices_)
    throw PreconditionError("no such bullet vertex");
  return source_vertices_ + x;
}

VertexId CompiledReduction::bracket_chain(VertexId x, Label lambda, std::uint32_t i) const {
  const std::uint32_t n = label_pairs_;
  if (kind_ != ReductionKind::NearDyckToDyck2 || x >= source_vertices_ || lambda.code >= 2 * n || i > n)
    throw PreconditionError("no such bracket-chain vertex");
  return 2 * source_vertices_ + (x * 2 * n + lambda.code) * (n + 1) + i;
}

VertexId CompiledReduction::chain_vertex(const ChainVertex& c) const {
  const VertexId n = source_vertices_;
  if (kind_ != ReductionKind::Dyck2ToUndirected || c.x >= n || c.y >= n || c.lambda.code >= 4 || c.index < 1 ||
      c.index > kChainInterior)
    throw PreconditionError("no such chain vertex");
  return n + ((c.x * 4 + c.lambda.code) * n + c.y) * kChainInterior + (c.index - 1);
}

std::optional<ChainVertex> CompiledReduction::chain_of(VertexId id) const {
  if (kind_ != ReductionKind::Dyck2ToUndirected) throw PreconditionError("not an undirected gadget");
  const VertexId n = source_vertices_;
  if (id < n) return std::nullopt;
  VertexId rest = id - n;
  ChainVertex c;
  c.index = rest % kChainInterior + 1;
  rest /= kChainInterior;
  c.y = rest % n;
  rest /= n;
  c.lambda = Label{rest % 4};
  c.x = rest / 4;
  if (c.x >= n) throw PreconditionError("vertex id out of range");
  return c;
}

std::string CompiledReduction::map_text() const {
  std::string out;
  for (VertexId v = 0; v < names_.size(); ++v) out += names_[v] + " " + std::to_string(v) + "\n";
  return out;
}

// Encoding -----------------------------------------------------------------------

std::vector<Edge> CompiledReduction::encode_edge(const Edge& e) const {
  switch (kind_) {
    case ReductionKind::AltToNearDyck: {
      // Source edge y -> x.
      const VertexId y = e.from, x = e.to;
      const Alphabet& a = target_.graph.alphabet();
      if (gates_[y] == Gate::Or) return {Edge{x, a.bullet(), y}};
      return {Edge{and_chain(y, x), a.close(x), and_chain(y, x + 1)}};
    }
    case ReductionKind::NearDyckToDyck2: {
      const Alphabet src = Alphabet::near_dyck(label_pairs_);
      if (src.is_bullet(e.label)) return {Edge{bullet_vertex(e.from), kABar, e.to}};
      if (src.is_open(e.label)) return {Edge{bracket_chain(e.from, e.label, label_pairs_), kA, e.to}};
      return {Edge{bracket_chain(e.from, e.label, 0), kABar, e.to}};
    }
    case ReductionKind::Dyck2ToUndirected: {
      const Word& phi = undirected_encoding(e.label);
      std::vector<Edge> out;
      out.reserve(kChainLength);
      VertexId prev = e.from;
      for (std::uint32_t i = 1; i <= kChainInterior; ++i) {
        const VertexId next = chain_vertex(ChainVertex{e.from, e.label, e.to, i});
        out.push_back(Edge{prev, phi[i - 1], next});
        prev = next;
      }
      out.push_back(Edge{prev, phi[kChainLength - 1], e.to});
      return out;
    }
  }
  return {};
}

std::vector<UpdateOp> CompiledReduction::translate(const UpdateOp& op) const {
  if (op.kind == UpdateOp::Kind::Query) return {UpdateOp::query()};
  const bool ins = op.kind == UpdateOp::Kind::Ins;
  std::vector<UpdateOp> out;

  if (kind_ == ReductionKind::AltToNearDyck && gates_.at(op.edge.from) == Gate::And) {
    // The mid-edge of the and-chain swaps between a bullet and vbar_x.
    const VertexId y = op.edge.from, x = op.edge.to;
    const Edge bullet{and_chain(y, x), target_.graph.alphabet().bullet(), and_chain(y, x + 1)};
    const Edge barred = encode_edge(op.edge).front();
    if (ins)
      out = {UpdateOp::del(bullet), UpdateOp::ins(barred)};
    else
      out = {UpdateOp::del(barred), UpdateOp::ins(bullet)};
    return out;
  }

  auto edges = encode_edge(op.edge);
  if (!ins) std::reverse(edges.begin(), edges.end());
  for (const Edge& e : edges) out.push_back(ins ? UpdateOp::ins(e) : UpdateOp::del(e));
  return out;
}

std::vector<UpdateOp> translate_updates(const CompiledReduction& red, std::span<const UpdateOp> script) {
  std::vector<UpdateOp> out;
  for (const UpdateOp& op : script) {
    auto part = red.translate(op);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Compilers ------------------------------------------------------------------------

CompiledReduction compile_alt_to_neardyck(const Instance& inst) {
  if (!inst.partition) throw PreconditionError("alt_to_neardyck needs a partition");
  if (inst.graph.undirected()) throw PreconditionError("alt_to_neardyck needs a directed graph");
  const Alphabet& sa = inst.graph.alphabet();
  if (sa.kind() != AlphabetKind::Dyck || sa.pairs() != 1)
    throw PreconditionError("alternating instances use the dyck 1 alphabet with l1 edges");
  for (const Edge& e : inst.graph.stored_edges())
    if (e.label != sa.open(0)) throw PreconditionError("alternating instances use l1 edges only");

  const VertexId n = inst.graph.vertex_count();
  const std::vector<Gate>& gates = *inst.partition;
  std::vector<std::uint32_t> rank(n, 0);
  std::uint32_t ands = 0;
  for (VertexId v = 0; v < n; ++v)
    if (gates[v] == Gate::And) rank[v] = ands++;

  const Alphabet a = Alphabet::near_dyck(n);
  const VertexId t = inst.sink;
  CompiledReduction red(ReductionKind::AltToNearDyck,
                        Instance{LabeledGraph(GraphMode::Directed, a, n + ands * (n + 1)), t, inst.source, std::nullopt});
  red.source_vertices_ = n;
  red.label_pairs_ = n;
  red.gates_ = gates;
  red.and_rank_ = rank;

  red.names_.resize(red.target_.graph.vertex_count());
  for (VertexId v = 0; v < n; ++v) red.names_[v] = std::to_string(v);

  LabeledGraph& g = red.target_.graph;
  for (VertexId x = 0; x < n; ++x) g.insert(Edge{x, a.open(x), t});
  for (VertexId x = 0; x < n; ++x) {
    if (gates[x] != Gate::And) continue;
    for (std::uint32_t i = 0; i <= n; ++i)
      red.names_[red.and_chain(x, i)] = "(" + std::to_string(x) + "," + std::to_string(i) + ")";
    g.insert(Edge{t, a.bullet(), red.and_chain(x, 0)});
    g.insert(Edge{red.and_chain(x, n), a.bullet(), x});
    for (VertexId y = 0; y < n; ++y)
      if (!inst.graph.has_edge(Edge{x, sa.open(0), y}))
        g.insert(Edge{red.and_chain(x, y), a.bullet(), red.and_chain(x, y + 1)});
  }
  for (const Edge& e : inst.graph.stored_edges())
    for (const Edge& te : red.encode_edge(e)) g.insert(te);
  return red;
}

CompiledReduction compile_neardyck_to_dyck2(const Instance& inst) {
  if (inst.graph.undirected()) throw PreconditionError("neardyck_to_dyck2 needs a directed graph");
  const Alphabet& sa = inst.graph.alphabet();
  if (sa.kind() != AlphabetKind::NearDyck) throw PreconditionError("neardyck_to_dyck2 needs a neardyck alphabet");

  const VertexId nv = inst.graph.vertex_count();
  const std::uint32_t n = sa.pairs();
  const Alphabet a = Alphabet::dyck(2);
  CompiledReduction red(
      ReductionKind::NearDyckToDyck2,
      Instance{LabeledGraph(GraphMode::Directed, a, 2 * nv + nv * 2 * n * (n + 1)), inst.source, inst.sink,
               std::nullopt});
  red.source_vertices_ = nv;
  red.label_pairs_ = n;

  red.names_.resize(red.target_.graph.vertex_count());
  LabeledGraph& g = red.target_.graph;
  for (VertexId x = 0; x < nv; ++x) {
    const std::string xs = std::to_string(x);
    red.names_[x] = xs;
    red.names_[red.bullet_vertex(x)] = "(" + xs + ",dot)";
    g.insert(Edge{x, kA, red.bullet_vertex(x)});
    for (std::uint32_t v = 0; v < n; ++v) {
      const Label open = sa.open(v), close = sa.close(v);
      for (std::uint32_t i = 0; i <= n; ++i) {
        red.names_[red.bracket_chain(x, open, i)] = "(" + xs + "," + sa.token(open) + "," + std::to_string(i) + ")";
        red.names_[red.bracket_chain(x, close, i)] = "(" + xs + "," + sa.token(close) + "," + std::to_string(i) + ")";
      }
      g.insert(Edge{x, kA, red.bracket_chain(x, open, 0)});
      g.insert(Edge{x, kABar, red.bracket_chain(x, close, n)});
      for (std::uint32_t i = 0; i < n; ++i) {
        const bool marked = v == i;  // letter v_{i+1}
        g.insert(Edge{red.bracket_chain(x, open, i), marked ? kB : kA, red.bracket_chain(x, open, i + 1)});
        g.insert(Edge{red.bracket_chain(x, close, i + 1), marked ? kBBar : kABar, red.bracket_chain(x, close, i)});
      }
    }
  }
  for (const Edge& e : inst.graph.stored_edges())
    for (const Edge& te : red.encode_edge(e)) g.insert(te);
  return red;
}

CompiledReduction compile_dyck2_to_undirected(const Instance& inst) {
  if (inst.graph.undirected()) throw PreconditionError("dyck2_to_undirected needs a directed graph");
  const Alphabet& sa = inst.graph.alphabet();
  if (sa.kind() != AlphabetKind::Dyck || sa.pairs() != 2)
    throw PreconditionError("dyck2_to_undirected needs the dyck 2 alphabet");

  const VertexId n = inst.graph.vertex_count();
  CompiledReduction red(ReductionKind::Dyck2ToUndirected,
                        Instance{LabeledGraph(GraphMode::Undirected, Alphabet::dyck(2), n + 4 * kChainInterior * n * n),
                                 inst.source, inst.sink, std::nullopt});
  red.source_vertices_ = n;
  red.names_.resize(red.target_.graph.vertex_count());
  for (VertexId x = 0; x < n; ++x) red.names_[x] = std::to_string(x);
  for (VertexId x = 0; x < n; ++x)
    for (std::uint32_t c = 0; c < 4; ++c)
      for (VertexId y = 0; y < n; ++y)
        for (std::uint32_t i = 1; i <= kChainInterior; ++i)
          red.names_[red.chain_vertex(ChainVertex{x, Label{c}, y, i})] = "(" + std::to_string(x) + "," +
                                                                         sa.token(Label{c}) + "," + std::to_string(y) +
                                                                         "," + std::to_string(i) + ")";
  for (const Edge& e : inst.graph.stored_edges())
    for (const Edge& te : red.encode_edge(e)) red.target_.graph.insert(te);
  return red;
}

CompiledReduction compile(ReductionKind kind, const Instance& inst) {
  switch (kind) {
    case ReductionKind::AltToNearDyck: return compile_alt_to_neardyck(inst);
    case ReductionKind::NearDyckToDyck2: return compile_neardyck_to_dyck2(inst);
    case ReductionKind::Dyck2ToUndirected: return compile_dyck2_to_undirected(inst);
  }
  throw PreconditionError("unknown reduction kind");
}

}  // namespace dyck
