#include "dyck/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "dyck/error.hpp"

namespace dyck {

Alphabet Alphabet::dyck(std::uint32_t pairs) {
  if (pairs == 0) throw PreconditionError("dyck alphabet needs at least one pair");
  return Alphabet(AlphabetKind::Dyck, pairs);
}

Alphabet Alphabet::near_dyck(std::uint32_t vertex_count) {
  if (vertex_count == 0) throw PreconditionError("near-Dyck alphabet needs at least one vertex");
  return Alphabet(AlphabetKind::NearDyck, vertex_count);
}

Label Alphabet::open(std::uint32_t pair) const {
  if (pair >= pairs_) throw PreconditionError("pair index out of range");
  return Label{2 * pair};
}

Label Alphabet::close(std::uint32_t pair) const {
  if (pair >= pairs_) throw PreconditionError("pair index out of range");
  return Label{2 * pair + 1};
}

Label Alphabet::bullet() const {
  if (!has_bullet()) throw PreconditionError("alphabet has no bullet");
  return Label{2 * pairs_};
}

Label Alphabet::bar(Label l) const {
  if (!contains(l) || is_bullet(l)) throw PreconditionError("label has no matching bar");
  return Label{l.code ^ 1u};
}

std::string Alphabet::token(Label l) const {
  if (!contains(l)) return "?" + std::to_string(l.code);
  if (is_bullet(l)) return "dot";
  const std::string suffix = is_close(l) ? "bar" : "";
  if (kind_ == AlphabetKind::Dyck) return "l" + std::to_string(pair_of(l) + 1) + suffix;
  return "v" + std::to_string(pair_of(l)) + suffix;
}

namespace {

std::optional<std::uint32_t> parse_uint(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Label> Alphabet::parse_token(std::string_view token) const {
  if (has_bullet() && token == "dot") return bullet();
  const char prefix = kind_ == AlphabetKind::Dyck ? 'l' : 'v';
  if (token.size() < 2 || token.front() != prefix) return std::nullopt;
  token.remove_prefix(1);
  bool closing = false;
  if (token.ends_with("bar")) {
    closing = true;
    token.remove_suffix(3);
  }
  auto index = parse_uint(token);
  if (!index) return std::nullopt;
  std::uint32_t pair = *index;
  if (kind_ == AlphabetKind::Dyck) {
    if (pair == 0) return std::nullopt;
    --pair;
  }
  if (pair >= pairs_) return std::nullopt;
  return Label{2 * pair + (closing ? 1u : 0u)};
}

LabeledGraph::LabeledGraph(GraphMode mode, Alphabet alphabet, VertexId vertex_count)
    : mode_(mode), alphabet_(alphabet), vertex_count_(vertex_count) {}

void LabeledGraph::validate(const Edge& e) const {
  if (e.from >= vertex_count_ || e.to >= vertex_count_)
    throw PreconditionError("edge endpoint out of range");
  if (!alphabet_.contains(e.label)) throw PreconditionError("edge label outside the alphabet");
}

Edge LabeledGraph::canonical(const Edge& e) const {
  if (mode_ == GraphMode::Undirected && e.to < e.from) return Edge{e.to, e.label, e.from};
  return e;
}

bool LabeledGraph::has_edge(const Edge& e) const { return edges_.contains(canonical(e)); }

void LabeledGraph::insert(const Edge& e) {
  validate(e);
  if (!edges_.insert(canonical(e)).second)
    throw UpdateError("duplicate edge " + std::to_string(e.from) + " " + alphabet_.token(e.label) +
                      " " + std::to_string(e.to));
}

void LabeledGraph::erase(const Edge& e) {
  validate(e);
  if (edges_.erase(canonical(e)) == 0)
    throw UpdateError("missing edge " + std::to_string(e.from) + " " + alphabet_.token(e.label) +
                      " " + std::to_string(e.to));
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size() * (undirected() ? 2 : 1));
  for (const Edge& e : edges_) {
    out.push_back(e);
    if (undirected() && e.from != e.to) out.push_back(Edge{e.to, e.label, e.from});
  }
  return out;
}

UpdateOp UpdateOp::inverse() const {
  switch (kind) {
    case Kind::Ins: return del(edge);
    case Kind::Del: return ins(edge);
    case Kind::Query: return query();
  }
  return query();
}

void apply_in_place(Instance& inst, const UpdateOp& op) {
  switch (op.kind) {
    case UpdateOp::Kind::Ins: inst.graph.insert(op.edge); break;
    case UpdateOp::Kind::Del: inst.graph.erase(op.edge); break;
    case UpdateOp::Kind::Query: break;
  }
}

Instance apply_update(Instance inst, const UpdateOp& op) {
  apply_in_place(inst, op);
  return inst;
}

std::uint64_t fingerprint(const LabeledGraph& g) {
  // FNV-1a over the graph's defining integers.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(g.undirected() ? 1 : 0);
  mix(g.alphabet().kind() == AlphabetKind::Dyck ? 0 : 1);
  mix(g.alphabet().pairs());
  mix(g.vertex_count());
  for (const Edge& e : g.stored_edges()) {
    mix(e.from);
    mix(e.label.code);
    mix(e.to);
  }
  return h;
}

Word Walk::label() const {
  Word out;
  out.reserve(steps.size());
  for (const Step& s : steps) out.push_back(s.label);
  return out;
}

bool is_walk(const LabeledGraph& g, const Walk& w) {
  if (w.start >= g.vertex_count()) return false;
  VertexId at = w.start;
  for (const Step& s : w.steps) {
    if (s.to >= g.vertex_count() || !g.alphabet().contains(s.label)) return false;
    if (!g.has_edge(Edge{at, s.label, s.to})) return false;
    at = s.to;
  }
  return true;
}

// Text formats ---------------------------------------------------------------

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

VertexId parse_vertex(std::string_view tok, VertexId count, std::size_t line) {
  auto v = parse_uint(tok);
  if (!v) throw ParseError(line, "expected a vertex id, got '" + std::string(tok) + "'");
  if (*v >= count)
    throw ParseError(line, "vertex " + std::string(tok) + " out of range (vertices " +
                               std::to_string(count) + ")");
  return *v;
}

Label parse_label(std::string_view tok, const Alphabet& alphabet, std::size_t line) {
  auto l = alphabet.parse_token(tok);
  if (!l) throw ParseError(line, "unknown label token '" + std::string(tok) + "'");
  return *l;
}

}  // namespace

Instance parse_graph(std::istream& in) {
  std::optional<GraphMode> mode;
  std::optional<VertexId> count;
  std::optional<Alphabet> alphabet;
  std::optional<LabeledGraph> graph;
  std::optional<std::pair<VertexId, VertexId>> mark;
  std::optional<std::vector<Gate>> partition;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    const std::string_view key = words[0];

    if (!mode) {
      if (key != "graph" || words.size() != 2)
        throw ParseError(lineno, "expected 'graph directed' or 'graph undirected'");
      if (words[1] == "directed")
        mode = GraphMode::Directed;
      else if (words[1] == "undirected")
        mode = GraphMode::Undirected;
      else
        throw ParseError(lineno, "unknown graph mode '" + std::string(words[1]) + "'");
      continue;
    }
    if (!count) {
      if (key != "vertices" || words.size() != 2) throw ParseError(lineno, "expected 'vertices <N>'");
      auto n = parse_uint(words[1]);
      if (!n) throw ParseError(lineno, "bad vertex count");
      count = *n;
      continue;
    }
    if (!alphabet) {
      if (key != "alphabet" || words.size() != 3)
        throw ParseError(lineno, "expected 'alphabet dyck <n>' or 'alphabet neardyck <N>'");
      auto n = parse_uint(words[2]);
      if (!n || *n == 0) throw ParseError(lineno, "bad alphabet size");
      if (words[1] == "dyck")
        alphabet = Alphabet::dyck(*n);
      else if (words[1] == "neardyck")
        alphabet = Alphabet::near_dyck(*n);
      else
        throw ParseError(lineno, "unknown alphabet kind '" + std::string(words[1]) + "'");
      graph.emplace(*mode, *alphabet, *count);
      continue;
    }

    if (key == "edge") {
      if (words.size() != 4) throw ParseError(lineno, "expected 'edge <u> <label> <v>'");
      Edge e{parse_vertex(words[1], *count, lineno), parse_label(words[2], *alphabet, lineno),
             parse_vertex(words[3], *count, lineno)};
      if (graph->has_edge(e)) throw ParseError(lineno, "duplicate edge");
      graph->insert(e);
    } else if (key == "mark") {
      if (mark) throw ParseError(lineno, "duplicate mark line");
      if (words.size() != 3) throw ParseError(lineno, "expected 'mark <s> <t>'");
      mark = {parse_vertex(words[1], *count, lineno), parse_vertex(words[2], *count, lineno)};
    } else if (key == "partition") {
      if (partition) throw ParseError(lineno, "duplicate partition line");
      if (words.size() < 2 || words[1] != "and")
        throw ParseError(lineno, "expected 'partition and <u1> <u2> ...'");
      std::vector<Gate> gates(*count, Gate::Or);
      for (std::size_t i = 2; i < words.size(); ++i) {
        VertexId v = parse_vertex(words[i], *count, lineno);
        if (gates[v] == Gate::And) throw ParseError(lineno, "vertex listed twice in partition");
        gates[v] = Gate::And;
      }
      partition = std::move(gates);
    } else {
      throw ParseError(lineno, "unknown directive '" + std::string(key) + "'");
    }
  }
  if (!alphabet) throw ParseError(lineno, "incomplete header");
  if (!mark) throw ParseError(lineno, "missing 'mark <s> <t>' line");
  return Instance{std::move(*graph), mark->first, mark->second, std::move(partition)};
}

Instance parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

Instance read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

std::string serialize(const Instance& inst) {
  const LabeledGraph& g = inst.graph;
  const Alphabet& a = g.alphabet();
  std::ostringstream out;
  out << "graph " << (g.undirected() ? "undirected" : "directed") << '\n';
  out << "vertices " << g.vertex_count() << '\n';
  out << "alphabet " << (a.kind() == AlphabetKind::Dyck ? "dyck " : "neardyck ") << a.pairs() << '\n';
  for (const Edge& e : g.stored_edges())
    out << "edge " << e.from << ' ' << a.token(e.label) << ' ' << e.to << '\n';
  out << "mark " << inst.source << ' ' << inst.sink << '\n';
  if (inst.partition) {
    out << "partition and";
    for (VertexId v = 0; v < inst.partition->size(); ++v)
      if ((*inst.partition)[v] == Gate::And) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

std::vector<UpdateOp> parse_script(std::istream& in, const Alphabet& alphabet, std::vector<std::size_t>* lines) {
  std::vector<UpdateOp> ops;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto words = split_words(strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] == "query") {
      if (words.size() != 1) throw ParseError(lineno, "'query' takes no arguments");
      ops.push_back(UpdateOp::query());
      if (lines) lines->push_back(lineno);
      continue;
    }
    if ((words[0] != "ins" && words[0] != "del") || words.size() != 4)
      throw ParseError(lineno, "expected 'ins|del <u> <label> <v>' or 'query'");
    auto u = parse_uint(words[1]);
    auto v = parse_uint(words[3]);
    if (!u || !v) throw ParseError(lineno, "expected vertex ids");
    Edge e{*u, parse_label(words[2], alphabet, lineno), *v};
    ops.push_back(words[0] == "ins" ? UpdateOp::ins(e) : UpdateOp::del(e));
    if (lines) lines->push_back(lineno);
  }
  return ops;
}

std::vector<UpdateOp> parse_script(std::string_view text, const Alphabet& alphabet, std::vector<std::size_t>* lines) {
  std::istringstream in{std::string(text)};
  return parse_script(in, alphabet, lines);
}

std::string format_op(const UpdateOp& op, const Alphabet& alphabet) {
  if (op.kind == UpdateOp::Kind::Query) return "query";
  return std::string(op.kind == UpdateOp::Kind::Ins ? "ins " : "del ") + std::to_string(op.edge.from) +
         ' ' + alphabet.token(op.edge.label) + ' ' + std::to_string(op.edge.to);
}

std::string serialize_script(std::span<const UpdateOp> ops, const Alphabet& alphabet) {
  std::string out;
  for (const UpdateOp& op : ops) {
    out += format_op(op, alphabet);
    out += '\n';
  }
  return out;
}

std::string format_word(std::span<const Label> w, const Alphabet& alphabet) {
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.token(w[i]);
  }
  return out;
}

}  // namespace dyck
