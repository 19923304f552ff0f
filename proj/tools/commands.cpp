#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "dyck/alternating.hpp"
#include "dyck/cfl_reach.hpp"
#include "dyck/error.hpp"
#include "dyck/generators.hpp"
#include "dyck/graph.hpp"
#include "dyck/one_letter.hpp"
#include "dyck/oracle.hpp"
#include "dyck/reductions.hpp"
#include "dyck/suites.hpp"
#include "dyck/word_lab.hpp"

namespace dyckctl {
namespace {

using namespace dyck;

constexpr const char* kFormats = R"(
Graph files (one directive per line, '#' starts a comment):
  graph directed|undirected
  vertices <N>                      vertices are 0..N-1
  alphabet dyck <n>                 labels l1..ln, l1bar..lnbar
  alphabet neardyck <N>             labels v0..v{N-1}, v0bar.., and dot
  edge <u> <label> <v>              repeated; no duplicates
  mark <s> <t>                      the queried pair
  partition and <u1> <u2> ...       optional; unlisted vertices are Or

Update scripts (one op per line):
  ins <u> <label> <v>   del <u> <label> <v>   query
Inserting a present edge or deleting an absent one is an error.

Words are space-separated tokens: 0 0bar 1 1bar (also a b l1 l2 ...),
with --pairs n for l1..ln, or --vertices N for v0.. and dot; eps is empty.

Exit status: 0 when every verdict passes, 1 on a failing verdict,
2 on a usage or input error.)";

// Output ---------------------------------------------------------------------------

/// Stable two-column records, or key=value lines in machine mode.
class Printer {
 public:
  Printer(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  template <typename T>
  void field(const std::string& key, const T& value) {
    if (machine_) {
      out_ << key << '=' << value << '\n';
    } else {
      std::string k = key;
      k.resize(std::max<std::size_t>(k.size() + 1, 18), ' ');
      out_ << k << value << '\n';
    }
  }
  void line(const std::string& text) {
    if (!machine_) out_ << text << '\n';
  }
  bool machine() const noexcept { return machine_; }
  std::ostream& stream() { return out_; }

 private:
  std::ostream& out_;
  bool machine_;
};

const char* tf(bool b) { return b ? "true" : "false"; }

std::string format_walk(const Walk& w, const Alphabet& a, const std::vector<std::string>* names = nullptr) {
  auto name = [&](VertexId v) { return names ? (*names)[v] : std::to_string(v); };
  std::string s = name(w.start);
  for (const Step& st : w.steps) s += " -" + a.token(st.label) + "-> " + name(st.to);
  return s;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += ' ';
    s += t;
  }
  return s;
}

std::vector<UpdateOp> read_script_file(const std::string& path, const Alphabet& a, std::vector<std::size_t>* lines) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open script file '" + path + "'");
  return parse_script(in, a, lines);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

// Engines ---------------------------------------------------------------------------

enum class Engine { Auto, Dyck, WrapOnly, Cfl, Prop1, Alternating };

const std::map<std::string, Engine>& engine_names() {
  static const std::map<std::string, Engine> m{{"auto", Engine::Auto},   {"dyck", Engine::Dyck},
                                               {"wrap-only", Engine::WrapOnly}, {"cfl", Engine::Cfl},
                                               {"prop1", Engine::Prop1}, {"alternating", Engine::Alternating}};
  return m;
}

std::string engine_name(Engine e) {
  for (const auto& [k, v] : engine_names())
    if (v == e) return k;
  return "?";
}

Engine resolve_engine(Engine e, const Instance& inst) {
  if (e != Engine::Auto) return e;
  if (inst.partition) return Engine::Alternating;
  if (inst.graph.alphabet().kind() == AlphabetKind::NearDyck) return Engine::Cfl;
  return Engine::Dyck;
}

Grammar grammar_for(const Alphabet& a) {
  return a.kind() == AlphabetKind::Dyck ? Grammar::dyck(a.pairs()) : Grammar::near_dyck(a.pairs());
}

void check_engine(Engine e, const Instance& inst) {
  switch (e) {
    case Engine::Dyck:
    case Engine::WrapOnly:
      if (inst.graph.alphabet().kind() != AlphabetKind::Dyck)
        throw PreconditionError("engine " + engine_name(e) + " needs a dyck alphabet");
      break;
    case Engine::Prop1: require_undirected_one_letter(inst); break;
    case Engine::Alternating:
      if (!inst.partition) throw PreconditionError("engine alternating needs a 'partition' line");
      break;
    default: break;
  }
}

/// Answers queries on an instance kept in sync with an update script; the
/// dyck and prop1 engines maintain their index across updates.
class Session {
 public:
  Session(Engine e, Instance inst) : engine_(resolve_engine(e, inst)), inst_(std::move(inst)) {
    check_engine(engine_, inst_);
    if (engine_ == Engine::Dyck) index_ = solve_dyck(inst_);
    if (engine_ == Engine::Prop1) parity_ = ParityIndex::from_graph(inst_.graph);
  }

  Engine engine() const noexcept { return engine_; }
  const Instance& instance() const noexcept { return inst_; }

  void apply(const UpdateOp& op) {
    if (op.kind == UpdateOp::Kind::Query) return;
    Instance next = apply_update(inst_, op);
    if (index_) index_ = resolve_after_update(*index_, inst_, op);
    if (parity_) {
      if (op.kind == UpdateOp::Kind::Ins)
        parity_->insert(op.edge.from, op.edge.to);
      else
        parity_->erase(op.edge.from, op.edge.to);
    }
    inst_ = std::move(next);
  }

  bool query() const {
    switch (engine_) {
      case Engine::Dyck: return answer(*index_, inst_);
      case Engine::WrapOnly: return answer(solve_dyck_wrap_only(inst_), inst_);
      case Engine::Cfl: {
        const Grammar g = grammar_for(inst_.graph.alphabet());
        return solve_cfl(inst_, g)[g.start()].test(inst_.source, inst_.sink);
      }
      case Engine::Prop1: return prop1_conditions(inst_, *parity_);
      case Engine::Alternating: return solve_alternating(inst_).source_in_fixpoint;
      case Engine::Auto: break;
    }
    return false;
  }

  /// Pairs of the engine's relation, for --trace.
  std::vector<std::pair<VertexId, VertexId>> pairs() const {
    switch (engine_) {
      case Engine::Dyck: return index_->pairs.pairs();
      case Engine::WrapOnly: return solve_dyck_wrap_only(inst_).pairs.pairs();
      case Engine::Cfl: {
        const Grammar g = grammar_for(inst_.graph.alphabet());
        return solve_cfl(inst_, g)[g.start()].pairs();
      }
      default: return {};
    }
  }

 private:
  Engine engine_;
  Instance inst_;
  std::optional<ReachIndex> index_;
  std::optional<ParityIndex> parity_;
};

// Commands --------------------------------------------------------------------------

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  bool machine = false;
};

int cmd_solve(const Globals& g, const std::string& path, Engine engine, bool trace, std::ostream& out) {
  Session s(engine, read_graph_file(path));
  Printer p(out, g.machine);
  const bool ans = s.query();
  if (g.machine) {
    p.field("engine", engine_name(s.engine()));
    p.field("answer", tf(ans));
  } else {
    out << tf(ans) << '\n';
  }
  if (!trace) return 0;
  const Instance& inst = s.instance();
  if (s.engine() == Engine::Alternating) {
    out << format_trace(solve_alternating(inst).trace, inst);
  } else if (s.engine() == Engine::Prop1) {
    const ParityIndex par = ParityIndex::from_graph(inst.graph);
    p.field("even_walk", tf(par.even_walk(inst.source, inst.sink)));
  } else {
    const auto pairs = s.pairs();
    p.field("pairs", pairs.size());
    for (const auto& [u, v] : pairs) p.field("pair", std::to_string(u) + " " + std::to_string(v));
  }
  return 0;
}

int cmd_replay(const Globals& g, const std::string& graph, const std::string& script, Engine engine,
               std::ostream& out) {
  Session s(engine, read_graph_file(graph));
  std::vector<std::size_t> lines;
  const auto ops = read_script_file(script, s.instance().graph.alphabet(), &lines);
  Printer p(out, g.machine);
  if (g.machine) p.field("engine", engine_name(s.engine()));
  std::size_t queries = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].kind == UpdateOp::Kind::Query) {
      ++queries;
      if (g.machine)
        p.field("query." + std::to_string(queries), tf(s.query()));
      else
        out << tf(s.query()) << '\n';
      continue;
    }
    try {
      s.apply(ops[i]);
    } catch (const Error& e) {
      throw UpdateError("script line " + std::to_string(lines[i]) + ": " + e.what());
    }
  }
  if (g.machine) p.field("queries", queries);
  return 0;
}

int cmd_reduce(const Globals& g, const std::string& kind_name, const std::string& path, const std::string& out_path,
               const std::string& map_path, std::ostream& out, std::ostream& err) {
  const auto kind = parse_reduction_kind(kind_name);
  if (!kind) throw PreconditionError("unknown reduction kind '" + kind_name + "'");
  const Instance src = read_graph_file(path);
  const CompiledReduction red = compile(*kind, src);
  const Instance& t = red.target();
  if (!map_path.empty()) write_file(map_path, red.map_text());
  if (*kind == ReductionKind::AltToNearDyck) {
    // The near-Dyck question runs from t to s: make that hard to miss.
    std::ostream& note = out_path.empty() ? err : out;
    note << "NOTE: marks reversed: target source = t (" << src.sink << "), target sink = s (" << src.source
         << ")\n";
  }
  if (out_path.empty()) {
    out << serialize(t);
    return 0;
  }
  write_file(out_path, serialize(t));
  Printer p(out, g.machine);
  p.field("kind", to_string(*kind));
  p.field("target_vertices", t.graph.vertex_count());
  p.field("target_edges", t.graph.edge_count());
  p.field("target_marks", std::to_string(t.source) + " " + std::to_string(t.sink));
  return 0;
}

void print_equivalence(Printer& p, const EquivalenceReport& rep) {
  for (std::size_t i = 0; i < rep.answers.size(); ++i)
    p.field("query." + std::to_string(i + 1),
            std::string("source=") + tf(rep.answers[i].first) + " target=" + tf(rep.answers[i].second));
  std::string counts;
  for (std::size_t c : rep.translated_counts) counts += (counts.empty() ? "" : " ") + std::to_string(c);
  p.field("translated", counts.empty() ? "-" : counts);
  p.field("mismatches", rep.mismatches);
  p.field("bound_violations", rep.bound_violations);
  p.field("drift", rep.drift);
  if (!rep.first_failure.empty()) p.field("first_failure", rep.first_failure);
}

int cmd_verify(const Globals& g, const std::string& kind_name, const std::string& graph, const std::string& script,
               std::size_t fuzz, std::size_t ops, VertexId max_vertices, std::ostream& out) {
  const auto kind = parse_reduction_kind(kind_name);
  if (!kind) throw PreconditionError("unknown reduction kind '" + kind_name + "'");
  Printer p(out, g.machine);
  p.field("kind", to_string(*kind));
  if (fuzz == 0) {
    if (graph.empty() || script.empty()) throw PreconditionError("verify-equiv needs <graph> <script> or --fuzz");
    const Instance src = read_graph_file(graph);
    std::vector<std::size_t> lines;
    const auto sc = read_script_file(script, src.graph.alphabet(), &lines);
    Instance dry = src;
    for (std::size_t i = 0; i < sc.size(); ++i) {
      try {
        apply_in_place(dry, sc[i]);
      } catch (const Error& e) {
        throw UpdateError("script line " + std::to_string(lines[i]) + ": " + e.what());
      }
    }
    const EquivalenceReport rep = verify_equivalence(*kind, src, sc);
    print_equivalence(p, rep);
    p.field("verdict", rep.passed() ? "pass" : "fail");
    return rep.passed() ? 0 : 1;
  }
  Rng rng(g.seed);
  std::size_t queries = 0, updates = 0, failed = 0;
  std::string first;
  for (std::size_t i = 0; i < fuzz; ++i) {
    const Instance src = random_source(rng, *kind, max_vertices);
    const auto sc = random_script(rng, src, ops);
    const EquivalenceReport rep = verify_equivalence(*kind, src, sc);
    queries += rep.answers.size();
    updates += rep.translated_counts.size();
    if (!rep.passed()) {
      ++failed;
      if (first.empty()) first = "run " + std::to_string(i + 1) + ", " + rep.first_failure;
    }
  }
  p.field("seed", g.seed);
  p.field("runs", fuzz);
  p.field("queries", queries);
  p.field("updates", updates);
  p.field("failed_runs", failed);
  if (!first.empty()) p.field("first_failure", first);
  p.field("verdict", failed == 0 ? "pass" : "fail");
  return failed == 0 ? 0 : 1;
}

struct WordOptions {
  std::vector<std::string> tokens;
  std::uint32_t pairs = 0;
  std::uint32_t vertices = 0;
  std::string which;
};

/// The alphabet chosen by --pairs / --vertices; nullopt for the four-letter tokens.
std::optional<Alphabet> word_alphabet(const WordOptions& o) {
  if (o.pairs && o.vertices) throw PreconditionError("--pairs and --vertices exclude each other");
  if (o.vertices) return Alphabet::near_dyck(o.vertices);
  if (o.pairs) return Alphabet::dyck(o.pairs);
  return std::nullopt;
}

void require_dyck_codes(const std::optional<Alphabet>& a, const std::string& op) {
  if (a && a->kind() != AlphabetKind::Dyck) throw PreconditionError("word " + op + " needs a dyck alphabet");
}

void require_binary(const std::optional<Alphabet>& a, const std::string& op) {
  if (a && !(a->kind() == AlphabetKind::Dyck && a->pairs() <= 2))
    throw PreconditionError("word " + op + " works on the four-letter alphabet");
}

int cmd_word(const Globals& g, const std::string& op, const WordOptions& o, std::ostream& out) {
  const auto a = word_alphabet(o);
  const std::string text = join_tokens(o.tokens);
  const Word w = a ? parse_word(text, *a) : parse_binary_word(text);
  auto fmt = [&](const Word& x) { return a ? format_word(x, *a) : format_binary_word(x); };
  Printer p(out, g.machine);
  auto result = [&](const std::string& value) {
    if (g.machine)
      p.field(op, value);
    else
      out << value << '\n';
  };

  if (op == "reduce") {
    result(fmt(reduce(w)));
  } else if (op == "dyck") {
    require_dyck_codes(a, op);
    result(tf(is_dyck(w, a ? *a : Alphabet::dyck(2))));
  } else if (op == "neardyck") {
    if (!a || a->kind() != AlphabetKind::NearDyck) throw PreconditionError("word neardyck needs --vertices");
    result(tf(is_near_dyck(w, *a)));
  } else if (op == "q") {
    require_dyck_codes(a, op);
    result(tf(in_q(w)));
  } else if (op == "qinit") {
    require_dyck_codes(a, op);
    result(tf(in_q_init(w)));
  } else if (op == "regular") {
    require_binary(a, op);
    const auto which = parse_regular(o.which);
    if (!which) throw PreconditionError("unknown language '" + o.which + "'");
    result(tf(in_regular(w, *which)));
  } else if (op == "mu") {
    require_dyck_codes(a, op);
    result(std::to_string(mu(w)));
  } else if (op == "theta") {
    require_binary(a, op);
    const FreeProductElement e = theta(w);
    const auto k = gamma_exponent(e);
    if (g.machine) {
      p.field("theta", e.str());
      if (k) p.field("gamma_exponent", *k);
    } else {
      out << e.str();
      if (k) out << " = gamma^" << *k;
      out << '\n';
    }
  } else if (op == "phi-neardyck") {
    if (!a || a->kind() != AlphabetKind::NearDyck) throw PreconditionError("word phi-neardyck needs --vertices");
    result(format_ab_word(phi_neardyck(w, *a)));
  } else if (op == "phi-undirected") {
    require_binary(a, op);
    result(format_binary_word(phi_undirected(w)));
  }
  return 0;
}

struct OracleOptions {
  std::string graph;
  VertexId from = 0, to = 0;
  bool from_set = false, to_set = false;
  std::size_t length = 8;
  std::size_t max_paths = 1000;
  std::size_t max_expansions = 20'000'000;
  std::string predicate = "dyck";
  std::optional<VertexId> loop, from_vertex;
  std::vector<std::string> through;
  std::vector<std::string> tokens;
  std::uint32_t pairs = 0, vertices = 0;
  std::uint32_t alphabet_size = 4;
  bool list = false;
};

LabelPredicate predicate_of(const std::string& name) {
  if (name == "any") return LabelPredicate::any();
  if (name == "dyck") return LabelPredicate::dyck();
  if (name == "factor") return LabelPredicate::factor();
  if (name == "prefix") return LabelPredicate::prefix();
  throw PreconditionError("unknown predicate '" + name + "'");
}

int cmd_oracle(const Globals& g, const std::string& op, const OracleOptions& o, std::ostream& out) {
  Printer p(out, g.machine);
  const EnumerationBudget budget{o.length, o.max_paths, o.max_expansions};

  if (op == "paths") {
    const Instance inst = read_graph_file(o.graph);
    const VertexId from = o.from_set ? o.from : inst.source, to = o.to_set ? o.to : inst.sink;
    const PathEnumeration e = enumerate_paths(inst, from, to, budget, predicate_of(o.predicate));
    for (const Walk& w : e.walks) p.field("walk", format_walk(w, inst.graph.alphabet()));
    p.field("walks", e.walks.size());
    p.field("truncated", tf(e.truncated));
    return 0;
  }
  if (op == "reach") {
    const Instance inst = read_graph_file(o.graph);
    const BruteReach br = brute_dyck_reach(inst, budget);
    const ReachIndex idx = solve_dyck(inst);
    std::size_t unsound = 0;
    for (const auto& [u, v] : br.pairs.pairs()) {
      p.field("pair", std::to_string(u) + " " + std::to_string(v));
      if (!idx.contains(u, v)) ++unsound;
    }
    p.field("pairs", br.pairs.count());
    p.field("solver_pairs", idx.pairs.count());
    p.field("truncated", tf(br.truncated));
    p.field("outside_solver", unsound);
    p.field("verdict", unsound == 0 ? "pass" : "fail");
    return unsound == 0 ? 0 : 1;
  }
  if (op == "nominal") {
    const Instance src = read_graph_file(o.graph);
    const CompiledReduction red = compile_dyck2_to_undirected(src);
    std::optional<NominalTag> tag;
    std::size_t chosen = 0;
    if (o.loop) tag = NominalTag::loop(*o.loop), ++chosen;
    if (o.from_vertex) tag = NominalTag::from(*o.from_vertex), ++chosen;
    if (!o.through.empty()) {
      if (o.through.size() != 3) throw PreconditionError("--through takes <u> <label> <v>");
      const Instance probe = parse_graph("graph directed\nvertices " + std::to_string(src.graph.vertex_count()) +
                                         "\nalphabet dyck 2\nedge " + join_tokens(o.through) + "\nmark 0 0\n");
      tag = NominalTag::through(*probe.graph.stored_edges().begin());
      ++chosen;
    }
    if (chosen != 1) throw PreconditionError("give exactly one of --loop, --through, --from");
    const PathEnumeration e = enumerate_nominal_paths(red, *tag, budget);
    for (const Walk& w : e.walks) {
      const Word l = w.label();
      p.field("label", format_binary_word(l) + "  reduced " + format_binary_word(reduce(l)) + "  ends " +
                           red.vertex_names()[w.end()]);
    }
    p.field("walks", e.walks.size());
    p.field("truncated", tf(e.truncated));
    return 0;
  }
  if (op == "words") {
    std::size_t count = 0;
    std::function<bool(std::span<const Label>)> keep;
    if (o.predicate == "any") keep = [](std::span<const Label>) { return true; };
    else if (o.predicate == "dyck") {
      if (o.alphabet_size % 2) throw PreconditionError("dyck words need an even alphabet size");
      const Alphabet a = Alphabet::dyck(o.alphabet_size / 2);
      keep = [a](std::span<const Label> w) { return is_dyck(w, a); };
    } else if (o.predicate == "factor" || o.predicate == "q") keep = [](std::span<const Label> w) { return in_q(w); };
    else if (o.predicate == "prefix" || o.predicate == "qinit")
      keep = [](std::span<const Label> w) { return in_q_init(w); };
    else throw PreconditionError("unknown predicate '" + o.predicate + "'");
    for_each_word(o.alphabet_size, o.length, [&](std::span<const Label> w) {
      if (!keep(w)) return;
      ++count;
      if (o.list) p.field("word", format_word(w, Alphabet::dyck((o.alphabet_size + 1) / 2)));
    });
    p.field("words", count);
    return 0;
  }
  if (op == "cyk") {
    if (o.pairs && o.vertices) throw PreconditionError("--pairs and --vertices exclude each other");
    const Alphabet a = o.vertices ? Alphabet::near_dyck(o.vertices) : Alphabet::dyck(o.pairs ? o.pairs : 2);
    const Word w = parse_word(join_tokens(o.tokens), a);
    const bool d = cyk_derives(grammar_for(a), w);
    if (g.machine)
      p.field("derives", tf(d));
    else
      out << tf(d) << '\n';
    return 0;
  }
  return 2;
}

struct SuiteOptions {
  std::string name;
  SuiteConfig config;
};

int cmd_suite(const Globals& g, SuiteOptions o, std::ostream& out) {
  o.config.seed = g.seed;
  std::vector<std::string> names;
  if (o.name == "all")
    names = suite_names();
  else
    names.push_back(o.name);
  bool ok = true;
  for (const auto& n : names) {
    const SuiteReport r = run_suite(n, o.config);
    out << format_report(r, g.machine);
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

std::optional<VertexId> bfs_distance(const LabeledGraph& g, VertexId s, VertexId t) {
  std::vector<std::optional<VertexId>> dist(g.vertex_count());
  std::deque<VertexId> q{s};
  dist[s] = 0;
  const auto edges = g.edges();
  while (!q.empty()) {
    const VertexId u = q.front();
    q.pop_front();
    for (const Edge& e : edges)
      if (e.from == u && !dist[e.to]) {
        dist[e.to] = *dist[u] + 1;
        q.push_back(e.to);
      }
  }
  return dist[t];
}

int cmd_distance(const Globals& g, const std::string& path, std::optional<VertexId> from, std::optional<VertexId> to,
                 std::ostream& out) {
  const Instance inst = read_graph_file(path);
  const VertexId s = from.value_or(inst.source), t = to.value_or(inst.sink);
  const VertexId n = inst.graph.vertex_count();
  if (s >= n || t >= n) throw PreconditionError("vertex out of range");
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (const Edge& e : inst.graph.edges()) arcs.emplace_back(e.from, e.to);
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  const DistanceGadget gadget = build_distance_gadget(n, arcs);
  const auto d = gadget_distance(gadget, solve_dyck(gadget.instance), s, t);
  const auto b = bfs_distance(inst.graph, s, t);
  auto show = [](const std::optional<VertexId>& x) { return x ? std::to_string(*x) : std::string("unreachable"); };
  Printer p(out, g.machine);
  p.field("gadget_distance", show(d));
  p.field("bfs_distance", show(b));
  p.field("verdict", d == b ? "pass" : "fail");
  return d == b ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dyck reachability, gadget reductions and their property suites", "dyckctl"};
  app.footer(kFormats);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every randomized run")->capture_default_str();
  app.add_flag("--machine", g.machine, "One key=value record per line");

  const std::vector<std::string> engine_keys = [] {
    std::vector<std::string> v;
    for (const auto& [k, e] : engine_names()) v.push_back(k);
    return v;
  }();

  // solve
  std::string solve_graph, solve_engine = "auto";
  bool solve_trace = false;
  auto* solve = app.add_subcommand("solve", "Answer the marked pair of a graph file");
  solve->add_option("graph", solve_graph, "Graph file")->required();
  solve->add_option("--engine", solve_engine, "auto|dyck|wrap-only|cfl|prop1|alternating")
      ->check(CLI::IsMember(engine_keys))
      ->capture_default_str();
  solve->add_flag("--trace", solve_trace, "Print the computed relation or fixpoint layers");

  // replay
  std::string replay_graph, replay_script, replay_engine = "auto";
  auto* replay = app.add_subcommand("replay", "Apply an update script and answer every query");
  replay->add_option("graph", replay_graph, "Graph file")->required();
  replay->add_option("script", replay_script, "Script file")->required();
  replay->add_option("--engine", replay_engine, "auto|dyck|wrap-only|cfl|prop1|alternating")
      ->check(CLI::IsMember(engine_keys))
      ->capture_default_str();

  // reduce
  std::string reduce_kind, reduce_graph, reduce_out, reduce_map;
  auto* reduce_cmd = app.add_subcommand("reduce", "Compile a source instance into its gadget");
  reduce_cmd->add_option("kind", reduce_kind, "alt_to_neardyck|neardyck_to_dyck2|dyck2_to_undirected")->required();
  reduce_cmd->add_option("graph", reduce_graph, "Source graph file")->required();
  reduce_cmd->add_option("-o,--output", reduce_out, "Target graph file (default: stdout)");
  reduce_cmd->add_option("--map", reduce_map, "Sidecar file: '<name> <id>' per target vertex");

  // verify-equiv
  std::string ve_kind, ve_graph, ve_script;
  std::size_t ve_fuzz = 0, ve_ops = 30;
  VertexId ve_max = 5;
  auto* verify = app.add_subcommand("verify-equiv", "Run source and target side by side under a script");
  verify->add_option("kind", ve_kind, "Reduction kind")->required();
  verify->add_option("graph", ve_graph, "Source graph file");
  verify->add_option("script", ve_script, "Update script");
  verify->add_option("--fuzz", ve_fuzz, "Number of seeded random (instance, script) runs instead of files");
  verify->add_option("--ops", ve_ops, "Operations per fuzz script")->capture_default_str();
  verify->add_option("--max-vertices", ve_max, "Vertex cap of fuzz sources")->capture_default_str();

  // word
  WordOptions wo;
  std::string word_op;
  auto* word = app.add_subcommand("word", "Word-level operations");
  word->require_subcommand(1);
  for (const char* name : {"reduce", "dyck", "neardyck", "q", "qinit", "regular", "mu", "theta", "phi-neardyck",
                           "phi-undirected"}) {
    auto* sub = word->add_subcommand(name);
    if (std::string(name) == "regular")
      sub->add_option("which", wo.which, "omega+|omega-|omega|varpi+|varpi-|varpi")->required();
    sub->add_option("tokens", wo.tokens, "Word tokens");
    sub->add_option("--pairs", wo.pairs, "Use the dyck(n) alphabet l1..ln");
    sub->add_option("--vertices", wo.vertices, "Use the near-Dyck alphabet of N vertices");
    sub->callback([&word_op, name] { word_op = name; });
  }

  // oracle
  OracleOptions oo;
  std::string oracle_op;
  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
  oracle->require_subcommand(1);
  auto budget_opts = [&oo](CLI::App* sub) {
    sub->add_option("--length", oo.length, "Maximum walk length")->capture_default_str();
    sub->add_option("--max-paths", oo.max_paths, "Cap on reported walks")->capture_default_str();
    sub->add_option("--max-expansions", oo.max_expansions, "Cap on search expansions")->capture_default_str();
  };
  auto* o_paths = oracle->add_subcommand("paths", "Walks between two vertices");
  o_paths->add_option("graph", oo.graph)->required();
  o_paths->add_option("--from", oo.from, "Start vertex (default: source mark)")->each([&oo](const std::string&) {
    oo.from_set = true;
  });
  o_paths->add_option("--to", oo.to, "End vertex (default: sink mark)")->each([&oo](const std::string&) {
    oo.to_set = true;
  });
  o_paths->add_option("--predicate", oo.predicate, "any|dyck|factor|prefix")->capture_default_str();
  budget_opts(o_paths);
  auto* o_reach = oracle->add_subcommand("reach", "Pairs joined by an enumerated Dyck walk");
  o_reach->add_option("graph", oo.graph)->required();
  budget_opts(o_reach);
  auto* o_nominal = oracle->add_subcommand("nominal", "Nominal walks in the undirected gadget of a dyck(2) source");
  o_nominal->add_option("graph", oo.graph, "Source graph file")->required();
  o_nominal->add_option("--loop", oo.loop, "0/0bar excursions at a vertex");
  o_nominal->add_option("--through", oo.through, "Traversals of the chain of source edge <u> <label> <v>")
      ->expected(3);
  o_nominal->add_option("--from", oo.from_vertex, "Every nominal walk leaving a vertex");
  budget_opts(o_nominal);
  auto* o_words = oracle->add_subcommand("words", "Count words up to a length");
  o_words->add_option("--length", oo.length, "Maximum word length")->capture_default_str();
  o_words->add_option("--alphabet-size", oo.alphabet_size, "Letters (codes 0..k-1)")->capture_default_str();
  o_words->add_option("--predicate", oo.predicate, "any|dyck|factor|prefix")->capture_default_str();
  o_words->add_flag("--list", oo.list, "Print every word");
  auto* o_cyk = oracle->add_subcommand("cyk", "CYK membership in the Dyck or near-Dyck grammar");
  o_cyk->add_option("tokens", oo.tokens, "Word tokens");
  o_cyk->add_option("--pairs", oo.pairs, "dyck(n) grammar (default 2)");
  o_cyk->add_option("--vertices", oo.vertices, "near-Dyck grammar of N vertices");
  for (auto* sub : {o_paths, o_reach, o_nominal, o_words, o_cyk})
    sub->callback([&oracle_op, sub] { oracle_op = sub->get_name(); });

  // suite
  SuiteOptions so;
  auto* suite = app.add_subcommand("suite", "Bounded property suites");
  std::vector<std::string> suite_keys = suite_names();
  suite_keys.push_back("all");
  suite->add_option("name", so.name, "lemma3|lemma4|lemma5|lemma6|lemma7|prop1|q-validate|all")
      ->required()
      ->check(CLI::IsMember(suite_keys));
  suite->add_option("--length", so.config.max_path_length, "Walk length budget")->capture_default_str();
  suite->add_option("--max-paths", so.config.max_paths, "Walks kept per enumeration")->capture_default_str();
  suite->add_option("--max-expansions", so.config.max_expansions, "Search cap per enumeration")
      ->capture_default_str();
  suite->add_option("--source-edges", so.config.source_edges, "Edge cap of the 2-vertex sources")
      ->capture_default_str();
  suite->add_option("--sample3", so.config.sample3, "Random 3-vertex sources")->capture_default_str();
  suite->add_option("--word-length", so.config.word_length, "Word length of word-level suites")
      ->capture_default_str();
  suite->add_option("--samples", so.config.prop1_samples, "prop1: random instances")->capture_default_str();
  suite->add_option("--max-vertices", so.config.prop1_max_vertices, "prop1: vertex cap")->capture_default_str();

  // distance
  std::string dist_graph;
  std::optional<VertexId> dist_from, dist_to;
  auto* distance = app.add_subcommand("distance", "Directed distance through the one-letter gadget");
  distance->add_option("graph", dist_graph, "Graph file (labels ignored)")->required();
  distance->add_option("--from", dist_from, "Start vertex (default: source mark)");
  distance->add_option("--to", dist_to, "End vertex (default: sink mark)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(g, solve_graph, engine_names().at(solve_engine), solve_trace, out);
    if (*replay) return cmd_replay(g, replay_graph, replay_script, engine_names().at(replay_engine), out);
    if (*reduce_cmd) return cmd_reduce(g, reduce_kind, reduce_graph, reduce_out, reduce_map, out, err);
    if (*verify) return cmd_verify(g, ve_kind, ve_graph, ve_script, ve_fuzz, ve_ops, ve_max, out);
    if (*word) return cmd_word(g, word_op, wo, out);
    if (*oracle) return cmd_oracle(g, oracle_op, oo, out);
    if (*suite) return cmd_suite(g, so, out);
    if (*distance) return cmd_distance(g, dist_graph, dist_from, dist_to, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace dyckctl
