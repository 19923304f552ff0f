#include "dyck/word_lab.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dyck/error.hpp"

namespace dyck {

namespace {

bool is_open_code(Label l) { return l.code % 2 == 0; }

void require_letters(std::span<const Label> w, const Alphabet& alphabet) {
  for (Label l : w)
    if (!alphabet.contains(l)) throw PreconditionError("label code " + std::to_string(l.code) + " outside the alphabet");
}

}  // namespace

Word reduce(std::span<const Label> w) {
  Word out;
  out.reserve(w.size());
  for (Label l : w) {
    if (!is_open_code(l) && !out.empty() && out.back().code + 1 == l.code)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

bool is_dyck(std::span<const Label> w, const Alphabet& alphabet) {
  if (alphabet.kind() != AlphabetKind::Dyck) throw PreconditionError("is_dyck needs a dyck alphabet");
  require_letters(w, alphabet);
  std::vector<std::uint32_t> stack;
  for (Label l : w) {
    if (alphabet.is_open(l)) {
      stack.push_back(alphabet.pair_of(l));
    } else {
      if (stack.empty() || stack.back() != alphabet.pair_of(l)) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

bool is_near_dyck(std::span<const Label> w, const Alphabet& alphabet) {
  if (alphabet.kind() != AlphabetKind::NearDyck) throw PreconditionError("is_near_dyck needs a neardyck alphabet");
  require_letters(w, alphabet);
  std::vector<std::uint32_t> stack;
  for (Label l : w) {
    if (alphabet.is_bullet(l)) continue;
    if (alphabet.is_open(l)) {
      stack.push_back(alphabet.pair_of(l));
    } else {
      if (stack.empty() || stack.back() != alphabet.pair_of(l)) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

bool in_q(std::span<const Label> w) {
  const Word r = reduce(w);
  auto first_open = std::find_if(r.begin(), r.end(), is_open_code);
  return std::all_of(first_open, r.end(), is_open_code);
}

bool in_q_init(std::span<const Label> w) {
  const Word r = reduce(w);
  return std::all_of(r.begin(), r.end(), is_open_code);
}

long mu(std::span<const Label> w) {
  long total = 0;
  for (Label l : w) total += is_open_code(l) ? 1 : -1;
  return total;
}

// Tokens ---------------------------------------------------------------------

Word parse_binary_word(std::string_view text) {
  static const std::map<std::string, Label, std::less<>> tokens{
      {"0", kZero},  {"0bar", kZeroBar}, {"1", kOne},     {"1bar", kOneBar},
      {"a", kZero},  {"abar", kZeroBar}, {"b", kOne},     {"bbar", kOneBar},
      {"l1", kZero}, {"l1bar", kZeroBar}, {"l2", kOne},   {"l2bar", kOneBar},
  };
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "eps") continue;
    auto it = tokens.find(tok);
    if (it == tokens.end()) throw ParseError(0, "unknown letter '" + tok + "'");
    out.push_back(it->second);
  }
  return out;
}

std::string format_binary_word(std::span<const Label> w) {
  static const char* names[] = {"0", "0bar", "1", "1bar"};
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].code < 4 ? names[w[i].code] : "?";
  }
  return out;
}

std::string format_ab_word(std::span<const Label> w) {
  static const char* names[] = {"a", "abar", "b", "bbar"};
  if (w.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i].code < 4 ? names[w[i].code] : "?";
  }
  return out;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "eps") continue;
    auto l = alphabet.parse_token(tok);
    if (!l) throw ParseError(0, "unknown label token '" + tok + "'");
    out.push_back(*l);
  }
  return out;
}

// Regex ----------------------------------------------------------------------

struct Regex::Node {
  Kind kind;
  Label label;
  std::vector<Regex> children;
};

Regex Regex::epsilon() { return Regex(std::make_shared<const Node>(Node{Kind::Epsilon, {}, {}})); }
Regex Regex::letter(Label l) {
  if (l.code >= 4) throw PreconditionError("regex letters are 0, 0bar, 1, 1bar");
  return Regex(std::make_shared<const Node>(Node{Kind::Letter, l, {}}));
}
Regex Regex::word(std::span<const Label> w) {
  std::vector<Regex> parts;
  for (Label l : w) parts.push_back(letter(l));
  return concat(std::move(parts));
}
Regex Regex::concat(std::vector<Regex> parts) {
  if (parts.empty()) return epsilon();
  if (parts.size() == 1) return parts.front();
  return Regex(std::make_shared<const Node>(Node{Kind::Concat, {}, std::move(parts)}));
}
Regex Regex::alt(std::vector<Regex> parts) {
  if (parts.empty()) throw PreconditionError("empty union");
  if (parts.size() == 1) return parts.front();
  return Regex(std::make_shared<const Node>(Node{Kind::Union, {}, std::move(parts)}));
}
Regex Regex::star(Regex inner) {
  return Regex(std::make_shared<const Node>(Node{Kind::Star, {}, {std::move(inner)}}));
}
Regex::Kind Regex::kind() const { return node_->kind; }
Label Regex::label() const { return node_->label; }
const std::vector<Regex>& Regex::children() const { return node_->children; }

namespace {

// Thompson construction: every fragment has one entry and one exit state.
struct Nfa {
  struct State {
    std::vector<std::uint32_t> eps;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> moves;  // (letter, target)
  };
  std::vector<State> states;

  std::uint32_t add() {
    states.emplace_back();
    return static_cast<std::uint32_t>(states.size() - 1);
  }

  std::pair<std::uint32_t, std::uint32_t> build(const Regex& re) {
    const std::uint32_t in = add();
    const std::uint32_t out = add();
    switch (re.kind()) {
      case Regex::Kind::Epsilon: states[in].eps.push_back(out); break;
      case Regex::Kind::Letter: states[in].moves.emplace_back(re.label().code, out); break;
      case Regex::Kind::Concat: {
        std::uint32_t at = in;
        for (const Regex& part : re.children()) {
          auto [pi, po] = build(part);
          states[at].eps.push_back(pi);
          at = po;
        }
        states[at].eps.push_back(out);
        break;
      }
      case Regex::Kind::Union:
        for (const Regex& part : re.children()) {
          auto [pi, po] = build(part);
          states[in].eps.push_back(pi);
          states[po].eps.push_back(out);
        }
        break;
      case Regex::Kind::Star: {
        auto [pi, po] = build(re.children().front());
        states[in].eps.push_back(pi);
        states[in].eps.push_back(out);
        states[po].eps.push_back(pi);
        states[po].eps.push_back(out);
        break;
      }
    }
    return {in, out};
  }

  std::vector<std::uint32_t> closure(std::vector<std::uint32_t> set) const {
    std::vector<bool> seen(states.size(), false);
    for (auto s : set) seen[s] = true;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (auto t : states[set[i]].eps)
        if (!seen[t]) {
          seen[t] = true;
          set.push_back(t);
        }
    std::sort(set.begin(), set.end());
    return set;
  }
};

}  // namespace

Automaton Automaton::compile(const Regex& re) {
  Nfa nfa;
  auto [entry, exit] = nfa.build(re);

  Automaton dfa;
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::vector<std::uint32_t>> sets;
  auto intern = [&](std::vector<std::uint32_t> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<std::uint32_t>(sets.size()));
    if (fresh) sets.push_back(std::move(set));
    return it->second;
  };
  intern(nfa.closure({entry}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::uint32_t letter = 0; letter < 4; ++letter) {
      std::vector<std::uint32_t> next;
      for (auto s : sets[i])
        for (auto [l, t] : nfa.states[s].moves)
          if (l == letter) next.push_back(t);
      dfa.delta_.push_back(intern(nfa.closure(std::move(next))));
    }
  }
  const std::size_t n = sets.size();
  dfa.accepting_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    dfa.accepting_[i] = std::binary_search(sets[i].begin(), sets[i].end(), exit);

  // Live states: backward reachability from the accepting ones.
  std::vector<bool> live = dfa.accepting_;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t letter = 0; letter < 4 && !live[i]; ++letter)
        if (live[dfa.delta_[i * 4 + letter]]) live[i] = grew = true;
  }
  dfa.dead_.resize(n);
  for (std::size_t i = 0; i < n; ++i) dfa.dead_[i] = !live[i];
  return dfa;
}

bool Automaton::accepts(std::span<const Label> w) const {
  std::uint32_t state = 0;
  for (Label l : w) {
    if (l.code >= 4) return false;
    state = step(state, l);
  }
  return accepting_[state];
}

std::string to_string(Regular which) {
  switch (which) {
    case Regular::OmegaPlus: return "omega+";
    case Regular::OmegaMinus: return "omega-";
    case Regular::Omega: return "omega";
    case Regular::VarpiPlus: return "varpi+";
    case Regular::VarpiMinus: return "varpi-";
    case Regular::Varpi: return "varpi";
  }
  return "?";
}

std::optional<Regular> parse_regular(std::string_view name) {
  for (auto r : {Regular::OmegaPlus, Regular::OmegaMinus, Regular::Omega, Regular::VarpiPlus, Regular::VarpiMinus,
                 Regular::Varpi})
    if (name == to_string(r)) return r;
  return std::nullopt;
}

namespace {

Regex lit(std::initializer_list<Label> w) { return Regex::word(std::vector<Label>(w)); }

}  // namespace

Regex regex(Regular which) {
  const Regex omega_plus = Regex::star(Regex::alt({lit({kZero, kZero}), lit({kOne, kOne})}));
  const Regex omega_minus = Regex::star(Regex::alt({lit({kZeroBar, kZeroBar}), lit({kOneBar, kOneBar})}));
  const Regex omega = Regex::star(Regex::alt({omega_plus, omega_minus, lit({kZeroBar, kZero})}));
  switch (which) {
    case Regular::OmegaPlus: return omega_plus;
    case Regular::OmegaMinus: return omega_minus;
    case Regular::Omega: return omega;
    case Regular::VarpiPlus:
      return Regex::concat(
          {Regex::star(Regex::concat({omega_plus, lit({kOne}), omega_plus, lit({kOne})})), omega_plus});
    case Regular::VarpiMinus:
      return Regex::concat(
          {Regex::star(Regex::concat({omega_minus, lit({kOneBar}), omega_minus, lit({kOneBar})})), omega_minus});
    case Regular::Varpi:
      return Regex::concat({Regex::star(Regex::concat({omega, lit({kOne}), omega, lit({kOneBar})})), omega});
  }
  throw PreconditionError("unknown regular language");
}

const Automaton& automaton(Regular which) {
  static const std::vector<Automaton> table = [] {
    std::vector<Automaton> t;
    for (auto r : {Regular::OmegaPlus, Regular::OmegaMinus, Regular::Omega, Regular::VarpiPlus, Regular::VarpiMinus,
                   Regular::Varpi})
      t.push_back(Automaton::compile(regex(r)));
    return t;
  }();
  return table.at(static_cast<std::size_t>(which));
}

bool in_regular(std::span<const Label> w, Regular which) { return automaton(which).accepts(w); }

Regex nominal_shape(Label lambda) {
  const Regex op = regex(Regular::OmegaPlus), om = regex(Regular::OmegaMinus), vp = regex(Regular::Varpi);
  switch (lambda.code) {
    case 0: return Regex::concat({vp, lit({kOne, kOne, kZero, kZero}), op, lit({kOne, kZero})});
    case 2: return Regex::concat({vp, lit({kOne}), op, lit({kZero, kZero, kOne, kOne}), op, lit({kZero})});
    case 1:
      return Regex::concat({lit({kZeroBar, kOneBar}), om, lit({kZeroBar, kZeroBar, kOneBar, kOneBar}), vp});
    case 3:
      return Regex::concat({lit({kZeroBar}), om, lit({kOneBar, kOneBar, kZeroBar, kZeroBar}), om, lit({kOneBar}), vp});
  }
  throw PreconditionError("nominal shapes are defined on dyck 2 labels");
}

const Automaton& nominal_shape_automaton(Label lambda) {
  static const std::vector<Automaton> table = [] {
    std::vector<Automaton> t;
    for (std::uint32_t c = 0; c < 4; ++c) t.push_back(Automaton::compile(nominal_shape(Label{c})));
    return t;
  }();
  if (lambda.code >= 4) throw PreconditionError("nominal shapes are defined on dyck 2 labels");
  return table[lambda.code];
}

// Morphisms ----------------------------------------------------------------------

Word phi_neardyck(std::span<const Label> w, const Alphabet& alphabet) {
  if (alphabet.kind() != AlphabetKind::NearDyck) throw PreconditionError("phi_neardyck needs a neardyck alphabet");
  require_letters(w, alphabet);
  const std::uint32_t n = alphabet.pairs();
  Word out;
  auto repeat = [&out](Label l, std::uint32_t k) { out.insert(out.end(), k, l); };
  for (Label l : w) {
    if (alphabet.is_bullet(l)) {
      out.push_back(kZero);
      out.push_back(kZeroBar);
      continue;
    }
    const std::uint32_t j = alphabet.pair_of(l);
    if (alphabet.is_open(l)) {
      repeat(kZero, j + 1);
      out.push_back(kOne);
      repeat(kZero, n - j);
    } else {
      repeat(kZeroBar, n - j);
      out.push_back(kOneBar);
      repeat(kZeroBar, j + 1);
    }
  }
  return out;
}

Word phi_undirected(std::span<const Label> w) {
  Word out;
  out.reserve(w.size() * kChainLength);
  for (Label l : w) {
    const Word& image = undirected_encoding(l);
    out.insert(out.end(), image.begin(), image.end());
  }
  return out;
}

FreeProductElement FreeProductElement::alpha() {
  FreeProductElement e;
  e.letters_ = "a";
  return e;
}
FreeProductElement FreeProductElement::beta() {
  FreeProductElement e;
  e.letters_ = "b";
  return e;
}
FreeProductElement FreeProductElement::gamma() { return beta() * alpha(); }

void FreeProductElement::push(char g) {
  if (!letters_.empty() && letters_.back() == g)
    letters_.pop_back();
  else
    letters_.push_back(g);
}

FreeProductElement FreeProductElement::operator*(const FreeProductElement& rhs) const {
  FreeProductElement out = *this;
  for (char g : rhs.letters_) out.push(g);
  return out;
}

FreeProductElement FreeProductElement::inverse() const {
  FreeProductElement out;
  out.letters_.assign(letters_.rbegin(), letters_.rend());
  return out;
}

FreeProductElement theta(std::span<const Label> w) {
  FreeProductElement out;
  for (Label l : w) out = out * (l.code / 2 == 0 ? FreeProductElement::alpha() : FreeProductElement::beta());
  return out;
}

std::optional<long> gamma_exponent(const FreeProductElement& e) {
  const std::string& s = e.letters();
  if (s.empty()) return 0;
  if (s.size() % 2 != 0) return std::nullopt;
  const long k = static_cast<long>(s.size() / 2);
  return s.front() == 'b' ? k : -k;
}

// Nominal decomposition -------------------------------------------------------------

Word NominalDecomposition::ancestor_label() const {
  Word out;
  for (const Edge& e : ancestor) out.push_back(e.label);
  return out;
}

namespace {

NominalDecomposition split_nominal(const Walk& walk, const CompiledReduction& red) {
  if (red.kind() != ReductionKind::Dyck2ToUndirected)
    throw PreconditionError("nominal decomposition needs a dyck2_to_undirected gadget");
  const LabeledGraph& g = red.target().graph;
  if (!is_walk(g, walk)) throw PreconditionError("not a walk of the gadget");
  const VertexId n = red.source_vertex_count();
  if (walk.start >= n || walk.end() >= n) throw PreconditionError("walk endpoints must be original vertices");

  NominalDecomposition out;
  out.vertices.push_back(walk.start);
  std::size_t first = 0;
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    if (walk.steps[i].to >= n) continue;
    NominalSegment seg;
    seg.first_step = first;
    seg.end_step = i + 1;
    seg.from = out.vertices.back();
    seg.to = walk.steps[i].to;

    std::optional<ChainVertex> chain;
    bool uses_one = false;
    for (std::size_t j = first; j <= i; ++j) {
      if (walk.steps[j].label.code >= 2) uses_one = true;
      if (j == i) break;
      const ChainVertex c = *red.chain_of(walk.steps[j].to);
      if (!chain) {
        chain = c;
      } else if (chain->x != c.x || chain->lambda != c.lambda || chain->y != c.y) {
        throw InvariantError("segment at step " + std::to_string(first) + " crosses two chains");
      }
    }
    if (!chain) throw InvariantError("segment at step " + std::to_string(first) + " has no interior vertex");
    const bool ends_ok = (seg.from == chain->x || seg.from == chain->y) && (seg.to == chain->x || seg.to == chain->y);
    if (!ends_ok) throw InvariantError("segment at step " + std::to_string(first) + " leaves through a foreign end");
    if (uses_one) {
      if (seg.from != chain->x || seg.to != chain->y)
        throw InvariantError("segment at step " + std::to_string(first) + " travels its chain backwards");
      seg.source_label = chain->lambda;
      out.ancestor.push_back(Edge{chain->x, chain->lambda, chain->y});
    } else if (seg.from != seg.to) {
      throw InvariantError("0-only segment at step " + std::to_string(first) + " does not return to its start");
    }
    out.segments.push_back(seg);
    out.vertices.push_back(seg.to);
    first = i + 1;
  }
  return out;
}

}  // namespace

NominalDecomposition nominal_decompose(const Walk& walk, const CompiledReduction& red) {
  if (!is_dyck(walk.label(), Alphabet::dyck(2))) throw PreconditionError("walk label is not a Dyck word");
  return split_nominal(walk, red);
}

NominalDecomposition nominal_split(const Walk& walk, const CompiledReduction& red) {
  if (!in_q(walk.label())) throw PreconditionError("walk label is not a factor of a Dyck word");
  return split_nominal(walk, red);
}

}  // namespace dyck
