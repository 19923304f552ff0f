#include "dyck/oracle.hpp"

#include <algorithm>

#include "dyck/error.hpp"

namespace dyck {

std::vector<Word> PathEnumeration::labels() const {
  std::vector<Word> out;
  out.reserve(walks.size());
  for (const Walk& w : walks) out.push_back(w.label());
  return out;
}

namespace {

using Adjacency = std::vector<std::vector<Step>>;

Adjacency adjacency(const LabeledGraph& g) {
  Adjacency out(g.vertex_count());
  for (const Edge& e : g.edges()) out[e.from].push_back(Step{e.label, e.to});
  for (auto& steps : out) std::sort(steps.begin(), steps.end());
  return out;
}

// Reduced label of the current prefix with its number of open letters.
// Every push is undone by exactly one pop.
class ReducedStack {
 public:
  /// Appends l; returns false (and changes nothing) when the prefix would
  /// leave the factors of Dyck words, or the prefixes when `prefix_only`.
  bool push(Label l, bool prefix_only) {
    if (l.code % 2 == 1) {
      if (!reduced_.empty() && reduced_.back().code + 1 == l.code) {
        undo_.push_back(Undo{true, reduced_.back()});
        reduced_.pop_back();
        --opens_;
        return true;
      }
      if (prefix_only || opens_ > 0) return false;
      reduced_.push_back(l);
    } else {
      reduced_.push_back(l);
      ++opens_;
    }
    undo_.push_back(Undo{false, {}});
    return true;
  }

  void pop() {
    const Undo u = undo_.back();
    undo_.pop_back();
    if (u.cancelled) {
      reduced_.push_back(u.letter);
      ++opens_;
    } else {
      if (reduced_.back().code % 2 == 0) --opens_;
      reduced_.pop_back();
    }
  }

  std::size_t size() const noexcept { return reduced_.size(); }
  std::size_t opens() const noexcept { return opens_; }

 private:
  struct Undo {
    bool cancelled;
    Label letter;
  };
  Word reduced_;
  std::vector<Undo> undo_;
  std::size_t opens_ = 0;
};

class Enumerator {
 public:
  Enumerator(const Instance& inst, VertexId to, const EnumerationBudget& budget, const LabelPredicate& pred)
      : adj_(adjacency(inst.graph)), to_(to), budget_(budget), pred_(pred) {}

  PathEnumeration run(VertexId from) {
    walk_.start = from;
    for (std::size_t len = 0; len <= budget_.max_path_length && !stop_; ++len) {
      target_len_ = len;
      dfs(from);
    }
    return std::move(out_);
  }

 private:
  void dfs(VertexId at) {
    if (stop_) return;
    if (++out_.expansions > budget_.max_expansions) {
      out_.truncated = stop_ = true;
      return;
    }
    const std::size_t depth = walk_.steps.size();
    const std::size_t remaining = target_len_ - depth;
    using Kind = LabelPredicate::Kind;
    if (pred_.kind == Kind::Custom && pred_.viable && !pred_.viable(label_, remaining)) return;
    if (pred_.kind == Kind::Dyck && stack_.size() > remaining) return;
    if (depth == target_len_) {
      const bool ok = pred_.kind == Kind::Custom ? pred_.accept(label_)
                      : pred_.kind == Kind::Dyck ? stack_.size() == 0
                                                 : true;
      if (at == to_ && ok) {
        if (out_.walks.size() == budget_.max_paths) {
          out_.truncated = stop_ = true;
          return;
        }
        out_.walks.push_back(walk_);
      }
      return;
    }
    const bool tracked = pred_.kind == Kind::Dyck || pred_.kind == Kind::Factor || pred_.kind == Kind::Prefix;
    const bool prefix_only = pred_.kind != Kind::Factor;
    for (const Step& s : adj_[at]) {
      if (tracked && !stack_.push(s.label, prefix_only)) continue;
      walk_.steps.push_back(s);
      label_.push_back(s.label);
      dfs(s.to);
      walk_.steps.pop_back();
      label_.pop_back();
      if (tracked) stack_.pop();
      if (stop_) return;
    }
  }

  Adjacency adj_;
  VertexId to_;
  const EnumerationBudget& budget_;
  const LabelPredicate& pred_;
  PathEnumeration out_;
  Walk walk_;
  Word label_;
  ReducedStack stack_;
  std::size_t target_len_ = 0;
  bool stop_ = false;
};

}  // namespace

PathEnumeration enumerate_paths(const Instance& inst, VertexId from, VertexId to, const EnumerationBudget& budget,
                                const LabelPredicate& pred) {
  const VertexId n = inst.graph.vertex_count();
  if (from >= n || to >= n) throw PreconditionError("vertex out of range");
  return Enumerator(inst, to, budget, pred).run(from);
}

BruteReach brute_dyck_reach(const Instance& inst, const EnumerationBudget& budget) {
  const Alphabet& a = inst.graph.alphabet();
  if (a.kind() != AlphabetKind::Dyck) throw PreconditionError("brute_dyck_reach needs a dyck alphabet");
  const Adjacency adj = adjacency(inst.graph);
  const VertexId n = inst.graph.vertex_count();
  BruteReach out{PairMatrix(n), false};
  std::size_t expansions = 0;
  std::vector<std::uint32_t> stack;

  auto dfs = [&](auto&& self, VertexId origin, VertexId at, std::size_t depth) -> void {
    if (out.truncated) return;
    if (++expansions > budget.max_expansions) {
      out.truncated = true;
      return;
    }
    if (stack.empty()) out.pairs.set(origin, at);
    if (depth == budget.max_path_length) return;
    const std::size_t remaining = budget.max_path_length - depth - 1;
    for (const Step& s : adj[at]) {
      const std::uint32_t k = a.pair_of(s.label);
      if (a.is_open(s.label)) {
        if (stack.size() + 1 > remaining) continue;
        stack.push_back(k);
        self(self, origin, s.to, depth + 1);
        stack.pop_back();
      } else if (!stack.empty() && stack.back() == k) {
        stack.pop_back();
        self(self, origin, s.to, depth + 1);
        stack.push_back(k);
      }
    }
  };
  for (VertexId u = 0; u < n && !out.truncated; ++u) dfs(dfs, u, u, 0);
  return out;
}

// Nominal walks -------------------------------------------------------------------

namespace {

class NominalEnumerator {
 public:
  NominalEnumerator(const CompiledReduction& red, const NominalTag& tag, const EnumerationBudget& budget)
      : red_(red), tag_(tag), budget_(budget), adj_(adjacency(red.target().graph)) {}

  PathEnumeration run() {
    walk_.start = tag_.vertex;
    target_ = tag_.kind == NominalTag::Kind::Through ? tag_.edge.to : tag_.vertex;
    for (std::size_t len = 1; len <= budget_.max_path_length && !stop_; ++len) {
      target_len_ = len;
      dfs(tag_.vertex);
    }
    return std::move(out_);
  }

 private:
  bool chain_allowed(const ChainVertex& c) const {
    if (tag_.kind == NominalTag::Kind::Through)
      return c.x == tag_.edge.from && c.lambda == tag_.edge.label && c.y == tag_.edge.to;
    return c.x == tag_.vertex || c.y == tag_.vertex;
  }

  void dfs(VertexId at) {
    if (stop_) return;
    if (++out_.expansions > budget_.max_expansions) {
      out_.truncated = stop_ = true;
      return;
    }
    const std::size_t depth = walk_.steps.size();
    if (depth == target_len_) return;
    const VertexId n = red_.source_vertex_count();
    for (const Step& s : adj_[at]) {
      if (tag_.kind == NominalTag::Kind::Loop && s.label.code >= 2) continue;
      const bool to_original = s.to < n;
      if (to_original) {
        if (depth + 1 != target_len_ || depth == 0) continue;
        if (tag_.kind != NominalTag::Kind::From && s.to != target_) continue;
      } else {
        if (depth + 1 == target_len_ || !chain_allowed(*red_.chain_of(s.to))) continue;
      }
      if (!push(s)) continue;
      if (to_original) {
        // A through walk must use a 1/1bar edge; without one it belongs to
        // the loop class of its endpoint (possible on a self-loop's chain).
        const bool crossed = std::any_of(walk_.steps.begin(), walk_.steps.end(),
                                         [](const Step& t) { return t.label.code >= 2; });
        if (tag_.kind == NominalTag::Kind::Through && !crossed) {
          pop();
          continue;
        }
        if (out_.walks.size() == budget_.max_paths) {
          out_.truncated = stop_ = true;
        } else {
          out_.walks.push_back(walk_);
        }
      } else {
        dfs(s.to);
      }
      pop();
      if (stop_) return;
    }
  }

  bool push(const Step& s) {
    if (!stack_.push(s.label, false)) return false;
    walk_.steps.push_back(s);
    return true;
  }

  void pop() {
    stack_.pop();
    walk_.steps.pop_back();
  }

  const CompiledReduction& red_;
  NominalTag tag_;
  const EnumerationBudget& budget_;
  Adjacency adj_;
  PathEnumeration out_;
  Walk walk_;
  ReducedStack stack_;
  VertexId target_ = 0;
  std::size_t target_len_ = 0;
  bool stop_ = false;
};

}  // namespace

PathEnumeration enumerate_nominal_paths(const CompiledReduction& red, const NominalTag& tag,
                                        const EnumerationBudget& budget) {
  if (red.kind() != ReductionKind::Dyck2ToUndirected)
    throw PreconditionError("nominal paths live in dyck2_to_undirected gadgets");
  const VertexId n = red.source_vertex_count();
  if (tag.vertex >= n || (tag.kind == NominalTag::Kind::Through && tag.edge.to >= n))
    throw PreconditionError("nominal tag names a vertex outside the source");
  return NominalEnumerator(red, tag, budget).run();
}

// Words ----------------------------------------------------------------------------

void for_each_word(std::uint32_t alphabet_size, std::size_t max_len,
                   const std::function<void(std::span<const Label>)>& f) {
  Word w;
  f(w);
  if (alphabet_size == 0) return;
  for (std::size_t len = 1; len <= max_len; ++len) {
    w.assign(len, Label{0});
    for (;;) {
      f(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1].code + 1 == alphabet_size) w[--i] = Label{0};
      if (i == 0) break;
      ++w[i - 1].code;
    }
  }
}

std::vector<Word> exhaustive_words(const Alphabet& alphabet, std::size_t max_len,
                                   const std::function<bool(std::span<const Label>)>& pred) {
  std::vector<Word> out;
  for_each_word(alphabet.size(), max_len, [&](std::span<const Label> w) {
    if (pred(w)) out.emplace_back(w.begin(), w.end());
  });
  return out;
}

bool cyk_derives(const Grammar& g, std::span<const Label> w) {
  const std::size_t n = w.size();
  const std::size_t nts = g.nonterminal_count();
  // table[i][j][A]: A derives w[i, j).
  std::vector<std::vector<std::vector<bool>>> table(n + 1, std::vector<std::vector<bool>>(n + 1));
  for (std::size_t len = 0; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const std::size_t j = i + len;
      auto& cell = table[i][j];
      cell.assign(nts, false);
      for (bool grew = true; grew;) {
        grew = false;
        for (const Production& p : g.productions()) {
          if (cell[p.lhs]) continue;
          bool derives = false;
          switch (p.shape) {
            case Production::Shape::Epsilon: derives = len == 0; break;
            case Production::Shape::Terminal: derives = len == 1 && w[i] == p.terminal; break;
            case Production::Shape::Binary:
              for (std::size_t k = i; k <= j && !derives; ++k) derives = table[i][k][p.left] && table[k][j][p.right];
              break;
          }
          if (derives) cell[p.lhs] = grew = true;
        }
      }
    }
  }
  return table[0][n][g.start()];
}

ApproxDyckVerdict approx_dyck_by_graph(std::span<const Label> w) {
  const Alphabet a = Alphabet::dyck(2);
  const VertexId len = static_cast<VertexId>(w.size());
  // Chain A: 0..len, loops at both ends. Chain B: len+1..2len+1, loop at the end.
  LabeledGraph g(GraphMode::Directed, a, 2 * (len + 1));
  auto loops = [&](VertexId v) {
    for (std::uint32_t c = 0; c < a.size(); ++c)
      if (!g.has_edge(Edge{v, Label{c}, v})) g.insert(Edge{v, Label{c}, v});
  };
  const VertexId b0 = len + 1;
  for (VertexId i = 0; i < len; ++i) {
    if (!a.contains(w[i])) throw PreconditionError("letters are 0, 0bar, 1, 1bar");
    g.insert(Edge{i, w[i], i + 1});
    g.insert(Edge{b0 + i, w[i], b0 + i + 1});
  }
  loops(0);
  loops(len);
  loops(b0 + len);
  const ReachIndex idx = solve_dyck(Instance{std::move(g), 0, 0, std::nullopt});
  return ApproxDyckVerdict{idx.contains(0, len), idx.contains(b0, b0 + len)};
}

}  // namespace dyck
