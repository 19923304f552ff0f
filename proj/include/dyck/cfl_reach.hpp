#pragma once

// Dyck and near-Dyck reachability by pair-set saturation.
//
// solve_dyck computes the least set S of vertex pairs with
//   (x,x) in S                                          (empty word)
//   (u',v') in S, u -l_k-> u', v' -lbar_k-> v  =>  (u,v) in S   (wrap)
//   (u,w) in S, (w,v) in S                     =>  (u,v) in S   (concatenation)
// solve_dyck_wrap_only drops the concatenation rule. That variant is kept
// on purpose: it is incomplete (it misses l1 l1bar l2 l2bar) and the
// discrepancy is exercised by the tests.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dyck/graph.hpp"
#include "dyck/pair_matrix.hpp"

namespace dyck {

struct ReachIndex {
  PairMatrix pairs;
  std::uint64_t graph_fingerprint = 0;

  bool contains(VertexId u, VertexId v) const { return pairs.test(u, v); }
  bool operator==(const ReachIndex&) const = default;
};

ReachIndex solve_dyck(const Instance& inst);
ReachIndex solve_dyck_wrap_only(const Instance& inst);

/// Index for the instance obtained by applying `op` to `before`.
/// Insertions continue the fixpoint from `index`; deletions recompute.
/// Throws PreconditionError when `index` was not computed for `before`.
ReachIndex resolve_after_update(const ReachIndex& index, const Instance& before, const UpdateOp& op);

/// (source, sink) membership.
inline bool answer(const ReachIndex& index, const Instance& inst) {
  return index.contains(inst.source, inst.sink);
}

// Grammars in binary normal form ---------------------------------------------

using Nonterminal = std::uint32_t;

struct Production {
  enum class Shape { Epsilon, Terminal, Binary };

  Nonterminal lhs = 0;
  Shape shape = Shape::Epsilon;
  Label terminal;
  Nonterminal left = 0;
  Nonterminal right = 0;
};

using Symbol = std::variant<Label, Nonterminal>;

class Grammar {
 public:
  explicit Grammar(Alphabet terminals) : terminals_(terminals) {}

  /// Dyck_n in normal form:
  ///   S -> eps | S S | O_k C'_k     O_k -> l_k
  ///   C'_k -> S C_k                 C_k -> lbar_k
  static Grammar dyck(std::uint32_t pairs);
  /// Near-Dyck words (bullets erase, remainder is Dyck over the vertices):
  ///   S -> eps | S S | dot | O_v C'_v   with O_v, C'_v, C_v as above.
  static Grammar near_dyck(std::uint32_t vertex_count);

  Nonterminal add_nonterminal(std::string name);
  /// Throws PreconditionError unless rhs is empty, one terminal, or two
  /// nonterminals.
  void add_production(Nonterminal lhs, const std::vector<Symbol>& rhs);
  void set_start(Nonterminal s) { start_ = s; }

  const Alphabet& terminals() const noexcept { return terminals_; }
  Nonterminal start() const noexcept { return start_; }
  std::size_t nonterminal_count() const noexcept { return names_.size(); }
  const std::string& name(Nonterminal a) const { return names_.at(a); }
  const std::vector<Production>& productions() const noexcept { return productions_; }

 private:
  Alphabet terminals_;
  std::vector<std::string> names_;
  std::vector<Production> productions_;
  Nonterminal start_ = 0;
};

/// For every nonterminal A, the pairs (u,v) joined by a path whose label
/// derives from A. Throws PreconditionError on an alphabet mismatch.
std::vector<PairMatrix> solve_cfl(const Instance& inst, const Grammar& g);

}  // namespace dyck
