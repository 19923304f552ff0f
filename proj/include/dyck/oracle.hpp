#pragma once

// Brute-force oracles: bounded walk enumeration, exhaustive word streams,
// a CYK recognizer and a graph-based test for factors/prefixes of Dyck
// words. None of them shares code with the solvers they check.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dyck/cfl_reach.hpp"
#include "dyck/graph.hpp"
#include "dyck/pair_matrix.hpp"
#include "dyck/reductions.hpp"

namespace dyck {

struct EnumerationBudget {
  std::size_t max_path_length = 8;
  std::size_t max_paths = 100000;
  /// Cap on DFS node expansions over the whole call.
  std::size_t max_expansions = 20'000'000;
};

/// Label filter for walk enumeration. The built-in kinds are tracked
/// letter by letter on Dyck codes (open = even code, pair = code / 2) and
/// prune every prefix that cannot be completed; Custom calls `accept` on
/// the full label and `viable`, when set, on every prefix.
struct LabelPredicate {
  enum class Kind { Any, Dyck, Factor, Prefix, Custom };

  Kind kind = Kind::Any;
  std::function<bool(std::span<const Label>)> accept;
  std::function<bool(std::span<const Label> prefix, std::size_t remaining)> viable;

  static LabelPredicate any() { return {Kind::Any, nullptr, nullptr}; }
  /// Dyck words; also prunes prefixes with more open letters than letters left.
  static LabelPredicate dyck() { return {Kind::Dyck, nullptr, nullptr}; }
  /// Factors of Dyck words.
  static LabelPredicate factor() { return {Kind::Factor, nullptr, nullptr}; }
  /// Prefixes of Dyck words.
  static LabelPredicate prefix() { return {Kind::Prefix, nullptr, nullptr}; }
  static LabelPredicate custom(std::function<bool(std::span<const Label>)> accept,
                               std::function<bool(std::span<const Label>, std::size_t)> viable = nullptr) {
    return {Kind::Custom, std::move(accept), std::move(viable)};
  }
};

struct PathEnumeration {
  /// Length-lexicographic order: by length, then by (label, target) per step.
  std::vector<Walk> walks;
  bool truncated = false;
  std::size_t expansions = 0;

  std::vector<Word> labels() const;
};

/// Walks from -> to of length <= max_path_length whose label satisfies the
/// predicate, capped at max_paths.
PathEnumeration enumerate_paths(const Instance& inst, VertexId from, VertexId to, const EnumerationBudget& budget,
                                const LabelPredicate& pred);

struct BruteReach {
  PairMatrix pairs;
  bool truncated = false;
};

/// Pairs joined by an enumerated Dyck walk within the length budget
/// (max_paths is ignored; max_expansions applies).
BruteReach brute_dyck_reach(const Instance& inst, const EnumerationBudget& budget);

/// Nominal path classes of an undirected gadget: the 0/0bar excursions
/// from an original vertex back to itself, the traversals of the chain of
/// one source edge, or every nominal walk leaving a vertex.
struct NominalTag {
  enum class Kind { Loop, Through, From };

  Kind kind = Kind::Loop;
  VertexId vertex = 0;
  Edge edge;

  static NominalTag loop(VertexId x) { return {Kind::Loop, x, {}}; }
  static NominalTag through(Edge e) { return {Kind::Through, e.from, e}; }
  static NominalTag from(VertexId x) { return {Kind::From, x, {}}; }
};

/// Nominal walks of the class whose label is a factor of a Dyck word, in
/// length-lexicographic order. Requires a dyck2_to_undirected gadget.
/// Through walks take at least one 1/1bar edge of their chain; loop walks
/// only 0/0bar edges.
PathEnumeration enumerate_nominal_paths(const CompiledReduction& red, const NominalTag& tag,
                                        const EnumerationBudget& budget);

/// Calls f on every word over codes 0..alphabet_size-1 of length <=
/// max_len, shortest first, lexicographic by code within a length.
void for_each_word(std::uint32_t alphabet_size, std::size_t max_len,
                   const std::function<void(std::span<const Label>)>& f);
std::vector<Word> exhaustive_words(const Alphabet& alphabet, std::size_t max_len,
                                   const std::function<bool(std::span<const Label>)>& pred);

/// CYK membership for a grammar in binary normal form (epsilon rules
/// included).
bool cyk_derives(const Grammar& g, std::span<const Label> w);

struct ApproxDyckVerdict {
  bool factor = false;  // w is a factor of a Dyck word
  bool prefix = false;  // w is a prefix of a Dyck word
};

/// Decided on a small graph with solve_dyck: a chain spelling w (dyck(2)
/// codes) with all four letters looping at its end, and a copy that also
/// loops at its start.
ApproxDyckVerdict approx_dyck_by_graph(std::span<const Label> w);

}  // namespace dyck
