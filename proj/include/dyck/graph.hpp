#pragma once

// Labeled graphs, alphabets, instances and edge updates, plus the
// line-oriented text formats used by the CLI.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dyck {

using VertexId = std::uint32_t;

/// A label is a dense code inside its Alphabet: pair k opens with code 2k
/// and closes with code 2k+1; the bullet (near-Dyck only) is code 2*pairs.
struct Label {
  std::uint32_t code = 0;

  auto operator<=>(const Label&) const = default;
};

enum class AlphabetKind { Dyck, NearDyck };

/// Either n matched pairs l1..ln / l1bar..lnbar, or one pair per vertex
/// v0..v{N-1} / v0bar.. plus the self-contained bullet `dot`.
class Alphabet {
 public:
  static Alphabet dyck(std::uint32_t pairs);
  static Alphabet near_dyck(std::uint32_t vertex_count);

  AlphabetKind kind() const noexcept { return kind_; }
  std::uint32_t pairs() const noexcept { return pairs_; }
  bool has_bullet() const noexcept { return kind_ == AlphabetKind::NearDyck; }
  std::uint32_t size() const noexcept { return 2 * pairs_ + (has_bullet() ? 1 : 0); }

  bool contains(Label l) const noexcept { return l.code < size(); }
  bool is_open(Label l) const noexcept { return l.code < 2 * pairs_ && l.code % 2 == 0; }
  bool is_close(Label l) const noexcept { return l.code < 2 * pairs_ && l.code % 2 == 1; }
  bool is_bullet(Label l) const noexcept { return has_bullet() && l.code == 2 * pairs_; }

  Label open(std::uint32_t pair) const;
  Label close(std::uint32_t pair) const;
  Label bullet() const;
  /// The matching label; throws for the bullet.
  Label bar(Label l) const;
  std::uint32_t pair_of(Label l) const noexcept { return l.code / 2; }

  std::string token(Label l) const;
  std::optional<Label> parse_token(std::string_view token) const;

  bool operator==(const Alphabet&) const = default;

 private:
  Alphabet(AlphabetKind kind, std::uint32_t pairs) : kind_(kind), pairs_(pairs) {}

  AlphabetKind kind_;
  std::uint32_t pairs_;
};

using Word = std::vector<Label>;

struct Edge {
  VertexId from = 0;
  Label label;
  VertexId to = 0;

  auto operator<=>(const Edge&) const = default;
};

enum class GraphMode { Directed, Undirected };

/// Edge *set* over dense vertices 0..vertex_count-1. In undirected mode an
/// edge is stored once (endpoints ordered) and reported in both directions.
class LabeledGraph {
 public:
  LabeledGraph(GraphMode mode, Alphabet alphabet, VertexId vertex_count);

  GraphMode mode() const noexcept { return mode_; }
  bool undirected() const noexcept { return mode_ == GraphMode::Undirected; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  VertexId vertex_count() const noexcept { return vertex_count_; }

  bool has_edge(const Edge& e) const;
  /// Throws UpdateError when the edge is already present.
  void insert(const Edge& e);
  /// Throws UpdateError when the edge is absent.
  void erase(const Edge& e);

  /// Number of stored edges (an undirected edge counts once).
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::set<Edge>& stored_edges() const noexcept { return edges_; }
  /// Every traversable orientation: undirected edges appear twice
  /// (self-loops once).
  std::vector<Edge> edges() const;

  /// Throws PreconditionError on an out-of-range endpoint or foreign label.
  void validate(const Edge& e) const;

  bool operator==(const LabeledGraph&) const = default;

 private:
  Edge canonical(const Edge& e) const;

  GraphMode mode_;
  Alphabet alphabet_;
  VertexId vertex_count_;
  std::set<Edge> edges_;
};

enum class Gate { And, Or };

struct Instance {
  LabeledGraph graph;
  VertexId source = 0;
  VertexId sink = 0;
  /// Total map vertex -> gate when present.
  std::optional<std::vector<Gate>> partition;

  bool operator==(const Instance&) const = default;
};

struct UpdateOp {
  enum class Kind { Ins, Del, Query };

  Kind kind = Kind::Query;
  Edge edge;

  static UpdateOp ins(Edge e) { return {Kind::Ins, e}; }
  static UpdateOp del(Edge e) { return {Kind::Del, e}; }
  static UpdateOp query() { return {}; }

  UpdateOp inverse() const;

  bool operator==(const UpdateOp&) const = default;
};

/// Applies an edge update in place; Query is a no-op.
void apply_in_place(Instance& inst, const UpdateOp& op);
/// Value-semantics variant of apply_in_place.
Instance apply_update(Instance inst, const UpdateOp& op);

/// Identifier of a graph's content (mode, alphabet, vertices, edge set).
std::uint64_t fingerprint(const LabeledGraph& g);

// Walks ------------------------------------------------------------------------

struct Step {
  Label label;
  VertexId to = 0;

  auto operator<=>(const Step&) const = default;
};

/// A walk: vertices and edges may repeat.
struct Walk {
  VertexId start = 0;
  std::vector<Step> steps;

  std::size_t length() const noexcept { return steps.size(); }
  VertexId end() const noexcept { return steps.empty() ? start : steps.back().to; }
  Word label() const;

  auto operator<=>(const Walk&) const = default;
};

/// Every step follows an edge of `g` (either orientation when undirected).
bool is_walk(const LabeledGraph& g, const Walk& w);

// Text formats ---------------------------------------------------------------

Instance parse_graph(std::istream& in);
Instance parse_graph(std::string_view text);
Instance read_graph_file(const std::string& path);
std::string serialize(const Instance& inst);

/// `lines`, when given, receives the 1-based source line of every op.
std::vector<UpdateOp> parse_script(std::istream& in, const Alphabet& alphabet,
                                   std::vector<std::size_t>* lines = nullptr);
std::vector<UpdateOp> parse_script(std::string_view text, const Alphabet& alphabet,
                                   std::vector<std::size_t>* lines = nullptr);
std::string serialize_script(std::span<const UpdateOp> ops, const Alphabet& alphabet);
std::string format_op(const UpdateOp& op, const Alphabet& alphabet);

std::string format_word(std::span<const Label> w, const Alphabet& alphabet);

}  // namespace dyck
