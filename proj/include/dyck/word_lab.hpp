#pragma once

// Word-level machinery over bracket alphabets.
//
// The four-letter alphabet {0, 1, 0bar, 1bar} shares the codes of dyck(2):
// 0 -> 0, 0bar -> 1, 1 -> 2, 1bar -> 3. The a/b letters of the near-Dyck
// encoding use the same codes (a = 0, b = 2). Functions that only look at
// the open/close structure (reduce, in_q, in_q_init, mu) accept any Dyck
// code, so they apply to source labels l1.. as well.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dyck/graph.hpp"
#include "dyck/reductions.hpp"

namespace dyck {

inline constexpr Label kZero{0}, kZeroBar{1}, kOne{2}, kOneBar{3};

/// Exhaustively deletes open-then-matching-close factors (0 0bar, 1 1bar);
/// close-then-open factors stay. Bullets are kept as they are.
Word reduce(std::span<const Label> w);

/// Membership in the Dyck language of a dyck(n) alphabet.
bool is_dyck(std::span<const Label> w, const Alphabet& alphabet);
/// Membership in the near-Dyck language: bullets are neutral, the rest must
/// be Dyck over the per-vertex pairs.
bool is_near_dyck(std::span<const Label> w, const Alphabet& alphabet);

/// Factor of some Dyck word: reduce(w) is a block of closes then opens.
bool in_q(std::span<const Label> w);
/// Prefix of some Dyck word: reduce(w) has no close letter.
bool in_q_init(std::span<const Label> w);

/// +1 per open letter, -1 per close letter.
long mu(std::span<const Label> w);

// Token helpers -------------------------------------------------------------------

/// Tokens 0 / 0bar / 1 / 1bar, a / abar / b / bbar, l1 / l1bar / l2 / l2bar;
/// "eps" or an empty string is the empty word. Throws ParseError.
Word parse_binary_word(std::string_view text);
std::string format_binary_word(std::span<const Label> w);
std::string format_ab_word(std::span<const Label> w);
/// Space-separated tokens of `alphabet`; "eps" is the empty word.
Word parse_word(std::string_view text, const Alphabet& alphabet);

// Regular languages -----------------------------------------------------------------

/// Regular expression over the four-letter alphabet.
class Regex {
 public:
  enum class Kind { Epsilon, Letter, Concat, Union, Star };

  static Regex epsilon();
  static Regex letter(Label l);
  static Regex word(std::span<const Label> w);
  static Regex concat(std::vector<Regex> parts);
  static Regex alt(std::vector<Regex> parts);
  static Regex star(Regex inner);

  Kind kind() const;
  Label label() const;
  const std::vector<Regex>& children() const;

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Complete deterministic automaton obtained from a Thompson NFA by the
/// subset construction. State 0 is the start state.
class Automaton {
 public:
  static Automaton compile(const Regex& re);

  bool accepts(std::span<const Label> w) const;
  std::size_t state_count() const noexcept { return accepting_.size(); }
  std::uint32_t step(std::uint32_t state, Label l) const { return delta_[state * 4 + l.code]; }
  bool accepting(std::uint32_t state) const { return accepting_[state]; }
  /// No accepting state is reachable from `state`.
  bool dead(std::uint32_t state) const { return dead_[state]; }

 private:
  std::vector<std::uint32_t> delta_;
  std::vector<bool> accepting_;
  std::vector<bool> dead_;
};

enum class Regular { OmegaPlus, OmegaMinus, Omega, VarpiPlus, VarpiMinus, Varpi };

/// "omega+", "omega-", "omega", "varpi+", "varpi-", "varpi".
std::string to_string(Regular which);
std::optional<Regular> parse_regular(std::string_view name);

///   omega+ = (0 0 + 1 1)*              varpi+ = (omega+ 1 omega+ 1)* omega+
///   omega- = (0bar 0bar + 1bar 1bar)*  varpi- = (omega- 1bar omega- 1bar)* omega-
///   omega  = (omega+ + omega- + 0bar 0)*  varpi = (omega 1 omega 1bar)* omega
Regex regex(Regular which);
const Automaton& automaton(Regular which);
bool in_regular(std::span<const Label> w, Regular which);

/// Reduced-label shape of the nominal paths through the gadget of a source
/// edge labeled `lambda` (dyck(2) label):
///   l1     varpi 1 1 0 0 omega+ 1 0
///   l2     varpi 1 omega+ 0 0 1 1 omega+ 0
///   l1bar  0bar 1bar omega- 0bar 0bar 1bar 1bar varpi
///   l2bar  0bar omega- 1bar 1bar 0bar 0bar omega- 1bar varpi
Regex nominal_shape(Label lambda);
const Automaton& nominal_shape_automaton(Label lambda);

// Morphisms -----------------------------------------------------------------------------

/// Near-Dyck word over near_dyck(n) to a/b words: dot -> a abar,
/// v<j> -> a^(j+1) b a^(n-j), v<j>bar -> abar^(n-j) bbar abar^(j+1).
Word phi_neardyck(std::span<const Label> w, const Alphabet& alphabet);
/// dyck(2) word to the concatenation of the twelve-letter encodings.
Word phi_undirected(std::span<const Label> w);

/// Element of Z2 * Z2 = <alpha, beta | alpha^2 = beta^2 = 1>, stored as its
/// alternating reduced word over 'a' (alpha) and 'b' (beta).
class FreeProductElement {
 public:
  FreeProductElement() = default;
  static FreeProductElement alpha();
  static FreeProductElement beta();
  /// gamma = beta alpha.
  static FreeProductElement gamma();

  FreeProductElement operator*(const FreeProductElement& rhs) const;
  FreeProductElement inverse() const;
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::string& letters() const noexcept { return letters_; }
  std::string str() const { return letters_.empty() ? "1" : letters_; }

  bool operator==(const FreeProductElement&) const = default;

 private:
  void push(char g);
  std::string letters_;
};

/// 0, 0bar -> alpha; 1, 1bar -> beta.
FreeProductElement theta(std::span<const Label> w);
/// k with e = gamma^k, or nullopt.
std::optional<long> gamma_exponent(const FreeProductElement& e);

// Nominal decomposition ------------------------------------------------------------------

/// One nominal piece of a walk in an undirected gadget: steps
/// [first_step, end_step) going from `from` to `to`. `source_label` is set
/// for a piece through the chain of source edge (from, label, to), and
/// unset for a 0/0bar excursion that returns to its start.
struct NominalSegment {
  std::size_t first_step = 0;
  std::size_t end_step = 0;
  VertexId from = 0;
  VertexId to = 0;
  std::optional<Label> source_label;
};

struct NominalDecomposition {
  /// v_0 .. v_k: the original vertices the walk passes through.
  std::vector<VertexId> vertices;
  std::vector<NominalSegment> segments;
  /// The source edges of the labeled segments, in order.
  std::vector<Edge> ancestor;

  Word ancestor_label() const;
};

/// Decomposition of a Dyck walk between original vertices of a
/// dyck2_to_undirected target. Throws PreconditionError when the walk is not
/// a walk of the target, is not Dyck, or has an endpoint outside the
/// original vertices; throws InvariantError on a segment that fits neither
/// nominal class.
NominalDecomposition nominal_decompose(const Walk& walk, const CompiledReduction& red);
/// Same split for any walk between original vertices whose label is a
/// factor of a Dyck word.
NominalDecomposition nominal_split(const Walk& walk, const CompiledReduction& red);

}  // namespace dyck
