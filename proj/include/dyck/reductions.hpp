#pragma once

// Gadget compilers with exact update translation.
//
//   alt_to_neardyck      alternating instance -> near-Dyck instance, marks
//                        (source = t, sink = s); 1 target update per source
//                        update from an Or-vertex, 2 from an And-vertex.
//   neardyck_to_dyck2    near-Dyck -> directed dyck(2) (a = l1, b = l2);
//                        exactly 1 target update per source update.
//   dyck2_to_undirected  directed dyck(2) -> undirected dyck(2) (0 = l1,
//                        1 = l2); exactly 12 target updates per source update.
//
// The vertex-numbering bijections are the identity on dense ids: vertex
// id i carries the near-Dyck letters v<i> / v<i>bar.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyck/graph.hpp"

namespace dyck {

enum class ReductionKind { AltToNearDyck, NearDyckToDyck2, Dyck2ToUndirected };

std::string to_string(ReductionKind kind);
std::optional<ReductionKind> parse_reduction_kind(std::string_view name);

/// Coordinates of an interior vertex (x, lambda, y, index) of the
/// undirected gadget; index is 1..11.
struct ChainVertex {
  VertexId x = 0;
  Label lambda;
  VertexId y = 0;
  std::uint32_t index = 0;

  auto operator<=>(const ChainVertex&) const = default;
};

inline constexpr std::uint32_t kChainInterior = 11;
inline constexpr std::uint32_t kChainLength = 12;

class CompiledReduction {
 public:
  ReductionKind kind() const noexcept { return kind_; }
  /// Target image of the source instance given at compile time.
  const Instance& target() const noexcept { return target_; }
  VertexId source_vertex_count() const noexcept { return source_vertices_; }
  /// Structured name of every target vertex, indexed by id.
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  /// Sidecar map: "<name> <id>" per line.
  std::string map_text() const;

  /// Target updates realising `op` on the source; Query maps to Query.
  std::vector<UpdateOp> translate(const UpdateOp& op) const;
  /// Target edges encoding one source edge (the E2 part for the first two
  /// kinds, the 12 chain edges for the undirected kind).
  std::vector<Edge> encode_edge(const Edge& source_edge) const;

  // Layouts (dense ids are a fixed function of the structured names).

  /// alt_to_neardyck: id of (x, i) for an And-vertex x, 0 <= i <= n.
  VertexId and_chain(VertexId x, std::uint32_t i) const;
  /// neardyck_to_dyck2: id of (x, dot).
  VertexId bullet_vertex(VertexId x) const;
  /// neardyck_to_dyck2: id of (x, lambda, i) for a bracket label lambda.
  VertexId bracket_chain(VertexId x, Label lambda, std::uint32_t i) const;
  /// dyck2_to_undirected: id of (x, lambda, y, i), 1 <= i <= 11.
  VertexId chain_vertex(const ChainVertex& c) const;
  /// dyck2_to_undirected: inverse of chain_vertex; nullopt for original vertices.
  std::optional<ChainVertex> chain_of(VertexId id) const;

 private:
  friend CompiledReduction compile_alt_to_neardyck(const Instance&);
  friend CompiledReduction compile_neardyck_to_dyck2(const Instance&);
  friend CompiledReduction compile_dyck2_to_undirected(const Instance&);

  CompiledReduction(ReductionKind kind, Instance target) : kind_(kind), target_(std::move(target)) {}

  ReductionKind kind_;
  Instance target_;
  VertexId source_vertices_ = 0;
  std::uint32_t label_pairs_ = 0;               // near-Dyck letters n (neardyck_to_dyck2)
  std::vector<Gate> gates_;                     // alt_to_neardyck
  std::vector<std::uint32_t> and_rank_;         // alt_to_neardyck
  std::vector<std::string> names_;
};

CompiledReduction compile_alt_to_neardyck(const Instance& inst);
CompiledReduction compile_neardyck_to_dyck2(const Instance& inst);
CompiledReduction compile_dyck2_to_undirected(const Instance& inst);
CompiledReduction compile(ReductionKind kind, const Instance& inst);

std::vector<UpdateOp> translate_updates(const CompiledReduction& red, std::span<const UpdateOp> script);

/// The twelve-letter encodings over 0 = l1, 1 = l2 of dyck(2), for a source
/// label of dyck(2) (l1, l1bar, l2, l2bar).
const Word& undirected_encoding(Label lambda);

/// Expected bound on |translate(op)| for an edge update.
struct TranslationBound {
  std::size_t min = 0;
  std::size_t max = 0;
};
TranslationBound translation_bound(ReductionKind kind);

}  // namespace dyck
