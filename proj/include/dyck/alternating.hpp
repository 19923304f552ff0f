#pragma once

// Alternating reachability: s belongs to the least set X containing t,
// every Or-vertex with a successor in X, and every And-vertex all of whose
// successors are in X. Edge labels are ignored.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyck/graph.hpp"

namespace dyck {

struct FixpointTrace {
  /// X_0 = {t} subset X_1 subset ... subset X_m = X; each layer strictly grows.
  std::vector<std::vector<bool>> layers;
  /// Index of the first layer containing each vertex (iota), if any.
  std::vector<std::optional<std::uint32_t>> first_layer;

  bool contains(VertexId v) const { return first_layer.at(v).has_value(); }
  /// Members of X sorted by first layer, ties by id.
  std::vector<VertexId> ordered_members() const;
};

struct AlternatingResult {
  bool source_in_fixpoint = false;
  FixpointTrace trace;
};

/// Throws PreconditionError when the instance has no partition.
AlternatingResult solve_alternating(const Instance& inst);

/// First element is the sink and every later Or-vertex (And-vertex) has
/// some (all) of its successors among the earlier elements.
bool is_well_ordered(std::span<const VertexId> seq, const Instance& inst);

/// Length-1 of the shortest well-ordered sequence containing x, or nullopt
/// when x is outside X. Refuses instances with more than 12 vertices.
std::optional<std::uint32_t> kappa(VertexId x, const Instance& inst);

inline constexpr VertexId kKappaVertexLimit = 12;

/// Text table: one row per vertex with gate, membership and first layer.
std::string format_trace(const FixpointTrace& trace, const Instance& inst);

}  // namespace dyck
