#pragma once

// Seeded random instances and update scripts for fuzzing.

#include <cstdint>
#include <random>
#include <vector>

#include "dyck/graph.hpp"

namespace dyck {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Each ordered pair (unordered when undirected, self-pairs included) gets
/// one edge with a uniform label with probability `density`. Marks are
/// uniform.
Instance random_instance(Rng& rng, GraphMode mode, const Alphabet& alphabet, VertexId n, double density);

/// Directed dyck(1) graph with l1 edges only and a uniform And/Or partition.
Instance random_alternating(Rng& rng, VertexId n, double density);

/// Every edge the instance's graph could hold (one orientation when
/// undirected). Alternating instances (those with a partition) only use l1.
std::vector<Edge> candidate_edges(const Instance& inst);

/// `ops` operations valid in sequence from `inst`: each is a query with
/// probability `query_rate`, otherwise the toggle of a uniform candidate
/// edge. The last operation is always a query.
std::vector<UpdateOp> random_script(Rng& rng, const Instance& inst, std::size_t ops, double query_rate = 0.25);

/// Every directed dyck(2) instance on n vertices with at most `max_edges`
/// edges, marks (0, n-1).
std::vector<Instance> all_dyck2_sources(VertexId n, std::size_t max_edges);
/// `count` distinct random directed dyck(2) instances on n vertices with
/// 1..max_edges edges, marks (0, n-1).
std::vector<Instance> sample_dyck2_sources(Rng& rng, VertexId n, std::size_t count, std::size_t max_edges);

}  // namespace dyck
