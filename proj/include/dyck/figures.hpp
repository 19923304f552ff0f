#pragma once

// The worked examples: the five-vertex And-Or graph and the two-edge Dyck
// cycle with the two Dyck cycles of its undirected gadget.

#include <span>

#include "dyck/graph.hpp"
#include "dyck/reductions.hpp"

namespace dyck {

/// v1..v5 as 0..4, s = v1, t = v5, And = {v1, v3}; same as data/fig1.graph.
Instance figure1_instance();
/// s1 = 0, s2 = 1, edges (s1, l1, s2) and (s2, l1bar, s1), marks (s1, s1).
Instance figure2_source();

/// Builds the walk visiting `vertices` in order; each step takes the edge
/// of `g` between the two vertices (throws PreconditionError when there is
/// none or more than one).
Walk walk_through(const LabeledGraph& g, std::span<const VertexId> vertices);

/// The four-step cycle at s1 that only uses the two 0/0bar edges at s1.
Walk figure2_gamma1(const CompiledReduction& gadget);
/// The 32-step cycle at s1 through both chains, backtracking once in each.
Walk figure2_gamma2(const CompiledReduction& gadget);

}  // namespace dyck
