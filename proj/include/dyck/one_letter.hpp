#pragma once

// One-letter Dyck reachability.
//
// On undirected dyck(1) graphs, s != t are Dyck-connected iff s has an l1
// edge, t has an l1bar edge, and an even-length walk joins them. Even walks
// are answered by a union-find over the parity double cover (v, bit).
// Directed one-letter instances go through cfl_reach; the distance gadget
// below turns BFS distances into one-letter Dyck queries.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dyck/cfl_reach.hpp"
#include "dyck/graph.hpp"

namespace dyck {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n = 0);

  std::size_t find(std::size_t x) const;
  /// Returns true when two distinct classes were merged.
  bool unite(std::size_t a, std::size_t b);
  bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  mutable std::vector<std::size_t> parent_;
  std::vector<std::uint32_t> rank_;
};

/// Even/odd walk connectivity of an undirected multigraph (labels ignored).
/// Insertions are incremental; deletions rebuild from the surviving edges.
class ParityIndex {
 public:
  explicit ParityIndex(VertexId vertex_count = 0);
  /// Built from every stored edge of `g`, labels ignored.
  static ParityIndex from_graph(const LabeledGraph& g);

  VertexId vertex_count() const noexcept { return n_; }

  void insert(VertexId u, VertexId v);
  /// Throws UpdateError when no {u,v} edge is present.
  void erase(VertexId u, VertexId v);

  /// (u,pu) and (v,pv) lie in the same class of the double cover.
  bool connected(VertexId u, int pu, VertexId v, int pv) const;
  /// A walk of even length (possibly zero) joins u and v.
  bool even_walk(VertexId u, VertexId v) const { return connected(u, 0, v, 0); }
  bool odd_walk(VertexId u, VertexId v) const { return connected(u, 0, v, 1); }

  /// Undirected edge multiplicities keyed by (min, max).
  const std::map<std::pair<VertexId, VertexId>, std::uint32_t>& edges() const noexcept { return edges_; }

 private:
  std::size_t node(VertexId v, int parity) const { return 2 * std::size_t(v) + (parity & 1); }
  void link(VertexId u, VertexId v);
  void rebuild();

  VertexId n_;
  DisjointSets cover_;
  std::map<std::pair<VertexId, VertexId>, std::uint32_t> edges_;
};

ParityIndex parity_insert(ParityIndex idx, VertexId u, VertexId v);
ParityIndex parity_delete(ParityIndex idx, VertexId u, VertexId v);

/// Throws PreconditionError unless the instance is undirected over dyck(1).
void require_undirected_one_letter(const Instance& inst);

/// The three local/parity conditions (or s == t), evaluated against `parity`
/// for the walk condition.
bool prop1_conditions(const Instance& inst, const ParityIndex& parity);
bool prop1_check(const Instance& inst);

// Distance gadget ---------------------------------------------------------------

/// Original vertices keep their ids; chain vertex (v,k), 1 <= k <= n, gets
/// id n + v*n + (k-1).
struct DistanceGadget {
  Instance instance;  // directed, dyck(1), marks (0,0)
  VertexId base_count = 0;

  VertexId chain_vertex(VertexId v, VertexId k) const { return base_count + v * base_count + (k - 1); }
};

/// Every edge of the digraph labeled l1, an l1 self-loop per vertex, and
/// l1bar chains v -> (v,1) -> ... -> (v,n). A digraph self-loop coincides
/// with the added one and is kept once.
DistanceGadget build_distance_gadget(VertexId vertex_count,
                                     std::span<const std::pair<VertexId, VertexId>> edges);

/// Distance s -> t read off a solved gadget: 0 when s == t, otherwise the
/// least k such that s reaches (t,k); nullopt when no such k exists.
std::optional<VertexId> gadget_distance(const DistanceGadget& gadget, const ReachIndex& index,
                                        VertexId s, VertexId t);

}  // namespace dyck
