#include "dyck/alternating.hpp"

#include <algorithm>
#include <sstream>

#include "dyck/error.hpp"

namespace dyck {

namespace {

const std::vector<Gate>& gates(const Instance& inst) {
  if (!inst.partition) throw PreconditionError("alternating reachability needs a partition");
  if (inst.partition->size() != inst.graph.vertex_count())
    throw PreconditionError("partition does not cover every vertex");
  return *inst.partition;
}

std::vector<std::vector<VertexId>> successors(const LabeledGraph& g) {
  std::vector<std::vector<VertexId>> succ(g.vertex_count());
  for (const Edge& e : g.edges()) succ[e.from].push_back(e.to);
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return succ;
}

template <typename InSet>
bool satisfied(Gate gate, const std::vector<VertexId>& succ, InSet&& in_set) {
  if (gate == Gate::Or) return std::any_of(succ.begin(), succ.end(), in_set);
  return std::all_of(succ.begin(), succ.end(), in_set);
}

}  // namespace

std::vector<VertexId> FixpointTrace::ordered_members() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < first_layer.size(); ++v)
    if (first_layer[v]) out.push_back(v);
  std::stable_sort(out.begin(), out.end(), [&](VertexId a, VertexId b) { return *first_layer[a] < *first_layer[b]; });
  return out;
}

AlternatingResult solve_alternating(const Instance& inst) {
  const auto& gate = gates(inst);
  const VertexId n = inst.graph.vertex_count();
  const auto succ = successors(inst.graph);

  FixpointTrace trace;
  trace.first_layer.assign(n, std::nullopt);
  std::vector<bool> current(n, false);
  current[inst.sink] = true;
  trace.first_layer[inst.sink] = 0;
  trace.layers.push_back(current);

  // Round-based so that every layer X_i is materialised.
  for (std::uint32_t round = 1;; ++round) {
    std::vector<bool> next = current;
    bool grew = false;
    for (VertexId x = 0; x < n; ++x) {
      if (current[x]) continue;
      if (satisfied(gate[x], succ[x], [&](VertexId y) { return bool(current[y]); })) {
        next[x] = true;
        trace.first_layer[x] = round;
        grew = true;
      }
    }
    if (!grew) break;
    trace.layers.push_back(next);
    current = std::move(next);
  }
  const bool member = trace.contains(inst.source);
  return AlternatingResult{member, std::move(trace)};
}

bool is_well_ordered(std::span<const VertexId> seq, const Instance& inst) {
  const auto& gate = gates(inst);
  if (seq.empty() || seq.front() != inst.sink) return false;
  const VertexId n = inst.graph.vertex_count();
  const auto succ = successors(inst.graph);
  std::vector<bool> seen(n, false);
  for (VertexId v : seq)
    if (v >= n) return false;
  seen[seq.front()] = true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const VertexId w = seq[i];
    if (!satisfied(gate[w], succ[w], [&](VertexId y) { return bool(seen[y]); })) return false;
    seen[w] = true;
  }
  return true;
}

std::optional<std::uint32_t> kappa(VertexId x, const Instance& inst) {
  const auto& gate = gates(inst);
  const VertexId n = inst.graph.vertex_count();
  if (n > kKappaVertexLimit) throw PreconditionError("kappa is limited to 12 vertices");
  if (x >= n) throw PreconditionError("vertex out of range");
  if (x == inst.sink) return 0;

  const auto succ = successors(inst.graph);
  std::vector<std::uint32_t> succ_mask(n, 0);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId y : succ[v]) succ_mask[v] |= 1u << y;
  auto extends = [&](std::uint32_t set, VertexId w) {
    if (gate[w] == Gate::Or) return (succ_mask[w] & set) != 0;
    return (succ_mask[w] & ~set) == 0;
  };

  // Breadth-first over the sets of vertices a duplicate-free well-ordered
  // sequence can cover; a sequence of k+1 elements is found at depth k.
  std::vector<bool> visited(std::size_t{1} << n, false);
  std::vector<std::uint32_t> frontier{1u << inst.sink};
  visited[frontier.front()] = true;
  for (std::uint32_t depth = 1; !frontier.empty(); ++depth) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t set : frontier) {
      for (VertexId w = 0; w < n; ++w) {
        if (set & (1u << w) || !extends(set, w)) continue;
        if (w == x) return depth;
        const std::uint32_t grown = set | (1u << w);
        if (!visited[grown]) {
          visited[grown] = true;
          next.push_back(grown);
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::string format_trace(const FixpointTrace& trace, const Instance& inst) {
  const auto& gate = gates(inst);
  std::ostringstream out;
  out << "vertex  gate  in_X  layer\n";
  for (VertexId v = 0; v < trace.first_layer.size(); ++v) {
    out << std::left;
    out.width(8);
    out << v;
    out.width(6);
    out << (gate[v] == Gate::And ? "and" : "or");
    out.width(6);
    out << (trace.contains(v) ? "yes" : "no");
    if (trace.first_layer[v])
      out << *trace.first_layer[v];
    else
      out << '-';
    out << '\n';
  }
  for (std::size_t i = 0; i < trace.layers.size(); ++i) {
    out << "X" << i << " = {";
    bool first = true;
    for (VertexId v = 0; v < trace.layers[i].size(); ++v) {
      if (!trace.layers[i][v]) continue;
      out << (first ? "" : ", ") << v;
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace dyck
