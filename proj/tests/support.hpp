#pragma once

// Test-local oracles. They are deliberately naive and share no code with
// the library routines they are compared against.

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dyck/graph.hpp"

namespace testing {

using dyck::Label;
using dyck::VertexId;

/// Dyck check with an explicit stack over Dyck codes (even = open).
inline bool stack_dyck(std::span<const Label> w) {
  std::vector<std::uint32_t> st;
  for (Label l : w) {
    if (l.code % 2 == 0) {
      st.push_back(l.code / 2);
    } else {
      if (st.empty() || st.back() != l.code / 2) return false;
      st.pop_back();
    }
  }
  return st.empty();
}

inline dyck::Word word(std::initializer_list<std::uint32_t> codes) {
  dyck::Word w;
  for (auto c : codes) w.push_back(Label{c});
  return w;
}

/// Pairs (u, v) joined by a walk whose label is Dyck, found by a search over
/// (vertex, stack) states with the stack height capped. Sound; complete
/// once the cap exceeds the height any witness needs.
inline std::set<std::pair<VertexId, VertexId>> bounded_stack_reach(const dyck::Instance& inst,
                                                                   std::size_t max_height) {
  const auto edges = inst.graph.edges();
  std::set<std::pair<VertexId, VertexId>> out;
  for (VertexId s = 0; s < inst.graph.vertex_count(); ++s) {
    using State = std::pair<VertexId, std::vector<std::uint32_t>>;
    std::set<State> seen;
    std::queue<State> q;
    q.push({s, {}});
    seen.insert({s, {}});
    while (!q.empty()) {
      auto [v, st] = q.front();
      q.pop();
      if (st.empty()) out.insert({s, v});
      for (const auto& e : edges) {
        if (e.from != v) continue;
        auto next = st;
        if (e.label.code % 2 == 0) {
          if (next.size() >= max_height) continue;
          next.push_back(e.label.code / 2);
        } else {
          if (next.empty() || next.back() != e.label.code / 2) continue;
          next.pop_back();
        }
        State ns{e.to, std::move(next)};
        if (seen.insert(ns).second) q.push(std::move(ns));
      }
    }
  }
  return out;
}

inline std::set<std::pair<VertexId, VertexId>> as_set(const std::vector<std::pair<VertexId, VertexId>>& v) {
  return {v.begin(), v.end()};
}

}  // namespace testing
