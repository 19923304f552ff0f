#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dyck/graph.hpp"

namespace dyck {

/// Dense square bit matrix over vertex pairs.
class PairMatrix {
 public:
  PairMatrix() = default;
  explicit PairMatrix(VertexId n) : n_(n), stride_((n + 63) / 64), bits_(std::size_t(n) * stride_, 0) {}

  VertexId size() const noexcept { return n_; }
  std::size_t stride() const noexcept { return stride_; }

  bool test(VertexId u, VertexId v) const noexcept {
    return (bits_[std::size_t(u) * stride_ + v / 64] >> (v % 64)) & 1u;
  }
  /// Returns true when the bit was newly set.
  bool set(VertexId u, VertexId v) noexcept {
    std::uint64_t& word = bits_[std::size_t(u) * stride_ + v / 64];
    const std::uint64_t mask = std::uint64_t{1} << (v % 64);
    if (word & mask) return false;
    word |= mask;
    return true;
  }

  std::span<const std::uint64_t> row(VertexId u) const noexcept {
    return {bits_.data() + std::size_t(u) * stride_, stride_};
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += std::popcount(w);
    return c;
  }

  template <typename F>
  void for_each_in_row(VertexId u, F&& f) const {
    auto r = row(u);
    for (std::size_t w = 0; w < r.size(); ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<VertexId>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::pair<VertexId, VertexId>> pairs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId u = 0; u < n_; ++u) for_each_in_row(u, [&](VertexId v) { out.emplace_back(u, v); });
    return out;
  }

  bool operator==(const PairMatrix&) const = default;

 private:
  VertexId n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace dyck
