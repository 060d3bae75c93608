#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace fosf {

// Disjoint sets over 0..n-1 with union by rank and path compression.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0u);
    rank_.assign(n, 0);
  }

  std::uint32_t add() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    rank_.push_back(0);
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t r = x;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[x] != r) x = std::exchange(parent_[x], r);
    return r;
  }

  // Links the two roots and returns {survivor, absorbed}. On equal rank the
  // smaller index survives unless `prefer_second` is set.
  std::pair<std::uint32_t, std::uint32_t> unite(std::uint32_t a, std::uint32_t b, bool prefer_second = false) {
    a = find(a);
    b = find(b);
    if (a == b) return {a, b};
    bool keep_a;
    if (rank_[a] != rank_[b]) {
      keep_a = rank_[a] > rank_[b];
    } else {
      keep_a = prefer_second ? false : a < b;
      if (keep_a) ++rank_[a]; else ++rank_[b];
    }
    if (!keep_a) std::swap(a, b);
    parent_[b] = a;
    return {a, b};
  }

  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace fosf
