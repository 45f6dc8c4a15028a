#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace curvepi {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0), classes_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --classes_;
    return true;
  }

  std::size_t classes() const noexcept { return classes_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
  std::size_t classes_;
};

}  // namespace curvepi
