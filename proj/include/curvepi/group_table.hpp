#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "curvepi/permutation.hpp"

namespace curvepi {

using Elem = std::uint32_t;

// Subset of a finite group's elements, stored as a bitset over table indices.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  bool test(Elem i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(Elem i) { words_[i >> 6] |= 1ULL << (i & 63); }
  std::size_t count() const;
  bool is_subset_of(const Subset& other) const;
  std::vector<Elem> members() const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

  struct Hash {
    std::size_t operator()(const Subset& s) const noexcept;
  };

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Cayley table of a finite group. Index 0 is the identity; indices follow the
// sorted element order of the source permutation group.
class GroupTable {
 public:
  explicit GroupTable(std::vector<Permutation> sorted_elements);

  std::size_t size() const noexcept { return elements_.size(); }
  static constexpr Elem identity() noexcept { return 0; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * size() + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem pow(Elem a, long long e) const;
  std::size_t element_order(Elem a) const { return order_[a]; }
  const Permutation& element(Elem i) const { return elements_[i]; }
  std::optional<Elem> find(const Permutation& p) const;
  // Throws not_a_member when p is not in the group.
  Elem index_of(const Permutation& p) const;

  // Subgroup generated by gens, by breadth-first closure.
  Subset closure(std::span<const Elem> gens) const;
  bool generates_all(std::span<const Elem> gens) const;
  Subset full() const;

 private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem, PermutationHash> index_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::size_t> order_;
};

}  // namespace curvepi
