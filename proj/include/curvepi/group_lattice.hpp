#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "curvepi/group_table.hpp"
#include "curvepi/perm_group.hpp"

namespace curvepi {

struct MinGeneratorsOptions {
  // Exact search is attempted only up to this order.
  std::size_t exhaustive_bound = 2000;
  std::uint64_t seed = 0;
  // Pseudo-random tuples tried per k before the exhaustive sweep.
  std::size_t random_budget = 64;
  // Above exhaustive_bound: return a randomized upper bound instead of
  // throwing group_too_large.
  bool allow_random_fallback = false;
};

struct MinGenerators {
  unsigned value = 0;
  // True when value is only an upper bound (randomized fallback).
  bool upper_bound_only = false;
};

// d(G) by incremental search: for k = 0, 1, ..: a seeded random budget, then
// an exhaustive sweep whose first entry ranges over one generator per cyclic
// subgroup (largest cyclic subgroups first).
MinGenerators min_generators(const PermutationGroup& g, const MinGeneratorsOptions& opts = {});

// d(G) by plain enumeration of all k-tuples. Slow; cross-check route.
unsigned min_generators_exhaustive(const PermutationGroup& g);

// Number of k-tuples of elements generating G, by direct enumeration.
unsigned long long count_generating_tuples(const PermutationGroup& g, unsigned k);

struct SubgroupLattice {
  // Subgroups as element subsets of g.table(), ordered by increasing order
  // and then by subset; the last entry is G itself, the first the trivial group.
  std::vector<Subset> subgroups;
  // A generating set (table indices) for each subgroup.
  std::vector<std::vector<Elem>> generators;

  std::size_t size() const noexcept { return subgroups.size(); }
  bool contains(std::size_t big, std::size_t small) const {
    return subgroups[small].is_subset_of(subgroups[big]);
  }
  std::optional<std::size_t> find(const Subset& s) const;
};

inline constexpr std::size_t kLatticeBound = 200;

// All subgroups of g (up to equality): cyclic subgroups, then joins with
// cyclic subgroups to a fixed point.
SubgroupLattice subgroup_lattice(const PermutationGroup& g, std::size_t bound = kLatticeBound);

// mu(H, G) for every H in the lattice, same indexing.
std::vector<long long> moebius(const SubgroupLattice& lattice);

// phi_k(G) = sum_H mu(H, G) |H|^k.
long long eulerian(const PermutationGroup& g, unsigned k, std::size_t bound = kLatticeBound);
long long eulerian(const SubgroupLattice& lattice, const std::vector<long long>& mu, unsigned k);

// Converts a table subset back into a permutation group.
PermutationGroup subgroup_from_elements(const PermutationGroup& g, const std::vector<Elem>& gens);

// t_G, the minimal number of generators of the augmentation ideal of k[G] in
// characteristic p. Known only for p-groups, where it equals d(G).
std::optional<unsigned> nakajima_tG(const PermutationGroup& g, unsigned p,
                                    const MinGeneratorsOptions& opts = {});

}  // namespace curvepi
