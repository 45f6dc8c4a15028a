#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curvepi/permutation.hpp"

namespace curvepi {

class GroupTable;

// Largest order for which the full element list is materialized.
inline constexpr std::size_t kElementLimit = 10000;
// Largest order for which a Cayley table is built.
inline constexpr std::size_t kTableLimit = 2048;

// Base and strong generating set, built by the deterministic incremental
// Schreier-Sims algorithm. Base points are the smallest moved point of the
// first generator that fixes the current base.
struct StabilizerChain {
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> generators;  // strong generators fixing earlier base points
    std::vector<Point> orbit;             // orbit of base_point, discovery order
    // transversal[x] maps base_point to x; empty optional outside the orbit.
    std::vector<std::optional<Permutation>> transversal;
  };

  std::size_t degree = 0;
  std::vector<Level> levels;

  unsigned long long order() const;
  // Sifts g through the chain. Returns the residue and the level at which
  // sifting stopped (levels.size() when it passed every level).
  std::pair<Permutation, std::size_t> strip(const Permutation& g) const;
  bool contains(const Permutation& g) const;
  std::vector<Point> base() const;
  std::vector<Permutation> strong_generators() const;
};

StabilizerChain build_stabilizer_chain(std::size_t degree,
                                       const std::vector<Permutation>& generators);

// A finite group given by permutation generators on {0..degree-1}.
// Immutable; the stabilizer chain, element list and Cayley table are memoized
// behind std::call_once and shared between copies.
class PermutationGroup {
 public:
  PermutationGroup() : PermutationGroup(1, {}) {}
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators);

  static PermutationGroup trivial(std::size_t degree) { return {degree, {}}; }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  const StabilizerChain& chain() const;
  unsigned long long order() const { return chain().order(); }
  bool is_trivial() const { return order() == 1; }
  bool contains(const Permutation& g) const;
  bool contains_group(const PermutationGroup& h) const;
  bool same_elements(const PermutationGroup& other) const;
  bool is_normal_in(const PermutationGroup& ambient) const;

  // Sorted element list (identity first). Throws group_too_large above
  // kElementLimit.
  const std::vector<Permutation>& elements() const;
  // Cayley table over elements(). Throws group_too_large above kTableLimit.
  const GroupTable& table() const;

 private:
  struct Cache;
  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Cache> cache_;
};

// Elements by breadth-first closure under right multiplication by generators.
// Independent of the stabilizer chain; used to cross-check it.
std::vector<Permutation> enumerate_by_closure(const PermutationGroup& g,
                                              std::size_t limit = kElementLimit);

bool is_prime(unsigned long long n);
// Exponent of p in n (n > 0).
unsigned p_adic_valuation(unsigned long long n, unsigned long long p);
unsigned long long p_part(unsigned long long n, unsigned long long p);
bool is_p_group(const PermutationGroup& g, unsigned p);

Permutation commutator(const Permutation& a, const Permutation& b);

PermutationGroup normal_closure(const PermutationGroup& g, std::span<const Permutation> s);
PermutationGroup derived_subgroup(const PermutationGroup& g);
PermutationGroup sylow_subgroup(const PermutationGroup& g, unsigned p);
// p(G): the subgroup generated by all Sylow p-subgroups. Trivial for p == 0.
PermutationGroup quasi_p_part(const PermutationGroup& g, unsigned p);

// G -> G/N realized as the left-multiplication action on the left cosets gN.
struct GroupHom {
  PermutationGroup source;
  PermutationGroup kernel;
  PermutationGroup image;
  std::vector<Permutation> coset_reps;  // coset_reps[i] represents coset i; minimal element

  std::size_t coset_of(const Permutation& g) const;
  Permutation map(const Permutation& g) const;

 private:
  friend GroupHom quotient(const PermutationGroup&, const PermutationGroup&);
  std::vector<std::size_t> coset_index_;  // indexed like source.elements()
};

GroupHom quotient(const PermutationGroup& g, const PermutationGroup& n);

// sigma(G): rank of the maximal elementary abelian p-quotient G/[G,G]G^p.
unsigned abelianization_p_rank(const PermutationGroup& g, unsigned p);

}  // namespace curvepi
