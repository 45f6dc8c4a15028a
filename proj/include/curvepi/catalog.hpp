#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvepi/perm_group.hpp"

namespace curvepi {

// Group constructors used to assemble the small-group catalog.
namespace builders {

PermutationGroup cyclic(std::size_t n);
// Dihedral group of order 2n.
PermutationGroup dihedral(std::size_t n);
PermutationGroup symmetric(std::size_t n);
PermutationGroup alternating(std::size_t n);
PermutationGroup elementary_abelian(std::size_t p, std::size_t rank);
// Acts on the disjoint union of the two point sets.
PermutationGroup direct_product(const PermutationGroup& a, const PermutationGroup& b);

// Left regular representation of the group {0..n-1} with the given product;
// the listed elements become the generators.
PermutationGroup regular(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                         const std::vector<std::size_t>& generators);

// <a, b | a^m, b^n = a^s, b a b^-1 = a^r>; needs r^n = 1 and s(r-1) = 0 mod m.
PermutationGroup metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t s);

// (Z_{m_1} x .. x Z_{m_d}) x| Z_k where the generator of Z_k acts on exponent
// vectors by the integer matrix `action` (row-major, d x d), of order dividing k.
PermutationGroup abelian_by_cyclic(const std::vector<std::size_t>& moduli,
                                   const std::vector<long long>& action, std::size_t k);

// Group of monomial matrices with entries in the m-th roots of unity, acting
// on the m*dim vectors zeta^a e_j. A generator is given by a column
// permutation (0-indexed target row of each column) and the root exponents.
struct MonomialMatrix {
  std::vector<std::size_t> target;
  std::vector<std::size_t> exponent;
};
PermutationGroup monomial(std::size_t m, std::size_t dim, const std::vector<MonomialMatrix>& gens);

// Matrix group over F_p acting on the nonzero vectors of F_p^dim
// (row-major dim x dim matrices).
PermutationGroup linear_on_vectors(std::size_t p, std::size_t dim,
                                   const std::vector<std::vector<long long>>& matrices);

}  // namespace builders

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  PermutationGroup group;
};

// Every group of order <= 24 (one per isomorphism class) plus A5.
const std::vector<CatalogEntry>& builtin_catalog();

// The active catalog: the file named by PI1_CATALOG_PATH when set, else the
// builtin one. Read once per process.
const std::vector<CatalogEntry>& catalog();

std::vector<CatalogEntry> load_catalog_file(const std::string& path);
std::string catalog_to_json(const std::vector<CatalogEntry>& entries);

std::optional<PermutationGroup> catalog_lookup(std::string_view name);

// Catalog names and aliases, plus the families Cn, Cn^k, Dn, Sn, An and
// direct products written AxB.
PermutationGroup group_by_name(std::string_view name);

}  // namespace curvepi
