#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvepi/curve.hpp"
#include "curvepi/group_table.hpp"
#include "curvepi/perm_group.hpp"

namespace curvepi {

// Fibers over points of the normalization are labeled by G. The Galois group
// acts by right multiplication on labels; a gluing identifies label l over
// the base branch of a class with label c*l over another branch.
struct BranchGluing {
  PointRef branch;
  Permutation constant;
  // When nonempty, an explicit label bijection (table indices of the cover's
  // group) replacing the left translation by `constant`.
  std::vector<Elem> label_map;

  bool is_translation() const noexcept { return label_map.empty(); }
};

struct ClassGluing {
  PointRef base;  // smallest member of the class
  std::vector<BranchGluing> branches;  // remaining members, sorted
};

struct CoverDescriptor {
  CurveConfiguration base;
  PermutationGroup group;
  // Component id -> M_i. Every component has an entry.
  std::map<std::string, PermutationGroup> monodromy;
  // Parallel to base.classes.
  std::vector<ClassGluing> gluings;
  // Inertia subgroup annotations on smooth marked or removed points.
  std::map<PointRef, PermutationGroup> ramification;

  const PermutationGroup& monodromy_of(const std::string& component) const;
};

// The cover with trivial monodromy and identity gluings: |G| disjoint copies
// of the base.
CoverDescriptor trivial_cover(const CurveConfiguration& base, const PermutationGroup& group);

// Throws on any descriptor invariant violation.
void check_descriptor(const CoverDescriptor& cover, bool require_connected_base = true);

// Label map of one branch gluing, as table indices.
std::vector<Elem> branch_map(const CoverDescriptor& cover, std::size_t cls, std::size_t branch);

bool is_connected(const CoverDescriptor& cover);
bool is_galois(const CoverDescriptor& cover);
// Number of sheets (right cosets of M_i) over a component.
std::size_t sheet_count(const CoverDescriptor& cover, const std::string& component);

struct TorsorLabeling {
  std::vector<Elem> label;   // fiber point -> table index of its label
  std::vector<Point> point;  // table index -> fiber point
};

// `action[i]` is the permutation of the fiber induced by generator i of g,
// acting on the right. The base point is labeled by the identity.
TorsorLabeling torsor_labeling(const PermutationGroup& g, std::size_t fiber_size,
                               const std::vector<Permutation>& action, Point base_point);

// Representatives of the right cosets H x of sub in ambient, identity first,
// each the first element of its coset in shortlex order of generator words.
std::vector<Permutation> right_transversal(const PermutationGroup& ambient, const PermutationGroup& sub);

CoverDescriptor induce(const CoverDescriptor& cover, const PermutationGroup& ambient,
                       const std::vector<Permutation>& coset_reps);
CoverDescriptor induce(const CoverDescriptor& cover, const PermutationGroup& ambient);

// Identify y1 with y2 on the base of a connected G-cover and glue the fibers
// by the constant gamma, producing a connected <G, gamma>-cover.
CoverDescriptor glue_same_component(const CoverDescriptor& cover, const PermutationGroup& ambient,
                                    const Permutation& gamma, const PointRef& y1, const PointRef& y2);

// Glue a connected G1-cover and a connected G2-cover over disjoint bases at
// y1 and y2, producing a connected <G1, G2>-cover.
CoverDescriptor glue_two_components(const PermutationGroup& ambient, const CoverDescriptor& first,
                                    const CoverDescriptor& second, const PointRef& y1, const PointRef& y2);

struct CoverPoint {
  PointRef point;
  Permutation label;
};

struct DescentOptions {
  // Reject relations that do not commute with the Galois action.
  bool require_galois = true;
};

// Quotient of a cover by compatible relations on base points (smooth marked
// points only) and on cover points.
CoverDescriptor descend(const CoverDescriptor& cover, const std::vector<std::vector<PointRef>>& relation,
                        const std::vector<std::vector<CoverPoint>>& cover_relation,
                        const DescentOptions& opts = {});

// The relation on cover points induced by the gluing of one class.
std::vector<std::vector<CoverPoint>> induced_cover_relation(const CoverDescriptor& cover, std::size_t cls);

// Dual-graph spanning tree found by breadth-first search from the smallest
// component id, scanning edges in order of their endpoints. Entries are
// (class, branch) pairs.
std::vector<std::pair<std::size_t, std::size_t>> spanning_tree(const CurveConfiguration& config);

// Relabels the fibers over each component by a left translation.
CoverDescriptor relabel(const CoverDescriptor& cover, const std::map<std::string, Permutation>& shifts);
CoverDescriptor normalize_spanning_tree(const CoverDescriptor& cover);
// The per-component shifts applied by normalize_spanning_tree.
std::map<std::string, Permutation> spanning_tree_shifts(const CoverDescriptor& cover);
bool is_tree_normalized(const CoverDescriptor& cover);
// Gluing constants off the spanning tree, in class/branch order.
std::vector<Permutation> free_constants(const CoverDescriptor& cover);
// <M_1, .., M_n, free constants> == G on a tree-normalized descriptor.
bool connectivity_criterion(const CoverDescriptor& cover);

// Identical for descriptors that differ by per-component relabelings and by
// the order of classes.
std::string canonical_key(const CoverDescriptor& cover);
bool equivalent(const CoverDescriptor& a, const CoverDescriptor& b);

// The gluing rule read literally with the transversal {gamma^i}: label
// gamma^i l over y1 is glued to gamma^(i+1 mod N) l over y2 for l in G.
// Returns the descriptor without checking equivariance.
CoverDescriptor literal_rule_gluing(const CoverDescriptor& cover, const PermutationGroup& ambient,
                                    const Permutation& gamma, const PointRef& y1, const PointRef& y2);

std::string to_dot(const CoverDescriptor& cover);

}  // namespace curvepi
