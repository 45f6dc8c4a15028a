#include "curvepi/cover.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include "curvepi/error.hpp"
#include "union_find.hpp"

namespace curvepi {

namespace {

Subset subgroup_set(const GroupTable& t, const PermutationGroup& h) {
  std::vector<Elem> gens;
  for (const auto& g : h.generators()) gens.push_back(t.index_of(g));
  return t.closure(gens);
}

std::vector<Elem> translation_map(const GroupTable& t, Elem c) {
  std::vector<Elem> m(t.size());
  for (Elem l = 0; l < t.size(); ++l) m[l] = t.mul(c, l);
  return m;
}

// Some c with map == left translation by c, if any.
std::optional<Elem> as_translation(const GroupTable& t, const std::vector<Elem>& map) {
  const Elem c = map[GroupTable::identity()];
  for (Elem l = 0; l < t.size(); ++l) {
    if (map[l] != t.mul(c, l)) return std::nullopt;
  }
  return c;
}

PermutationGroup conjugate(const PermutationGroup& h, const Permutation& t) {
  std::vector<Permutation> gens;
  const auto ti = t.inverse();
  for (const auto& g : h.generators()) gens.push_back(t * g * ti);
  return PermutationGroup(h.degree(), std::move(gens));
}

void require_subgroup(const PermutationGroup& ambient, const PermutationGroup& h, const std::string& what) {
  if (!ambient.contains_group(h)) throw Error(ErrorCode::not_a_member, what + " is not a subgroup of the group");
}

void require_member(const PermutationGroup& ambient, const Permutation& g, const std::string& what) {
  if (!ambient.contains(g)) throw Error(ErrorCode::not_a_member, what + " is not in the group");
}

// Cover with every label map that is a left translation rewritten as a constant.
CoverDescriptor with_constants(CoverDescriptor cover) {
  const auto& t = cover.group.table();
  for (auto& cls : cover.gluings) {
    for (auto& b : cls.branches) {
      if (b.is_translation()) continue;
      if (auto c = as_translation(t, b.label_map)) {
        b.constant = t.element(*c);
        b.label_map.clear();
      }
    }
  }
  return cover;
}

// Offsets a_q such that (q, a_q l) are glued together for each label l.
std::map<PointRef, Permutation> class_offsets(const CoverDescriptor& cover, std::size_t cls) {
  std::map<PointRef, Permutation> out;
  const auto& g = cover.gluings[cls];
  out.emplace(g.base, Permutation::identity(cover.group.degree()));
  for (const auto& b : g.branches) {
    if (!b.is_translation()) {
      throw Error(ErrorCode::fiber_not_torsor, "class " + std::to_string(cls) + " is glued by a non-translation");
    }
    out.emplace(b.branch, b.constant);
  }
  return out;
}

ClassGluing from_offsets(const std::map<PointRef, Permutation>& offsets) {
  ClassGluing g;
  auto it = offsets.begin();
  g.base = it->first;
  const auto a0inv = it->second.inverse();
  for (++it; it != offsets.end(); ++it) g.branches.push_back({it->first, it->second * a0inv, {}});
  return g;
}

// Glues label l over y1 to gamma*l over y2, merging any classes through them.
CoverDescriptor glue_points(const CoverDescriptor& cover, const PointRef& y1, const PointRef& y2,
                            const Permutation& gamma) {
  const auto& cfg = cover.base;
  auto offsets_of = [&](const PointRef& y) {
    if (auto c = cfg.class_of(y)) return class_offsets(cover, *c);
    return std::map<PointRef, Permutation>{{y, Permutation::identity(cover.group.degree())}};
  };
  auto merged = offsets_of(y1);
  const auto ox = merged.at(y1);
  const auto oy_all = offsets_of(y2);
  const auto oy_inv = oy_all.at(y2).inverse();
  for (const auto& [q, a] : oy_all) merged.emplace(q, a * oy_inv * gamma * ox);

  CoverDescriptor out = cover;
  out.base = identify(cfg, {{y1, y2}});
  out.gluings.clear();
  for (const auto& cls : out.base.classes) {
    bool copied = false;
    for (std::size_t i = 0; i < cfg.classes.size() && !copied; ++i) {
      if (cfg.classes[i] == cls) {
        out.gluings.push_back(cover.gluings[i]);
        copied = true;
      }
    }
    if (!copied) out.gluings.push_back(from_offsets(merged));
  }
  return out;
}

void require_etale_point(const CoverDescriptor& cover, const PointRef& y) {
  if (cover.ramification.contains(y)) {
    throw Error(ErrorCode::fiber_not_torsor, "the cover is ramified over " + y.str());
  }
}

void require_glue_input(const CoverDescriptor& cover) {
  check_descriptor(cover);
  if (!is_connected(cover)) throw Error(ErrorCode::base_not_connected, "the cover to glue is not connected");
  if (!is_galois(cover)) {
    throw Error(ErrorCode::fiber_not_torsor, "the fibers over singular points are not torsors");
  }
}

struct TreeEdge {
  std::size_t cls;
  std::size_t branch;
  std::size_t base_comp;
  std::size_t branch_comp;
  bool forward;  // reached from the base side
};

std::vector<TreeEdge> bfs_tree(const CurveConfiguration& config) {
  struct Edge {
    std::size_t cls, branch, a, b;
    PointRef from, to;
  };
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < config.classes.size(); ++k) {
    std::vector<PointRef> sorted(config.classes[k]);
    std::sort(sorted.begin(), sorted.end());
    const auto a = *config.component_index(sorted.front().component);
    for (std::size_t j = 1; j < sorted.size(); ++j) {
      edges.push_back({k, j - 1, a, *config.component_index(sorted[j].component), sorted.front(), sorted[j]});
    }
  }
  // Edge order by endpoints keeps the tree independent of class order.
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.from, x.to) < std::tie(y.from, y.to); });
  const std::size_t n = config.components.size();
  std::vector<TreeEdge> tree;
  if (n == 0) return tree;
  std::size_t root = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (config.components[i].id < config.components[root].id) root = i;
  }
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{root};
  seen[root] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto& e : edges) {
      if (e.a == u && !seen[e.b]) {
        seen[e.b] = true;
        queue.push_back(e.b);
        tree.push_back({e.cls, e.branch, e.a, e.b, true});
      } else if (e.b == u && !seen[e.a]) {
        seen[e.a] = true;
        queue.push_back(e.a);
        tree.push_back({e.cls, e.branch, e.a, e.b, false});
      }
    }
  }
  return tree;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const PermutationGroup& CoverDescriptor::monodromy_of(const std::string& component) const {
  auto it = monodromy.find(component);
  if (it == monodromy.end()) throw Error(ErrorCode::point_not_found, "no monodromy for component '" + component + "'");
  return it->second;
}

CoverDescriptor trivial_cover(const CurveConfiguration& base, const PermutationGroup& group) {
  CoverDescriptor c;
  c.base = base;
  c.group = group;
  for (const auto& comp : base.components) c.monodromy.emplace(comp.id, PermutationGroup::trivial(group.degree()));
  for (const auto& cls : base.classes) {
    std::vector<PointRef> sorted(cls);
    std::sort(sorted.begin(), sorted.end());
    ClassGluing g;
    g.base = sorted.front();
    for (std::size_t j = 1; j < sorted.size(); ++j) {
      g.branches.push_back({sorted[j], Permutation::identity(group.degree()), {}});
    }
    c.gluings.push_back(std::move(g));
  }
  return c;
}

void check_descriptor(const CoverDescriptor& cover, bool require_connected_base) {
  const auto& cfg = cover.base;
  require_valid(cfg);
  if (require_connected_base && !is_connected(cfg)) {
    throw Error(ErrorCode::not_connected, "the base configuration is not connected");
  }
  const auto& g = cover.group;
  const auto& t = g.table();
  for (const auto& comp : cfg.components) {
    if (!cover.monodromy.contains(comp.id)) {
      throw Error(ErrorCode::invalid_argument, "no monodromy subgroup for component '" + comp.id + "'");
    }
  }
  for (const auto& [id, m] : cover.monodromy) {
    if (!cfg.component_index(id)) {
      throw Error(ErrorCode::invalid_argument, "monodromy given for unknown component '" + id + "'");
    }
    require_subgroup(g, m, "monodromy of " + id);
  }
  if (cover.gluings.size() != cfg.classes.size()) {
    throw Error(ErrorCode::invalid_argument, "expected gluings for " + std::to_string(cfg.classes.size()) +
                                                 " classes, got " + std::to_string(cover.gluings.size()));
  }
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    std::vector<PointRef> sorted(cfg.classes[k]);
    std::sort(sorted.begin(), sorted.end());
    const auto& gl = cover.gluings[k];
    const std::string where = "class " + std::to_string(k);
    if (gl.base != sorted.front() || gl.branches.size() + 1 != sorted.size()) {
      throw Error(ErrorCode::invalid_argument, where + ": gluings must list exactly the non-base branches");
    }
    for (std::size_t j = 0; j < gl.branches.size(); ++j) {
      const auto& b = gl.branches[j];
      if (b.branch != sorted[j + 1]) {
        throw Error(ErrorCode::invalid_argument, where + ": unexpected branch " + b.branch.str());
      }
      if (b.is_translation()) {
        require_member(g, b.constant, where + " constant at " + b.branch.str());
      } else {
        std::vector<Elem> sorted_map(b.label_map);
        std::sort(sorted_map.begin(), sorted_map.end());
        bool bijective = sorted_map.size() == t.size();
        for (std::size_t i = 0; bijective && i < sorted_map.size(); ++i) bijective = sorted_map[i] == i;
        if (!bijective) throw Error(ErrorCode::invalid_argument, where + ": label map is not a bijection of G");
      }
    }
  }
  for (const auto& [p, inertia] : cover.ramification) {
    if (!cfg.has_point(p) || cfg.class_of(p)) {
      throw Error(ErrorCode::invalid_argument, "ramification annotated at " + p.str() +
                                                   ", which is not a smooth marked point");
    }
    require_subgroup(g, inertia, "inertia at " + p.str());
  }
  for (const auto& comp : cfg.components) {
    if (comp.genus != 0 || cover.monodromy.at(comp.id).is_trivial()) continue;
    bool licensed = false;
    for (const auto& [p, inertia] : cover.ramification) licensed = licensed || p.component == comp.id;
    if (!licensed) {
      throw Error(ErrorCode::etale_genus_zero, "genus-0 component '" + comp.id +
                                                   "' has nontrivial monodromy but no ramification annotation");
    }
  }
}

std::vector<Elem> branch_map(const CoverDescriptor& cover, std::size_t cls, std::size_t branch) {
  const auto& b = cover.gluings.at(cls).branches.at(branch);
  if (!b.is_translation()) return b.label_map;
  const auto& t = cover.group.table();
  return translation_map(t, t.index_of(b.constant));
}

bool is_connected(const CoverDescriptor& cover) {
  const auto& cfg = cover.base;
  const auto& t = cover.group.table();
  const std::size_t n = t.size();
  UnionFind uf(cfg.components.size() * n);
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    for (const auto& m : cover.monodromy_of(cfg.components[i].id).generators()) {
      const Elem mi = t.index_of(m);
      for (Elem l = 0; l < n; ++l) uf.unite(i * n + l, i * n + t.mul(mi, l));
    }
  }
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    const auto& gl = cover.gluings[k];
    const auto a = *cfg.component_index(gl.base.component);
    for (std::size_t j = 0; j < gl.branches.size(); ++j) {
      const auto b = *cfg.component_index(gl.branches[j].branch.component);
      const auto map = branch_map(cover, k, j);
      for (Elem l = 0; l < n; ++l) uf.unite(a * n + l, b * n + map[l]);
    }
  }
  return uf.classes() == 1;
}

bool is_galois(const CoverDescriptor& cover) {
  const auto& t = cover.group.table();
  std::vector<Elem> gens;
  for (const auto& g : cover.group.generators()) gens.push_back(t.index_of(g));
  for (std::size_t k = 0; k < cover.gluings.size(); ++k) {
    for (std::size_t j = 0; j < cover.gluings[k].branches.size(); ++j) {
      const auto map = branch_map(cover, k, j);
      std::vector<bool> hit(t.size(), false);
      for (Elem l = 0; l < t.size(); ++l) {
        if (map[l] >= t.size() || hit[map[l]]) return false;
        hit[map[l]] = true;
        for (Elem s : gens) {
          if (map[t.mul(l, s)] != t.mul(map[l], s)) return false;
        }
      }
    }
  }
  return true;
}

std::size_t sheet_count(const CoverDescriptor& cover, const std::string& component) {
  return static_cast<std::size_t>(cover.group.order() / cover.monodromy_of(component).order());
}

TorsorLabeling torsor_labeling(const PermutationGroup& g, std::size_t fiber_size,
                               const std::vector<Permutation>& action, Point base_point) {
  const auto& t = g.table();
  if (fiber_size != t.size()) {
    throw Error(ErrorCode::not_simply_transitive, "fiber has " + std::to_string(fiber_size) +
                                                      " points but the group has order " + std::to_string(t.size()));
  }
  if (action.size() != g.generators().size()) {
    throw Error(ErrorCode::invalid_argument, "need one fiber permutation per group generator");
  }
  for (const auto& a : action) {
    if (a.degree() != fiber_size) throw Error(ErrorCode::degree_mismatch, "fiber permutation of wrong size");
  }
  if (base_point >= fiber_size) throw Error(ErrorCode::invalid_argument, "base point outside the fiber");
  constexpr Elem unset = ~Elem{0};
  TorsorLabeling out;
  out.label.assign(fiber_size, unset);
  out.label[base_point] = GroupTable::identity();
  std::vector<Elem> gens;
  for (const auto& s : g.generators()) gens.push_back(t.index_of(s));
  std::deque<Point> queue{base_point};
  while (!queue.empty()) {
    const Point z = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Point w = action[i](z);
      const Elem lw = t.mul(out.label[z], gens[i]);
      if (out.label[w] == unset) {
        out.label[w] = lw;
        queue.push_back(w);
      } else if (out.label[w] != lw) {
        throw Error(ErrorCode::not_simply_transitive, "the action is not free");
      }
    }
  }
  out.point.assign(fiber_size, 0);
  std::vector<bool> used(fiber_size, false);
  for (Point z = 0; z < fiber_size; ++z) {
    if (out.label[z] == unset) throw Error(ErrorCode::not_simply_transitive, "the action is not transitive");
    if (used[out.label[z]]) throw Error(ErrorCode::not_simply_transitive, "the action is not free");
    used[out.label[z]] = true;
    out.point[out.label[z]] = z;
  }
  return out;
}

std::vector<Permutation> right_transversal(const PermutationGroup& ambient, const PermutationGroup& sub) {
  require_subgroup(ambient, sub, "the subgroup");
  const auto& t = ambient.table();
  const auto members = subgroup_set(t, sub).members();
  const std::size_t index = t.size() / members.size();
  auto coset_key = [&](Elem x) {
    Elem best = t.mul(members[0], x);
    for (Elem h : members) best = std::min(best, t.mul(h, x));
    return best;
  };
  std::vector<Elem> gens;
  for (const auto& g : ambient.generators()) gens.push_back(t.index_of(g));
  std::vector<Permutation> reps;
  std::set<Elem> keys;
  std::vector<bool> seen(t.size(), false);
  std::deque<Elem> queue{GroupTable::identity()};
  seen[GroupTable::identity()] = true;
  while (!queue.empty() && reps.size() < index) {
    const Elem x = queue.front();
    queue.pop_front();
    if (keys.insert(coset_key(x)).second) reps.push_back(t.element(x));
    for (Elem s : gens) {
      const Elem y = t.mul(x, s);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  return reps;
}

CoverDescriptor induce(const CoverDescriptor& cover, const PermutationGroup& ambient,
                       const std::vector<Permutation>& coset_reps) {
  require_subgroup(ambient, cover.group, "the cover's group");
  const auto& ta = ambient.table();
  const auto members = subgroup_set(ta, cover.group).members();
  const std::size_t index = ta.size() / members.size();
  if (coset_reps.size() != index || coset_reps.empty() || !coset_reps.front().is_identity()) {
    throw Error(ErrorCode::not_a_transversal, "need " + std::to_string(index) + " coset representatives, identity first");
  }
  // coset_of[x] = (k, l) with x = l * r_k, l in H.
  std::vector<std::pair<std::size_t, Elem>> coset_of(ta.size(), {index, 0});
  for (std::size_t k = 0; k < index; ++k) {
    const auto r = ta.find(coset_reps[k]);
    if (!r) throw Error(ErrorCode::not_a_transversal, "coset representative outside the group");
    for (Elem h : members) {
      auto& slot = coset_of[ta.mul(h, *r)];
      if (slot.first != index) throw Error(ErrorCode::not_a_transversal, "two representatives share a coset");
      slot = {k, h};
    }
  }
  CoverDescriptor out = cover;
  out.group = ambient;
  const auto& th = cover.group.table();
  for (std::size_t c = 0; c < out.gluings.size(); ++c) {
    for (std::size_t j = 0; j < out.gluings[c].branches.size(); ++j) {
      auto& b = out.gluings[c].branches[j];
      if (b.is_translation()) continue;
      std::vector<Elem> map(ta.size());
      for (Elem x = 0; x < ta.size(); ++x) {
        const auto [k, l] = coset_of[x];
        const Elem image_h = cover.gluings[c].branches[j].label_map[th.index_of(ta.element(l))];
        map[x] = ta.mul(ta.index_of(th.element(image_h)), ta.index_of(coset_reps[k]));
      }
      b.label_map = std::move(map);
    }
  }
  return out;
}

CoverDescriptor induce(const CoverDescriptor& cover, const PermutationGroup& ambient) {
  return induce(cover, ambient, right_transversal(ambient, cover.group));
}

CoverDescriptor glue_same_component(const CoverDescriptor& cover, const PermutationGroup& ambient,
                                    const Permutation& gamma, const PointRef& y1, const PointRef& y2) {
  require_glue_input(cover);
  require_subgroup(ambient, cover.group, "G");
  require_member(ambient, gamma, "gamma");
  std::vector<Permutation> gens = cover.group.generators();
  gens.push_back(gamma);
  if (PermutationGroup(ambient.degree(), gens).order() != ambient.order()) {
    throw Error(ErrorCode::not_generating, "G and gamma do not generate the ambient group");
  }
  if (y1 == y2) throw Error(ErrorCode::invalid_argument, "cannot glue a point to itself");
  for (const auto& y : {y1, y2}) {
    if (!cover.base.has_point(y)) throw Error(ErrorCode::point_not_found, "no marked point " + y.str());
    if (cover.base.is_removed(y)) throw Error(ErrorCode::overlap_with_removed, "point " + y.str() + " is removed");
    require_etale_point(cover, y);
  }
  const auto c1 = cover.base.class_of(y1), c2 = cover.base.class_of(y2);
  if (c1 && c1 == c2) throw Error(ErrorCode::invalid_argument, "the points are already identified");
  return glue_points(with_constants(induce(cover, ambient)), y1, y2, gamma);
}

CoverDescriptor glue_two_components(const PermutationGroup& ambient, const CoverDescriptor& first,
                                    const CoverDescriptor& second, const PointRef& y1, const PointRef& y2) {
  auto base = disjoint_union(first.base, second.base);
  require_glue_input(first);
  require_glue_input(second);
  require_subgroup(ambient, first.group, "G1");
  require_subgroup(ambient, second.group, "G2");
  std::vector<Permutation> gens = first.group.generators();
  gens.insert(gens.end(), second.group.generators().begin(), second.group.generators().end());
  if (PermutationGroup(ambient.degree(), gens).order() != ambient.order()) {
    throw Error(ErrorCode::not_generating, "G1 and G2 do not generate the ambient group");
  }
  if (!first.base.has_point(y1)) throw Error(ErrorCode::point_not_found, "no marked point " + y1.str() + " on the first base");
  if (!second.base.has_point(y2)) throw Error(ErrorCode::point_not_found, "no marked point " + y2.str() + " on the second base");
  require_etale_point(first, y1);
  require_etale_point(second, y2);
  auto a = with_constants(induce(first, ambient));
  auto b = with_constants(induce(second, ambient));
  CoverDescriptor joined;
  joined.base = std::move(base);
  joined.group = ambient;
  joined.monodromy = a.monodromy;
  joined.monodromy.insert(b.monodromy.begin(), b.monodromy.end());
  joined.gluings = a.gluings;
  joined.gluings.insert(joined.gluings.end(), b.gluings.begin(), b.gluings.end());
  joined.ramification = a.ramification;
  joined.ramification.insert(b.ramification.begin(), b.ramification.end());
  return glue_points(joined, y1, y2, Permutation::identity(ambient.degree()));
}

CoverDescriptor descend(const CoverDescriptor& cover, const std::vector<std::vector<PointRef>>& relation,
                        const std::vector<std::vector<CoverPoint>>& cover_relation, const DescentOptions& opts) {
  check_descriptor(cover, false);
  const auto& cfg = cover.base;
  const auto& t = cover.group.table();
  if (relation.empty() || cover_relation.empty()) {
    throw Error(ErrorCode::bad_partition, "the relations must have nonempty classes");
  }
  std::map<PointRef, std::size_t> set_of;
  std::vector<std::vector<PointRef>> sets;
  for (const auto& raw : relation) {
    std::vector<PointRef> set(raw);
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() < 2) throw Error(ErrorCode::invalid_argument, "each identified set needs at least 2 points");
    for (const auto& p : set) {
      if (!cfg.has_point(p)) throw Error(ErrorCode::point_not_found, "no marked point " + p.str());
      if (cfg.is_removed(p)) throw Error(ErrorCode::overlap_with_removed, "point " + p.str() + " is removed");
      if (cfg.class_of(p)) throw Error(ErrorCode::invalid_argument, "point " + p.str() + " is already singular");
      require_etale_point(cover, p);
      if (!set_of.emplace(p, sets.size()).second) {
        throw Error(ErrorCode::invalid_argument, "point " + p.str() + " lies in two identified sets");
      }
    }
    sets.push_back(std::move(set));
  }
  // Condition (1): every cover class lies over a single identified set.
  using Key = std::pair<PointRef, Elem>;
  std::vector<std::vector<Key>> classes;
  std::vector<std::size_t> class_set;
  for (const auto& raw : cover_relation) {
    std::vector<Key> cls;
    std::optional<std::size_t> target;
    for (const auto& z : raw) {
      if (!cfg.has_point(z.point)) throw Error(ErrorCode::point_not_found, "no marked point " + z.point.str());
      auto label = t.find(z.label);
      if (!label) throw Error(ErrorCode::not_a_member, "cover point label outside the group");
      auto it = set_of.find(z.point);
      if (it == set_of.end()) {
        throw Error(ErrorCode::relation_not_preserved, "cover point over " + z.point.str() +
                                                           " is related but its image is not");
      }
      if (target && *target != it->second) {
        throw Error(ErrorCode::relation_not_preserved, "a cover class maps into two different base classes");
      }
      target = it->second;
      cls.emplace_back(z.point, *label);
    }
    if (!target) throw Error(ErrorCode::bad_partition, "empty cover class");
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
    class_set.push_back(*target);
  }
  // Condition (2): over each set, the cover classes partition the fiber and
  // meet each fiber over a member exactly once.
  std::set<Key> covered;
  std::vector<std::size_t> per_set(sets.size(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& set = sets[class_set[i]];
    if (classes[i].size() != set.size()) {
      throw Error(ErrorCode::bad_partition, "a cover class has " + std::to_string(classes[i].size()) +
                                                " points over a base class of size " + std::to_string(set.size()));
    }
    for (std::size_t k = 0; k < set.size(); ++k) {
      if (classes[i][k].first != set[k]) {
        throw Error(ErrorCode::bad_partition, "a cover class misses the fiber over " + set[k].str());
      }
      if (!covered.insert(classes[i][k]).second) {
        throw Error(ErrorCode::bad_partition, "cover classes overlap over " + set[k].str());
      }
    }
    ++per_set[class_set[i]];
  }
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (per_set[s] != t.size()) {
      throw Error(ErrorCode::bad_partition, "the cover classes over set " + std::to_string(s) +
                                                " do not partition the fiber");
    }
  }
  if (opts.require_galois) {
    std::set<std::vector<Key>> all(classes.begin(), classes.end());
    for (const auto& g : cover.group.generators()) {
      const Elem s = t.index_of(g);
      for (const auto& cls : classes) {
        std::vector<Key> moved;
        for (const auto& [p, l] : cls) moved.emplace_back(p, t.mul(l, s));
        std::sort(moved.begin(), moved.end());
        if (!all.contains(moved)) {
          throw Error(ErrorCode::action_not_equivariant, "the cover relation does not commute with the Galois action");
        }
      }
    }
  }
  CoverDescriptor out = cover;
  out.base = identify(cfg, sets);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto& set = sets[s];
    std::vector<std::vector<Elem>> maps(set.size() - 1, std::vector<Elem>(t.size()));
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (class_set[i] != s) continue;
      for (std::size_t k = 1; k < set.size(); ++k) maps[k - 1][classes[i][0].second] = classes[i][k].second;
    }
    ClassGluing gl;
    gl.base = set.front();
    for (std::size_t k = 1; k < set.size(); ++k) {
      BranchGluing b{set[k], Permutation::identity(cover.group.degree()), {}};
      if (auto c = as_translation(t, maps[k - 1])) {
        b.constant = t.element(*c);
      } else {
        b.label_map = std::move(maps[k - 1]);
      }
      gl.branches.push_back(std::move(b));
    }
    out.gluings.push_back(std::move(gl));
  }
  return out;
}

std::vector<std::vector<CoverPoint>> induced_cover_relation(const CoverDescriptor& cover, std::size_t cls) {
  const auto& t = cover.group.table();
  const auto& gl = cover.gluings.at(cls);
  std::vector<std::vector<Elem>> maps;
  for (std::size_t j = 0; j < gl.branches.size(); ++j) maps.push_back(branch_map(cover, cls, j));
  std::vector<std::vector<CoverPoint>> out;
  for (Elem l = 0; l < t.size(); ++l) {
    std::vector<CoverPoint> k{{gl.base, t.element(l)}};
    for (std::size_t j = 0; j < gl.branches.size(); ++j) k.push_back({gl.branches[j].branch, t.element(maps[j][l])});
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> spanning_tree(const CurveConfiguration& config) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : bfs_tree(config)) out.emplace_back(e.cls, e.branch);
  return out;
}

CoverDescriptor relabel(const CoverDescriptor& cover, const std::map<std::string, Permutation>& shifts) {
  const auto id = Permutation::identity(cover.group.degree());
  auto shift = [&](const std::string& comp) -> const Permutation& {
    auto it = shifts.find(comp);
    return it == shifts.end() ? id : it->second;
  };
  CoverDescriptor out = cover;
  for (auto& [comp, m] : out.monodromy) m = conjugate(m, shift(comp));
  for (auto& [p, inertia] : out.ramification) inertia = conjugate(inertia, shift(p.component));
  const auto& t = cover.group.table();
  for (auto& gl : out.gluings) {
    const auto& ti = shift(gl.base.component);
    const auto ti_inv = ti.inverse();
    for (auto& b : gl.branches) {
      const auto& tj = shift(b.branch.component);
      if (b.is_translation()) {
        b.constant = tj * b.constant * ti_inv;
      } else {
        const Elem ei = t.index_of(ti_inv), ej = t.index_of(tj);
        std::vector<Elem> map(t.size());
        for (Elem l = 0; l < t.size(); ++l) map[l] = t.mul(ej, b.label_map[t.mul(ei, l)]);
        b.label_map = std::move(map);
      }
    }
  }
  return out;
}

CoverDescriptor normalize_spanning_tree(const CoverDescriptor& cover) {
  return relabel(cover, spanning_tree_shifts(cover));
}

std::map<std::string, Permutation> spanning_tree_shifts(const CoverDescriptor& cover) {
  const auto& cfg = cover.base;
  const auto& t = cover.group.table();
  std::vector<Elem> shift(cfg.components.size(), GroupTable::identity());
  for (const auto& e : bfs_tree(cfg)) {
    const auto map = branch_map(cover, e.cls, e.branch);
    if (e.forward) {
      shift[e.branch_comp] = t.inv(map[t.inv(shift[e.base_comp])]);
    } else {
      // map(t_i^-1) = t_j^-1, so t_i^-1 is the preimage of t_j^-1.
      const Elem target = t.inv(shift[e.branch_comp]);
      Elem pre = 0;
      while (map[pre] != target) ++pre;
      shift[e.base_comp] = t.inv(pre);
    }
  }
  std::map<std::string, Permutation> shifts;
  for (std::size_t i = 0; i < cfg.components.size(); ++i) shifts.emplace(cfg.components[i].id, t.element(shift[i]));
  return shifts;
}

bool is_tree_normalized(const CoverDescriptor& cover) {
  for (const auto& e : bfs_tree(cover.base)) {
    const auto& b = cover.gluings[e.cls].branches[e.branch];
    if (b.is_translation()) {
      if (!b.constant.is_identity()) return false;
    } else {
      for (Elem l = 0; l < b.label_map.size(); ++l) {
        if (b.label_map[l] != l) return false;
      }
    }
  }
  return true;
}

std::vector<Permutation> free_constants(const CoverDescriptor& cover) {
  std::set<std::pair<std::size_t, std::size_t>> tree;
  for (const auto& e : bfs_tree(cover.base)) tree.emplace(e.cls, e.branch);
  const auto& t = cover.group.table();
  std::vector<Permutation> out;
  for (std::size_t k = 0; k < cover.gluings.size(); ++k) {
    for (std::size_t j = 0; j < cover.gluings[k].branches.size(); ++j) {
      if (tree.contains({k, j})) continue;
      const auto& b = cover.gluings[k].branches[j];
      if (b.is_translation()) {
        out.push_back(b.constant);
      } else if (auto c = as_translation(t, b.label_map)) {
        out.push_back(t.element(*c));
      } else {
        throw Error(ErrorCode::invalid_argument, "class " + std::to_string(k) + " is glued by a non-translation");
      }
    }
  }
  return out;
}

bool connectivity_criterion(const CoverDescriptor& cover) {
  if (!is_tree_normalized(cover)) {
    throw Error(ErrorCode::not_tree_normalized, "gluing constants on the spanning tree are not all trivial");
  }
  std::vector<Permutation> gens;
  for (const auto& [comp, m] : cover.monodromy) gens.insert(gens.end(), m.generators().begin(), m.generators().end());
  for (auto& c : free_constants(cover)) gens.push_back(std::move(c));
  return PermutationGroup(cover.group.degree(), std::move(gens)).order() == cover.group.order();
}

std::string canonical_key(const CoverDescriptor& cover) {
  const auto normalized = normalize_spanning_tree(cover);
  const auto& cfg = cover.base;
  const auto& t = cover.group.table();
  std::ostringstream head;
  head << "p" << cfg.characteristic << "|";
  std::vector<std::string> comps;
  for (const auto& c : cfg.components) comps.push_back(c.id + "/" + std::to_string(c.genus) + "/" + std::to_string(c.p_rank));
  std::sort(comps.begin(), comps.end());
  for (const auto& c : comps) head << c << ",";
  head << "|";
  std::set<PointRef> pts;
  for (const auto& [comp, labels] : cfg.points) {
    for (const auto& l : labels) pts.insert({comp, l});
  }
  for (const auto& p : pts) head << p.str() << ",";
  head << "|";
  std::set<PointRef> removed(cfg.removed.begin(), cfg.removed.end());
  for (const auto& p : removed) head << p.str() << ",";
  head << "|n" << t.size() << "|";

  // Minimize over the global relabelings l -> s l, which conjugate everything.
  std::string best;
  for (Elem s = 0; s < t.size(); ++s) {
    const Elem si = t.inv(s);
    std::vector<std::string> classes;
    for (std::size_t k = 0; k < normalized.gluings.size(); ++k) {
      std::ostringstream os;
      os << normalized.gluings[k].base.str();
      for (std::size_t j = 0; j < normalized.gluings[k].branches.size(); ++j) {
        os << ";" << normalized.gluings[k].branches[j].branch.str() << ":";
        const auto map = branch_map(normalized, k, j);
        for (Elem l = 0; l < t.size(); ++l) os << t.mul(s, map[t.mul(si, l)]) << ".";
      }
      classes.push_back(os.str());
    }
    std::sort(classes.begin(), classes.end());
    std::ostringstream os;
    for (const auto& c : classes) os << c << "#";
    auto subgroup_key = [&](const PermutationGroup& h) {
      std::vector<Elem> m;
      for (Elem x : subgroup_set(t, h).members()) m.push_back(t.mul(t.mul(s, x), si));
      std::sort(m.begin(), m.end());
      std::string out;
      for (Elem x : m) out += std::to_string(x) + ".";
      return out;
    };
    os << "|";
    for (const auto& [comp, m] : normalized.monodromy) os << comp << "=" << subgroup_key(m) << ";";
    os << "|";
    for (const auto& [p, inertia] : normalized.ramification) os << p.str() << "=" << subgroup_key(inertia) << ";";
    auto key = os.str();
    if (s == 0 || key < best) best = std::move(key);
  }
  return head.str() + best;
}

bool equivalent(const CoverDescriptor& a, const CoverDescriptor& b) {
  if (!a.group.same_elements(b.group)) return false;
  return canonical_key(a) == canonical_key(b);
}

CoverDescriptor literal_rule_gluing(const CoverDescriptor& cover, const PermutationGroup& ambient,
                                    const Permutation& gamma, const PointRef& y1, const PointRef& y2) {
  require_subgroup(ambient, cover.group, "G");
  require_member(ambient, gamma, "gamma");
  const auto& ta = ambient.table();
  const auto members = subgroup_set(ta, cover.group).members();
  const std::size_t n = ta.size() / members.size();
  const Elem g = ta.index_of(gamma);
  // {gamma^i} must be a transversal of the left cosets gamma^i G.
  std::set<Elem> keys;
  for (std::size_t i = 0; i < n; ++i) {
    const Elem gi = ta.pow(g, static_cast<long long>(i));
    Elem key = ta.mul(gi, members[0]);
    for (Elem h : members) key = std::min(key, ta.mul(gi, h));
    keys.insert(key);
  }
  if (keys.size() != n) throw Error(ErrorCode::not_a_transversal, "the powers of gamma are not a coset transversal");
  auto induced = with_constants(induce(cover, ambient));
  std::vector<std::vector<CoverPoint>> rel;
  for (std::size_t i = 0; i < n; ++i) {
    const Elem gi = ta.pow(g, static_cast<long long>(i));
    const Elem gnext = ta.pow(g, static_cast<long long>((i + 1) % n));
    for (Elem h : members) {
      rel.push_back({{y1, ta.element(ta.mul(gi, h))}, {y2, ta.element(ta.mul(gnext, h))}});
    }
  }
  DescentOptions opts;
  opts.require_galois = false;
  return descend(induced, {{y1, y2}}, rel, opts);
}

std::string to_dot(const CoverDescriptor& cover) {
  const auto& cfg = cover.base;
  const auto& t = cover.group.table();
  // sheet[i][l]: index of the sheet over component i containing label l.
  std::vector<std::vector<std::size_t>> sheet(cfg.components.size());
  std::ostringstream os;
  os << "graph cover {\n";
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    const auto& id = cfg.components[i].id;
    const auto members = subgroup_set(t, cover.monodromy_of(id)).members();
    std::vector<Elem> rep(t.size());
    for (Elem l = 0; l < t.size(); ++l) {
      Elem best = t.mul(members[0], l);
      for (Elem m : members) best = std::min(best, t.mul(m, l));
      rep[l] = best;
    }
    std::vector<Elem> reps(rep);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    sheet[i].resize(t.size());
    for (Elem l = 0; l < t.size(); ++l) {
      sheet[i][l] = static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), rep[l]) - reps.begin());
    }
    for (std::size_t k = 0; k < reps.size(); ++k) {
      os << "  " << quote(id + "#" + std::to_string(k)) << " [label=" << quote(id + " sheet " + std::to_string(k))
         << "];\n";
    }
  }
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    const auto& gl = cover.gluings[k];
    const auto a = *cfg.component_index(gl.base.component);
    for (std::size_t j = 0; j < gl.branches.size(); ++j) {
      const auto b = *cfg.component_index(gl.branches[j].branch.component);
      const auto map = branch_map(cover, k, j);
      std::set<std::pair<std::size_t, std::size_t>> edges;
      for (Elem l = 0; l < t.size(); ++l) edges.emplace(sheet[a][l], sheet[b][map[l]]);
      for (const auto& [u, v] : edges) {
        os << "  " << quote(cfg.components[a].id + "#" + std::to_string(u)) << " -- "
           << quote(cfg.components[b].id + "#" + std::to_string(v)) << " [label=" << quote("x" + std::to_string(k))
           << "];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace curvepi
