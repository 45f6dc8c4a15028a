#include "curvepi/curve.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "curvepi/error.hpp"
#include "curvepi/perm_group.hpp"
#include "union_find.hpp"

namespace curvepi {

std::optional<std::size_t> CurveConfiguration::component_index(const std::string& id) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].id == id) return i;
  }
  return std::nullopt;
}

const ComponentData& CurveConfiguration::component(const std::string& id) const {
  auto i = component_index(id);
  if (!i) throw Error(ErrorCode::point_not_found, "no component '" + id + "'");
  return components[*i];
}

bool CurveConfiguration::has_point(const PointRef& p) const {
  auto it = points.find(p.component);
  if (it == points.end()) return false;
  return std::find(it->second.begin(), it->second.end(), p.label) != it->second.end();
}

std::optional<std::size_t> CurveConfiguration::class_of(const PointRef& p) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (std::binary_search(classes[i].begin(), classes[i].end(), p)) return i;
  }
  return std::nullopt;
}

bool CurveConfiguration::is_removed(const PointRef& p) const {
  return std::find(removed.begin(), removed.end(), p) != removed.end();
}

std::vector<PointRef> CurveConfiguration::smooth_points() const {
  std::vector<PointRef> out;
  for (const auto& c : components) {
    auto it = points.find(c.id);
    if (it == points.end()) continue;
    for (const auto& label : it->second) {
      PointRef p{c.id, label};
      if (!class_of(p) && !is_removed(p)) out.push_back(std::move(p));
    }
  }
  return out;
}

unsigned CurveConfiguration::total_genus() const {
  unsigned g = 0;
  for (const auto& c : components) g += c.genus;
  return g;
}

unsigned CurveConfiguration::total_p_rank() const {
  unsigned s = 0;
  for (const auto& c : components) s += c.p_rank;
  return s;
}

std::vector<Violation> validate(const CurveConfiguration& config) {
  std::vector<Violation> out;
  auto report = [&](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };
  if (config.characteristic != 0 && !is_prime(config.characteristic)) {
    report("INVALID_CHARACTERISTIC",
           "characteristic " + std::to_string(config.characteristic) + " is neither 0 nor prime");
  }
  if (config.components.empty()) report("NO_COMPONENTS", "configuration has no components");
  std::set<std::string> ids;
  for (const auto& c : config.components) {
    if (c.id.empty()) report("EMPTY_ID", "component with empty id");
    if (!ids.insert(c.id).second) report("DUPLICATE_COMPONENT", "component '" + c.id + "' listed twice");
    if (c.p_rank > c.genus) {
      report("P_RANK_OUT_OF_RANGE", "component '" + c.id + "' has p-rank " + std::to_string(c.p_rank) +
                                        " above genus " + std::to_string(c.genus));
    }
  }
  for (const auto& [comp, labels] : config.points) {
    if (!ids.contains(comp)) report("UNKNOWN_COMPONENT", "points listed for unknown component '" + comp + "'");
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) report("DUPLICATE_POINT", "point " + comp + ":" + l + " listed twice");
    }
  }
  auto check_ref = [&](const PointRef& p, const std::string& where) {
    if (!ids.contains(p.component)) {
      report("UNKNOWN_COMPONENT", where + " refers to unknown component '" + p.component + "'");
      return false;
    }
    if (!config.has_point(p)) {
      report("UNKNOWN_POINT", where + " refers to unknown point " + p.str());
      return false;
    }
    return true;
  };
  std::map<PointRef, std::size_t> owner;
  for (std::size_t i = 0; i < config.classes.size(); ++i) {
    const auto& cls = config.classes[i];
    const std::string where = "class " + std::to_string(i);
    std::set<PointRef> members(cls.begin(), cls.end());
    if (members.size() != cls.size()) report("DUPLICATE_MEMBER", where + " repeats a point");
    if (members.size() < 2) report("CLASS_TOO_SMALL", where + " has fewer than 2 points");
    for (const auto& p : members) {
      check_ref(p, where);
      auto [it, fresh] = owner.emplace(p, i);
      if (!fresh) {
        report("CLASSES_OVERLAP", "point " + p.str() + " lies in classes " + std::to_string(it->second) +
                                      " and " + std::to_string(i));
      }
    }
  }
  std::set<PointRef> removed;
  for (const auto& p : config.removed) {
    check_ref(p, "removed point");
    if (!removed.insert(p).second) report("DUPLICATE_REMOVED", "point " + p.str() + " removed twice");
    if (owner.contains(p)) {
      report("REMOVED_IN_CLASS", "removed point " + p.str() + " lies in class " + std::to_string(owner[p]));
    }
  }
  return out;
}

void require_valid(const CurveConfiguration& config) {
  auto v = validate(config);
  if (!v.empty()) throw Error(ErrorCode::invalid_config, v.front().code + ": " + v.front().message);
}

DualGraph dual_graph(const CurveConfiguration& config) {
  require_valid(config);
  DualGraph g;
  for (const auto& c : config.components) g.vertices.push_back(c.id);
  UnionFind uf(g.vertices.size());
  for (const auto& cls : config.classes) {
    std::vector<PointRef> sorted(cls);
    std::sort(sorted.begin(), sorted.end());
    const auto root = *config.component_index(sorted.front().component);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      const auto other = *config.component_index(sorted[k].component);
      g.edges.emplace_back(root, other);
      uf.unite(root, other);
    }
  }
  g.connected_components = uf.classes();
  return g;
}

bool is_connected(const CurveConfiguration& config) {
  return dual_graph(config).connected_components == 1;
}

namespace {

long long raw_delta(const CurveConfiguration& config) {
  long long d = 1 - static_cast<long long>(config.components.size());
  for (const auto& cls : config.classes) d += static_cast<long long>(cls.size()) - 1;
  return d;
}

void require_connected(const CurveConfiguration& config) {
  if (!is_connected(config)) throw Error(ErrorCode::not_connected, "configuration is not connected");
}

void require_projective(const CurveConfiguration& config) {
  if (!config.is_projective()) {
    throw Error(ErrorCode::not_projective, "configuration has " + std::to_string(config.removed.size()) +
                                               " removed points");
  }
}

}  // namespace

long long delta(const CurveConfiguration& config) {
  require_connected(config);
  require_projective(config);
  return raw_delta(config);
}

unsigned affine_delta(const CurveConfiguration& config) {
  require_valid(config);
  unsigned d = 0;
  for (const auto& cls : config.classes) d += static_cast<unsigned>(cls.size() - 1);
  return d;
}

RankReport rank_report(const CurveConfiguration& config) {
  require_connected(config);
  RankReport r;
  r.delta = raw_delta(config);
  r.affine_delta = affine_delta(config);
  r.pi1_rank_bound = 2 * config.total_genus() + static_cast<unsigned>(r.delta);
  r.pro_p_rank = config.total_p_rank() + static_cast<unsigned>(r.delta);
  if (config.components.size() == 1 && !config.removed.empty()) {
    r.tame_rank = 2 * config.total_genus() + static_cast<unsigned>(config.removed.size()) - 1 + r.affine_delta;
  }
  return r;
}

unsigned pro_p_rank(const CurveConfiguration& config) {
  return config.total_p_rank() + static_cast<unsigned>(delta(config));
}

CurveConfiguration identify(const CurveConfiguration& config,
                            const std::vector<std::vector<PointRef>>& relation) {
  require_valid(config);
  // Items: existing classes first, then smooth points touched by the relation.
  const std::size_t l = config.classes.size();
  std::map<PointRef, std::size_t> smooth_item;
  std::vector<PointRef> smooth_points;
  auto item_of = [&](const PointRef& p) -> std::size_t {
    if (!config.has_point(p)) throw Error(ErrorCode::point_not_found, "no marked point " + p.str());
    if (config.is_removed(p)) {
      throw Error(ErrorCode::overlap_with_removed, "point " + p.str() + " is removed");
    }
    if (auto c = config.class_of(p)) return *c;
    auto [it, fresh] = smooth_item.emplace(p, l + smooth_points.size());
    if (fresh) smooth_points.push_back(p);
    return it->second;
  };
  std::vector<std::vector<std::size_t>> set_items;
  for (const auto& set : relation) {
    std::set<PointRef> distinct(set.begin(), set.end());
    if (distinct.size() < 2) {
      throw Error(ErrorCode::invalid_argument, "each identified set needs at least 2 distinct points");
    }
    std::vector<std::size_t> items;
    for (const auto& p : distinct) items.push_back(item_of(p));
    set_items.push_back(std::move(items));
  }
  UnionFind uf(l + smooth_points.size());
  for (const auto& items : set_items) {
    for (std::size_t k = 1; k < items.size(); ++k) uf.unite(items[0], items[k]);
  }
  auto members_of = [&](std::size_t item) -> std::vector<PointRef> {
    if (item < l) return config.classes[item];
    return {smooth_points[item - l]};
  };
  std::map<std::size_t, std::vector<PointRef>> groups;
  for (std::size_t item = 0; item < l + smooth_points.size(); ++item) {
    auto m = members_of(item);
    auto& g = groups[uf.find(item)];
    g.insert(g.end(), m.begin(), m.end());
  }
  CurveConfiguration out = config;
  out.classes.clear();
  std::set<std::size_t> emitted;
  auto emit = [&](std::size_t item) {
    auto root = uf.find(item);
    if (!emitted.insert(root).second) return;
    auto members = groups[root];
    std::sort(members.begin(), members.end());
    out.classes.push_back(std::move(members));
  };
  for (std::size_t i = 0; i < l; ++i) emit(i);
  for (const auto& items : set_items) emit(items[0]);
  return out;
}

std::vector<ElementaryIdentification> factorize(const CurveConfiguration& config) {
  require_connected(config);
  UnionFind uf(config.components.size());
  std::vector<ElementaryIdentification> steps;
  for (const auto& cls : config.classes) {
    std::vector<PointRef> sorted(cls);
    std::sort(sorted.begin(), sorted.end());
    const auto root = *config.component_index(sorted.front().component);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      const auto other = *config.component_index(sorted[k].component);
      const bool same = uf.find(root) == uf.find(other);
      uf.unite(root, other);
      steps.push_back({sorted.front(), sorted[k], same});
    }
  }
  return steps;
}

CurveConfiguration normalization(const CurveConfiguration& config) {
  CurveConfiguration out = config;
  out.classes.clear();
  return out;
}

CurveConfiguration replay(const CurveConfiguration& start,
                          const std::vector<ElementaryIdentification>& steps) {
  CurveConfiguration cur = start;
  for (const auto& s : steps) cur = identify(cur, {{s.first, s.second}});
  return cur;
}

bool same_curve(const CurveConfiguration& a, const CurveConfiguration& b) {
  if (a.characteristic != b.characteristic) return false;
  auto comps = [](const CurveConfiguration& c) {
    std::vector<std::tuple<std::string, unsigned, unsigned>> v;
    for (const auto& x : c.components) v.emplace_back(x.id, x.genus, x.p_rank);
    std::sort(v.begin(), v.end());
    return v;
  };
  auto pts = [](const CurveConfiguration& c) {
    std::set<PointRef> s;
    for (const auto& [comp, labels] : c.points) {
      for (const auto& l : labels) s.insert({comp, l});
    }
    return s;
  };
  auto classes = [](const CurveConfiguration& c) {
    std::set<std::set<PointRef>> s;
    for (const auto& cls : c.classes) s.emplace(cls.begin(), cls.end());
    return s;
  };
  auto removed = [](const CurveConfiguration& c) { return std::set<PointRef>(c.removed.begin(), c.removed.end()); };
  return comps(a) == comps(b) && pts(a) == pts(b) && classes(a) == classes(b) && removed(a) == removed(b);
}

CurveConfiguration disjoint_union(const CurveConfiguration& a, const CurveConfiguration& b) {
  if (a.characteristic != b.characteristic) {
    throw Error(ErrorCode::invalid_argument, "configurations have different characteristics");
  }
  for (const auto& c : b.components) {
    if (a.component_index(c.id)) {
      throw Error(ErrorCode::component_overlap, "component '" + c.id + "' occurs in both configurations");
    }
  }
  CurveConfiguration out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  for (const auto& [comp, labels] : b.points) out.points[comp] = labels;
  out.classes.insert(out.classes.end(), b.classes.begin(), b.classes.end());
  out.removed.insert(out.removed.end(), b.removed.begin(), b.removed.end());
  return out;
}

CurveConfiguration random_configuration(std::uint64_t seed, const RandomConfigOptions& opts) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  CurveConfiguration c;
  c.characteristic = opts.characteristic;
  std::size_t max_n = std::max<std::size_t>(opts.max_components, 1);
  if (opts.connected) max_n = std::min(max_n, opts.max_classes + 1);
  const std::size_t n = uniform(1, max_n);
  std::vector<std::size_t> next_label(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ComponentData comp;
    comp.id = "C" + std::to_string(i + 1);
    comp.genus = static_cast<unsigned>(uniform(0, opts.max_genus));
    comp.p_rank = static_cast<unsigned>(uniform(0, comp.genus));
    c.components.push_back(comp);
    c.points[comp.id];
  }
  auto fresh_point = [&](std::size_t comp) {
    PointRef p{c.components[comp].id, "p" + std::to_string(next_label[comp]++)};
    c.points[p.component].push_back(p.label);
    return p;
  };
  auto add_class = [&](std::vector<std::size_t> comps) {
    std::vector<PointRef> cls;
    for (auto i : comps) cls.push_back(fresh_point(i));
    std::sort(cls.begin(), cls.end());
    c.classes.push_back(std::move(cls));
  };
  std::size_t used = 0;
  if (opts.connected) {
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::size_t> comps{uniform(0, i - 1), i};
      if (uniform(0, 2) == 0) comps.push_back(uniform(0, n - 1));
      add_class(comps);
      ++used;
    }
  }
  const std::size_t extra = uniform(0, opts.max_classes - std::min(used, opts.max_classes));
  for (std::size_t k = 0; k < extra; ++k) {
    std::vector<std::size_t> comps(uniform(2, 3));
    for (auto& x : comps) x = uniform(0, n - 1);
    add_class(comps);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform(0, 1) == 0) fresh_point(i);
  }
  if (!opts.projective) {
    const std::size_t r = uniform(1, 2);
    for (std::size_t k = 0; k < r; ++k) c.removed.push_back(fresh_point(uniform(0, n - 1)));
  }
  return c;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const CurveConfiguration& config) {
  require_valid(config);
  std::ostringstream os;
  os << "graph curve {\n";
  for (const auto& comp : config.components) {
    os << "  " << quote(comp.id) << " [label=" << quote(comp.id + " g=" + std::to_string(comp.genus) + " s=" +
                                                         std::to_string(comp.p_rank))
       << "];\n";
  }
  for (std::size_t i = 0; i < config.classes.size(); ++i) {
    std::vector<PointRef> sorted(config.classes[i]);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      os << "  " << quote(sorted.front().component) << " -- " << quote(sorted[k].component)
         << " [label=" << quote("x" + std::to_string(i) + ": " + sorted.front().label + "~" + sorted[k].label)
         << "];\n";
    }
  }
  for (const auto& p : config.removed) {
    os << "  " << quote("removed " + p.str()) << " [shape=point];\n";
    os << "  " << quote(p.component) << " -- " << quote("removed " + p.str()) << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace curvepi
