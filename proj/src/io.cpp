#include "curvepi/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "curvepi/catalog.hpp"
#include "curvepi/error.hpp"
#include "curvepi/group_lattice.hpp"
#include "json.hpp"

namespace curvepi {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::parse_error, msg); }

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(what + ": " + e.what());
  }
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
  if (!obj.is_object()) fail(what + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) fail(what + ": unknown field '" + k + "'");
  }
}

const json& required(const json& obj, const char* key, const std::string& what) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(what + ": missing field '" + key + "'");
  return *it;
}

std::string as_label(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(what + ": expected a string label");
}

unsigned as_unsigned(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(what + ": expected a nonnegative integer");
  return v.get<unsigned>();
}

PointRef as_point(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) fail(what + ": a point is a [component, label] pair");
  return {as_label(v[0], what), as_label(v[1], what)};
}

Permutation as_permutation(const json& v, std::size_t degree, const std::string& what) {
  if (!v.is_array()) fail(what + ": a permutation is an array of images");
  std::vector<long long> images;
  for (const auto& x : v) {
    if (!x.is_number_integer()) fail(what + ": images must be integers");
    images.push_back(x.get<long long>());
  }
  if (images.size() != degree) {
    throw Error(ErrorCode::degree_mismatch, what + ": expected degree " + std::to_string(degree) + ", got " +
                                                std::to_string(images.size()));
  }
  try {
    return Permutation::from_one_based(images);
  } catch (const Error& e) {
    throw Error(e.code(), what + ": " + e.what());
  }
}

std::vector<Permutation> as_generators(const json& v, std::size_t degree, const std::string& what) {
  if (!v.is_array()) fail(what + ": expected a list of permutations");
  std::vector<Permutation> out;
  for (const auto& g : v) out.push_back(as_permutation(g, degree, what));
  return out;
}

ojson point_json(const PointRef& p) { return ojson::array({p.component, p.label}); }

ojson perm_json(const Permutation& p) { return p.to_one_based(); }

ojson gens_json(const std::vector<Permutation>& gens) {
  ojson out = ojson::array();
  for (const auto& g : gens) out.push_back(perm_json(g));
  return out;
}

std::string dump(const ojson& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

CurveConfiguration config_from(const json& j) {
  const std::string what = "configuration";
  allow_keys(j, {"characteristic", "components", "points", "identifications", "removed"}, what);
  CurveConfiguration c;
  c.characteristic = as_unsigned(required(j, "characteristic", what), what + ".characteristic");
  const auto& comps = required(j, "components", what);
  if (!comps.is_array()) fail(what + ".components must be an array");
  for (const auto& comp : comps) {
    allow_keys(comp, {"id", "genus", "p_rank"}, what + ".components[]");
    ComponentData d;
    d.id = as_label(required(comp, "id", what + ".components[]"), what + ".components[].id");
    if (comp.contains("genus")) d.genus = as_unsigned(comp["genus"], what + ".components[].genus");
    if (comp.contains("p_rank")) d.p_rank = as_unsigned(comp["p_rank"], what + ".components[].p_rank");
    c.components.push_back(std::move(d));
  }
  if (j.contains("identifications")) {
    const auto& ids = j["identifications"];
    if (!ids.is_array()) fail(what + ".identifications must be an array");
    for (const auto& cls : ids) {
      if (!cls.is_array()) fail(what + ".identifications: each class is a list of points");
      std::vector<PointRef> members;
      for (const auto& p : cls) members.push_back(as_point(p, what + ".identifications"));
      std::sort(members.begin(), members.end());
      c.classes.push_back(std::move(members));
    }
  }
  if (j.contains("removed")) {
    const auto& rem = j["removed"];
    if (!rem.is_array()) fail(what + ".removed must be an array");
    for (const auto& p : rem) c.removed.push_back(as_point(p, what + ".removed"));
  }
  if (j.contains("points")) {
    const auto& pts = j["points"];
    if (!pts.is_object()) fail(what + ".points must be an object");
    for (const auto& [comp, labels] : pts.items()) {
      if (!labels.is_array()) fail(what + ".points: each entry is a list of labels");
      auto& out = c.points[comp];
      for (const auto& l : labels) out.push_back(as_label(l, what + ".points"));
    }
  } else {
    for (const auto& comp : c.components) c.points[comp.id];
    auto note = [&](const PointRef& p) {
      auto& labels = c.points[p.component];
      if (std::find(labels.begin(), labels.end(), p.label) == labels.end()) labels.push_back(p.label);
    };
    for (const auto& cls : c.classes) {
      for (const auto& p : cls) note(p);
    }
    for (const auto& p : c.removed) note(p);
  }
  return c;
}

ojson config_ojson(const CurveConfiguration& c) {
  ojson j;
  j["characteristic"] = c.characteristic;
  ojson comps = ojson::array();
  for (const auto& d : c.components) comps.push_back({{"id", d.id}, {"genus", d.genus}, {"p_rank", d.p_rank}});
  j["components"] = std::move(comps);
  ojson pts = ojson::object();
  for (const auto& d : c.components) {
    auto it = c.points.find(d.id);
    pts[d.id] = it == c.points.end() ? std::vector<std::string>{} : it->second;
  }
  j["points"] = std::move(pts);
  ojson ids = ojson::array();
  for (const auto& cls : c.classes) {
    ojson members = ojson::array();
    for (const auto& p : cls) members.push_back(point_json(p));
    ids.push_back(std::move(members));
  }
  j["identifications"] = std::move(ids);
  ojson rem = ojson::array();
  for (const auto& p : c.removed) rem.push_back(point_json(p));
  j["removed"] = std::move(rem);
  return j;
}

PermutationGroup group_from(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto path = fs::path(base_dir) / s;
    if (s.ends_with(".json") && fs::exists(path)) return group_from_json(read_file(path.string()));
    return group_by_name(s);
  }
  const std::string what = "group";
  allow_keys(j, {"name", "degree", "generators", "order"}, what);
  const auto degree = as_unsigned(required(j, "degree", what), what + ".degree");
  if (degree == 0) fail(what + ".degree must be positive");
  PermutationGroup g(degree, as_generators(required(j, "generators", what), degree, what + ".generators"));
  if (j.contains("order") && j["order"] != g.order()) {
    throw Error(ErrorCode::invalid_argument, what + ": stated order " + j["order"].dump() +
                                                 " but the generators give " + std::to_string(g.order()));
  }
  return g;
}

ojson group_ojson(const PermutationGroup& g) {
  ojson j;
  j["degree"] = g.degree();
  j["generators"] = gens_json(g.generators());
  return j;
}

CoverDescriptor cover_from(const json& j, const std::string& base_dir) {
  const std::string what = "cover";
  if (j.is_string()) return load_cover((fs::path(base_dir) / j.get<std::string>()).string());
  allow_keys(j, {"config", "group", "monodromy", "gluings", "ramification"}, what);
  const auto& cj = required(j, "config", what);
  CurveConfiguration config = cj.is_string() ? load_config((fs::path(base_dir) / cj.get<std::string>()).string())
                                             : config_from(cj);
  require_valid(config);
  const auto group = group_from(required(j, "group", what), base_dir);
  const auto n = group.degree();
  auto cover = trivial_cover(config, group);
  if (j.contains("monodromy")) {
    const auto& m = j["monodromy"];
    if (!m.is_object()) fail(what + ".monodromy must be an object");
    for (const auto& [comp, gens] : m.items()) {
      if (!config.component_index(comp)) throw Error(ErrorCode::point_not_found, what + ": no component " + comp);
      cover.monodromy[comp] = PermutationGroup(n, as_generators(gens, n, what + ".monodromy"));
    }
  }
  if (j.contains("gluings")) {
    const auto& gl = j["gluings"];
    if (!gl.is_array()) fail(what + ".gluings must be an array");
    const auto& t = group.table();
    for (const auto& entry : gl) {
      allow_keys(entry, {"class_index", "branch", "constant", "label_map"}, what + ".gluings[]");
      const auto k = as_unsigned(required(entry, "class_index", what), what + ".gluings[].class_index");
      if (k >= cover.gluings.size()) {
        throw Error(ErrorCode::invalid_argument, what + ": class_index " + std::to_string(k) + " out of range");
      }
      const auto branch = as_point(required(entry, "branch", what), what + ".gluings[].branch");
      auto& branches = cover.gluings[k].branches;
      auto it = std::find_if(branches.begin(), branches.end(), [&](const auto& b) { return b.branch == branch; });
      if (it == branches.end()) {
        throw Error(ErrorCode::invalid_argument,
                    what + ": " + branch.str() + " is not a non-base member of class " + std::to_string(k));
      }
      if (entry.contains("constant") == entry.contains("label_map")) {
        fail(what + ".gluings[]: give exactly one of constant and label_map");
      }
      if (entry.contains("constant")) {
        it->constant = as_permutation(entry["constant"], n, what + ".gluings[].constant");
        continue;
      }
      const auto& lm = entry["label_map"];
      if (!lm.is_array() || lm.size() != t.size()) fail(what + ".gluings[].label_map must list every label once");
      std::vector<Elem> map(t.size(), 0);
      std::vector<char> seen(t.size(), 0);
      for (const auto& pair : lm) {
        if (!pair.is_array() || pair.size() != 2) fail(what + ".gluings[].label_map entries are [from, to] pairs");
        const auto from = t.index_of(as_permutation(pair[0], n, what + ".label_map"));
        if (seen[from]++) fail(what + ".gluings[].label_map lists a label twice");
        map[from] = t.index_of(as_permutation(pair[1], n, what + ".label_map"));
      }
      it->label_map = std::move(map);
    }
  }
  if (j.contains("ramification")) {
    const auto& r = j["ramification"];
    if (!r.is_array()) fail(what + ".ramification must be an array");
    for (const auto& entry : r) {
      allow_keys(entry, {"point", "inertia"}, what + ".ramification[]");
      const auto p = as_point(required(entry, "point", what), what + ".ramification[].point");
      cover.ramification[p] = PermutationGroup(n, as_generators(required(entry, "inertia", what), n, what + ".inertia"));
    }
  }
  check_descriptor(cover, false);
  return cover;
}

ojson cover_ojson(const CoverDescriptor& cover) {
  ojson j;
  j["config"] = config_ojson(cover.base);
  j["group"] = group_ojson(cover.group);
  ojson m = ojson::object();
  for (const auto& comp : cover.base.components) m[comp.id] = gens_json(cover.monodromy_of(comp.id).generators());
  j["monodromy"] = std::move(m);
  const auto& t = cover.group.table();
  ojson gl = ojson::array();
  for (std::size_t k = 0; k < cover.gluings.size(); ++k) {
    for (const auto& b : cover.gluings[k].branches) {
      ojson e;
      e["class_index"] = k;
      e["branch"] = point_json(b.branch);
      if (b.is_translation()) {
        e["constant"] = perm_json(b.constant);
      } else {
        ojson lm = ojson::array();
        for (Elem l = 0; l < t.size(); ++l) lm.push_back({perm_json(t.element(l)), perm_json(t.element(b.label_map[l]))});
        e["label_map"] = std::move(lm);
      }
      gl.push_back(std::move(e));
    }
  }
  j["gluings"] = std::move(gl);
  ojson ram = ojson::array();
  for (const auto& [p, h] : cover.ramification) ram.push_back({{"point", point_json(p)}, {"inertia", gens_json(h.generators())}});
  j["ramification"] = std::move(ram);
  return j;
}

ojson witness_cover(const PermutationGroup& g, const CurveConfiguration& config, const std::vector<Permutation>& w) {
  return cover_ojson(cover_from_constants(g, config, w));
}

std::string base_dir_of(const std::string& path) {
  auto parent = fs::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CurveConfiguration config_from_json(const std::string& text) {
  try {
    return config_from(parse(text, "configuration"));
  } catch (const json::exception& e) {
    fail(std::string("configuration: ") + e.what());
  }
}

CurveConfiguration load_config(const std::string& path) { return config_from_json(read_file(path)); }

std::string config_to_json(const CurveConfiguration& config, bool pretty) { return dump(config_ojson(config), pretty); }

PermutationGroup group_from_json(const std::string& text) {
  try {
    return group_from(parse(text, "group"), ".");
  } catch (const json::exception& e) {
    fail(std::string("group: ") + e.what());
  }
}

PermutationGroup resolve_group(const std::string& spec) {
  if (fs::is_regular_file(spec)) return group_from_json(read_file(spec));
  return group_by_name(spec);
}

std::string group_to_json(const PermutationGroup& g, bool pretty) {
  auto j = group_ojson(g);
  j["order"] = g.order();
  return dump(j, pretty);
}

CoverDescriptor cover_from_json(const std::string& text, const std::string& base_dir) {
  try {
    return cover_from(parse(text, "cover"), base_dir);
  } catch (const json::exception& e) {
    fail(std::string("cover: ") + e.what());
  }
}

CoverDescriptor load_cover(const std::string& path) { return cover_from_json(read_file(path), base_dir_of(path)); }

std::string cover_to_json(const CoverDescriptor& cover, bool pretty) { return dump(cover_ojson(cover), pretty); }

std::string verdict_to_json(const RealizabilityVerdict& v, bool pretty) {
  ojson j;
  j["verdict"] = std::string(verdict_name(v.verdict));
  ojson ev = ojson::object();
  for (const auto& [name, value] : v.evidence) {
    std::visit([&](const auto& x) { ev[name] = x; }, value);
  }
  j["evidence"] = std::move(ev);
  j["rule"] = v.rule;
  j["randomized"] = v.randomized;
  return dump(j, pretty);
}

std::string rank_report_to_json(const RankReport& r, bool pretty) {
  ojson j;
  j["delta"] = r.delta;
  j["pi1_rank_bound"] = r.pi1_rank_bound;
  j["pro_p_rank"] = r.pro_p_rank;
  j["tame_rank"] = r.tame_rank ? ojson(*r.tame_rank) : ojson(nullptr);
  j["affine_delta"] = r.affine_delta;
  return dump(j, pretty);
}

std::string violations_to_json(const std::vector<Violation>& v, bool pretty) {
  ojson j;
  j["valid"] = v.empty();
  ojson list = ojson::array();
  for (const auto& x : v) list.push_back({{"code", x.code}, {"message", x.message}});
  j["violations"] = std::move(list);
  return dump(j, pretty);
}

std::string census_to_json(const CurveConfiguration& config, const std::vector<CensusEntry>& census, bool pretty) {
  ojson j;
  j["delta"] = delta(config);
  ojson groups = ojson::array();
  for (const auto& e : census) {
    ojson item;
    item["name"] = e.name;
    item["order"] = e.order;
    item["d"] = e.d;
    item["count"] = e.count ? ojson(*e.count) : ojson(nullptr);
    item["witness"] = witness_cover(e.group, config, e.witness);
    groups.push_back(std::move(item));
  }
  j["groups"] = std::move(groups);
  return dump(j, pretty);
}

std::string census_to_text(const CurveConfiguration& config, const std::vector<CensusEntry>& census) {
  std::ostringstream os;
  os << "delta " << delta(config) << ", " << census.size() << " realizable groups\n";
  os << "name          order  d  count\n";
  for (const auto& e : census) {
    std::string name = e.name;
    name.resize(std::max<std::size_t>(name.size(), 12), ' ');
    os << name << "  " << std::string(e.order < 10 ? 4 : 3, ' ') << e.order << "  " << e.d << "  "
       << (e.count ? std::to_string(*e.count) : "-") << "\n";
  }
  return os.str();
}

std::string enumeration_to_json(const PermutationGroup& g, const CurveConfiguration& config,
                                const EnumerationResult& r, bool pretty) {
  ojson j;
  j["order"] = g.order();
  j["delta"] = delta(config);
  j["tuples"] = r.tuples;
  j["count"] = r.connected;
  j["complete"] = r.complete;
  try {
    j["eulerian"] = eulerian(g, static_cast<unsigned>(delta(config)));
  } catch (const Error&) {
    j["eulerian"] = nullptr;
  }
  ojson ws = ojson::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_cover(g, config, w));
  j["witnesses"] = std::move(ws);
  return dump(j, pretty);
}

std::string descent_report_to_json(const DescentReport& r, bool pretty) {
  ojson j;
  j["covers"] = r.covers;
  j["connected"] = r.connected;
  j["descents"] = r.descents;
  j["glue_checks"] = r.glue_checks;
  j["mismatches"] = r.mismatches;
  ojson controls = ojson::array();
  for (const auto& c : r.controls) {
    controls.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"passed", c.passed}});
  }
  j["controls"] = std::move(controls);
  j["ok"] = r.ok();
  return dump(j, pretty);
}

CoverDescriptor run_glue_script(const std::string& text, const std::string& base_dir) {
  try {
    const auto j = parse(text, "script");
    allow_keys(j, {"cover", "steps"}, "script");
    auto cover = cover_from(required(j, "cover", "script"), base_dir);
    const auto& steps = required(j, "steps", "script");
    if (!steps.is_array()) fail("script.steps must be an array");
    for (const auto& step : steps) {
      const auto op = required(step, "op", "script.steps[]");
      if (op == "same_component") {
        allow_keys(step, {"op", "group", "gamma", "y1", "y2"}, "script.steps[]");
        const auto ambient = group_from(required(step, "group", "step"), base_dir);
        const auto gamma = as_permutation(required(step, "gamma", "step"), ambient.degree(), "step.gamma");
        cover = glue_same_component(cover, ambient, gamma, as_point(required(step, "y1", "step"), "step.y1"),
                                    as_point(required(step, "y2", "step"), "step.y2"));
      } else if (op == "two_components") {
        allow_keys(step, {"op", "group", "cover", "y1", "y2"}, "script.steps[]");
        const auto ambient = group_from(required(step, "group", "step"), base_dir);
        const auto other = cover_from(required(step, "cover", "step"), base_dir);
        cover = glue_two_components(ambient, cover, other, as_point(required(step, "y1", "step"), "step.y1"),
                                    as_point(required(step, "y2", "step"), "step.y2"));
      } else {
        fail("script.steps[]: unknown op " + op.dump());
      }
    }
    return cover;
  } catch (const json::exception& e) {
    fail(std::string("script: ") + e.what());
  }
}

}  // namespace curvepi
