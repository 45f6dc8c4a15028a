#include "curvepi/selftest.hpp"

#include "curvepi/catalog.hpp"
#include "curvepi/cover.hpp"
#include "curvepi/error.hpp"
#include "curvepi/group_lattice.hpp"
#include "curvepi/oracle.hpp"
#include "curvepi/realizability.hpp"
#include "json.hpp"

namespace curvepi {

namespace {

using ojson = nlohmann::ordered_json;

CurveConfiguration lines(std::vector<std::string> ids, std::vector<std::vector<PointRef>> classes,
                         std::vector<PointRef> extra = {}) {
  CurveConfiguration c;
  c.characteristic = 5;
  for (auto& id : ids) {
    c.components.push_back({id, 0, 0});
    c.points[id];
  }
  auto note = [&](const PointRef& p) {
    auto& l = c.points[p.component];
    if (std::find(l.begin(), l.end(), p.label) == l.end()) l.push_back(p.label);
  };
  for (auto& cls : classes) {
    for (const auto& p : cls) note(p);
    std::sort(cls.begin(), cls.end());
  }
  for (const auto& p : extra) note(p);
  c.classes = std::move(classes);
  return c;
}

std::vector<std::pair<std::string, CurveConfiguration>> fixtures() {
  return {
      {"nodal", lines({"C1"}, {{{"C1", "0"}, {"C1", "1"}}}, {{"C1", "inf"}})},
      {"two-node", lines({"C1"}, {{{"C1", "0"}, {"C1", "1"}}, {{"C1", "inf"}, {"C1", "2"}}}, {{"C1", "3"}})},
      {"cross", lines({"A", "B"}, {{{"A", "0"}, {"B", "0"}}}, {{"A", "1"}, {"B", "1"}})},
      {"banana", lines({"A", "B"}, {{{"A", "0"}, {"B", "0"}}, {{"A", "1"}, {"B", "1"}}}, {{"A", "2"}, {"B", "2"}})},
      {"triangle", lines({"A", "B", "C"}, {{{"A", "1"}, {"B", "0"}}, {{"B", "1"}, {"C", "0"}}, {{"C", "1"}, {"A", "0"}}})},
  };
}

struct Section {
  ojson body;
  bool ok = true;
};

Section curve_suite(std::uint64_t seed) {
  Section s;
  unsigned checked = 0, betti_fail = 0, replay_fail = 0, pro_p_fail = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto c = random_configuration(seed * 1000003 + i);
    ++checked;
    if (delta(c) != dual_graph(c).betti()) ++betti_fail;
    if (!same_curve(replay(normalization(c), factorize(c)), c)) ++replay_fail;
    if (pro_p_rank(c) != c.total_p_rank() + delta(c)) ++pro_p_fail;
  }
  s.body = {{"configurations", checked}, {"delta_betti_failures", betti_fail},
            {"replay_failures", replay_fail}, {"pro_p_failures", pro_p_fail}};
  s.ok = betti_fail == 0 && replay_fail == 0 && pro_p_fail == 0;
  return s;
}

Section group_suite(std::uint64_t seed) {
  Section s;
  ojson failures = ojson::array();
  unsigned groups = 0;
  MinGeneratorsOptions mo;
  mo.seed = seed;
  for (const auto& e : builtin_catalog()) {
    if (e.group.order() > 24) continue;
    ++groups;
    const auto& g = e.group;
    if (enumerate_by_closure(g).size() != g.order()) failures.push_back(e.name + ": order");
    if (min_generators(g, mo).value != min_generators_exhaustive(g)) failures.push_back(e.name + ": d");
    for (unsigned k = 1; k <= 2; ++k) {
      if (eulerian(g, k) != static_cast<long long>(count_generating_tuples(g, k))) {
        failures.push_back(e.name + ": eulerian " + std::to_string(k));
      }
    }
  }
  s.body = {{"groups", groups},
            {"phi2_S3", eulerian(builders::symmetric(3), 2)},
            {"phi1_C6", eulerian(builders::cyclic(6), 1)},
            {"failures", failures}};
  s.ok = failures.empty();
  return s;
}

Section cover_suite(unsigned jobs) {
  Section s;
  ojson rows = ojson::array();
  unsigned mismatches = 0;
  for (const auto& [name, cfg] : fixtures()) {
    if (name != "nodal" && name != "two-node") continue;
    unsigned groups = 0;
    unsigned long long total = 0;
    for (const auto& e : builtin_catalog()) {
      if (e.group.order() > 24) continue;
      ++groups;
      EnumerateOptions eo;
      eo.jobs = jobs;
      const auto r = enumerate_connected_covers(e.group, cfg, eo);
      total += r.connected;
      if (static_cast<long long>(r.connected) != eulerian(e.group, static_cast<unsigned>(delta(cfg)))) ++mismatches;
    }
    rows.push_back({{"config", name}, {"groups", groups}, {"connected_covers", total}});
  }
  s.body = {{"enumerations", rows}, {"mismatches", mismatches}};
  s.ok = mismatches == 0;
  return s;
}

Section descent_suite(unsigned jobs) {
  Section s;
  ojson rows = ojson::array();
  for (const auto& [name, cfg] : fixtures()) {
    unsigned long long covers = 0, descents = 0, glues = 0, mismatches = 0, controls = 0, failed_controls = 0;
    for (const auto& e : builtin_catalog()) {
      if (e.group.order() > 8) continue;
      CrossCheckOptions co;
      co.jobs = jobs;
      const auto r = cross_check_descent(e.group, cfg, co);
      covers += r.covers;
      descents += r.descents;
      glues += r.glue_checks;
      mismatches += r.mismatches.size();
      for (const auto& c : r.controls) {
        ++controls;
        failed_controls += !c.passed;
      }
    }
    rows.push_back({{"config", name},
                    {"covers", covers},
                    {"descents", descents},
                    {"glue_checks", glues},
                    {"mismatches", mismatches},
                    {"controls", controls},
                    {"failed_controls", failed_controls}});
    s.ok = s.ok && mismatches == 0 && failed_controls == 0;
  }
  s.body = {{"configs", rows}};
  return s;
}

Section realizability_suite(std::uint64_t seed) {
  Section s;
  MinGeneratorsOptions mo;
  mo.seed = seed;
  const auto c3 = builders::cyclic(3);
  const auto nodal = fixtures().front().second;
  const auto two = fixtures()[1].second;
  struct Row {
    std::string name;
    RealizabilityVerdict v;
    Verdict expect;
  };
  std::vector<Row> rows = {
      {"affine C3 p=2 (0,1,0)", affine_realizable(c3, 2, 0, 1, 0, mo), Verdict::no},
      {"affine C3 p=2 (0,1,1)", affine_realizable(c3, 2, 0, 1, 1, mo), Verdict::yes},
      {"affine A5 p=5 (0,1,0)", affine_realizable(builders::alternating(5), 5, 0, 1, 0, mo), Verdict::yes},
      {"projective C5 nodal", projective_realizable(builders::cyclic(5), 5, nodal, mo), Verdict::yes},
      {"projective C2^2 nodal", projective_realizable(builders::elementary_abelian(2, 2), 5, nodal, mo), Verdict::no},
      {"hasse-witt C3^3 two-node", hasse_witt_check(builders::elementary_abelian(3, 3), 3, two), Verdict::no},
      {"nakajima C3^2 nodal", nakajima_check(builders::elementary_abelian(3, 2), 3, nodal, mo), Verdict::no},
      {"tame C3 p=2 (0,1,1)", tame_realizable(c3, 2, 0, 1, 1, mo), Verdict::yes},
  };
  ojson out = ojson::array();
  for (const auto& r : rows) {
    const bool ok = r.v.verdict == r.expect;
    out.push_back({{"case", r.name}, {"verdict", std::string(verdict_name(r.v.verdict))}, {"rule", r.v.rule}, {"ok", ok}});
    s.ok = s.ok && ok;
  }
  s.body = {{"cases", out}};
  return s;
}

// The gluing rule with gamma^i labels, on a C2 cover glued into C4.
Section literal_rule_suite() {
  Section s;
  const auto c4 = builders::cyclic(4);
  const auto gamma = c4.generators().front();
  PermutationGroup sub(c4.degree(), {gamma.pow(2)});
  auto cfg = lines({"C1"}, {}, {{"C1", "0"}, {"C1", "1"}, {"C1", "e"}});
  auto base = trivial_cover(cfg, sub);
  base.monodromy.at("C1") = sub;
  base.ramification.emplace(PointRef{"C1", "e"}, sub);
  const auto literal = literal_rule_gluing(base, c4, gamma, {"C1", "0"}, {"C1", "1"});
  const auto fixed = glue_same_component(base, c4, gamma, {"C1", "0"}, {"C1", "1"});
  s.body = {{"group", "C4"},
            {"subgroup", "C2"},
            {"literal_rule_galois", is_galois(literal)},
            {"translation_rule_galois", is_galois(fixed)},
            {"translation_rule_connected", is_connected(fixed)}};
  s.ok = !is_galois(literal) && is_galois(fixed) && is_connected(fixed);
  return s;
}

}  // namespace

std::string selftest_report(const SelftestOptions& opts, bool* passed) {
  ojson report;
  report["seed"] = opts.seed;
  bool all = true;
  auto add = [&](const char* name, Section s) {
    s.body["ok"] = s.ok;
    report[name] = std::move(s.body);
    all = all && s.ok;
  };
  add("curve_model", curve_suite(opts.seed));
  add("group_engine", group_suite(opts.seed));
  add("enumeration", cover_suite(opts.jobs));
  add("descent", descent_suite(opts.jobs));
  add("realizability", realizability_suite(opts.seed));
  add("literal_rule", literal_rule_suite());
  report["passed"] = all;
  if (passed) *passed = all;
  return (opts.pretty ? report.dump(2) : report.dump()) + "\n";
}

}  // namespace curvepi
