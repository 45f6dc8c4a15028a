#include "curvepi/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include "curvepi/catalog.hpp"
#include "curvepi/error.hpp"
#include "curvepi/group_lattice.hpp"

namespace curvepi {

namespace {

void require_genus_zero_base(const CurveConfiguration& config) {
  require_valid(config);
  if (!config.is_projective()) throw Error(ErrorCode::not_projective, "the configuration has removed points");
  if (!is_connected(config)) throw Error(ErrorCode::not_connected, "the configuration is not connected");
  for (const auto& c : config.components) {
    if (c.genus != 0) throw Error(ErrorCode::genus_nonzero, "component " + c.id + " has positive genus");
  }
}

using Slot = std::pair<std::size_t, std::size_t>;

std::vector<Slot> free_slots(const CurveConfiguration& config) {
  const auto tree = spanning_tree(config);
  const std::set<Slot> on_tree(tree.begin(), tree.end());
  std::vector<Slot> out;
  for (std::size_t k = 0; k < config.classes.size(); ++k) {
    for (std::size_t j = 0; j + 1 < config.classes[k].size(); ++j) {
      if (!on_tree.contains({k, j})) out.emplace_back(k, j);
    }
  }
  return out;
}

// base^exp, or nullopt past the limit.
std::optional<unsigned long long> bounded_power(unsigned long long base, std::size_t exp, unsigned long long limit) {
  unsigned long long v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > limit / base) return std::nullopt;
    v *= base;
  }
  if (v > limit) return std::nullopt;
  return v;
}

struct ChunkResult {
  unsigned long long connected = 0;
  bool stopped = false;
  std::vector<std::vector<Elem>> witnesses;
};

template <class Fn>
void run_parallel(std::size_t tasks, unsigned jobs, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < tasks; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = tasks;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string code_name(ErrorCode c) { return std::string(error_code_name(c)); }

PermutationGroup generated(std::size_t degree, const std::vector<Permutation>& gens) {
  std::vector<Permutation> nontrivial;
  for (const auto& g : gens) {
    if (!g.is_identity()) nontrivial.push_back(g);
  }
  return PermutationGroup(degree, std::move(nontrivial));
}

CoverDescriptor without_class(const CoverDescriptor& cover, std::size_t k) {
  CoverDescriptor out = cover;
  out.base = dissolve_class(cover.base, k);
  out.gluings.erase(out.gluings.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

// Components reachable from `start` through the classes of config.
std::set<std::string> reachable(const CurveConfiguration& config, const std::string& start) {
  std::set<std::string> seen{start};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& cls : config.classes) {
      const bool touches = std::any_of(cls.begin(), cls.end(), [&](const PointRef& r) { return seen.contains(r.component); });
      if (!touches) continue;
      for (const auto& r : cls) grew = seen.insert(r.component).second || grew;
    }
  }
  return seen;
}

// The part of a tree-normalized cover lying over the given components, as a
// cover for the subgroup generated by its constants.
CoverDescriptor restrict_cover(const CoverDescriptor& cover, const std::set<std::string>& comps) {
  const auto& cfg = cover.base;
  CoverDescriptor out;
  out.base.characteristic = cfg.characteristic;
  std::vector<Permutation> gens;
  for (const auto& c : cfg.components) {
    if (!comps.contains(c.id)) continue;
    out.base.components.push_back(c);
    out.base.points[c.id] = cfg.points.at(c.id);
    out.monodromy.emplace(c.id, cover.monodromy_of(c.id));
    for (const auto& g : cover.monodromy_of(c.id).generators()) gens.push_back(g);
  }
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    if (!comps.contains(cfg.classes[k].front().component)) continue;
    out.base.classes.push_back(cfg.classes[k]);
    out.gluings.push_back(cover.gluings[k]);
    for (const auto& b : cover.gluings[k].branches) gens.push_back(b.constant);
  }
  for (const auto& r : cfg.removed) {
    if (comps.contains(r.component)) out.base.removed.push_back(r);
  }
  for (const auto& [p, h] : cover.ramification) {
    if (comps.contains(p.component)) out.ramification.emplace(p, h);
  }
  out.group = generated(cover.group.degree(), gens);
  return out;
}

struct CoverCheck {
  unsigned long long descents = 0;
  unsigned long long glue_checks = 0;
  std::vector<std::string> mismatches;
};

CoverCheck check_one_cover(const CoverDescriptor& d, std::size_t index) {
  CoverCheck out;
  const auto key = canonical_key(d);
  const bool connected = is_connected(d);
  const auto& cfg = d.base;
  auto tag = [&](std::size_t k, const std::string& path) {
    return "cover " + std::to_string(index) + " class " + std::to_string(k) + ": " + path;
  };
  auto compare = [&](std::size_t k, const CoverDescriptor& other, const std::string& path) {
    if (canonical_key(other) != key) {
      out.mismatches.push_back(tag(k, path + " differs"));
    } else if (is_connected(other) != connected) {
      out.mismatches.push_back(tag(k, path + " changes connectivity"));
    } else if (!is_galois(other)) {
      out.mismatches.push_back(tag(k, path + " is not Galois"));
    }
  };
  for (std::size_t k = 0; k < cfg.classes.size(); ++k) {
    const auto dy = without_class(d, k);
    try {
      compare(k, descend(dy, {cfg.classes[k]}, induced_cover_relation(d, k)), "descent");
      ++out.descents;
    } catch (const Error& e) {
      out.mismatches.push_back(tag(k, std::string("descent failed: ") + e.what()));
    }
    if (cfg.classes[k].size() != 2) continue;
    const auto y1 = d.gluings[k].base;
    const auto y2 = d.gluings[k].branches[0].branch;
    try {
      // Glue inside the subgroup the pieces generate, then induce up to G.
      CoverDescriptor glued;
      if (is_connected(dy.base)) {
        const auto shifts = spanning_tree_shifts(dy);
        auto part = relabel(dy, shifts);
        const auto gamma = relabel(d, shifts).gluings[k].branches[0].constant;
        std::vector<Permutation> gens = free_constants(part);
        for (const auto& [id, m] : part.monodromy) {
          for (const auto& g : m.generators()) gens.push_back(g);
        }
        part.group = generated(d.group.degree(), gens);
        gens.push_back(gamma);
        glued = glue_same_component(part, generated(d.group.degree(), gens), gamma, y1, y2);
      } else {
        const auto normal = normalize_spanning_tree(d);
        const auto side = reachable(dy.base, y1.component);
        std::set<std::string> other;
        for (const auto& c : cfg.components) {
          if (!side.contains(c.id)) other.insert(c.id);
        }
        auto first = restrict_cover(without_class(normal, k), side);
        auto second = restrict_cover(without_class(normal, k), other);
        auto gens = first.group.generators();
        gens.insert(gens.end(), second.group.generators().begin(), second.group.generators().end());
        glued = glue_two_components(generated(d.group.degree(), gens), first, second, y1, y2);
      }
      if (!is_connected(glued) || !is_galois(glued)) {
        out.mismatches.push_back(tag(k, "glued cover is not a connected Galois cover"));
      }
      compare(k, induce(glued, d.group), "gluing");
      ++out.glue_checks;
    } catch (const Error& e) {
      out.mismatches.push_back(tag(k, std::string("gluing failed: ") + e.what()));
    }
  }
  return out;
}

ControlResult expect_code(std::string name, ErrorCode expected, const std::function<void()>& fn) {
  ControlResult r{std::move(name), code_name(expected), "no error", false};
  try {
    fn();
  } catch (const Error& e) {
    r.observed = code_name(e.code());
    r.passed = e.code() == expected;
  }
  return r;
}

ControlResult skipped(std::string name, std::string expected, const std::string& why) {
  return {std::move(name), std::move(expected), "skipped: " + why, true};
}

std::vector<ControlResult> run_controls(const CoverDescriptor& d) {
  std::vector<ControlResult> out;
  const auto& cfg = d.base;
  if (cfg.classes.empty()) return out;
  const std::size_t k = 0;
  const auto dy = without_class(d, k);
  const auto cls = cfg.classes[k];
  const auto rel = induced_cover_relation(d, k);

  out.push_back(expect_code("empty-relation", ErrorCode::bad_partition, [&] { descend(dy, {}, rel); }));
  out.push_back(expect_code("dropped-cover-class", ErrorCode::bad_partition, [&] {
    auto bad = rel;
    bad.pop_back();
    descend(dy, {cls}, bad);
  }));

  std::optional<PointRef> outside;
  for (const auto& [comp, labels] : dy.base.points) {
    for (const auto& l : labels) {
      PointRef p{comp, l};
      if (!outside && std::find(cls.begin(), cls.end(), p) == cls.end()) outside = p;
    }
  }
  if (outside) {
    out.push_back(expect_code("point-outside-relation", ErrorCode::relation_not_preserved, [&] {
      auto bad = rel;
      bad.front().back().point = *outside;
      descend(dy, {cls}, bad);
    }));
  } else {
    out.push_back(skipped("point-outside-relation", code_name(ErrorCode::relation_not_preserved),
                          "no marked point outside the class"));
  }

  if (d.group.order() >= 3) {
    out.push_back(expect_code("swapped-labels", ErrorCode::action_not_equivariant, [&] {
      auto bad = rel;
      std::swap(bad[0].back().label, bad[1].back().label);
      descend(dy, {cls}, bad);
    }));
  } else {
    out.push_back(skipped("swapped-labels", code_name(ErrorCode::action_not_equivariant),
                          "every bijection of a group of order <= 2 is a translation"));
  }

  // Replace one off-tree constant by an element outside its conjugacy class.
  const auto slots = free_slots(cfg);
  const auto& t = d.group.table();
  if (slots.empty() || t.size() < 2) {
    out.push_back(skipped("corrupted-constant", "mismatch", "no free constant to corrupt"));
    return out;
  }
  const auto [fk, fb] = slots.front();
  const auto normal = normalize_spanning_tree(d);
  const Elem c = t.index_of(normal.gluings[fk].branches[fb].constant);
  std::set<Elem> conj;
  for (Elem s = 0; s < t.size(); ++s) conj.insert(t.mul(t.mul(s, c), t.inv(s)));
  Elem x = 0;
  while (conj.contains(x)) ++x;
  auto corrupted = normal;
  corrupted.gluings[fk].branches[fb].constant = t.element(x);
  ControlResult r{"corrupted-constant", "mismatch", "no mismatch", false};
  try {
    auto result = descend(without_class(normal, fk), {cfg.classes[fk]}, induced_cover_relation(corrupted, fk));
    if (canonical_key(result) != canonical_key(d)) {
      r.observed = "mismatch";
      r.passed = true;
    }
  } catch (const Error& e) {
    r.observed = code_name(e.code());
  }
  out.push_back(r);
  return out;
}

}  // namespace

bool DescentReport::ok() const {
  return mismatches.empty() && std::all_of(controls.begin(), controls.end(), [](const auto& c) { return c.passed; });
}

CurveConfiguration dissolve_class(const CurveConfiguration& config, std::size_t k) {
  if (k >= config.classes.size()) throw Error(ErrorCode::invalid_argument, "no class " + std::to_string(k));
  CurveConfiguration out = config;
  out.classes.erase(out.classes.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

CoverDescriptor cover_from_constants(const PermutationGroup& g, const CurveConfiguration& config,
                                     const std::vector<Permutation>& free) {
  auto cover = trivial_cover(config, g);
  const auto slots = free_slots(config);
  if (free.size() != slots.size()) {
    throw Error(ErrorCode::invalid_argument, "expected " + std::to_string(slots.size()) + " free constants, got " +
                                                 std::to_string(free.size()));
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!g.contains(free[i])) throw Error(ErrorCode::not_a_member, "free constant outside the group");
    cover.gluings[slots[i].first].branches[slots[i].second].constant = free[i];
  }
  return cover;
}

EnumerationResult enumerate_connected_covers(const PermutationGroup& g, const CurveConfiguration& config,
                                             const EnumerateOptions& opts) {
  require_genus_zero_base(config);
  const auto slots = free_slots(config);
  const auto& table = g.table();
  const std::size_t n = table.size();
  const auto total = bounded_power(n, slots.size(), opts.tuple_limit);
  if (!total) {
    throw Error(ErrorCode::too_large, "|G|^delta = " + std::to_string(n) + "^" + std::to_string(slots.size()) +
                                          " exceeds the tuple limit " + std::to_string(opts.tuple_limit));
  }
  EnumerationResult result;
  result.tuples = *total;
  const auto proto = trivial_cover(config, g);
  const std::size_t chunks = opts.stop_early ? 1 : std::min<unsigned long long>(*total, std::max(1u, opts.jobs) * 8ULL);
  std::vector<ChunkResult> parts(chunks);
  auto work = [&](std::size_t c) {
    const unsigned long long lo = *total * c / chunks, hi = *total * (c + 1) / chunks;
    auto cover = proto;
    std::vector<Elem> digits(slots.size(), 0);
    unsigned long long rest = lo;
    for (std::size_t i = slots.size(); i-- > 0;) {
      digits[i] = static_cast<Elem>(rest % n);
      rest /= n;
    }
    auto& part = parts[c];
    for (unsigned long long idx = lo; idx < hi; ++idx) {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        cover.gluings[slots[i].first].branches[slots[i].second].constant = table.element(digits[i]);
      }
      if (is_connected(cover)) {
        ++part.connected;
        if (part.witnesses.size() < opts.witness_limit) part.witnesses.push_back(digits);
        if (opts.stop_early && part.witnesses.size() >= opts.witness_limit) {
          part.stopped = idx + 1 < hi;
          return;
        }
      }
      for (std::size_t i = slots.size(); i-- > 0;) {
        if (++digits[i] < n) break;
        digits[i] = 0;
      }
    }
  };
  run_parallel(chunks, opts.stop_early ? 1 : opts.jobs, work);
  for (const auto& part : parts) {
    result.connected += part.connected;
    result.complete = result.complete && !part.stopped;
    for (const auto& w : part.witnesses) {
      if (result.witnesses.size() >= opts.witness_limit) break;
      std::vector<Permutation> tuple;
      for (Elem e : w) tuple.push_back(table.element(e));
      result.witnesses.push_back(std::move(tuple));
    }
  }
  return result;
}

std::vector<CensusEntry> quotient_census(const CurveConfiguration& config, unsigned long long max_order,
                                         const CensusOptions& opts) {
  require_genus_zero_base(config);
  const auto dl = static_cast<unsigned>(delta(config));
  std::vector<CensusEntry> out;
  for (const auto& entry : catalog()) {
    if (entry.group.order() > max_order) continue;
    const unsigned d = min_generators(entry.group).value;
    if (d > dl) continue;
    CensusEntry e;
    e.name = entry.name;
    e.order = entry.group.order();
    e.d = d;
    e.group = entry.group;
    EnumerateOptions eo;
    eo.jobs = opts.jobs;
    eo.witness_limit = 1;
    const auto tuples = bounded_power(e.order, dl, opts.count_limit);
    if (tuples) {
      eo.tuple_limit = opts.count_limit;
    } else {
      eo.tuple_limit = std::numeric_limits<unsigned long long>::max();
      eo.stop_early = true;
    }
    auto r = enumerate_connected_covers(entry.group, config, eo);
    if (r.witnesses.empty()) {
      throw Error(ErrorCode::internal, "no connected cover found for " + entry.name + " although d(G) <= delta");
    }
    if (r.complete) e.count = r.connected;
    e.witness = r.witnesses.front();
    out.push_back(std::move(e));
  }
  return out;
}

DescentReport cross_check_descent(const PermutationGroup& g, const CurveConfiguration& config,
                                  const CrossCheckOptions& opts) {
  require_genus_zero_base(config);
  const auto slots = free_slots(config);
  const auto& table = g.table();
  const std::size_t n = table.size();
  const auto total = bounded_power(n, slots.size(), opts.tuple_limit);
  if (!total) throw Error(ErrorCode::too_large, "the tuple space exceeds " + std::to_string(opts.tuple_limit));
  auto tuple_at = [&](unsigned long long idx) {
    std::vector<Permutation> tuple(slots.size());
    for (std::size_t i = slots.size(); i-- > 0;) {
      tuple[i] = table.element(static_cast<Elem>(idx % n));
      idx /= n;
    }
    return tuple;
  };
  DescentReport report;
  report.covers = *total;
  std::vector<CoverCheck> checks(*total);
  std::vector<char> connected(*total, 0);
  run_parallel(*total, opts.jobs, [&](std::size_t i) {
    const auto cover = cover_from_constants(g, config, tuple_at(i));
    connected[i] = is_connected(cover);
    checks[i] = check_one_cover(cover, i);
  });
  for (std::size_t i = 0; i < checks.size(); ++i) {
    report.connected += connected[i];
    report.descents += checks[i].descents;
    report.glue_checks += checks[i].glue_checks;
    for (auto& m : checks[i].mismatches) report.mismatches.push_back(std::move(m));
  }
  if (opts.controls) {
    const auto first = std::find(connected.begin(), connected.end(), 1);
    const auto idx = first == connected.end() ? 0 : static_cast<unsigned long long>(first - connected.begin());
    report.controls = run_controls(cover_from_constants(g, config, tuple_at(idx)));
  }
  return report;
}

}  // namespace curvepi
