#include <map>
#include <set>

#include "../support/brute.hpp"
#include "curvepi/catalog.hpp"
#include "curvepi/error.hpp"
#include "curvepi/group_lattice.hpp"
#include "curvepi/group_table.hpp"
#include "curvepi/perm_group.hpp"
#include "doctest.h"

using namespace curvepi;

namespace {

std::vector<brute::Perm> raw_generators(const PermutationGroup& g) {
  std::vector<brute::Perm> out;
  for (const auto& x : g.generators()) out.push_back(x.images());
  return out;
}

std::vector<brute::Perm> raw_elements(const PermutationGroup& g) {
  auto s = brute::closure(g.degree(), raw_generators(g));
  return {s.begin(), s.end()};
}

Permutation cyc(std::size_t n, std::vector<std::vector<Point>> cycles) {
  return Permutation::from_cycles(n, cycles);
}

PermutationGroup S3() { return group_by_name("S3"); }

}  // namespace

TEST_CASE("order and membership") {
  PermutationGroup s3(3, {cyc(3, {{1, 2}}), cyc(3, {{1, 2, 3}})});
  CHECK(s3.order() == 6);
  CHECK(s3.contains(cyc(3, {{1, 3}})));
  CHECK(PermutationGroup::trivial(4).order() == 1);
  CHECK_THROWS_AS(s3.contains(Permutation::identity(4)), Error);
  try {
    s3.contains(Permutation::identity(4));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degree_mismatch);
  }
}

TEST_CASE("normal closure") {
  auto s3 = S3();
  std::vector<Permutation> three{cyc(3, {{1, 2, 3}})};
  CHECK(normal_closure(s3, three).order() == 3);
  std::vector<Permutation> two{cyc(3, {{1, 2}})};
  auto full = normal_closure(s3, two);
  auto oracle = brute::closure(3, {{1, 0, 2}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}});
  CHECK(full.order() == oracle.size());
  CHECK(normal_closure(s3, {}).order() == 1);
  std::vector<Permutation> outside{cyc(4, {{1, 4}})};
  auto s4 = group_by_name("S4");
  auto a4 = group_by_name("A4");
  CHECK_THROWS_AS(normal_closure(a4, outside), Error);
  CHECK(normal_closure(s4, outside).order() == 24);
}

TEST_CASE("sylow subgroups and p(G)") {
  auto s3 = S3();
  CHECK(sylow_subgroup(s3, 3).order() == 3);
  auto s4 = group_by_name("S4");
  auto p2 = sylow_subgroup(s4, 2);
  CHECK(p2.order() == 8);
  for (const auto& x : p2.elements()) CHECK(brute::is_p_power(x.order(), 2));
  CHECK(sylow_subgroup(group_by_name("C5"), 3).order() == 1);
  CHECK_THROWS_AS(sylow_subgroup(s3, 4), Error);

  CHECK(quasi_p_part(s3, 3).order() == 3);
  CHECK(quasi_p_part(s3, 2).order() == 6);
  CHECK(quasi_p_part(group_by_name("C3"), 2).order() == 1);
  CHECK(quasi_p_part(s3, 0).order() == 1);
}

TEST_CASE("quotients") {
  auto s3 = S3();
  auto a3 = sylow_subgroup(s3, 3);
  auto h = quotient(s3, a3);
  CHECK(h.image.order() == 2);
  CHECK(quotient(s3, s3).image.order() == 1);

  auto q8 = group_by_name("Q8");
  std::vector<Permutation> center_gens;
  for (const auto& x : q8.elements()) {
    bool central = true;
    for (const auto& y : q8.generators()) central = central && x * y == y * x;
    if (central && !x.is_identity()) center_gens.push_back(x);
  }
  PermutationGroup center(q8.degree(), center_gens);
  CHECK(center.order() == 2);
  auto hq = quotient(q8, center);
  CHECK(hq.image.order() == 4);
  for (const auto& x : hq.image.elements()) CHECK((x * x).is_identity());
  // Homomorphism on generator pairs.
  for (const auto& a : q8.generators()) {
    for (const auto& b : q8.generators()) CHECK(hq.map(a * b) == hq.map(a) * hq.map(b));
  }
  std::vector<Permutation> tr{cyc(3, {{1, 2}})};
  CHECK_THROWS_AS(quotient(s3, PermutationGroup(3, tr)), Error);
}

TEST_CASE("minimal generator counts") {
  CHECK(min_generators(group_by_name("C6")).value == 1);
  CHECK(min_generators(S3()).value == 2);
  CHECK(min_generators(group_by_name("C2^3")).value == 3);
  CHECK(min_generators(PermutationGroup::trivial(2)).value == 0);
  auto s3 = S3();
  CHECK(brute::min_generators(3, raw_elements(s3)) == 2);
  MinGeneratorsOptions tight;
  tight.exhaustive_bound = 10;
  auto s4 = group_by_name("S4");
  CHECK_THROWS_AS(min_generators(s4, tight), Error);
  tight.allow_random_fallback = true;
  auto bound = min_generators(s4, tight);
  CHECK(bound.upper_bound_only);
  CHECK(bound.value >= 2);
}

TEST_CASE("abelianization p-rank") {
  CHECK(abelianization_p_rank(group_by_name("C5"), 5) == 1);
  CHECK(abelianization_p_rank(S3(), 3) == 0);
  CHECK(abelianization_p_rank(group_by_name("D4"), 2) == 2);
  CHECK_THROWS_AS(abelianization_p_rank(S3(), 6), Error);
}

TEST_CASE("subgroup lattice, Moebius and Eulerian functions") {
  auto s3 = S3();
  auto lattice = subgroup_lattice(s3);
  CHECK(lattice.size() == 6);
  CHECK(brute::all_subgroups(raw_elements(s3)).size() == 6);
  auto mu = moebius(lattice);
  CHECK(mu.front() == 3);
  CHECK(mu.back() == 1);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice.subgroups[i].count() == 3) CHECK(mu[i] == -1);
  }
  CHECK(subgroup_lattice(group_by_name("C7")).size() == 2);

  CHECK(eulerian(s3, 2) == 18);
  CHECK(brute::count_generating(3, raw_elements(s3), 2, 6) == 18);
  CHECK(eulerian(group_by_name("C6"), 1) == 2);
  for (unsigned k = 0; k < 4; ++k) CHECK(eulerian(PermutationGroup::trivial(1), k) == 1);
  CHECK_THROWS_AS(subgroup_lattice(group_by_name("S6")), Error);
}

TEST_CASE("Moebius sums vanish below the top") {
  for (const char* name : {"S4", "D6", "Q16", "C2^4", "SL(2,3)"}) {
    auto g = group_by_name(name);
    auto lattice = subgroup_lattice(g);
    auto mu = moebius(lattice);
    for (std::size_t h = 0; h < lattice.size(); ++h) {
      long long sum = 0;
      for (std::size_t k = 0; k < lattice.size(); ++k) {
        if (lattice.contains(k, h)) sum += mu[k];
      }
      CHECK(sum == (h + 1 == lattice.size() ? 1 : 0));
    }
  }
}

TEST_CASE("Nakajima t_G") {
  CHECK(nakajima_tG(group_by_name("C5"), 5).value() == 1);
  CHECK(nakajima_tG(group_by_name("C2^2"), 2).value() == 2);
  CHECK_FALSE(nakajima_tG(S3(), 3).has_value());
  CHECK_THROWS_AS(nakajima_tG(S3(), 1), Error);
}

TEST_CASE("stabilizer chain order agrees with closure enumeration") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    CHECK(e.group.order() == raw_elements(e.group).size());
    CHECK(e.group.order() == enumerate_by_closure(e.group).size());
  }
}

TEST_CASE("catalog covers every group of order at most 24 exactly once") {
  const std::map<std::size_t, std::size_t> expected{
      {1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},
      {9, 2},  {10, 2}, {11, 1}, {12, 5}, {13, 1}, {14, 2}, {15, 1}, {16, 14},
      {17, 1}, {18, 5}, {19, 1}, {20, 5}, {21, 2}, {22, 2}, {23, 1}, {24, 15}, {60, 1}};
  std::map<std::size_t, std::size_t> counts;
  using Signature = std::vector<std::size_t>;
  std::map<Signature, std::string> seen;
  std::set<std::string> names;
  for (const auto& e : builtin_catalog()) {
    CAPTURE(e.name);
    CHECK(names.insert(e.name).second);
    for (const auto& a : e.aliases) CHECK(names.insert(a).second);
    const auto n = e.group.order();
    ++counts[n];
    if (n > 24) continue;
    // Isomorphism invariants: element orders, center, derived subgroup,
    // subgroup counts by order, and element orders of the abelianization.
    const auto& t = e.group.table();
    Signature sig{n};
    std::map<std::size_t, std::size_t> orders;
    std::size_t center = 0;
    for (Elem x = 0; x < t.size(); ++x) {
      ++orders[t.element_order(x)];
      bool central = true;
      for (Elem y = 0; y < t.size() && central; ++y) central = t.mul(x, y) == t.mul(y, x);
      center += central;
    }
    for (auto [o, c] : orders) sig.insert(sig.end(), {o, c});
    sig.push_back(center);
    sig.push_back(derived_subgroup(e.group).order());
    auto lattice = subgroup_lattice(e.group);
    std::map<std::size_t, std::size_t> by_order;
    std::size_t normal = 0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      ++by_order[lattice.subgroups[i].count()];
      auto h = subgroup_from_elements(e.group, lattice.generators[i]);
      normal += h.is_normal_in(e.group);
    }
    for (auto [o, c] : by_order) sig.insert(sig.end(), {o, c});
    sig.push_back(normal);
    auto [it, fresh] = seen.emplace(sig, e.name);
    INFO("collides with " << it->second);
    CHECK(fresh);
  }
  CHECK(counts == expected);
}

TEST_CASE("catalog round-trips through JSON and name parsing") {
  CHECK(group_by_name("C7").order() == 7);
  CHECK(group_by_name("C3^3").order() == 27);
  CHECK(group_by_name("D15").order() == 30);
  CHECK(group_by_name("S5").order() == 120);
  CHECK(group_by_name("A6").order() == 360);
  CHECK(group_by_name("S3xC5").order() == 30);
  CHECK(group_by_name("D3").order() == 6);
  CHECK_THROWS_AS(group_by_name("Nope"), Error);
  try {
    group_by_name("Z9");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_group);
  }
}

TEST_CASE("incremental and exhaustive d(G) agree on small groups") {
  for (const auto& e : catalog()) {
    if (e.group.order() > 16) continue;
    CAPTURE(e.name);
    CHECK(min_generators(e.group).value == min_generators_exhaustive(e.group));
  }
}
