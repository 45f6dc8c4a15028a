#include <set>

#include "../support/brute.hpp"
#include "../support/configs.hpp"
#include "curvepi/catalog.hpp"
#include "curvepi/error.hpp"
#include "curvepi/realizability.hpp"
#include "doctest.h"

using namespace curvepi;
using namespace curvepi::builders;

namespace {

long long evidence(const RealizabilityVerdict& v, const std::string& name) {
  for (const auto& [k, val] : v.evidence) {
    if (k == name) return std::get<long long>(val);
  }
  FAIL("missing evidence " << name);
  return -1;
}

std::vector<brute::Perm> raw_elements(const PermutationGroup& g) {
  std::vector<brute::Perm> gens;
  for (const auto& x : g.generators()) gens.push_back(x.images());
  auto s = brute::closure(g.degree(), gens);
  return {s.begin(), s.end()};
}

// d(G/p(G)) by search over coset representatives of the p-element subgroup.
unsigned brute_quotient_rank(const PermutationGroup& g, unsigned p) {
  const auto n = g.degree();
  const auto elems = raw_elements(g);
  const auto sub = brute::p_elements_subgroup(n, elems, p);
  std::vector<brute::Perm> reps;
  std::set<brute::Perm> covered;
  for (const auto& x : elems) {
    if (covered.count(x)) continue;
    reps.push_back(x);
    for (const auto& h : sub) covered.insert(brute::compose(h, x));
  }
  std::vector<brute::Perm> base(sub.begin(), sub.end());
  for (unsigned k = 0;; ++k) {
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      auto gens = base;
      for (auto i : idx) gens.push_back(reps[i]);
      if (brute::closure(n, gens).size() == elems.size()) return k;
      std::size_t pos = 0;
      while (pos < k && ++idx[pos] == reps.size()) idx[pos++] = 0;
      if (pos == k) break;
    }
  }
}

CurveConfiguration elliptic(unsigned p, unsigned p_rank) {
  return fixtures::make(p, {{"E", 1, p_rank}}, {});
}

}  // namespace

TEST_CASE("affine realizability examples") {
  auto c3 = cyclic(3);
  auto v = affine_realizable(c3, 2, 0, 1, 0);
  CHECK(v.verdict == Verdict::no);
  CHECK(v.rule == "affine");
  CHECK(evidence(v, "d_quotient") == 1);
  CHECK(evidence(v, "bound") == 0);
  v = affine_realizable(c3, 2, 0, 1, 1);
  CHECK(v.verdict == Verdict::yes);
  CHECK(evidence(v, "bound") == 1);

  // Quasi-p groups: p(G) = G.
  CHECK(affine_realizable(cyclic(2), 2, 0, 1, 0).verdict == Verdict::yes);
  CHECK(affine_realizable(symmetric(3), 2, 0, 1, 0).verdict == Verdict::yes);
  CHECK(affine_realizable(symmetric(3), 3, 0, 1, 0).verdict == Verdict::no);
  CHECK(affine_realizable(alternating(5), 5, 0, 1, 0).verdict == Verdict::yes);
  CHECK(affine_realizable(alternating(4), 2, 0, 1, 0).verdict == Verdict::no);
  CHECK(affine_realizable(alternating(4), 3, 0, 1, 0).verdict == Verdict::yes);

  auto z = affine_realizable(c3, 0, 0, 1, 0);
  CHECK(z.verdict == Verdict::no);
  CHECK(z.rule == "affine-char0");

  CHECK_THROWS_AS(affine_realizable(c3, 2, 0, 0, 0), Error);
  try {
    affine_realizable(c3, 4, 0, 1, 0);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_prime);
  }
}

TEST_CASE("affine verdict from a configuration") {
  auto cfg = fixtures::make(2, {fixtures::line("C1")}, {{{"C1", "0"}, {"C1", "1"}}}, {{"C1", "inf"}});
  CHECK(affine_realizable(cyclic(3), 2, cfg).verdict == Verdict::yes);
  auto two = fixtures::make(2, {fixtures::line("A"), fixtures::line("B")}, {{{"A", "0"}, {"B", "0"}}},
                            {{"A", "inf"}});
  try {
    affine_realizable(cyclic(3), 2, two);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("smooth criterion on the catalog") {
  for (const auto& e : builtin_catalog()) {
    if (e.group.order() > 24) continue;
    for (unsigned p : {2u, 3u, 5u}) {
      const unsigned d = brute_quotient_rank(e.group, p);
      for (unsigned g = 0; g <= 1; ++g) {
        for (unsigned r = 1; r <= 3; ++r) {
          auto v = affine_realizable(e.group, p, g, r, 0);
          CHECK_MESSAGE((v.verdict == Verdict::yes) == (d <= 2 * g + r - 1), e.name << " p=" << p);
          CHECK(v.verdict != Verdict::unknown);
        }
      }
    }
  }
}

TEST_CASE("affine monotonicity") {
  for (const auto& e : builtin_catalog()) {
    if (e.group.order() > 24) continue;
    for (unsigned p : {0u, 2u, 3u}) {
      for (unsigned g = 0; g <= 1; ++g) {
        for (unsigned r = 1; r <= 2; ++r) {
          for (unsigned dl = 0; dl <= 1; ++dl) {
            if (affine_realizable(e.group, p, g, r, dl).verdict != Verdict::yes) continue;
            CHECK(affine_realizable(e.group, p, g + 1, r, dl).verdict == Verdict::yes);
            CHECK(affine_realizable(e.group, p, g, r + 1, dl).verdict == Verdict::yes);
            CHECK(affine_realizable(e.group, p, g, r, dl + 1).verdict == Verdict::yes);
          }
        }
      }
    }
  }
}

TEST_CASE("projective realizability examples") {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (unsigned p : {0u, 2u, 3u, 5u}) {
      auto v = projective_realizable(cyclic(n), p, fixtures::nodal_p1(p));
      CHECK(v.verdict == Verdict::yes);
      CHECK(v.rule == "genus-zero");
    }
  }
  auto v4 = projective_realizable(elementary_abelian(2, 2), 5, fixtures::nodal_p1());
  CHECK(v4.verdict == Verdict::no);
  CHECK(evidence(v4, "d") == 2);
  CHECK(evidence(v4, "bound") == 1);
  CHECK(projective_realizable(elementary_abelian(2, 2), 5, fixtures::two_node_p1()).verdict == Verdict::yes);
  CHECK(projective_realizable(cyclic(2), 5, fixtures::cross()).verdict == Verdict::no);
  CHECK(projective_realizable(cyclic(1), 5, fixtures::cross()).verdict == Verdict::yes);

  for (unsigned p : {2u, 3u, 5u}) {
    auto v = projective_realizable(cyclic(p), p, elliptic(p, 0));
    CHECK(v.verdict == Verdict::no);
    CHECK(v.rule == "pro-p-rank");
    CHECK(evidence(v, "sigma") == 1);
    CHECK(evidence(v, "bound") == 0);
  }
  // Ordinary elliptic curve: no obstruction, no free factor.
  auto u = projective_realizable(cyclic(3), 3, elliptic(3, 1));
  CHECK(u.verdict == Verdict::unknown);
  CHECK(u.rule == "undecided");
  // Rank bound: d(C2^3) = 3 > 2.
  CHECK(projective_realizable(elementary_abelian(2, 3), 3, elliptic(3, 1)).rule == "rank-bound");
  CHECK(projective_realizable(elementary_abelian(2, 3), 0, elliptic(0, 0)).verdict == Verdict::no);
  CHECK(projective_realizable(cyclic(5), 0, elliptic(0, 0)).verdict == Verdict::unknown);

  auto affine_cfg = fixtures::make(5, {fixtures::line("C1")}, {}, {{"C1", "inf"}});
  try {
    projective_realizable(cyclic(2), 5, affine_cfg);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_projective);
  }
  auto split = fixtures::make(5, {fixtures::line("A"), fixtures::line("B")}, {});
  try {
    projective_realizable(cyclic(2), 5, split);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_connected);
  }
}

TEST_CASE("pro-p rank") {
  CHECK(pro_p_rank(fixtures::nodal_p1()) == 1);
  CHECK(pro_p_rank(fixtures::make(5, {{"X", 2, 1}}, {})) == 1);
  auto c = fixtures::make(5, {{"A", 1, 1}, {"B", 1, 0}}, {{{"A", "0"}, {"B", "0"}}});
  CHECK(pro_p_rank(c) == 1);
}

TEST_CASE("hasse-witt check") {
  for (unsigned p : {2u, 3u}) {
    auto v = hasse_witt_check(elementary_abelian(p, 3), p, fixtures::two_node_p1(p));
    CHECK(v.verdict == Verdict::no);
    CHECK(v.rule == "hasse-witt");
    CHECK(evidence(v, "sigma") == 3);
    CHECK(evidence(v, "bound") == 2);
    CHECK(hasse_witt_check(cyclic(p), p, fixtures::nodal_p1(p)).verdict == Verdict::unknown);
  }
  CHECK(hasse_witt_check(cyclic(7), 5, fixtures::cross()).verdict == Verdict::unknown);
  for (const auto& e : builtin_catalog()) {
    if (e.group.order() > 24) continue;
    CHECK(hasse_witt_check(e.group, 2, fixtures::cross(2)).verdict != Verdict::yes);
  }
  try {
    hasse_witt_check(cyclic(2), 0, fixtures::nodal_p1(0));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_prime);
  }
}

TEST_CASE("nakajima check") {
  for (unsigned p : {2u, 3u, 5u}) {
    auto v = nakajima_check(elementary_abelian(p, 2), p, fixtures::nodal_p1(p));
    CHECK(v.verdict == Verdict::no);
    CHECK(evidence(v, "t_G") == 2);
    CHECK(evidence(v, "bound") == 1);
    CHECK(nakajima_check(cyclic(p), p, fixtures::nodal_p1(p)).verdict == Verdict::unknown);
  }
  auto s3 = nakajima_check(symmetric(3), 3, fixtures::cross(3));
  CHECK(s3.verdict == Verdict::unknown);
  CHECK(s3.evidence.back().first == "reason");
}

TEST_CASE("tame realizability") {
  auto v = tame_realizable(cyclic(3), 2, 0, 1, 1);
  CHECK(v.verdict == Verdict::yes);
  CHECK(evidence(v, "d") == 1);
  CHECK(tame_realizable(elementary_abelian(2, 2), 3, 0, 1, 1).verdict == Verdict::no);
  auto u = tame_realizable(cyclic(2), 2, 0, 1, 1);
  CHECK(u.verdict == Verdict::unknown);
  CHECK(tame_realizable(elementary_abelian(2, 2), 2, 0, 1, 0).verdict == Verdict::no);
  CHECK(tame_realizable(cyclic(3), 0, 0, 1, 0).verdict == Verdict::no);
}
