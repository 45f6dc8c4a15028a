#include "../support/configs.hpp"
#include "curvepi/catalog.hpp"
#include "curvepi/error.hpp"
#include "curvepi/io.hpp"
#include "doctest.h"

using namespace curvepi;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

}  // namespace

TEST_CASE("configuration round trip") {
  for (const auto& c : {fixtures::nodal_p1(), fixtures::triangle(), fixtures::banana(),
                        fixtures::make(2, {fixtures::line("C1")}, {{{"C1", "0"}, {"C1", "1"}}}, {{"C1", "inf"}})}) {
    const auto text = config_to_json(c);
    CHECK(config_from_json(text) == c);
    CHECK(config_to_json(config_from_json(text)) == text);
    CHECK(config_from_json(config_to_json(c, true)) == c);
  }
}

TEST_CASE("configuration parsing") {
  auto c = config_from_json(R"({"characteristic": 5, "components": [{"id": "A"}, {"id": "B", "genus": 1, "p_rank": 1}],
    "identifications": [[["B", "x"], ["A", "0"]]], "removed": [["A", "inf"]]})");
  CHECK(c.components[1].genus == 1);
  CHECK(c.points.at("A") == std::vector<std::string>{"0", "inf"});
  CHECK(c.points.at("B") == std::vector<std::string>{"x"});
  CHECK(c.classes[0].front() == PointRef{"A", "0"});
  CHECK(validate(c).empty());

  CHECK(code_of([] { config_from_json("{"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json(R"({"characteristic": 5, "components": [], "colour": 1})"); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json(R"({"components": []})"); }) == ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json(R"({"characteristic": 5, "components": [{"id": "A", "x": 1}]})"); }) ==
        ErrorCode::parse_error);
  CHECK(code_of([] { config_from_json(R"({"characteristic": -1, "components": []})"); }) == ErrorCode::parse_error);
  CHECK(code_of([] {
          config_from_json(R"({"characteristic": 5, "components": [{"id": "A"}], "identifications": [[["A"]]]})");
        }) == ErrorCode::parse_error);
  // Structurally fine but invalid: reported by validate, not by the parser.
  auto bad = config_from_json(R"({"characteristic": 6, "components": [{"id": "A"}]})");
  CHECK(validate(bad).front().code == "INVALID_CHARACTERISTIC");
}

TEST_CASE("group parsing") {
  auto s3 = group_from_json(R"({"degree": 3, "generators": [[2,1,3],[2,3,1]]})");
  CHECK(s3.order() == 6);
  CHECK(group_from_json(R"("Q8")").order() == 8);
  CHECK(group_from_json(group_to_json(s3)).same_elements(s3));
  CHECK(code_of([] { group_from_json(R"({"degree": 3, "generators": [[2,1]]})"); }) == ErrorCode::degree_mismatch);
  CHECK(code_of([] { group_from_json(R"({"degree": 3, "generators": [[2,2,3]]})"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { group_from_json(R"({"degree": 3, "generators": [[4,1,2]]})"); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { group_from_json(R"({"degree": 2, "generators": [[2,1]], "order": 3})"); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { group_from_json(R"("NoSuchGroup")"); }) == ErrorCode::unknown_group);
  CHECK(resolve_group("A5").order() == 60);
}

TEST_CASE("cover round trip") {
  auto s3 = group_by_name("S3");
  auto cover = trivial_cover(fixtures::two_node_p1(), s3);
  cover.gluings[0].branches[0].constant = s3.generators()[0];
  cover.gluings[1].branches[0].constant = s3.generators()[1];
  auto text = cover_to_json(cover);
  auto back = cover_from_json(text);
  CHECK(canonical_key(back) == canonical_key(cover));
  CHECK(cover_to_json(back) == text);

  // Non-translation label maps and ramification survive the trip.
  auto twisted = cover;
  const auto& t = s3.table();
  std::vector<Elem> map(t.size());
  for (Elem l = 0; l < t.size(); ++l) map[l] = t.inv(l);
  twisted.gluings[0].branches[0].label_map = map;
  twisted.ramification.emplace(PointRef{"C1", "3"}, PermutationGroup(3, {s3.generators()[1]}));
  twisted.monodromy.at("C1") = PermutationGroup(3, {s3.generators()[1]});
  auto twisted_back = cover_from_json(cover_to_json(twisted));
  CHECK(twisted_back.gluings[0].branches[0].label_map == map);
  CHECK(twisted_back.ramification.size() == 1);
  CHECK(cover_to_json(twisted_back) == cover_to_json(twisted));
}

TEST_CASE("cover parsing errors") {
  const std::string cfg = R"({"characteristic": 5, "components": [{"id": "C1"}],
                              "identifications": [[["C1","0"],["C1","1"]]]})";
  CHECK(code_of([&] {
          cover_from_json(R"({"config": )" + cfg + R"(, "group": "C2", "gluings": [{"class_index": 3,
            "branch": ["C1","1"], "constant": [2,1]}]})");
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] {
          cover_from_json(R"({"config": )" + cfg + R"(, "group": "C2", "gluings": [{"class_index": 0,
            "branch": ["C1","0"], "constant": [2,1]}]})");
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] {
          cover_from_json(R"({"config": )" + cfg + R"(, "group": "C2", "monodromy": {"C1": [[2,1]]}})");
        }) == ErrorCode::etale_genus_zero);
  CHECK(code_of([&] { cover_from_json(R"({"config": )" + cfg + R"(, "group": "C2", "extra": 1})"); }) ==
        ErrorCode::parse_error);
}

TEST_CASE("verdict json") {
  RealizabilityVerdict v;
  v.verdict = Verdict::no;
  v.rule = "hasse-witt";
  v.evidence = {{"sigma", 3LL}, {"bound", 2LL}};
  CHECK(verdict_to_json(v) == "{\"verdict\":\"No\",\"evidence\":{\"sigma\":3,\"bound\":2},\"rule\":\"hasse-witt\","
                              "\"randomized\":false}\n");
}

TEST_CASE("rank report json") {
  CHECK(rank_report_to_json(rank_report(fixtures::nodal_p1())) ==
        "{\"delta\":1,\"pi1_rank_bound\":1,\"pro_p_rank\":1,\"tame_rank\":null,\"affine_delta\":1}\n");
}

TEST_CASE("glue script") {
  const auto script = R"({
    "cover": {"config": {"characteristic": 5, "components": [{"id": "C1"}], "points": {"C1": ["0","1","2","3"]}},
              "group": {"degree": 3, "generators": []}},
    "steps": [
      {"op": "same_component", "group": {"degree": 3, "generators": [[2,3,1]]}, "gamma": [2,3,1],
       "y1": ["C1","0"], "y2": ["C1","1"]},
      {"op": "same_component", "group": "S3", "gamma": [2,1,3], "y1": ["C1","2"], "y2": ["C1","3"]}]})";
  auto cover = run_glue_script(script);
  CHECK(cover.group.order() == 6);
  CHECK(is_connected(cover));
  CHECK(is_galois(cover));
  CHECK(delta(cover.base) == 2);
  CHECK(code_of([] { run_glue_script(R"({"cover": {}, "steps": [{"op": "explode"}]})"); }) == ErrorCode::parse_error);
}
