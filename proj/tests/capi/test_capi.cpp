#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>
#include <thread>

#include "curvepi.h"
#include "doctest.h"

#ifndef DATA_DIR
#error DATA_DIR must point at the sample data
#endif

namespace {

std::string data(const char* rel) { return std::string(DATA_DIR) + "/" + rel; }

std::string take(char* s) {
  std::string out = s ? s : "";
  cpi_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cpi_version()).size() > 0);
  CHECK(std::string(cpi_status_name(CPI_OK)) == "OK");
  CHECK(std::string(cpi_status_name(CPI_TOO_LARGE)) == "TOO_LARGE");
  CHECK(std::string(cpi_status_name(CPI_ACTION_NOT_EQUIVARIANT)) == "ACTION_NOT_EQUIVARIANT");
}

TEST_CASE("configuration handles") {
  cpi_config* c = nullptr;
  REQUIRE(cpi_config_load(data("configs/nodal_p1.json").c_str(), &c) == CPI_OK);
  unsigned p = 0;
  CHECK(cpi_config_characteristic(c, &p) == CPI_OK);
  CHECK(p == 5);
  char* out = nullptr;
  REQUIRE(cpi_config_invariants(c, 0, &out) == CPI_OK);
  CHECK(take(out).find("\"delta\":1") != std::string::npos);
  int valid = 0;
  REQUIRE(cpi_config_validate(c, &valid, 0, &out) == CPI_OK);
  CHECK(valid == 1);
  take(out);
  REQUIRE(cpi_config_to_dot(c, &out) == CPI_OK);
  CHECK(take(out).rfind("graph curve {", 0) == 0);
  cpi_config_free(c);

  cpi_config* missing = nullptr;
  CHECK(cpi_config_load(data("configs/no_such_file.json").c_str(), &missing) == CPI_IO_ERROR);
  CHECK(missing == nullptr);
  CHECK(std::string(cpi_last_error()).find("IO_ERROR") == 0);
  CHECK(cpi_config_parse("{\"characteristic\":5}", &missing) == CPI_PARSE_ERROR);
  CHECK(cpi_config_parse(nullptr, &missing) == CPI_INVALID_ARGUMENT);
  CHECK(cpi_config_invariants(nullptr, 0, &out) == CPI_INVALID_ARGUMENT);
}

TEST_CASE("realizability verdicts") {
  cpi_config* c = nullptr;
  cpi_group* g = nullptr;
  REQUIRE(cpi_config_load(data("configs/nodal_affine.json").c_str(), &c) == CPI_OK);
  REQUIRE(cpi_group_resolve("C3", &g) == CPI_OK);
  char* out = nullptr;
  REQUIRE(cpi_realizable(g, c, 2, CPI_MODE_AFFINE, 1, 0, &out) == CPI_OK);
  CHECK(take(out) ==
        "{\"verdict\":\"Yes\",\"evidence\":{\"quotient_order\":3,\"d_quotient\":1,\"bound\":1},\"rule\":\"affine\","
        "\"randomized\":false}\n");
  CHECK(cpi_realizable(g, c, 2, CPI_MODE_PROJECTIVE, 1, 0, &out) == CPI_NOT_PROJECTIVE);
  CHECK(cpi_realizable(g, c, 4, CPI_MODE_AFFINE, 1, 0, &out) == CPI_NOT_PRIME);
  cpi_group_free(g);
  cpi_config_free(c);
  CHECK(cpi_group_resolve("NotAGroup", &g) == CPI_UNKNOWN_GROUP);
}

TEST_CASE("enumeration and census") {
  cpi_config* c = nullptr;
  cpi_group* g = nullptr;
  REQUIRE(cpi_config_load(data("configs/theta.json").c_str(), &c) == CPI_OK);
  REQUIRE(cpi_group_resolve("S3", &g) == CPI_OK);
  char* out = nullptr;
  REQUIRE(cpi_enumerate(g, c, 2, 0, 0, &out) == CPI_OK);
  CHECK(take(out).find("\"count\":18") != std::string::npos);
  REQUIRE(cpi_cross_check(g, c, 2, 0, &out) == CPI_OK);
  CHECK(take(out).find("\"ok\":true") != std::string::npos);
  REQUIRE(cpi_census(c, 8, 1, 1, 0, &out) == CPI_OK);
  const auto text = take(out);
  CHECK(text.find("Q8") != std::string::npos);
  CHECK(text.find("C2^3") == std::string::npos);
  cpi_group_free(g);
  cpi_config_free(c);

  cpi_config* e = nullptr;
  REQUIRE(cpi_config_load(data("configs/elliptic_node.json").c_str(), &e) == CPI_OK);
  CHECK(cpi_census(e, 8, 1, 0, 0, &out) == CPI_GENUS_NONZERO);
  cpi_config_free(e);
}

TEST_CASE("covers and scripts") {
  cpi_cover* cover = nullptr;
  REQUIRE(cpi_glue_script_run(data("scripts/s3_two_nodes.json").c_str(), &cover) == CPI_OK);
  int connected = 0, galois = 0;
  REQUIRE(cpi_cover_check(cover, &connected, &galois) == CPI_OK);
  CHECK(connected == 1);
  CHECK(galois == 1);
  char* out = nullptr;
  REQUIRE(cpi_cover_to_dot(cover, &out) == CPI_OK);
  CHECK(take(out).rfind("graph cover {", 0) == 0);
  cpi_cover_free(cover);

  REQUIRE(cpi_glue_script_run(data("scripts/c6_two_components.json").c_str(), &cover) == CPI_OK);
  REQUIRE(cpi_cover_check(cover, &connected, &galois) == CPI_OK);
  CHECK(connected == 1);
  CHECK(galois == 1);
  cpi_cover_free(cover);

  REQUIRE(cpi_cover_load(data("covers/ramified_s3.json").c_str(), &cover) == CPI_OK);
  REQUIRE(cpi_cover_to_json(cover, 0, &out) == CPI_OK);
  CHECK(take(out).find("\"ramification\":[{\"point\":[\"C1\",\"inf\"]") != std::string::npos);
  cpi_cover_free(cover);
}

TEST_CASE("errors are per thread") {
  cpi_group* g = nullptr;
  CHECK(cpi_group_resolve("NotAGroup", &g) == CPI_UNKNOWN_GROUP);
  std::string other;
  std::thread t([&] {
    cpi_config* c = nullptr;
    cpi_config_parse("{", &c);
    other = cpi_last_error();
  });
  t.join();
  CHECK(std::string(cpi_last_error()).find("UNKNOWN_GROUP") == 0);
  CHECK(other.find("PARSE_ERROR") == 0);
}

TEST_CASE("selftest") {
  char* a = nullptr;
  char* b = nullptr;
  int passed = 0;
  REQUIRE(cpi_selftest(11, 1, 0, &passed, &a) == CPI_OK);
  CHECK(passed == 1);
  REQUIRE(cpi_selftest(11, 3, 0, nullptr, &b) == CPI_OK);
  CHECK(take(a) == take(b));
}
