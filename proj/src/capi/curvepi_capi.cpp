#include "curvepi.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "curvepi/catalog.hpp"
#include "curvepi/cover.hpp"
#include "curvepi/curve.hpp"
#include "curvepi/error.hpp"
#include "curvepi/io.hpp"
#include "curvepi/oracle.hpp"
#include "curvepi/realizability.hpp"
#include "curvepi/selftest.hpp"

struct cpi_config {
  curvepi::CurveConfiguration value;
};
struct cpi_group {
  curvepi::PermutationGroup value;
};
struct cpi_cover {
  curvepi::CoverDescriptor value;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(curvepi::ErrorCode::internal) == CPI_INTERNAL);
static_assert(static_cast<int>(curvepi::ErrorCode::relation_not_preserved) == CPI_RELATION_NOT_PRESERVED);

template <class Fn>
cpi_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return CPI_OK;
  } catch (const curvepi::Error& e) {
    last_error = e.what();
    return static_cast<cpi_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "INTERNAL: out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("INTERNAL: ") + e.what();
  } catch (...) {
    last_error = "INTERNAL: unknown exception";
  }
  return CPI_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw curvepi::Error(curvepi::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  require(out, "output pointer");
  *out = dup(s);
}

}  // namespace

extern "C" {

const char* cpi_version(void) { return "1.0.0"; }

const char* cpi_last_error(void) { return last_error.c_str(); }

const char* cpi_status_name(cpi_status status) {
  return curvepi::error_code_name(static_cast<curvepi::ErrorCode>(status)).data();
}

void cpi_string_free(char* s) { std::free(s); }

cpi_status cpi_config_load(const char* path, cpi_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new cpi_config{curvepi::load_config(path)};
  });
}

cpi_status cpi_config_parse(const char* json, cpi_config** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "output pointer");
    *out = new cpi_config{curvepi::config_from_json(json)};
  });
}

void cpi_config_free(cpi_config* config) { delete config; }

cpi_status cpi_config_characteristic(const cpi_config* config, unsigned* p) {
  return guarded([&] {
    require(config, "config");
    require(p, "output pointer");
    *p = config->value.characteristic;
  });
}

cpi_status cpi_config_validate(const cpi_config* config, int* valid, int pretty, char** report) {
  return guarded([&] {
    require(config, "config");
    const auto v = curvepi::validate(config->value);
    if (valid) *valid = v.empty() ? 1 : 0;
    emit(report, curvepi::violations_to_json(v, pretty != 0));
  });
}

cpi_status cpi_config_invariants(const cpi_config* config, int pretty, char** json) {
  return guarded([&] {
    require(config, "config");
    emit(json, curvepi::rank_report_to_json(curvepi::rank_report(config->value), pretty != 0));
  });
}

cpi_status cpi_config_to_json(const cpi_config* config, int pretty, char** json) {
  return guarded([&] {
    require(config, "config");
    emit(json, curvepi::config_to_json(config->value, pretty != 0));
  });
}

cpi_status cpi_config_to_dot(const cpi_config* config, char** dot) {
  return guarded([&] {
    require(config, "config");
    emit(dot, curvepi::to_dot(config->value));
  });
}

cpi_status cpi_group_resolve(const char* spec, cpi_group** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "output pointer");
    *out = new cpi_group{curvepi::resolve_group(spec)};
  });
}

void cpi_group_free(cpi_group* group) { delete group; }

cpi_status cpi_group_order(const cpi_group* group, unsigned long long* order) {
  return guarded([&] {
    require(group, "group");
    require(order, "output pointer");
    *order = group->value.order();
  });
}

cpi_status cpi_group_to_json(const cpi_group* group, int pretty, char** json) {
  return guarded([&] {
    require(group, "group");
    emit(json, curvepi::group_to_json(group->value, pretty != 0));
  });
}

cpi_status cpi_catalog_to_json(char** json) {
  return guarded([&] { emit(json, curvepi::catalog_to_json(curvepi::catalog())); });
}

cpi_status cpi_realizable(const cpi_group* group, const cpi_config* config, unsigned p, cpi_mode mode,
                          uint64_t seed, int pretty, char** verdict) {
  return guarded([&] {
    require(group, "group");
    require(config, "config");
    curvepi::MinGeneratorsOptions opts;
    opts.seed = seed;
    opts.allow_random_fallback = true;
    const auto& g = group->value;
    const auto& c = config->value;
    curvepi::RealizabilityVerdict v;
    switch (mode) {
      case CPI_MODE_PROJECTIVE: v = curvepi::projective_realizable(g, p, c, opts); break;
      case CPI_MODE_AFFINE: v = curvepi::affine_realizable(g, p, c, opts); break;
      case CPI_MODE_TAME: v = curvepi::tame_realizable(g, p, c, opts); break;
      case CPI_MODE_HASSE_WITT: v = curvepi::hasse_witt_check(g, p, c); break;
      case CPI_MODE_NAKAJIMA: v = curvepi::nakajima_check(g, p, c, opts); break;
      default: throw curvepi::Error(curvepi::ErrorCode::invalid_argument, "unknown mode");
    }
    emit(verdict, curvepi::verdict_to_json(v, pretty != 0));
  });
}

cpi_status cpi_enumerate(const cpi_group* group, const cpi_config* config, unsigned jobs, unsigned witnesses,
                         int pretty, char** json) {
  return guarded([&] {
    require(group, "group");
    require(config, "config");
    curvepi::EnumerateOptions opts;
    opts.jobs = jobs;
    opts.witness_limit = witnesses;
    const auto r = curvepi::enumerate_connected_covers(group->value, config->value, opts);
    emit(json, curvepi::enumeration_to_json(group->value, config->value, r, pretty != 0));
  });
}

cpi_status cpi_census(const cpi_config* config, unsigned long long max_order, unsigned jobs, int as_text, int pretty,
                      char** out) {
  return guarded([&] {
    require(config, "config");
    curvepi::CensusOptions opts;
    opts.jobs = jobs;
    const auto census = curvepi::quotient_census(config->value, max_order, opts);
    emit(out, as_text ? curvepi::census_to_text(config->value, census)
                      : curvepi::census_to_json(config->value, census, pretty != 0));
  });
}

cpi_status cpi_cross_check(const cpi_group* group, const cpi_config* config, unsigned jobs, int pretty, char** json) {
  return guarded([&] {
    require(group, "group");
    require(config, "config");
    curvepi::CrossCheckOptions opts;
    opts.jobs = jobs;
    const auto r = curvepi::cross_check_descent(group->value, config->value, opts);
    emit(json, curvepi::descent_report_to_json(r, pretty != 0));
  });
}

cpi_status cpi_selftest(uint64_t seed, unsigned jobs, int pretty, int* passed, char** report) {
  return guarded([&] {
    bool ok = false;
    const auto text = curvepi::selftest_report({seed, jobs, pretty != 0}, &ok);
    if (passed) *passed = ok ? 1 : 0;
    emit(report, text);
  });
}

cpi_status cpi_cover_load(const char* path, cpi_cover** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new cpi_cover{curvepi::load_cover(path)};
  });
}

cpi_status cpi_glue_script_run(const char* path, cpi_cover** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    auto dir = std::filesystem::path(path).parent_path();
    *out = new cpi_cover{curvepi::run_glue_script(curvepi::read_file(path), dir.empty() ? "." : dir.string())};
  });
}

void cpi_cover_free(cpi_cover* cover) { delete cover; }

cpi_status cpi_cover_check(const cpi_cover* cover, int* connected, int* galois) {
  return guarded([&] {
    require(cover, "cover");
    if (connected) *connected = curvepi::is_connected(cover->value) ? 1 : 0;
    if (galois) *galois = curvepi::is_galois(cover->value) ? 1 : 0;
  });
}

cpi_status cpi_cover_to_json(const cpi_cover* cover, int pretty, char** json) {
  return guarded([&] {
    require(cover, "cover");
    emit(json, curvepi::cover_to_json(cover->value, pretty != 0));
  });
}

cpi_status cpi_cover_to_dot(const cpi_cover* cover, char** dot) {
  return guarded([&] {
    require(cover, "cover");
    emit(dot, curvepi::to_dot(cover->value));
  });
}

}  // extern "C"
