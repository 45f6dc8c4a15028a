// Command-line front end over the curvepi C interface.
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "curvepi.h"

namespace {

struct DomainFailure {
  cpi_status status;
};

void check(cpi_status s) {
  if (s != CPI_OK) throw DomainFailure{s};
}

struct Freer {
  void operator()(cpi_config* c) const { cpi_config_free(c); }
  void operator()(cpi_group* g) const { cpi_group_free(g); }
  void operator()(cpi_cover* c) const { cpi_cover_free(c); }
  void operator()(char* s) const { cpi_string_free(s); }
};

template <class T>
using Owned = std::unique_ptr<T, Freer>;

Owned<cpi_config> load_config(const std::string& path) {
  cpi_config* c = nullptr;
  check(cpi_config_load(path.c_str(), &c));
  return Owned<cpi_config>(c);
}

Owned<cpi_group> load_group(const std::string& spec) {
  cpi_group* g = nullptr;
  check(cpi_group_resolve(spec.c_str(), &g));
  return Owned<cpi_group>(g);
}

void print(char* s) {
  Owned<char> owned(s);
  std::fputs(s, stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental-group toolkit for seminormal curves"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  app.add_flag("--pretty", pretty, "Indented JSON");
  app.add_option("--seed", seed, "Seed for randomized search budgets");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.set_version_flag("--version", std::string(cpi_version()));

  std::string config_path, group_spec, mode = "projective", script, file;
  int characteristic = -1;
  unsigned long long max_order = 24;
  unsigned witnesses = 1;
  bool text = false;

  auto* validate = app.add_subcommand("validate", "Check a configuration file");
  validate->add_option("config", config_path)->required();

  auto* invariants = app.add_subcommand("invariants", "Rank invariants of a configuration");
  invariants->add_option("config", config_path)->required();

  auto* realizable = app.add_subcommand("realizable", "Decide whether a group is a Galois group of an etale cover");
  realizable->add_option("config", config_path)->required();
  realizable->add_option("--group", group_spec, "Catalog name or group file")->required();
  realizable->add_option("--char", characteristic, "Characteristic (default: from the configuration)");
  realizable->add_option("--mode", mode)->check(
      CLI::IsMember({"projective", "affine", "tame", "hasse-witt", "nakajima"}));

  auto* glue = app.add_subcommand("glue", "Apply the gluing steps of a script and print the resulting cover");
  glue->add_option("script", script)->required();

  auto* enumerate = app.add_subcommand("enumerate", "Count connected covers, or list realizable catalog groups");
  enumerate->add_option("config", config_path)->required();
  enumerate->add_option("--group", group_spec, "Count covers for one group instead of the census");
  enumerate->add_option("--max-order", max_order, "Largest group order in the census");
  enumerate->add_option("--witnesses", witnesses, "Witness covers to print");
  enumerate->add_flag("--text", text, "Plain-text census table");

  auto* cross = app.add_subcommand("cross-check", "Compare descent and gluing on every cover");
  cross->add_option("config", config_path)->required();
  cross->add_option("--group", group_spec)->required();

  auto* dot = app.add_subcommand("export-dot", "DOT graph of a configuration or cover file");
  dot->add_option("file", file)->required();

  auto* selftest = app.add_subcommand("selftest", "Run the oracle suites");
  auto* catalog = app.add_subcommand("catalog", "Print the group catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    char* out = nullptr;
    if (*validate) {
      auto c = load_config(config_path);
      int valid = 0;
      check(cpi_config_validate(c.get(), &valid, pretty, &out));
      print(out);
      return valid ? 0 : 1;
    }
    if (*invariants) {
      auto c = load_config(config_path);
      check(cpi_config_invariants(c.get(), pretty, &out));
      print(out);
    } else if (*realizable) {
      auto c = load_config(config_path);
      auto g = load_group(group_spec);
      unsigned p = 0;
      check(cpi_config_characteristic(c.get(), &p));
      if (characteristic >= 0) p = static_cast<unsigned>(characteristic);
      cpi_mode m = CPI_MODE_PROJECTIVE;
      if (mode == "affine") m = CPI_MODE_AFFINE;
      if (mode == "tame") m = CPI_MODE_TAME;
      if (mode == "hasse-witt") m = CPI_MODE_HASSE_WITT;
      if (mode == "nakajima") m = CPI_MODE_NAKAJIMA;
      check(cpi_realizable(g.get(), c.get(), p, m, seed, pretty, &out));
      print(out);
    } else if (*glue) {
      cpi_cover* raw = nullptr;
      check(cpi_glue_script_run(script.c_str(), &raw));
      Owned<cpi_cover> cover(raw);
      check(cpi_cover_to_json(cover.get(), pretty, &out));
      print(out);
    } else if (*enumerate) {
      auto c = load_config(config_path);
      if (!group_spec.empty()) {
        auto g = load_group(group_spec);
        check(cpi_enumerate(g.get(), c.get(), jobs, witnesses, pretty, &out));
      } else {
        check(cpi_census(c.get(), max_order, jobs, text, pretty, &out));
      }
      print(out);
    } else if (*cross) {
      auto c = load_config(config_path);
      auto g = load_group(group_spec);
      check(cpi_cross_check(g.get(), c.get(), jobs, pretty, &out));
      print(out);
    } else if (*dot) {
      cpi_config* raw = nullptr;
      const cpi_status as_config = cpi_config_load(file.c_str(), &raw);
      if (as_config == CPI_OK) {
        Owned<cpi_config> c(raw);
        check(cpi_config_to_dot(c.get(), &out));
      } else {
        const std::string config_error = cpi_last_error();
        cpi_cover* cover_raw = nullptr;
        const cpi_status as_cover = cpi_cover_load(file.c_str(), &cover_raw);
        if (as_cover != CPI_OK) {
          std::cerr << "error: " << config_error << "\n";
          throw DomainFailure{as_config == CPI_PARSE_ERROR ? as_cover : as_config};
        }
        Owned<cpi_cover> cover(cover_raw);
        check(cpi_cover_to_dot(cover.get(), &out));
      }
      print(out);
    } else if (*selftest) {
      int passed = 0;
      check(cpi_selftest(seed, jobs, pretty, &passed, &out));
      print(out);
      return passed ? 0 : 1;
    } else if (*catalog) {
      check(cpi_catalog_to_json(&out));
      print(out);
    }
  } catch (const DomainFailure& f) {
    std::cerr << "error: " << cpi_last_error() << "\n";
    return 1;
  }
  return 0;
}
