/* C interface to the curvepi library. Every function returns a cpi_status;
 * on failure cpi_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * cpi_string_free. */
#ifndef CURVEPI_H
#define CURVEPI_H

#include <stdint.h>

#if defined(_WIN32)
#  define CPI_API __declspec(dllexport)
#else
#  define CPI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpi_status {
  CPI_OK = 0,
  CPI_PARSE_ERROR = 1,
  CPI_INVALID_CONFIG = 2,
  CPI_NOT_CONNECTED = 3,
  CPI_NOT_PROJECTIVE = 4,
  CPI_POINT_NOT_FOUND = 5,
  CPI_OVERLAP_WITH_REMOVED = 6,
  CPI_DEGREE_MISMATCH = 7,
  CPI_NOT_A_MEMBER = 8,
  CPI_NOT_PRIME = 9,
  CPI_NOT_NORMAL = 10,
  CPI_GROUP_TOO_LARGE = 11,
  CPI_NOT_SIMPLY_TRANSITIVE = 12,
  CPI_NOT_A_TRANSVERSAL = 13,
  CPI_NOT_GENERATING = 14,
  CPI_BASE_NOT_CONNECTED = 15,
  CPI_FIBER_NOT_TORSOR = 16,
  CPI_COMPONENT_OVERLAP = 17,
  CPI_RELATION_NOT_PRESERVED = 18,
  CPI_BAD_PARTITION = 19,
  CPI_ACTION_NOT_EQUIVARIANT = 20,
  CPI_NOT_TREE_NORMALIZED = 21,
  CPI_TOO_LARGE = 22,
  CPI_GENUS_NONZERO = 23,
  CPI_ETALE_GENUS_ZERO = 24,
  CPI_UNKNOWN_GROUP = 25,
  CPI_INVALID_ARGUMENT = 26,
  CPI_IO_ERROR = 27,
  CPI_INTERNAL = 28
} cpi_status;

typedef enum cpi_mode {
  CPI_MODE_PROJECTIVE = 0,
  CPI_MODE_AFFINE = 1,
  CPI_MODE_TAME = 2,
  CPI_MODE_HASSE_WITT = 3,
  CPI_MODE_NAKAJIMA = 4
} cpi_mode;

typedef struct cpi_config cpi_config;
typedef struct cpi_group cpi_group;
typedef struct cpi_cover cpi_cover;

CPI_API const char* cpi_version(void);
CPI_API const char* cpi_last_error(void);
CPI_API const char* cpi_status_name(cpi_status status);
CPI_API void cpi_string_free(char* s);

/* Configurations */
CPI_API cpi_status cpi_config_load(const char* path, cpi_config** out);
CPI_API cpi_status cpi_config_parse(const char* json, cpi_config** out);
CPI_API void cpi_config_free(cpi_config* config);
CPI_API cpi_status cpi_config_characteristic(const cpi_config* config, unsigned* p);
/* *valid is 1 or 0; the report lists every violation. */
CPI_API cpi_status cpi_config_validate(const cpi_config* config, int* valid, int pretty, char** report);
CPI_API cpi_status cpi_config_invariants(const cpi_config* config, int pretty, char** json);
CPI_API cpi_status cpi_config_to_json(const cpi_config* config, int pretty, char** json);
CPI_API cpi_status cpi_config_to_dot(const cpi_config* config, char** dot);

/* Groups: a catalog or family name ("S3", "C2^3", "D5xC3") or a group file. */
CPI_API cpi_status cpi_group_resolve(const char* spec, cpi_group** out);
CPI_API void cpi_group_free(cpi_group* group);
CPI_API cpi_status cpi_group_order(const cpi_group* group, unsigned long long* order);
CPI_API cpi_status cpi_group_to_json(const cpi_group* group, int pretty, char** json);
CPI_API cpi_status cpi_catalog_to_json(char** json);

/* Verdict JSON for one mode. The seed drives the randomized d(G) fallback. */
CPI_API cpi_status cpi_realizable(const cpi_group* group, const cpi_config* config, unsigned p, cpi_mode mode,
                                  uint64_t seed, int pretty, char** verdict);

/* Oracle */
CPI_API cpi_status cpi_enumerate(const cpi_group* group, const cpi_config* config, unsigned jobs,
                                 unsigned witnesses, int pretty, char** json);
/* as_text selects the plain-text table instead of JSON. */
CPI_API cpi_status cpi_census(const cpi_config* config, unsigned long long max_order, unsigned jobs, int as_text,
                              int pretty, char** out);
CPI_API cpi_status cpi_cross_check(const cpi_group* group, const cpi_config* config, unsigned jobs, int pretty,
                                   char** json);
CPI_API cpi_status cpi_selftest(uint64_t seed, unsigned jobs, int pretty, int* passed, char** report);

/* Covers */
CPI_API cpi_status cpi_cover_load(const char* path, cpi_cover** out);
CPI_API cpi_status cpi_glue_script_run(const char* path, cpi_cover** out);
CPI_API void cpi_cover_free(cpi_cover* cover);
CPI_API cpi_status cpi_cover_check(const cpi_cover* cover, int* connected, int* galois);
CPI_API cpi_status cpi_cover_to_json(const cpi_cover* cover, int pretty, char** json);
CPI_API cpi_status cpi_cover_to_dot(const cpi_cover* cover, char** dot);

#ifdef __cplusplus
}
#endif

#endif
