/* C interface to crkit. All results are returned as JSON documents owned by
 * the caller (release with crkit_string_free). Functions return CRKIT_OK or
 * an error status; crkit_last_error() then describes the failure for the
 * calling thread. */
#ifndef CRKIT_CRKIT_H
#define CRKIT_CRKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(CRKIT_BUILDING_LIBRARY)
#define CRKIT_API __attribute__((visibility("default")))
#else
#define CRKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crkit_status {
  CRKIT_OK = 0,
  CRKIT_NOT_HERMITIAN,
  CRKIT_SINGULAR,
  CRKIT_SINGULAR_A,
  CRKIT_NO_CONTRACTION,
  CRKIT_NORM_TOO_LARGE,
  CRKIT_DIVERGED,
  CRKIT_BAD_WEIGHT,
  CRKIT_NOT_BIHOMOGENEOUS,
  CRKIT_LENGTH_MISMATCH,
  CRKIT_PRECONDITION_VIOLATION,
  CRKIT_PARSE_ERROR,
  CRKIT_INVARIANT_VIOLATION,
  CRKIT_INVALID_ARGUMENT,
  CRKIT_IO_ERROR,
  CRKIT_UNKNOWN_FIXTURE,
  CRKIT_INTERNAL_ERROR
} crkit_status;

typedef enum crkit_model_kind { CRKIT_MODEL_QUADRIC = 0, CRKIT_MODEL_HYPERSURFACE = 1 } crkit_model_kind;

typedef struct crkit_model crkit_model;

typedef struct crkit_config {
  double residual_tol;
  double rank_tol;
  double series_tail_tol;
  uint32_t max_iterations;
} crkit_config;

CRKIT_API const char* crkit_version(void);
CRKIT_API const char* crkit_status_string(crkit_status status);
/* Message of the last failing call on this thread ("" if none). */
CRKIT_API const char* crkit_last_error(void);
CRKIT_API void crkit_string_free(char* s);
CRKIT_API crkit_config crkit_config_default(void);

CRKIT_API crkit_status crkit_model_load_file(const char* path, int allow_pluriharmonic, crkit_model** out);
CRKIT_API crkit_status crkit_model_load_json(const char* text, int allow_pluriharmonic, crkit_model** out);
CRKIT_API void crkit_model_free(crkit_model* model);
CRKIT_API crkit_model_kind crkit_model_get_kind(const crkit_model* model);
/* n for both kinds; d for quadrics, m for hypersurfaces. */
CRKIT_API int crkit_model_dims(const crkit_model* model, int* n, int* d_or_m);

/* Quadric analysis. b has nb real entries, a and V are interleaved (re, im)
 * arrays with na and nV complex entries. A NULL pointer selects the default
 * (b from the Levi search, a = 0, V = (1, ..., 1)); cfg may be NULL.
 * passed receives 1 when the analysis completed without errors. */
CRKIT_API crkit_status crkit_quadric_analyze(const crkit_model* model, const double* b, size_t nb, const double* a,
                                             size_t na, const double* V, size_t nV, const crkit_config* cfg,
                                             uint64_t seed, char** json, int* passed);
CRKIT_API crkit_status crkit_quadric_jet_check(const crkit_model* model, const double* b, size_t nb, const double* a,
                                               size_t na, const double* V, size_t nV, const crkit_config* cfg,
                                               uint64_t seed, char** json, int* passed);

/* weight is "all" or a rational such as "-1/2". */
CRKIT_API crkit_status crkit_model_lie(const crkit_model* model, const char* weight, char** json, int* passed);
CRKIT_API crkit_status crkit_model_pseudoconvex(const crkit_model* model, int samples, uint64_t seed, char** json,
                                                int* passed);
CRKIT_API crkit_status crkit_model_sos(const crkit_model* model, char** json, int* passed);
CRKIT_API crkit_status crkit_model_chain_verify(const crkit_model* model, const char* chain_json, char** json,
                                                int* passed);

/* name is a fixture name or "all"; sweep != 0 runs c10 over several eps. */
CRKIT_API crkit_status crkit_fixtures_run(const char* name, double eps, int sweep, char** json, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* CRKIT_CRKIT_H */
