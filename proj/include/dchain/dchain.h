/* C interface to the doubling-chain library.
 *
 * Objects are opaque handles released with their matching *_free call.
 * Functions returning char** hand over a NUL-terminated UTF-8 string owned
 * by the caller and released with dc_string_free. Every function returns a
 * dc_status; on failure the message of the calling thread's last error is
 * available from dc_last_error until the next failing call on that thread.
 *
 * Points are passed as flat arrays of 2n doubles (re_1, im_1, ..., re_n,
 * im_n). */
#ifndef DCHAIN_DCHAIN_H
#define DCHAIN_DCHAIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DC_API __declspec(dllexport)
#else
#define DC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dc_status {
  DC_OK = 0,
  DC_INVALID_ARGUMENT = 1,
  DC_DIMENSION_MISMATCH = 2,
  DC_ZERO_POLYNOMIAL = 3,
  DC_NON_CONVERGENCE = 4,
  DC_DEGENERATE_LEADING = 5,
  DC_PARSE_ERROR = 6,
  DC_ENDPOINT_WITHIN_DELTA = 7,
  DC_DELTA_TOO_LARGE = 8,
  DC_PATH_NOT_FOUND = 9,
  DC_CERTIFICATION_FAILED = 10,
  DC_UNSUPPORTED = 11,
  DC_BUDGET = 12,
  DC_GRID_TOO_LARGE = 13,
  DC_INTERNAL = 99
} dc_status;

typedef struct dc_poly dc_poly;
typedef struct dc_chain dc_chain;

typedef struct dc_options {
  uint64_t seed;
  /* Maximum number of cells per clearance certificate. */
  int budget;
  /* Pixels per side of the path-finding grid. */
  int resolution;
  /* Worker threads; results do not depend on this value. */
  int workers;
  /* Accept delta above rho(n, d) in dc_chain_build. */
  int allow_delta_above_rho;
  /* Grid points per real axis for the study's G grid (0: automatic). */
  int grid_density;
} dc_options;

DC_API const char* dc_version(void);
/* seed 1, budget 16384, resolution 2048, workers = hardware threads. */
DC_API void dc_options_init(dc_options* options);
/* Snake-case name of a status, e.g. "endpoint_within_delta". */
DC_API const char* dc_status_name(dc_status status);
DC_API const char* dc_last_error(void);
DC_API void dc_string_free(char* s);

/* ---- polynomials ----------------------------------------------------- */

/* {"dim": n, "degree": d (optional), "terms": [{"alpha": [...], "re", "im"}]} */
DC_API dc_status dc_poly_from_json(const char* json, dc_poly** out);
DC_API dc_status dc_poly_to_json(const dc_poly* poly, char** out);
DC_API int dc_poly_dim(const dc_poly* poly);
DC_API int dc_poly_degree(const dc_poly* poly);
DC_API void dc_poly_free(dc_poly* poly);

/* ---- chains ---------------------------------------------------------- */

/* Builds and verifies a chain from v1 to v2 (n_real = 2n doubles each).
 * Endpoints closer than delta to the zero set fail with
 * DC_ENDPOINT_WITHIN_DELTA; the error message carries a witness zero. */
DC_API dc_status dc_chain_build(const dc_poly* poly, const double* v1, const double* v2, size_t n_real,
                                double delta, const dc_options* options, dc_chain** out);
/* Reads a chain file. Embedded reports are ignored; missing junction radii
 * are recomputed by dc_chain_verify. */
DC_API dc_status dc_chain_from_json(const char* json, dc_chain** out);
DC_API dc_status dc_chain_to_json(const dc_chain* chain, char** out);
DC_API dc_status dc_chain_report_json(const dc_chain* chain, char** out);
DC_API int dc_chain_all_certified(const dc_chain* chain);
DC_API size_t dc_chain_length(const dc_chain* chain);
/* Independent audit of `chain` against `poly` and `delta`. The report is
 * stored in the chain (see dc_chain_report_json) and returned in
 * *report_json when that pointer is not NULL. */
DC_API dc_status dc_chain_verify(dc_chain* chain, const dc_poly* poly, double delta, const dc_options* options,
                                 int* all_certified, char** report_json);
DC_API void dc_chain_free(dc_chain* chain);

/* ---- clear balls and cube counts ------------------------------------- */

/* {"center", "radius", "margin", ...} for a normalized copy of `poly`. */
DC_API dc_status dc_clear_ball(const dc_poly* poly, const dc_options* options, char** out);
/* {"epsilon", "count", "bound", "grid", "within_bound"}. */
DC_API dc_status dc_vitushkin(const dc_poly* poly, double epsilon, const dc_options* options, int* within_bound,
                              char** out);

/* ---- disk covers ----------------------------------------------------- */

/* `disk_json` is {"center": [re, im], "radius", "punctures": [[re, im]...],
 * "delta"}. Builds a path from v1 to v2 (2 doubles each) and a disk cover
 * with maximal radius r_max (r_max <= 0: radius / 8). *out receives
 * {"cover", "audit"}; *svg (optional) the figure. */
DC_API dc_status dc_cover(const char* disk_json, const double* v1, const double* v2, double r_max,
                          const dc_options* options, int* audit_ok, char** out, char** svg);
/* Audits a cover JSON ({"centers", "radii", ...}) against a disk JSON. */
DC_API dc_status dc_cover_audit(const char* disk_json, const char* cover_json, int* audit_ok, char** out);

/* ---- analysis -------------------------------------------------------- */

/* Query {"numerator", "denominator", "power", "G", "omega",
 * "omega_center", "omega_radius"}; *out gets {"dc", "max_G", ...}. */
DC_API dc_status dc_doubling(const char* query_json, const dc_options* options, char** out);
/* Scaling study over strictly decreasing `deltas`. v_far may be NULL (the
 * clear-ball centre is used). *all_certified reports whether every leg
 * produced a verified chain. */
DC_API dc_status dc_study(const dc_poly* poly, const double* v_far, size_t n_real, const double* deltas,
                          size_t count, const dc_options* options, int* all_certified, char** out, char** svg);
/* Kobayashi upper bound 3 l(Ch) for a verified chain. */
DC_API dc_status dc_kobayashi_upper(const dc_chain* chain, double* out);
DC_API double dc_kobayashi_length_bound(int d, double delta);

#ifdef __cplusplus
}
#endif

#endif /* DCHAIN_DCHAIN_H */
