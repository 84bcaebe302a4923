/* C interface to the lattice time-frequency library.
 *
 * Conventions:
 *  - Every function that can fail returns ztf_status; on failure the output
 *    pointers are untouched and ztf_last_error() carries a message that stays
 *    valid until the next failing call on the same thread.
 *  - Objects come from parse/compute calls and are released with the matching
 *    _free function. Strings returned through char** are released with
 *    ztf_string_free.
 *  - A resolution argument <= 0 selects a default: the symbol's own grid when
 *    it carries one, otherwise 2 (2R + 1) for the relevant lag radius R.
 */
#ifndef ZTF_H
#define ZTF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ztf_status {
  ZTF_OK = 0,
  ZTF_ERROR_INVALID_ARGUMENT = 1,
  ZTF_ERROR_DIMENSION_MISMATCH = 2,
  ZTF_ERROR_PARSE = 3,
  ZTF_ERROR_INTERNAL = 4
} ztf_status;

typedef struct ztf_signal ztf_signal;
typedef struct ztf_torus_function ztf_torus_function;
typedef struct ztf_symbol ztf_symbol;
typedef struct ztf_field ztf_field;
typedef struct ztf_matrix ztf_matrix;

const char* ztf_version(void);
const char* ztf_last_error(void);
/* Worker threads for the parallel regions; results do not depend on this. */
void ztf_set_threads(int workers);

void ztf_string_free(char* s);
void ztf_signal_free(ztf_signal* f);
void ztf_torus_function_free(ztf_torus_function* f);
void ztf_symbol_free(ztf_symbol* s);
void ztf_field_free(ztf_field* f);
void ztf_matrix_free(ztf_matrix* m);

/* -- parsing and formatting ---------------------------------------------- */

ztf_status ztf_signal_parse(const char* json, ztf_signal** out);
ztf_status ztf_signal_format(const ztf_signal* f, char** json_out);
ztf_status ztf_torus_function_parse(const char* json, ztf_torus_function** out);
ztf_status ztf_torus_function_format(const ztf_torus_function* f, char** json_out);
ztf_status ztf_symbol_parse(const char* json, ztf_symbol** out);

int ztf_signal_dim(const ztf_signal* f);            /* -1 on null */
int ztf_signal_radius(const ztf_signal* f);         /* -1 on null */
int ztf_torus_function_dim(const ztf_torus_function* f);
int ztf_torus_function_resolution(const ztf_torus_function* f); /* 0 if band */
int ztf_symbol_dim(const ztf_symbol* s);
int ztf_symbol_position_radius(const ztf_symbol* s); /* -1 if unbounded */

/* -- transforms ----------------------------------------------------------- */

/* m_radius < 0 selects the full support radius (signal + window). */
ztf_status ztf_stft(const ztf_signal* f, const ztf_signal* g, int m_radius,
                    int resolution, ztf_field** out);
ztf_status ztf_field_format_json(const ztf_field* F, char** json_out);
/* magnitude_only != 0 emits position, node, magnitude rows instead of re/im. */
ztf_status ztf_field_format_csv(const ztf_field* F, int magnitude_only, char** csv_out);

/* -- localization operators ----------------------------------------------- */

ztf_status ztf_loc_apply(const ztf_symbol* sigma, const ztf_signal* g1,
                         const ztf_signal* g2, const ztf_signal* f, int resolution,
                         ztf_signal** out);
/* out_radius / in_radius < 0 select the operator's natural support radii. */
ztf_status ztf_loc_kernel(const ztf_symbol* sigma, const ztf_signal* g1,
                          const ztf_signal* g2, int out_radius, int in_radius,
                          int resolution, ztf_matrix** out);
/* json_out receives {"value":[re,im]}. */
ztf_status ztf_loc_bilinear(const ztf_symbol* sigma, const ztf_signal* g1,
                            const ztf_signal* g2, const ztf_signal* f,
                            const ztf_signal* h, int resolution, char** json_out);
ztf_status ztf_matrix_format_json(const ztf_matrix* m, char** json_out);
ztf_status ztf_matrix_format_csv(const ztf_matrix* m, char** csv_out);
/* Singular values plus Schatten summaries (and the trace when square). */
ztf_status ztf_matrix_svd_json(const ztf_matrix* m, char** json_out);
ztf_status ztf_bounds_report(const ztf_symbol* sigma, const ztf_signal* g1,
                             const ztf_signal* g2, int resolution, char** json_out);

/* -- structured operators -------------------------------------------------- */

ztf_status ztf_lps_compare(int time_radius, double omega, int resolution,
                           char** json_out);
ztf_status ztf_para_kernel(const ztf_torus_function* beta, const ztf_signal* g1,
                           const ztf_signal* g2, int resolution, int as_csv,
                           char** out);
ztf_status ztf_paraproduct(const ztf_signal* g1, const ztf_signal* g2,
                           const ztf_signal* f, const ztf_signal* h, int resolution,
                           ztf_signal** out);
ztf_status ztf_multiplier_symbol(const ztf_torus_function* beta, const ztf_signal* g1,
                                 const ztf_signal* g2, int resolution,
                                 ztf_torus_function** out);
/* out_radius < 0 keeps the input box. */
ztf_status ztf_multiplier_apply(const ztf_torus_function* mu, const ztf_signal* f,
                                int out_radius, ztf_signal** out);

/* -- self checks ------------------------------------------------------------ */

/* resolution = 0 selects the default for the radius; failures receives the
 * number of failing checks (may be null). */
ztf_status ztf_verify(uint64_t seed, int dim, int radius, int resolution,
                      int include_timings, char** json_out, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* ZTF_H */
