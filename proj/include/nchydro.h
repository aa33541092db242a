/* C interface to the nchydro library.
 *
 * Every fallible call returns an nch_status; on failure the thread-local
 * message from nch_last_error() describes the problem.  Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function.  Strings returned through char** out-parameters
 * are released with nch_string_free.
 */
#ifndef NCHYDRO_H
#define NCHYDRO_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nch_status {
  NCH_OK = 0,
  NCH_ERR_PARSE = 1,            /* malformed input text or JSON */
  NCH_ERR_INVARIANT = 2,        /* a structural precondition or identity failed */
  NCH_ERR_RESOURCE = 3,         /* a configured size cap would be exceeded */
  NCH_ERR_INVALID_ARGUMENT = 4, /* bad argument value or object mismatch */
  NCH_ERR_INTERNAL = 5
} nch_status;

/* Arithmetic mode: exact rational coefficients or double precision. */
typedef enum nch_mode { NCH_MODE_EXACT = 0, NCH_MODE_FLOAT = 1 } nch_mode;

/* Opaque handles. */
typedef struct nch_poly nch_poly;
typedef struct nch_field nch_field;

/* Library version string (static storage; do not free). */
const char* nch_version(void);

/* Message for the most recent failure on the calling thread (static until the
 * next failing call; do not free). */
const char* nch_last_error(void);

void nch_string_free(char* s);
void nch_poly_free(nch_poly* p);
void nch_field_free(nch_field* f);

/* --- polynomials ------------------------------------------------------- */

/* Parses an expression in generators s1..sn. */
nch_status nch_poly_parse(const char* text, int n, nch_mode mode, nch_poly** out);
nch_status nch_poly_format(const nch_poly* p, char** out);
nch_status nch_poly_degree(const nch_poly* p, int* out);

/* Canonical text of the trace of p. */
nch_status nch_poly_trace(const nch_poly* p, char** out);

/* Free difference quotient with respect to generator j (1-based); the result
 * is the formatted tensor-square element. */
nch_status nch_poly_free_diff(const nch_poly* p, int j, char** out);

/* Cyclic derivative with respect to generator j (1-based). */
nch_status nch_poly_cyclic_diff(const nch_poly* p, int j, nch_poly** out);

/* --- vector fields ------------------------------------------------------ */

/* Parses "(expr, ..., expr)" with exactly n components. */
nch_status nch_field_parse(const char* text, int n, nch_mode mode, nch_field** out);
nch_status nch_field_format(const nch_field* f, char** out);

/* Directional derivative of p along f (modes must match). */
nch_status nch_field_directional(const nch_field* f, const nch_poly* p, nch_poly** out);

/* Projection onto the divergence-free subspace.  projected receives the
 * projected field; pressure (optional, may be NULL) receives the potential
 * whose cyclic gradient is the removed part. */
nch_status nch_field_leray_project(const nch_field* f, nch_field** projected,
                                   nch_poly** pressure);

/* flag receives 1/0; residual (optional) the relative projection residual. */
nch_status nch_field_is_divergence_free(const nch_field* f, int* flag, double* residual);

/* The commutator polynomial i * sum_j [s_j, f_j]. */
nch_status nch_field_vorticity(const nch_field* f, nch_poly** out);

/* --- simulation and checks ---------------------------------------------- */

/* Runs a simulation from a JSON config (see the shipped README for the
 * schema), writing series.csv and manifest.json into out_dir (out_dir may be
 * NULL/empty to use the config's output_dir).  On success *manifest_json
 * receives the manifest text. */
nch_status nch_simulate(const char* config_json, const char* out_dir, char** manifest_json);

/* Runs a named property-check suite ("all" for every suite).  *passed
 * receives 1/0; *report the rendered text (failures only when quiet). */
nch_status nch_check(const char* suite, unsigned long long seed, int size, int quiet,
                     int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif /* NCHYDRO_H */
