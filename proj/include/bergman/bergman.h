/* C interface to the bergman shared library.
 *
 * All objects are opaque handles created by *_create / *_parse functions and
 * released with the matching *_free. Every entry point returns a
 * bergman_status; on failure, bergman_last_error() describes the problem for
 * the calling thread. Strings returned through char** are heap-allocated and
 * must be released with bergman_string_free.
 */
#ifndef BERGMAN_H
#define BERGMAN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bergman_status {
  BERGMAN_OK = 0,
  BERGMAN_ERR_INVALID_ARGUMENT,
  BERGMAN_ERR_INVALID_INTERVAL,
  BERGMAN_ERR_NON_CONVERGENT,
  BERGMAN_ERR_SIZE_EXCEEDED,
  BERGMAN_ERR_NEGATIVE_EIGENVALUE,
  BERGMAN_ERR_DOMAIN,
  BERGMAN_ERR_NOT_UNIT,
  BERGMAN_ERR_COVERAGE_FAILURE,
  BERGMAN_ERR_LEVEL_OVERFLOW,
  BERGMAN_ERR_TRUNCATION_FAILURE,
  BERGMAN_ERR_DEGENERATE_WEIGHT,
  BERGMAN_ERR_MASS_OVERFLOW,
  BERGMAN_ERR_PARSE,
  BERGMAN_ERR_IO,
  BERGMAN_ERR_UNKNOWN
} bergman_status;

typedef struct bergman_weight bergman_weight;
typedef struct bergman_partition bergman_partition;
typedef struct bergman_basis bergman_basis;
typedef struct bergman_kernel bergman_kernel;
typedef struct bergman_measure bergman_measure;
typedef struct bergman_section bergman_section;
typedef struct bergman_poly bergman_poly;

const char* bergman_version(void);
const char* bergman_status_name(bergman_status s);
const char* bergman_last_error(void);
void bergman_string_free(char* s);

/* ---- weights -------------------------------------------------------------
 * spec mini-language: std:alpha=<a> | pow:alpha=<a> | logpow:beta=<b> |
 * exp:c=<c> | table:<path.csv>
 */
bergman_status bergman_weight_create(const char* spec, int n, bergman_weight** out);
void bergman_weight_free(bergman_weight* w);
bergman_status bergman_weight_omega_hat(const bergman_weight* w, double r, double* out);
bergman_status bergman_weight_moment(const bergman_weight* w, double s, double* out);
/* kind: "star" | "nstar" | "walpha" | "w1" (alpha used by walpha only) */
bergman_status bergman_weight_transform(const bergman_weight* w, const char* kind, double alpha,
                                        double r, double* out);
bergman_status bergman_weight_ball_mass(const bergman_weight* w, double* out); /* omega(B) */
/* omega(S_a) for a = rad * xi with any unit xi (radial weights) */
bergman_status bergman_weight_block(const bergman_weight* w, double rad, double* out);
/* classification + Lemma bands as a JSON report */
bergman_status bergman_weight_check_json(const bergman_weight* w, int grid_size, char** json_out);

/* ---- geometry ------------------------------------------------------------ */
bergman_status bergman_partition_create(int n, int kmax, uint64_t seed, bergman_partition** out);
void bergman_partition_free(bergman_partition* p);
bergman_status bergman_partition_level_count(const bergman_partition* p, int k, int* out);
/* z: interleaved coordinates (re0, im0, re1, im1, ...), 2n doubles */
bergman_status bergman_partition_locate(const bergman_partition* p, const double* z, int* k_out,
                                        int* j_out);
/* CSV rows: k, j, center coords, shell bounds, cap center coords */
bergman_status bergman_partition_emit_csv(const bergman_partition* p, char** csv_out);

/* ---- basis / kernels ------------------------------------------------------ */
/* space: "a2" | "hw" (alpha used by hw only) */
bergman_status bergman_basis_create(const bergman_weight* w, const char* space, double alpha,
                                    int max_degree, bergman_basis** out);
void bergman_basis_free(bergman_basis* b);
bergman_status bergman_basis_size(const bergman_basis* b, int* out);
bergman_status bergman_basis_norm(const bergman_basis* b, int i, double* out);

bergman_status bergman_kernel_create(const bergman_weight* w, const char* space, double alpha,
                                     bergman_kernel** out);
void bergman_kernel_free(bergman_kernel* k);
bergman_status bergman_kernel_eval(const bergman_kernel* k, const double* z, const double* w,
                                   double tol, double* re_out, double* im_out);
bergman_status bergman_kernel_norm(const bergman_kernel* k, const bergman_weight* w,
                                   const double* z, double p, double* out);
/* kernel self-checks (closed form, symmetry, coefficient identity) as JSON */
bergman_status bergman_kernel_verify_json(const bergman_weight* w, char** json_out);

/* ---- measures -------------------------------------------------------------
 * arg: "id" | "delta:z=<re>[+<im>i][,mass=<m>]" | path to a JSON file of the
 * form {"n":1, "atoms":[{"z":[[re,im],...], "mass":m}, ...]}
 */
bergman_status bergman_measure_parse(const bergman_weight* w, const char* arg,
                                     bergman_measure** out);
void bergman_measure_free(bergman_measure* m);
bergman_status bergman_measure_total_mass(const bergman_measure* m, double* out);

/* ---- operator sections ------------------------------------------------------ */
/* kind: "toeplitz" | "htoeplitz" (basis space must match) */
bergman_status bergman_section_toeplitz(const bergman_basis* b, const bergman_weight* w,
                                        const bergman_measure* mu, bergman_section** out);
bergman_status bergman_section_volterra(const bergman_basis* b, const char* g_literal,
                                        bergman_section** out);
void bergman_section_free(bergman_section* s);
bergman_status bergman_section_dim(const bergman_section* s, int* out);
/* eigenvalues (Hermitian kinds) or singular values (Volterra), descending;
 * buffer must hold dim doubles */
bergman_status bergman_section_spectrum(const bergman_section* s, double* out);
bergman_status bergman_section_schatten(const bergman_section* s, double p, double* out);

bergman_status bergman_berezin(const bergman_kernel* k, const bergman_measure* mu, const double* z,
                               double* out);

/* ---- criterion reports (JSON) ---------------------------------------------- */
bergman_status bergman_report_carleson(const bergman_weight* w, const bergman_measure* mu,
                                       double p, double q, const bergman_partition* part,
                                       char** json_out);
bergman_status bergman_report_berezin(const bergman_weight* w, const bergman_measure* mu, double p,
                                      double q, const bergman_partition* part, char** json_out);
bergman_status bergman_report_qlessp(const bergman_weight* w, const bergman_measure* mu, double p,
                                     double q, double r, uint64_t seed, char** json_out);
bergman_status bergman_report_schatten_dyadic(const bergman_weight* w, const bergman_measure* mu,
                                              const bergman_partition* part, double p,
                                              double alpha, char** json_out);
bergman_status bergman_report_schatten_integral(const bergman_weight* w,
                                                const bergman_measure* mu, double p, double r,
                                                double alpha, uint64_t seed, char** json_out);
bergman_status bergman_report_besov(const char* g_literal, int n, const bergman_partition* part,
                                    double p, char** json_out);
bergman_status bergman_besov_integral(const char* g_literal, int n, double p, double rmax,
                                      double* value_out, double* slope_out);

/* ---- acceptance suite -------------------------------------------------------
 * preset: "desk" (full sizes) | "quick" (reduced smoke sizes)
 * Returns the number of failing criteria in *failures and a JSON report.
 */
bergman_status bergman_suite_run(const char* preset, uint64_t seed, int verbose, int* failures,
                                 char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BERGMAN_H */
