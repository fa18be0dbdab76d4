/*
 * radebounds — C API.
 *
 * Concentration bounds for Monte Carlo empirical Rademacher averages and
 * supremum deviations, with exhaustive self-bounding verification and
 * seeded coverage experiments.
 *
 * Conventions:
 *   - Every fallible function returns a rade_status; RADE_OK is 0.
 *   - On failure, rade_last_error() returns a thread-local message.
 *   - Strings returned through char** are heap-allocated; release them
 *     with rade_string_free().
 *   - rade_matrix is an opaque handle; release it with rade_matrix_free().
 */
#ifndef RADEBOUNDS_H
#define RADEBOUNDS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rade_status {
  RADE_OK = 0,
  RADE_ERR_INVALID = 1,  /* bad argument or precondition violation */
  RADE_ERR_PARSE = 2,    /* malformed file or JSON */
  RADE_ERR_CAPACITY = 3, /* request exceeds an enumeration cut-off */
  RADE_ERR_INTERNAL = 4
} rade_status;

const char* rade_version(void);
const char* rade_last_error(void);
void rade_string_free(char* s);

/* ---- evaluation matrices ------------------------------------------------ */

typedef struct rade_matrix rade_matrix;

/* values: row-major rows x cols grid of f_k(s_i); range [a, b] with
 * b > 0 >= a. A constant-zero column is appended when absent. */
rade_status rade_matrix_create(const double* values, size_t rows, size_t cols,
                               double a, double b, rade_matrix** out);
rade_status rade_matrix_load_csv(const char* path, rade_matrix** out);
void rade_matrix_free(rade_matrix* mat);

size_t rade_matrix_rows(const rade_matrix* mat);
size_t rade_matrix_cols(const rade_matrix* mat);
double rade_matrix_a(const rade_matrix* mat);
double rade_matrix_b(const rade_matrix* mat);
int rade_matrix_zero_column_added(const rade_matrix* mat);
rade_status rade_matrix_get(const rade_matrix* mat, size_t row, size_t col, double* out);

/* ---- empirical statistics ----------------------------------------------- */

typedef struct rade_class_stats {
  double z_hat;     /* sup |f(s)| over the sample */
  double nu_hat;    /* sup mean |f| */
  double wvar_hat;  /* sup mean f^2 (empirical wimpy variance) */
  double eta_hat;   /* sup-mean - a */
  double gamma_hat; /* b - sup-mean */
  double c;         /* b - a */
  double z;         /* max(|a|, |b|) */
  size_t m;         /* sample size */
} rade_class_stats;

rade_status rade_stats(const rade_matrix* mat, rade_class_stats* out);
rade_status rade_stats_json(const rade_matrix* mat, char** json_out);

/* Monte Carlo empirical Rademacher average with a seeded sign matrix
 * (counter-based: entry (j,i) depends only on (seed,j,i)) or explicit
 * signs (n x m entries, each +1 or -1). */
rade_status rade_mcera_seeded(const rade_matrix* mat, size_t n, uint64_t seed, double* out);
rade_status rade_mcera_signs(const rade_matrix* mat, const int8_t* signs, size_t n,
                             double* out);

/* Exact empirical Rademacher average by enumerating all 2^m sign vectors
 * (capacity m <= 20). */
rade_status rade_era_exact(const rade_matrix* mat, double* out);

/* ---- closed-form calculators -------------------------------------------- */

/* Bennett function h(x) = (1+x) ln(1+x) - x, h(-1) = 1 by continuity. */
rade_status rade_bennett_h(double x, double* out);
/* Largest fixed point of r(x) = u + sqrt(v + y x), for u, v, y >= 0. */
rade_status rade_fixed_point(double u, double v, double y, double* out);

/* Monte Carlo average -> empirical Rademacher average (ERA). era_bd yields
 * the additive epsilon only; the self-bounding variants yield the full
 * bound including the Monte Carlo average. */
rade_status rade_bound_era_bd(double z, size_t n, size_t m, double delta, double* out);
rade_status rade_bound_era_sb_nu(double mcera, double z_hat, double nu_hat, size_t n,
                                 size_t m, double delta, double* out);
rade_status rade_bound_era_sb_wvar(double mcera, double z_hat, double wvar_hat, size_t n,
                                   size_t m, double delta, double* out);

/* ERA -> Rademacher complexity, plus the direct n = 1 routes. */
rade_status rade_bound_rc_from_era(double era_ub, double c, size_t m, double delta,
                                   double* out);
rade_status rade_bound_rc_n1_bd(double mcera1, double z, size_t m, double delta, double* out);
rade_status rade_bound_rc_n1_var(double mcera1, double z, double wvar_ub, size_t m,
                                 double delta, double* out);

/* Empirical estimators -> population quantities. */
rade_status rade_bound_wvar_ub(double wvar_hat, double z, size_t m, double delta, double* out);
rade_status rade_bound_eta_ub(double eta_hat, double c, size_t m, double delta, double* out);
rade_status rade_bound_gamma_ub(double gamma_hat, double c, size_t m, double delta,
                                double* out);

/* Variance bound from range-gap bounds (Bhatia-Davis chain, capped by
 * Popoviciu's c^2/4). */
rade_status rade_bound_tau_bhatia_davis(double eta_ub, double gamma_ub, double c, double* out);

/* Supremum-deviation bounds. sd_bd yields the additive epsilon only. */
rade_status rade_bound_sd_bd(double c, size_t m, double delta, double* out);
rade_status rade_bound_sd_bousquet(double ez_ub, double tau, double c, size_t m, double delta,
                                   double* out);
/* negative_side = 0 uses the eta gap, 1 the gamma gap. */
rade_status rade_bound_sd_sb(double ez_ub, double gap, int negative_side, double c, size_t m,
                             double delta, double* out);

/* Kebab-case method dispatch ("era-bd", "rc-n1-var", ...). params_json is a
 * flat object of the method's named inputs; the result JSON carries
 * {method, value, delta, inputs}. */
rade_status rade_bound_json(const char* method, const char* params_json, char** json_out);

/* Full BoundResult JSON from a matrix: statistics are computed, the Monte
 * Carlo average drawn with sigma_seed, and for chained methods the
 * confidence budget is split delta/2 per probabilistic step. Methods
 * "rc-from-era" chains the ERA method named by era_method (NULL picks
 * "era-sb-nu"); "rc-n1-var" chains the wimpy-variance estimate. clamp_nu
 * truncates ERA bounds at nu_hat. */
rade_status rade_bound_from_matrix_json(const rade_matrix* mat, const char* method,
                                        size_t n, uint64_t sigma_seed, double delta,
                                        const char* era_method, int clamp_nu,
                                        char** json_out);

/* ---- tail probabilities -------------------------------------------------- */

typedef enum rade_tail_kind {
  RADE_TAIL_ERA_BD = 0,
  RADE_TAIL_ERA_SB_NU = 1,
  RADE_TAIL_ERA_SB_WVAR = 2,
  RADE_TAIL_RC_ERA_BENNETT = 3,
  RADE_TAIL_RC_ERA_SUBGAMMA = 4,
  RADE_TAIL_WVAR_BENNETT = 5,
  RADE_TAIL_WVAR_SUBGAMMA = 6,
  RADE_TAIL_ETA_BENNETT = 7,
  RADE_TAIL_ETA_SUBGAMMA = 8,
  RADE_TAIL_GAMMA_BENNETT = 9,
  RADE_TAIL_GAMMA_SUBGAMMA = 10,
  RADE_TAIL_SD_BOUSQUET = 11,
  RADE_TAIL_SD_SB_POS = 12,
  RADE_TAIL_SD_SB_NEG = 13
} rade_tail_kind;

/* Fields a kind does not use may be left NaN (counts: 0). */
typedef struct rade_tail_params {
  double z, z_hat, nu_hat, wvar_hat;
  double era, rc, wvar, eta, gamma, tau, ez, c;
  size_t n, m;
} rade_tail_params;

rade_status rade_tail_params_init(rade_tail_params* params); /* set all fields to unset */
rade_status rade_tail_probability(rade_tail_kind kind, double epsilon,
                                  const rade_tail_params* params, double* out);

/* ---- self-bounding verification ------------------------------------------ */

/* kind: "mcera" (uses n, weak; mu ignored), or "sd-pos", "sd-neg", "wvar",
 * "eta", "gamma" (use mu and m; mu NULL means uniform). Exhaustive within
 * the capacity cut-offs, sampled beyond them. passed_out is 1 when every
 * checked configuration satisfied the property. */
rade_status rade_verify_json(const char* kind, const rade_matrix* domain, const double* mu,
                             size_t m, size_t n, int weak, uint64_t seed, uint64_t samples,
                             int threads, char** json_out, int* passed_out);

/* ---- coverage experiments and sweeps ------------------------------------- */

/* config example:
 * {"bound":"era-bd","trials":10000,"delta":0.05,"seed":7,
 *  "generator":{"kind":"binary","domain_size":4,"k":4,"m":8,"n":2}} */
rade_status rade_coverage_json(const char* config_json, char** json_out);

/* config example: {"figure":1,"n":10,"m":1000000,"delta":0.05} */
rade_status rade_sweep_csv(const char* config_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* RADEBOUNDS_H */
