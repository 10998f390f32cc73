/* C interface to the nctsplit library. All handles are opaque; every
 * function that can fail returns an nct_status and leaves a thread-local
 * message readable through nct_last_error(). */
#ifndef NCT_NCT_H
#define NCT_NCT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NCT_API __declspec(dllexport)
#else
#define NCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nct_status {
  NCT_OK = 0,
  NCT_ERR_ARGUMENT = 1,  /* invalid input or configuration */
  NCT_ERR_PRECISION = 2, /* enclosure of Omega too wide */
  NCT_ERR_DEPTH = 3,     /* more certified convergents needed */
  NCT_ERR_INTERNAL = 4
} nct_status;

NCT_API const char* nct_version(void);
NCT_API const char* nct_last_error(void);
/* Convergent depth named by the last NCT_ERR_DEPTH, else 0. */
NCT_API int nct_last_required_depth(void);

/* ---- frequency ratio ---- */

typedef enum nct_omega_kind {
  NCT_OMEGA_SHALLIT = 0,
  NCT_OMEGA_GOLDEN = 1,
  NCT_OMEGA_QUOTIENTS = 2,
  NCT_OMEGA_PERIODIC = 3,
  NCT_OMEGA_ENCLOSURE = 4
} nct_omega_kind;

typedef struct nct_omega_spec {
  nct_omega_kind kind;
  int shallit_order;           /* K, SHALLIT only; 0 selects the default */
  const int64_t* quotients;    /* QUOTIENTS */
  size_t n_quotients;
  const int64_t* preperiod;    /* PERIODIC, may be empty */
  size_t n_preperiod;
  const int64_t* period;       /* PERIODIC */
  size_t n_period;
  const char* lo;              /* ENCLOSURE: "p/q", integer or decimal */
  const char* hi;
} nct_omega_spec;

typedef struct nct_omega nct_omega;

NCT_API nct_status nct_omega_create(const nct_omega_spec* spec, int depth, nct_omega** out);
NCT_API void nct_omega_destroy(nct_omega* omega);

NCT_API int nct_omega_certified_depth(const nct_omega* omega);
NCT_API double nct_omega_midpoint(const nct_omega* omega);
/* a_n for 1 <= n <= certified depth. */
NCT_API nct_status nct_omega_quotient(const nct_omega* omega, int n, int64_t* out);

/* Big integers are written as decimal strings. When `size` is too small the
 * call fails with NCT_ERR_ARGUMENT and *needed holds the required size. */
NCT_API nct_status nct_omega_convergent(const nct_omega* omega, int n, char* p, char* q,
                                        size_t size, size_t* needed);
/* nu_{q_n} = q_n ||q_n Omega|| and gamma_{v(n)}, 1 <= n <= certified depth. */
NCT_API nct_status nct_omega_nu(const nct_omega* omega, int n, double* out);
NCT_API nct_status nct_omega_gamma_convergent(const nct_omega* omega, int n, double* out);
/* Enclosure endpoints as "p/q" strings, same buffer convention. */
NCT_API nct_status nct_omega_enclosure(const nct_omega* omega, char* lo, char* hi, size_t size,
                                       size_t* needed);

/* ---- splitting model ---- */

typedef enum nct_phase_policy { NCT_PHASES_ZERO = 0, NCT_PHASES_RANDOM = 1 } nct_phase_policy;
typedef enum nct_search_policy {
  NCT_SEARCH_REDUCTION = 0,
  NCT_SEARCH_CUTOFF = 1
} nct_search_policy;

typedef struct nct_model_params {
  double rho;
  double p_exponent;
  nct_phase_policy phases;
  uint64_t seed;
  int depth;
  int window_first;  /* Diophantine window; 0 selects the upper half */
  int window_last;
  double gamma_star_corruption; /* test hook, 1 = off */
} nct_model_params;

NCT_API void nct_model_params_default(nct_model_params* params);

typedef struct nct_model nct_model;

NCT_API nct_status nct_model_create(const nct_omega_spec* spec, const nct_model_params* params,
                                    nct_model** out);
NCT_API void nct_model_destroy(nct_model* model);

typedef struct nct_limits {
  double nu_star;
  double nu_limsup;
  double gamma_star;
  double E;
  int64_t M;
  int window_first;
  int window_last;
  int argmin_n;
  int argmax_n;
} nct_limits;

typedef struct nct_constants {
  double gamma_star;
  double nu_star;
  double E;
  int64_t M;
  double rho;
  double C0;
  double D0;
  double B;
  double C;
} nct_constants;

NCT_API nct_status nct_model_limits(const nct_model* model, nct_limits* out);
NCT_API nct_status nct_model_constants(const nct_model* model, nct_constants* out);
NCT_API int nct_model_depth(const nct_model* model);
NCT_API nct_status nct_model_eps_convergent(const nct_model* model, int n, double* out);
NCT_API nct_status nct_model_default_window(const nct_model* model, double* lo, double* hi);
NCT_API const nct_omega* nct_model_omega(const nct_model* model);

typedef struct nct_dominance {
  double eps;
  int64_t S[2];
  double h1;
  int64_t runner_up[2];
  double h2;
  int has_tie;
  int64_t tie[2];
  int S_is_convergent;
  int convergent_index;
  double spillover;
  double cutoff;
} nct_dominance;

NCT_API nct_status nct_dominance_at(const nct_model* model, double eps, nct_search_policy policy,
                                    nct_dominance* out);

/* `count` log-spaced points over [lo, hi] written to out[0..count). */
NCT_API nct_status nct_log_grid(double lo, double hi, int count, double* out);

typedef struct nct_scan nct_scan;

typedef struct nct_scan_row {
  nct_dominance dominance;
  double h1_hat;
  double h1_hat_plus;
} nct_scan_row;

typedef struct nct_bnum {
  double value;
  double eps_at;
  int crossovers;
} nct_bnum;

NCT_API nct_status nct_scan_run(const nct_model* model, const double* grid, size_t n,
                                double window_lo, double window_hi, nct_search_policy policy,
                                nct_scan** out);
NCT_API void nct_scan_destroy(nct_scan* scan);
NCT_API size_t nct_scan_rows(const nct_scan* scan);
NCT_API nct_status nct_scan_row_at(const nct_scan* scan, size_t i, nct_scan_row* out);
/* g_hat_n and g_hat_plus_n for n = 1..depth; each array holds `depth` values. */
NCT_API nct_status nct_scan_curves(const nct_scan* scan, size_t i, double* g_hat,
                                   double* g_hat_plus, size_t depth);
NCT_API nct_status nct_scan_bnum(const nct_scan* scan, nct_bnum* out);

typedef struct nct_lower_bound {
  double eps;
  double mu;
  double h1;
  int64_t S[2];
  double log10_estimate;
  double log10_floor;
  double log10_dominant;
  double estimate_mantissa;
  long estimate_exponent;
  double floor_mantissa;
  long floor_exponent;
} nct_lower_bound;

NCT_API nct_status nct_lower_bound_at(const nct_model* model, double eps, nct_lower_bound* out);

typedef struct nct_second_sum {
  int64_t S[2];
  double truncated_rel;
  double tail_rel;
  double ratio;
  double log10_sum;
  size_t terms;
} nct_second_sum;

/* Truncation to beta_k <= beta_S + margin. */
NCT_API nct_status nct_second_sum_at(const nct_model* model, double eps, double margin,
                                     nct_second_sum* out);

typedef struct nct_field_max {
  double max_rel;         /* max |M|_1 / L_S on the grid */
  double dominant_rel;    /* |S|_1 */
  double log10_max;       /* log10 of max |M|_1 */
  int i;
  int j;
} nct_field_max;

NCT_API nct_status nct_field_max_at(const nct_model* model, double eps, int grid_n,
                                    nct_field_max* out);

/* ---- verification ---- */

typedef struct nct_check {
  const char* name;
  int passed;
  double observed;
  double expected;
  double tolerance;
  const char* detail;
} nct_check;

typedef void (*nct_check_callback)(const nct_check* check, void* user);

typedef struct nct_verify_options {
  int64_t lattice_K_max;
  int lattice_points;
  int quadrature_max_l1;
  int64_t nu_sweep_Q;
  int sandwich_points;
} nct_verify_options;

NCT_API void nct_verify_options_default(nct_verify_options* options);
/* Runs every applicable oracle check; *failures counts the failed ones. */
NCT_API nct_status nct_verify(const nct_model* model, const nct_verify_options* options,
                              nct_check_callback callback, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif
