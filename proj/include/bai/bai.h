#ifndef BAI_BAI_H
#define BAI_BAI_H

/* C interface to the best-arm identification library. Every function
 * returns a bai_status; on failure bai_last_error() describes the problem
 * for the calling thread. Handles are opaque and owned by the caller. */

#include <stddef.h>
#include <stdint.h>

#if defined(BAI_BUILDING)
#define BAI_API __attribute__((visibility("default")))
#else
#define BAI_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bai_status {
    BAI_OK = 0,
    BAI_ERR_DOMAIN = 1,
    BAI_ERR_FAMILY_MISMATCH = 2,
    BAI_ERR_DEGENERATE = 3,
    BAI_ERR_SOLVER = 4,
    BAI_ERR_CONFIG = 5,
    BAI_ERR_NULL_ARGUMENT = 6,
    BAI_ERR_INTERNAL = 7
} bai_status;

typedef enum bai_family {
    BAI_FAMILY_GAUSSIAN = 0,
    BAI_FAMILY_BERNOULLI = 1,
    BAI_FAMILY_EXPONENTIAL = 2
} bai_family;

typedef enum bai_rate {
    BAI_RATE_ROBBINS = 0,
    BAI_RATE_ITERATED_LOG = 1,
    BAI_RATE_ALPHA_ELIM = 2,
    BAI_RATE_SGLRT = 3,
    BAI_RATE_LOGLOG = 4,
    BAI_RATE_PLAIN = 5
} bai_rate;

typedef enum bai_algorithm {
    BAI_ALG_ELIMINATION = 0,
    BAI_ALG_ALPHA_ELIMINATION = 1,
    BAI_ALG_SGLRT = 2,
    BAI_ALG_SPRT = 3,
    BAI_ALG_STATIC = 4
} bai_algorithm;

typedef enum bai_allocation { BAI_ALLOC_UNIFORM = 0, BAI_ALLOC_OPTIMAL = 1 } bai_allocation;

typedef enum bai_sprt_statistic { BAI_SPRT_EXACT_LLR = 0, BAI_SPRT_UNSCALED = 1 } bai_sprt_statistic;

typedef struct bai_instance bai_instance;
typedef struct bai_experiment bai_experiment;
typedef struct bai_records bai_records;

BAI_API const char* bai_version(void);
BAI_API const char* bai_status_string(bai_status status);
/* Message of the last failed call on this thread; "" if none. */
BAI_API const char* bai_last_error(void);

/* ---- instances ---- */

/* `variances` is required for gaussian arms and ignored otherwise. Arms are
 * 0-indexed in the order given; `m` is the size of the best set. */
BAI_API bai_status bai_instance_create(bai_family family, const double* means,
                                       const double* variances, size_t k, size_t m,
                                       bai_instance** out);
BAI_API void bai_instance_destroy(bai_instance* instance);
BAI_API size_t bai_instance_size(const bai_instance* instance);
BAI_API bai_status bai_instance_mean(const bai_instance* instance, size_t arm, double* out);
BAI_API bai_status bai_instance_best_arm(const bai_instance* instance, size_t* out);

/* ---- complexities (two arms) ---- */

typedef struct bai_complexity {
    double c_star_fc;
    double i_star_fc;
    double c_star_fb;
    double i_star_fb;
    double theta_star_reversed;
    double theta_star_chernoff;
    double kappa_c_lower;
    double kappa_b;
} bai_complexity;

BAI_API bai_status bai_complexity_report(const bai_instance* instance, bai_complexity* out);

typedef struct bai_optimal_alpha {
    double alpha;
    double value;
    double crossing;
} bai_optimal_alpha;

/* Binary or exponential instances with two arms. */
BAI_API bai_status bai_instance_optimal_alpha(const bai_instance* instance, bai_optimal_alpha* out);

/* ---- lower bounds ---- */

typedef struct bai_gap_profile {
    double h;
    double h2;
    int has_gaussian; /* the fields below are set only when nonzero */
    int has_h_prime;
    double h_prime;
    double h_plus;
    double h_minus;
    double h_gauss;
    double h_tilde;
} bai_gap_profile;

BAI_API bai_status bai_gap_profile_compute(const bai_instance* instance, bai_gap_profile* out);
BAI_API bai_status bai_fc_lower_bound(const bai_instance* instance, double delta, double* out);
BAI_API bai_status bai_fc_lower_bound_eps(const bai_instance* instance, double epsilon,
                                          double delta, double* out);
/* Two-armed bounds log(1/(2 delta)) / c_* and log(1/(2 delta)) / I_*. */
BAI_API bai_status bai_fc_two_armed_bounds(const bai_instance* instance, double delta,
                                           double* general, double* uniform);
/* has_m1 is set to 1 when the single-best-arm bound applies. */
BAI_API bai_status bai_fb_error_lower_bounds(const bai_instance* instance, uint64_t budget,
                                             double* general, int* has_m1, double* m1);
/* b < 0 selects the single-arm modification. */
BAI_API bai_status bai_fb_modified_instance(const bai_instance* instance, size_t a, long long b,
                                            bai_instance** out);

/* ---- exploration rates ---- */

BAI_API bai_status bai_rate_parse(const char* name, bai_rate* out);
BAI_API const char* bai_rate_name(bai_rate rate);
BAI_API bai_status bai_rate_eval(bai_rate rate, uint64_t t, double delta, double* out);
/* NULL when the rate is proven delta-PAC at this delta. */
BAI_API const char* bai_rate_warning(bai_rate rate, double delta);

/* ---- fixed-budget allocations ---- */

BAI_API bai_status bai_allocation_compute(const bai_instance* instance, bai_allocation allocation,
                                          uint64_t budget, uint64_t* n1, uint64_t* n2);
BAI_API bai_status bai_allocation_error_bound(const bai_instance* instance, uint64_t n1,
                                              uint64_t n2, double* out);

/* ---- experiments ---- */

BAI_API bai_status bai_experiment_create(const bai_instance* instance, const char* instance_id,
                                         bai_algorithm algorithm, bai_experiment** out);
BAI_API void bai_experiment_destroy(bai_experiment* experiment);
BAI_API bai_status bai_experiment_set_rate(bai_experiment* experiment, bai_rate rate);
BAI_API bai_status bai_experiment_set_alpha(bai_experiment* experiment, double alpha);
BAI_API bai_status bai_experiment_set_tau_max(bai_experiment* experiment, uint64_t tau_max);
BAI_API bai_status bai_experiment_set_sprt_statistic(bai_experiment* experiment,
                                                     bai_sprt_statistic statistic);
BAI_API bai_status bai_experiment_set_allocation(bai_experiment* experiment,
                                                 bai_allocation allocation);
BAI_API bai_status bai_experiment_set_deltas(bai_experiment* experiment, const double* deltas,
                                             size_t n);
BAI_API bai_status bai_experiment_set_budgets(bai_experiment* experiment, const uint64_t* budgets,
                                              size_t n);
BAI_API bai_status bai_experiment_set_replications(bai_experiment* experiment, uint64_t n);
BAI_API bai_status bai_experiment_set_seed(bai_experiment* experiment, uint64_t seed);
/* 0 = hardware concurrency. */
BAI_API bai_status bai_experiment_set_workers(bai_experiment* experiment, unsigned workers);
BAI_API bai_status bai_experiment_validate(const bai_experiment* experiment);
BAI_API bai_status bai_experiment_run(const bai_experiment* experiment, bai_records** out);

/* Strings stay valid until the records handle is destroyed. */
typedef struct bai_record {
    const char* algorithm;
    const char* instance;
    const char* family;
    const char* param;
    double grid_value;
    uint64_t replications;
    double error_rate;
    double error_ci_halfwidth;
    double mean_tau;
    double std_tau;
    uint64_t exhausted_count;
    uint64_t seed;
} bai_record;

BAI_API size_t bai_records_size(const bai_records* records);
BAI_API bai_status bai_records_get(const bai_records* records, size_t i, bai_record* out);
BAI_API void bai_records_destroy(bai_records* records);

/* ---- deviation bound ---- */

BAI_API bai_status bai_zeta(double u, double* out);
BAI_API bai_status bai_deviation_bound(double x, double beta, double* out);

typedef struct bai_lil_crossing {
    uint64_t crossings;
    uint64_t paths;
    double frequency;
    double standard_error;
} bai_lil_crossing;

BAI_API bai_status bai_lil_crossing_run(double sigma, double x, double beta, uint64_t horizon,
                                        uint64_t paths, uint64_t seed, unsigned workers,
                                        bai_lil_crossing* out);

#ifdef __cplusplus
}
#endif

#endif
