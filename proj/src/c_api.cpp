#include "bai/bai.h"

#include <new>
#include <string>
#include <vector>

#include "bai/bounds.hpp"
#include "bai/complexity.hpp"
#include "bai/error.hpp"
#include "bai/fb_algos.hpp"
#include "bai/harness.hpp"

struct bai_instance {
    bai::BanditInstance nu;
};

struct bai_experiment {
    bai::ExperimentConfig cfg;
};

struct bai_records {
    std::vector<bai::ExperimentRecord> rows;
};

namespace {

thread_local std::string last_error;

bai_status to_status(bai::ErrorCode code) {
    switch (code) {
    case bai::ErrorCode::Domain: return BAI_ERR_DOMAIN;
    case bai::ErrorCode::FamilyMismatch: return BAI_ERR_FAMILY_MISMATCH;
    case bai::ErrorCode::DegenerateInstance: return BAI_ERR_DEGENERATE;
    case bai::ErrorCode::Solver: return BAI_ERR_SOLVER;
    case bai::ErrorCode::Config: return BAI_ERR_CONFIG;
    }
    return BAI_ERR_INTERNAL;
}

template <class Fn>
bai_status guard(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return BAI_OK;
    } catch (const bai::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return BAI_ERR_INTERNAL;
}

bai_status null_argument() {
    last_error = "null argument";
    return BAI_ERR_NULL_ARGUMENT;
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
    return ((ptrs == nullptr) || ...);
}

#define BAI_REQUIRE(...) \
    do { \
        if (any_null(__VA_ARGS__)) return null_argument(); \
    } while (0)

bai::RateKind to_rate(bai_rate r) {
    switch (r) {
    case BAI_RATE_ROBBINS: return bai::RateKind::RobbinsLogT;
    case BAI_RATE_ITERATED_LOG: return bai::RateKind::IteratedLog;
    case BAI_RATE_ALPHA_ELIM: return bai::RateKind::AlphaElim;
    case BAI_RATE_SGLRT: return bai::RateKind::Sglrt;
    case BAI_RATE_LOGLOG: return bai::RateKind::ConjecturedLogLog;
    case BAI_RATE_PLAIN: return bai::RateKind::PlainLog;
    }
    bai::fail(bai::ErrorCode::Config, "unknown exploration rate");
}

bai::AlgorithmKind to_algorithm(bai_algorithm a) {
    switch (a) {
    case BAI_ALG_ELIMINATION: return bai::AlgorithmKind::Elimination;
    case BAI_ALG_ALPHA_ELIMINATION: return bai::AlgorithmKind::AlphaElimination;
    case BAI_ALG_SGLRT: return bai::AlgorithmKind::Sglrt;
    case BAI_ALG_SPRT: return bai::AlgorithmKind::SprtOracle;
    case BAI_ALG_STATIC: return bai::AlgorithmKind::Static;
    }
    bai::fail(bai::ErrorCode::Config, "unknown algorithm");
}

bai::AllocationKind to_allocation(bai_allocation a) {
    if (a == BAI_ALLOC_UNIFORM) return bai::AllocationKind::Uniform;
    if (a == BAI_ALLOC_OPTIMAL) return bai::AllocationKind::Optimal;
    bai::fail(bai::ErrorCode::Config, "unknown allocation");
}

}  // namespace

extern "C" {

const char* bai_version(void) { return "1.0.0"; }

const char* bai_status_string(bai_status status) {
    switch (status) {
    case BAI_OK: return "ok";
    case BAI_ERR_DOMAIN: return "domain error";
    case BAI_ERR_FAMILY_MISMATCH: return "family mismatch";
    case BAI_ERR_DEGENERATE: return "degenerate instance";
    case BAI_ERR_SOLVER: return "solver error";
    case BAI_ERR_CONFIG: return "config error";
    case BAI_ERR_NULL_ARGUMENT: return "null argument";
    case BAI_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* bai_last_error(void) { return last_error.c_str(); }

bai_status bai_instance_create(bai_family family, const double* means, const double* variances,
                               size_t k, size_t m, bai_instance** out) {
    BAI_REQUIRE(means, out);
    if (family == BAI_FAMILY_GAUSSIAN && !variances) return null_argument();
    return guard([&] {
        std::vector<bai::ArmDistribution> arms;
        arms.reserve(k);
        for (size_t i = 0; i < k; ++i) {
            switch (family) {
            case BAI_FAMILY_GAUSSIAN:
                arms.push_back(bai::ArmDistribution::gaussian(means[i], variances[i]));
                break;
            case BAI_FAMILY_BERNOULLI:
                arms.push_back(bai::ArmDistribution::bernoulli(means[i]));
                break;
            case BAI_FAMILY_EXPONENTIAL: {
                const auto fam = bai::ExpFamily::exponential();
                arms.push_back(bai::ArmDistribution::exp_family(fam, bai::mean_to_nat(fam, means[i])));
                break;
            }
            default: bai::fail(bai::ErrorCode::Config, "unknown family");
            }
        }
        *out = new bai_instance{bai::BanditInstance(std::move(arms), m)};
    });
}

void bai_instance_destroy(bai_instance* instance) { delete instance; }

size_t bai_instance_size(const bai_instance* instance) { return instance ? instance->nu.size() : 0; }

bai_status bai_instance_mean(const bai_instance* instance, size_t arm, double* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] {
        if (arm >= instance->nu.size()) bai::fail(bai::ErrorCode::Domain, "arm index out of range");
        *out = instance->nu.mean(arm);
    });
}

bai_status bai_instance_best_arm(const bai_instance* instance, size_t* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] { *out = instance->nu.best_arm(); });
}

bai_status bai_complexity_report(const bai_instance* instance, bai_complexity* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] {
        const auto r = bai::complexity_report(instance->nu);
        *out = {r.c_star_fc,           r.i_star_fc,           r.c_star_fb,    r.i_star_fb,
                r.theta_star_reversed, r.theta_star_chernoff, r.kappa_c_lower, r.kappa_b};
    });
}

bai_status bai_instance_optimal_alpha(const bai_instance* instance, bai_optimal_alpha* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] {
        const auto p = bai::as_exp_family_pair(instance->nu);
        const auto a = bai::optimal_alpha(p.family, p.theta1, p.theta2);
        *out = {a.alpha, a.value, a.crossing};
    });
}

bai_status bai_gap_profile_compute(const bai_instance* instance, bai_gap_profile* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] {
        const auto g = bai::gap_profile(instance->nu);
        bai_gap_profile p{};
        p.h = g.h;
        p.h2 = g.h2;
        p.has_gaussian = g.h_gauss.has_value();
        p.has_h_prime = g.h_prime.has_value();
        p.h_prime = g.h_prime.value_or(0.0);
        p.h_plus = g.h_plus.value_or(0.0);
        p.h_minus = g.h_minus.value_or(0.0);
        p.h_gauss = g.h_gauss.value_or(0.0);
        p.h_tilde = g.h_tilde.value_or(0.0);
        *out = p;
    });
}

bai_status bai_fc_lower_bound(const bai_instance* instance, double delta, double* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] { *out = bai::fc_lower_bound_general(instance->nu, delta); });
}

bai_status bai_fc_lower_bound_eps(const bai_instance* instance, double epsilon, double delta,
                                  double* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] { *out = bai::fc_lower_bound_eps_relaxed(instance->nu, epsilon, delta); });
}

bai_status bai_fc_two_armed_bounds(const bai_instance* instance, double delta, double* general,
                                   double* uniform) {
    BAI_REQUIRE(instance, general, uniform);
    return guard([&] {
        const auto b = bai::fc_two_armed_bounds(instance->nu, delta);
        *general = b.general;
        *uniform = b.uniform;
    });
}

bai_status bai_fb_error_lower_bounds(const bai_instance* instance, uint64_t budget,
                                     double* general, int* has_m1, double* m1) {
    BAI_REQUIRE(instance, general, has_m1, m1);
    return guard([&] {
        const auto b = bai::fb_error_lower_bounds(bai::gap_profile(instance->nu), budget);
        *general = b.general;
        *has_m1 = b.m1.has_value();
        *m1 = b.m1.value_or(0.0);
    });
}

bai_status bai_fb_modified_instance(const bai_instance* instance, size_t a, long long b,
                                    bai_instance** out) {
    BAI_REQUIRE(instance, out);
    return guard([&] {
        std::optional<std::size_t> second;
        if (b >= 0) second = static_cast<std::size_t>(b);
        *out = new bai_instance{bai::fb_modified_instance(instance->nu, a, second)};
    });
}

bai_status bai_rate_parse(const char* name, bai_rate* out) {
    BAI_REQUIRE(name, out);
    const auto r = bai::parse_rate(name);
    if (!r) {
        last_error = std::string("unknown exploration rate '") + name + "'";
        return BAI_ERR_CONFIG;
    }
    *out = static_cast<bai_rate>(*r);
    return BAI_OK;
}

const char* bai_rate_name(bai_rate rate) {
    try {
        return bai::to_string(to_rate(rate));
    } catch (...) {
        return "unknown";
    }
}

bai_status bai_rate_eval(bai_rate rate, uint64_t t, double delta, double* out) {
    BAI_REQUIRE(out);
    return guard([&] { *out = bai::eval_rate(to_rate(rate), t, delta); });
}

const char* bai_rate_warning(bai_rate rate, double delta) {
    thread_local std::string warning;
    try {
        const auto w = bai::rate_warning(to_rate(rate), delta);
        if (!w) return nullptr;
        warning = *w;
        return warning.c_str();
    } catch (...) {
        return nullptr;
    }
}

bai_status bai_allocation_compute(const bai_instance* instance, bai_allocation allocation,
                                  uint64_t budget, uint64_t* n1, uint64_t* n2) {
    BAI_REQUIRE(instance, n1, n2);
    return guard([&] {
        const auto a = to_allocation(allocation) == bai::AllocationKind::Uniform
                           ? bai::uniform_allocation(budget)
                           : bai::optimal_allocation(instance->nu, budget);
        *n1 = a.n1;
        *n2 = a.n2;
    });
}

bai_status bai_allocation_error_bound(const bai_instance* instance, uint64_t n1, uint64_t n2,
                                      double* out) {
    BAI_REQUIRE(instance, out);
    return guard([&] { *out = bai::theoretical_error_bound(instance->nu, {n1, n2}); });
}

bai_status bai_experiment_create(const bai_instance* instance, const char* instance_id,
                                 bai_algorithm algorithm, bai_experiment** out) {
    BAI_REQUIRE(instance, instance_id, out);
    return guard([&] {
        bai::AlgorithmSpec spec;
        spec.kind = to_algorithm(algorithm);
        if (spec.kind == bai::AlgorithmKind::AlphaElimination) spec.rate = bai::RateKind::AlphaElim;
        if (spec.kind == bai::AlgorithmKind::Sglrt) spec.rate = bai::RateKind::Sglrt;
        *out = new bai_experiment{bai::ExperimentConfig{instance_id, instance->nu, spec, {}, {}}};
    });
}

void bai_experiment_destroy(bai_experiment* experiment) { delete experiment; }

bai_status bai_experiment_set_rate(bai_experiment* experiment, bai_rate rate) {
    BAI_REQUIRE(experiment);
    return guard([&] { experiment->cfg.algorithm.rate = to_rate(rate); });
}

bai_status bai_experiment_set_alpha(bai_experiment* experiment, double alpha) {
    BAI_REQUIRE(experiment);
    experiment->cfg.algorithm.alpha = alpha;
    return BAI_OK;
}

bai_status bai_experiment_set_tau_max(bai_experiment* experiment, uint64_t tau_max) {
    BAI_REQUIRE(experiment);
    experiment->cfg.algorithm.tau_max = tau_max;
    return BAI_OK;
}

bai_status bai_experiment_set_sprt_statistic(bai_experiment* experiment,
                                             bai_sprt_statistic statistic) {
    BAI_REQUIRE(experiment);
    if (statistic != BAI_SPRT_EXACT_LLR && statistic != BAI_SPRT_UNSCALED) {
        last_error = "unknown SPRT statistic";
        return BAI_ERR_CONFIG;
    }
    experiment->cfg.algorithm.sprt_statistic = statistic == BAI_SPRT_EXACT_LLR
                                                   ? bai::SprtStatistic::ExactLlr
                                                   : bai::SprtStatistic::Unscaled;
    return BAI_OK;
}

bai_status bai_experiment_set_allocation(bai_experiment* experiment, bai_allocation allocation) {
    BAI_REQUIRE(experiment);
    return guard([&] { experiment->cfg.algorithm.allocation = to_allocation(allocation); });
}

bai_status bai_experiment_set_deltas(bai_experiment* experiment, const double* deltas, size_t n) {
    BAI_REQUIRE(experiment);
    if (n > 0 && !deltas) return null_argument();
    return guard([&] { experiment->cfg.deltas.assign(deltas, deltas + n); });
}

bai_status bai_experiment_set_budgets(bai_experiment* experiment, const uint64_t* budgets,
                                      size_t n) {
    BAI_REQUIRE(experiment);
    if (n > 0 && !budgets) return null_argument();
    return guard([&] { experiment->cfg.budgets.assign(budgets, budgets + n); });
}

bai_status bai_experiment_set_replications(bai_experiment* experiment, uint64_t n) {
    BAI_REQUIRE(experiment);
    experiment->cfg.replications = n;
    return BAI_OK;
}

bai_status bai_experiment_set_seed(bai_experiment* experiment, uint64_t seed) {
    BAI_REQUIRE(experiment);
    experiment->cfg.master_seed = seed;
    return BAI_OK;
}

bai_status bai_experiment_set_workers(bai_experiment* experiment, unsigned workers) {
    BAI_REQUIRE(experiment);
    experiment->cfg.workers = workers;
    return BAI_OK;
}

bai_status bai_experiment_validate(const bai_experiment* experiment) {
    BAI_REQUIRE(experiment);
    return guard([&] { bai::validate(experiment->cfg); });
}

bai_status bai_experiment_run(const bai_experiment* experiment, bai_records** out) {
    BAI_REQUIRE(experiment, out);
    return guard([&] { *out = new bai_records{bai::run_experiment(experiment->cfg)}; });
}

size_t bai_records_size(const bai_records* records) { return records ? records->rows.size() : 0; }

bai_status bai_records_get(const bai_records* records, size_t i, bai_record* out) {
    BAI_REQUIRE(records, out);
    if (i >= records->rows.size()) {
        last_error = "record index out of range";
        return BAI_ERR_DOMAIN;
    }
    const auto& r = records->rows[i];
    *out = {r.algorithm.c_str(), r.instance.c_str(), r.family.c_str(), r.param.c_str(),
            r.grid_value,        r.replications,     r.error_rate,     r.error_ci_halfwidth,
            r.mean_tau,          r.std_tau,          r.exhausted_count, r.seed};
    return BAI_OK;
}

void bai_records_destroy(bai_records* records) { delete records; }

bai_status bai_zeta(double u, double* out) {
    BAI_REQUIRE(out);
    return guard([&] { *out = bai::zeta(u); });
}

bai_status bai_deviation_bound(double x, double beta, double* out) {
    BAI_REQUIRE(out);
    return guard([&] { *out = bai::deviation_bound(x, beta); });
}

bai_status bai_lil_crossing_run(double sigma, double x, double beta, uint64_t horizon,
                                uint64_t paths, uint64_t seed, unsigned workers,
                                bai_lil_crossing* out) {
    BAI_REQUIRE(out);
    return guard([&] {
        const auto c = bai::empirical_lil_crossing(sigma, x, beta, horizon, paths, seed, workers);
        *out = {c.crossings, c.paths, c.frequency, c.standard_error};
    });
}

}  // extern "C"
