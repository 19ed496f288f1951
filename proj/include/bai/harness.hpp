#pragma once

// Deterministic Monte Carlo engine. Replication r of grid cell g draws from
// Rng(replication_seed(master_seed, g, r)); per-cell statistics are reduced
// from integer tallies, so results do not depend on the number of workers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bai/fc_algos.hpp"
#include "bai/instance.hpp"

namespace bai {

enum class AlgorithmKind { Elimination, AlphaElimination, Sglrt, SprtOracle, Static };
enum class AllocationKind { Uniform, Optimal };

const char* to_string(AlgorithmKind kind) noexcept;
const char* to_string(AllocationKind kind) noexcept;
bool is_fixed_confidence(AlgorithmKind kind) noexcept;

struct AlgorithmSpec {
    AlgorithmKind kind = AlgorithmKind::Elimination;
    RateKind rate = RateKind::RobbinsLogT;
    std::optional<double> alpha;           // alpha-elimination; empty = sigma1/(sigma1+sigma2)
    std::optional<std::uint64_t> tau_max;  // empty = default_tau_max
    SprtStatistic sprt_statistic = SprtStatistic::ExactLlr;
    AllocationKind allocation = AllocationKind::Uniform;
};

struct ExperimentConfig {
    std::string instance_id;
    BanditInstance instance;
    AlgorithmSpec algorithm;
    std::vector<double> deltas;          // fixed-confidence grid
    std::vector<std::uint64_t> budgets;  // fixed-budget grid
    std::uint64_t replications = 10000;
    std::uint64_t master_seed = 0;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct ExperimentRecord {
    std::string algorithm;
    std::string instance;
    std::string family;
    std::string param;
    double grid_value = 0.0;  // delta or budget
    std::uint64_t replications = 0;
    double error_rate = 0.0;
    double error_ci_halfwidth = 0.0;  // Wilson score interval, 95%
    double mean_tau = 0.0;
    double std_tau = 0.0;  // sample standard deviation, 0 when N = 1
    std::uint64_t exhausted_count = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

/// Throws Config (or Domain) before any replication runs.
void validate(const ExperimentConfig& cfg);

std::vector<ExperimentRecord> run_fc_experiment(const ExperimentConfig& cfg);
std::vector<ExperimentRecord> run_fb_experiment(const ExperimentConfig& cfg);
/// Dispatches on the algorithm kind.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// Avalanche mix of (master, grid index, replication); injective in the
/// replication index for a fixed (master, grid index).
std::uint64_t replication_seed(std::uint64_t master, std::uint64_t grid_index,
                               std::uint64_t replication) noexcept;

double wilson_halfwidth(std::uint64_t errors, std::uint64_t n);

std::string family_name(const BanditInstance& nu);
std::string param_name(const AlgorithmSpec& spec);

/// Riemann zeta for u > 1: partial sum plus an Euler-Maclaurin tail.
double zeta(double u);

/// Upper bound on P(exists t: S_t > sqrt(2 sigma^2 t (x + beta log log(e t))))
/// for sigma-sub-Gaussian increments, valid for beta > 1, x >= 8/(e-1)^2.
double deviation_bound(double x, double beta);

struct LilCrossing {
    std::uint64_t crossings = 0;
    std::uint64_t paths = 0;
    double frequency = 0.0;
    double standard_error = 0.0;  // sqrt(f (1 - f) / N)
};

/// Fraction of N(0, sigma^2)-increment paths crossing the boundary above for
/// some t <= horizon. A lower estimate of the infinite-horizon probability;
/// path p uses Rng(replication_seed(master_seed, 0, p)), so horizons nest.
LilCrossing empirical_lil_crossing(double sigma, double x, double beta, std::uint64_t horizon,
                                   std::uint64_t paths, std::uint64_t master_seed,
                                   unsigned workers = 0);

unsigned resolve_workers(unsigned requested) noexcept;

}  // namespace bai
