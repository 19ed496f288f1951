#include "bai/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "bai/error.hpp"
#include "bai/fb_algos.hpp"

namespace bai {
namespace {

constexpr double kWilsonZ = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Tally {
    std::uint64_t n = 0;
    std::uint64_t errors = 0;
    std::uint64_t exhausted = 0;
    std::uint64_t sum_tau = 0;
    unsigned __int128 sum_tau2 = 0;

    void add(const RunOutcome& r) {
        ++n;
        errors += r.correct ? 0 : 1;
        exhausted += r.exhausted ? 1 : 0;
        sum_tau += r.tau;
        sum_tau2 += static_cast<unsigned __int128>(r.tau) * r.tau;
    }
    void merge(const Tally& o) {
        n += o.n;
        errors += o.errors;
        exhausted += o.exhausted;
        sum_tau += o.sum_tau;
        sum_tau2 += o.sum_tau2;
    }
};

// Runs fn(r) for r in [0, n) on up to `workers` threads; fn must be safe to
// call concurrently for distinct r. Chunks are contiguous and merged with
// integer additions, so the result is independent of the split.
template <class Acc, class Fn>
Acc parallel_reduce(std::uint64_t n, unsigned workers, Fn&& fn) {
    const std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n));
    std::vector<Acc> parts(w);
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&](std::uint64_t chunk) {
        try {
            const std::uint64_t begin = n * chunk / w;
            const std::uint64_t end = n * (chunk + 1) / w;
            for (std::uint64_t r = begin; r < end; ++r) fn(parts[chunk], r);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    if (w == 1) {
        body(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(w);
        for (std::uint64_t c = 0; c < w; ++c) threads.emplace_back(body, c);
    }
    if (error) std::rethrow_exception(error);
    Acc total{};
    for (const auto& p : parts) total.merge(p);
    return total;
}

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::Config, what); }

void require_two_armed(const BanditInstance& nu) {
    if (nu.size() != 2 || nu.m() != 1)
        config_error("experiments run two-armed instances with m = 1");
}

bool binary_arms(const BanditInstance& nu) {
    return nu.kind() == ArmKind::Bernoulli
           || (nu.kind() == ArmKind::ExpFamily
               && std::get<ExpFamilyArm>(nu.arm(0).params()).family.id() == FamilyId::Bernoulli);
}

void validate_delta(const AlgorithmSpec& spec, double delta) {
    try {
        switch (spec.kind) {
        case AlgorithmKind::Elimination:
            if (!(delta > 0.0 && delta <= 0.15)) config_error("elimination requires delta in (0, 0.15]");
            validate_rate(spec.rate, delta);
            break;
        case AlgorithmKind::AlphaElimination:
        case AlgorithmKind::Sglrt:
            validate_rate(spec.rate, delta);
            break;
        case AlgorithmKind::SprtOracle:
            if (!(delta > 0.0 && delta < 1.0)) config_error("delta must lie in (0, 1)");
            break;
        case AlgorithmKind::Static:
            break;
        }
    } catch (const Error& e) {
        config_error(e.what());
    }
}

ExperimentRecord make_record(const ExperimentConfig& cfg, double grid_value, const Tally& t) {
    ExperimentRecord rec;
    rec.algorithm = to_string(cfg.algorithm.kind);
    rec.instance = cfg.instance_id;
    rec.family = family_name(cfg.instance);
    rec.param = param_name(cfg.algorithm);
    rec.grid_value = grid_value;
    rec.replications = t.n;
    rec.error_rate = static_cast<double>(t.errors) / static_cast<double>(t.n);
    rec.error_ci_halfwidth = wilson_halfwidth(t.errors, t.n);
    rec.mean_tau = static_cast<double>(t.sum_tau) / static_cast<double>(t.n);
    if (t.n > 1) {
        const auto n = static_cast<unsigned __int128>(t.n);
        const auto s = static_cast<unsigned __int128>(t.sum_tau);
        const unsigned __int128 num = n * t.sum_tau2 - s * s;
        const long double var = static_cast<long double>(num)
                                / (static_cast<long double>(t.n) * static_cast<long double>(t.n - 1));
        rec.std_tau = static_cast<double>(std::sqrt(var));
    }
    rec.exhausted_count = t.exhausted;
    rec.seed = cfg.master_seed;
    return rec;
}

RunOutcome run_fc_once(const ExperimentConfig& cfg, double delta, std::uint64_t tau_max, Rng& rng) {
    const auto& spec = cfg.algorithm;
    switch (spec.kind) {
    case AlgorithmKind::Elimination:
        return run_elimination(cfg.instance, delta, spec.rate, tau_max, rng);
    case AlgorithmKind::AlphaElimination:
        return run_alpha_elimination(cfg.instance, delta, spec.rate, spec.alpha, tau_max, rng);
    case AlgorithmKind::Sglrt:
        return run_sglrt(cfg.instance, delta, spec.rate, tau_max, rng);
    case AlgorithmKind::SprtOracle:
        return run_sprt_oracle(cfg.instance, delta, tau_max, rng, spec.sprt_statistic);
    case AlgorithmKind::Static:
        break;
    }
    config_error("not a fixed-confidence algorithm");
}

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

const char* to_string(AlgorithmKind kind) noexcept {
    switch (kind) {
    case AlgorithmKind::Elimination: return "elimination";
    case AlgorithmKind::AlphaElimination: return "alpha-elimination";
    case AlgorithmKind::Sglrt: return "sglrt";
    case AlgorithmKind::SprtOracle: return "sprt";
    case AlgorithmKind::Static: return "static";
    }
    return "unknown";
}

const char* to_string(AllocationKind kind) noexcept {
    return kind == AllocationKind::Uniform ? "uniform" : "optimal";
}

bool is_fixed_confidence(AlgorithmKind kind) noexcept { return kind != AlgorithmKind::Static; }

std::string family_name(const BanditInstance& nu) {
    switch (nu.kind()) {
    case ArmKind::Gaussian: return "gaussian";
    case ArmKind::Bernoulli: return "bernoulli";
    case ArmKind::ExpFamily:
        return to_string(std::get<ExpFamilyArm>(nu.arm(0).params()).family.id());
    }
    return "unknown";
}

std::string param_name(const AlgorithmSpec& spec) {
    switch (spec.kind) {
    case AlgorithmKind::Static: return to_string(spec.allocation);
    case AlgorithmKind::SprtOracle: return to_string(spec.sprt_statistic);
    case AlgorithmKind::AlphaElimination:
        if (spec.alpha) return std::string(to_string(spec.rate)) + "@alpha=" + format_number(*spec.alpha);
        return to_string(spec.rate);
    default: return to_string(spec.rate);
    }
}

std::uint64_t replication_seed(std::uint64_t master, std::uint64_t grid_index,
                               std::uint64_t replication) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ grid_index) ^ replication);
}

double wilson_halfwidth(std::uint64_t errors, std::uint64_t n) {
    if (n == 0) return 0.0;
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(errors) / nn;
    const double z2 = kWilsonZ * kWilsonZ;
    return kWilsonZ / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

unsigned resolve_workers(unsigned requested) noexcept {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.replications < 1) config_error("replications must be at least 1");
    require_two_armed(cfg.instance);
    const auto& spec = cfg.algorithm;
    if (is_fixed_confidence(spec.kind)) {
        if (cfg.deltas.empty()) config_error("the delta grid is empty");
        if (spec.tau_max && *spec.tau_max < 2) config_error("tau_max must be at least 2");
        switch (spec.kind) {
        case AlgorithmKind::Elimination:
            if (!binary_arms(cfg.instance) && !cfg.instance.common_gaussian_variance())
                config_error("elimination needs equal-variance gaussian or bernoulli arms");
            break;
        case AlgorithmKind::AlphaElimination:
            if (cfg.instance.kind() != ArmKind::Gaussian)
                config_error("alpha-elimination needs gaussian arms");
            if (spec.alpha && !(*spec.alpha > 0.0 && *spec.alpha < 1.0))
                config_error("alpha must lie in (0, 1)");
            break;
        case AlgorithmKind::Sglrt:
            if (!binary_arms(cfg.instance)) config_error("sglrt needs bernoulli arms");
            break;
        case AlgorithmKind::SprtOracle:
            if (!cfg.instance.common_gaussian_variance())
                config_error("the SPRT oracle needs equal-variance gaussian arms");
            break;
        case AlgorithmKind::Static:
            break;
        }
        for (double d : cfg.deltas) validate_delta(spec, d);
    } else {
        if (cfg.budgets.empty()) config_error("the budget grid is empty");
        for (auto t : cfg.budgets)
            if (t < 2) config_error("budgets must be at least 2");
        if (spec.allocation == AllocationKind::Optimal) {
            try {
                optimal_allocation(cfg.instance, cfg.budgets.front());
            } catch (const Error& e) {
                config_error(e.what());
            }
        }
    }
}

std::vector<ExperimentRecord> run_fc_experiment(const ExperimentConfig& cfg) {
    if (!is_fixed_confidence(cfg.algorithm.kind)) config_error("not a fixed-confidence algorithm");
    validate(cfg);
    const unsigned workers = resolve_workers(cfg.workers);
    std::vector<ExperimentRecord> out;
    out.reserve(cfg.deltas.size());
    for (std::size_t g = 0; g < cfg.deltas.size(); ++g) {
        const double delta = cfg.deltas[g];
        const std::uint64_t tau_max =
            cfg.algorithm.tau_max.value_or(default_tau_max(cfg.instance, delta));
        const auto tally = parallel_reduce<Tally>(
            cfg.replications, workers, [&](Tally& acc, std::uint64_t r) {
                Rng rng(replication_seed(cfg.master_seed, g, r));
                acc.add(run_fc_once(cfg, delta, tau_max, rng));
            });
        out.push_back(make_record(cfg, delta, tally));
    }
    return out;
}

std::vector<ExperimentRecord> run_fb_experiment(const ExperimentConfig& cfg) {
    if (is_fixed_confidence(cfg.algorithm.kind)) config_error("not a fixed-budget algorithm");
    validate(cfg);
    const unsigned workers = resolve_workers(cfg.workers);
    std::vector<ExperimentRecord> out;
    out.reserve(cfg.budgets.size());
    for (std::size_t g = 0; g < cfg.budgets.size(); ++g) {
        const std::uint64_t t = cfg.budgets[g];
        const auto alloc = cfg.algorithm.allocation == AllocationKind::Uniform
                               ? uniform_allocation(t)
                               : optimal_allocation(cfg.instance, t);
        const auto tally = parallel_reduce<Tally>(
            cfg.replications, workers, [&](Tally& acc, std::uint64_t r) {
                Rng rng(replication_seed(cfg.master_seed, g, r));
                acc.add(run_static(cfg.instance, alloc, rng));
            });
        out.push_back(make_record(cfg, static_cast<double>(t), tally));
    }
    return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    return is_fixed_confidence(cfg.algorithm.kind) ? run_fc_experiment(cfg)
                                                   : run_fb_experiment(cfg);
}

double zeta(double u) {
    if (!(u > 1.0)) fail(ErrorCode::Domain, "zeta(u) requires u > 1");
    // Euler-Maclaurin: sum_{k<N} k^-u + N^(1-u)/(u-1) + N^-u/2 + sum_j B_2j/(2j)! (u)_{2j-1} N^(-u-2j+1).
    // With N = 64 and five correction terms the remainder is far below 1e-12.
    constexpr int kTerms = 64;
    constexpr double kBernoulliOverFactorial[] = {
        1.0 / 12.0,                // B2 / 2!
        -1.0 / 720.0,              // B4 / 4!
        1.0 / 30240.0,             // B6 / 6!
        -1.0 / 1209600.0,          // B8 / 8!
        1.0 / 47900160.0,          // B10 / 10!
    };
    double partial = 0.0;
    for (int k = kTerms - 1; k >= 1; --k) partial += std::pow(static_cast<double>(k), -u);
    const double n = kTerms;
    double tail = std::pow(n, 1.0 - u) / (u - 1.0) + 0.5 * std::pow(n, -u);
    double rising = u;  // (u)_{2j-1}
    double power = std::pow(n, -u - 1.0);
    for (int j = 0; j < 5; ++j) {
        tail += kBernoulliOverFactorial[j] * rising * power;
        rising *= (u + 2.0 * j + 1.0) * (u + 2.0 * j + 2.0);
        power /= n * n;
    }
    return partial + tail;
}

double deviation_bound(double x, double beta) {
    if (!(beta > 1.0)) fail(ErrorCode::Domain, "deviation_bound requires beta > 1");
    const double x_min = 8.0 / ((std::numbers::e - 1.0) * (std::numbers::e - 1.0));
    if (!(x >= x_min)) fail(ErrorCode::Domain, "deviation_bound requires x >= 8/(e-1)^2");
    const double u = beta * (1.0 - 1.0 / (2.0 * x));
    if (!(u > 1.0 + 1e-12))
        fail(ErrorCode::Domain, "deviation_bound requires beta (1 - 1/(2x)) > 1");
    return std::sqrt(std::numbers::e) * zeta(u)
           * std::pow(std::sqrt(x) / (2.0 * std::numbers::sqrt2) + 1.0, beta) * std::exp(-x);
}

namespace {

struct CrossCount {
    std::uint64_t crossings = 0;
    void merge(const CrossCount& o) { crossings += o.crossings; }
};

}  // namespace

LilCrossing empirical_lil_crossing(double sigma, double x, double beta, std::uint64_t horizon,
                                   std::uint64_t paths, std::uint64_t master_seed,
                                   unsigned workers) {
    if (!(sigma > 0.0)) fail(ErrorCode::Domain, "sigma must be positive");
    if (horizon < 1 || paths < 1) fail(ErrorCode::Domain, "horizon and paths must be at least 1");
    std::vector<double> boundary(horizon + 1);
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        const double tt = static_cast<double>(t);
        boundary[t] = std::sqrt(2.0 * sigma * sigma * tt * (x + beta * std::log(1.0 + std::log(tt))));
    }
    const auto count = parallel_reduce<CrossCount>(
        paths, resolve_workers(workers), [&](CrossCount& acc, std::uint64_t p) {
            Rng rng(replication_seed(master_seed, 0, p));
            double s = 0.0;
            for (std::uint64_t t = 1; t <= horizon; ++t) {
                s += rng.normal(0.0, sigma);
                if (s > boundary[t]) {
                    ++acc.crossings;
                    return;
                }
            }
        });
    LilCrossing out;
    out.crossings = count.crossings;
    out.paths = paths;
    out.frequency = static_cast<double>(count.crossings) / static_cast<double>(paths);
    out.standard_error = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(paths));
    return out;
}

}  // namespace bai
