#pragma once

// Fixed-confidence strategies for two-armed models.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bai/dists.hpp"
#include "bai/instance.hpp"

namespace bai {

/// Exploration rates beta(t, delta). Domains in delta:
///   RobbinsLogT        ((t+1)/t) log((t+1)/(2 delta))             delta in (0, 1)
///   IteratedLog        log(1/d) + 3/4 log log(1/d) + 3/2 log(1 + log(t/2))
///                                                                  delta in (0, 1/e)
///   AlphaElim          log(t/delta) + 2 log log(6t)                delta in (0, 1)
///   Sglrt              2 log(t (log 3t)^2 / delta)                 delta in (0, 1)
///   ConjecturedLogLog  log((log t + 1) / delta)                    delta in (0, 1)
///   PlainLog           log(1/delta)                                delta in (0, 1)
/// Every rate is evaluated for t >= 2.
enum class RateKind { RobbinsLogT, IteratedLog, AlphaElim, Sglrt, ConjecturedLogLog, PlainLog };

const char* to_string(RateKind rate) noexcept;
std::optional<RateKind> parse_rate(std::string_view name);

void validate_rate(RateKind rate, double delta);
double eval_rate(RateKind rate, std::uint64_t t, double delta);

/// IteratedLog is only proven delta-PAC for delta small enough; a warning is
/// returned above 0.01. The conjectured log-log rate is never guaranteed.
std::optional<std::string> rate_warning(RateKind rate, double delta);

struct RunOutcome {
    std::uint64_t tau = 0;  // total number of draws
    std::size_t recommended = 0;
    bool correct = false;
    std::array<std::uint64_t, 2> draws_per_arm{};
    bool exhausted = false;  // safety cap reached before the stopping rule fired
};

/// ceil(alpha * t), robust to the rounding of alpha * t when the exact
/// product is an integer (e.g. alpha = 2/3, t = 99).
std::uint64_t ceil_fraction(double alpha, std::uint64_t t);

/// Default safety cap: ceil(50 log(1/delta) / i_star_fc(nu)).
std::uint64_t default_tau_max(const BanditInstance& nu, double delta);

/// Paired sampling, stopping once |sum (X_s - Y_s)| > sqrt(2 sigma^2 t beta(t, delta))
/// at even t. Gaussian arms must share their variance; Bernoulli arms use the
/// sub-Gaussian constant sigma^2 = 1/4.
RunOutcome run_elimination(const BanditInstance& nu, double delta, RateKind rate,
                           std::uint64_t tau_max, Rng& rng);

/// Deterministic schedule with N_1(t) = ceil(alpha t). An empty alpha selects
/// sigma_1 / (sigma_1 + sigma_2).
RunOutcome run_alpha_elimination(const BanditInstance& nu, double delta, RateKind rate,
                                 std::optional<double> alpha, std::uint64_t tau_max, Rng& rng);

/// Uniform alternating sampling of two Bernoulli arms; at even t stops once
/// t I_*(mu1_hat, mu2_hat) > beta(t, delta).
RunOutcome run_sglrt(const BanditInstance& nu, double delta, RateKind rate,
                     std::uint64_t tau_max, Rng& rng);

enum class SprtStatistic {
    ExactLlr,      // (gap / sigma^2) * sum of paired differences
    Unscaled,  // gap * sum of paired differences, no variance factor
};

const char* to_string(SprtStatistic s) noexcept;

/// SPRT with the gap known up to its sign (equal-variance Gaussian arms);
/// stops when the statistic leaves [-log(1/delta), log(1/delta)].
RunOutcome run_sprt_oracle(const BanditInstance& nu, double delta, std::uint64_t tau_max,
                           Rng& rng, SprtStatistic statistic = SprtStatistic::ExactLlr);

/// I_*(x, y) for Bernoulli means in [0, 1]: average KL to the midpoint.
double bernoulli_glrt_rate(double x, double y);

}  // namespace bai
