#include "bai/fc_algos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bai/complexity.hpp"
#include "bai/error.hpp"

namespace bai {
namespace {

void require_two_arms(const BanditInstance& nu) {
    if (nu.size() != 2 || nu.m() != 1)
        fail(ErrorCode::Domain, "fixed-confidence strategies are implemented for two arms, m = 1");
}

void require_cap(std::uint64_t tau_max) {
    if (tau_max < 2) fail(ErrorCode::Domain, "tau_max must be at least 2");
}

bool is_binary(const BanditInstance& nu) {
    if (nu.kind() == ArmKind::Bernoulli) return true;
    return nu.kind() == ArmKind::ExpFamily
           && std::get<ExpFamilyArm>(nu.arm(0).params()).family.id() == FamilyId::Bernoulli;
}

RunOutcome finish(const BanditInstance& nu, std::uint64_t n1, std::uint64_t n2,
                  std::size_t recommended, bool exhausted) {
    RunOutcome out;
    out.draws_per_arm = {n1, n2};
    out.tau = n1 + n2;
    out.recommended = recommended;
    out.correct = recommended == nu.best_arm();
    out.exhausted = exhausted;
    return out;
}

// Larger value wins, ties go to the first arm.
std::size_t empirical_best(double first, double second) { return second > first ? 1 : 0; }

}  // namespace

const char* to_string(RateKind rate) noexcept {
    switch (rate) {
    case RateKind::RobbinsLogT: return "robbins";
    case RateKind::IteratedLog: return "iterated-log";
    case RateKind::AlphaElim: return "alpha-elim";
    case RateKind::Sglrt: return "sglrt";
    case RateKind::ConjecturedLogLog: return "loglog";
    case RateKind::PlainLog: return "plain";
    }
    return "unknown";
}

std::optional<RateKind> parse_rate(std::string_view name) {
    for (auto r : {RateKind::RobbinsLogT, RateKind::IteratedLog, RateKind::AlphaElim,
                   RateKind::Sglrt, RateKind::ConjecturedLogLog, RateKind::PlainLog})
        if (name == to_string(r)) return r;
    return std::nullopt;
}

void validate_rate(RateKind rate, double delta) {
    const double upper = rate == RateKind::IteratedLog ? 1.0 / std::numbers::e : 1.0;
    if (!(delta > 0.0 && delta < upper))
        fail(ErrorCode::Domain, std::string("delta outside the domain of the ") + to_string(rate)
                                    + " exploration rate");
}

double eval_rate(RateKind rate, std::uint64_t t, double delta) {
    validate_rate(rate, delta);
    if (t < 2) fail(ErrorCode::Domain, "exploration rates are evaluated for t >= 2");
    const double n = static_cast<double>(t);
    const double inv = std::log(1.0 / delta);
    switch (rate) {
    case RateKind::RobbinsLogT: return (n + 1.0) / n * std::log((n + 1.0) / (2.0 * delta));
    case RateKind::IteratedLog:
        return inv + 0.75 * std::log(inv) + 1.5 * std::log(1.0 + std::log(n / 2.0));
    case RateKind::AlphaElim: return std::log(n / delta) + 2.0 * std::log(std::log(6.0 * n));
    case RateKind::Sglrt: {
        const double l = std::log(3.0 * n);
        return 2.0 * std::log(n * l * l / delta);
    }
    case RateKind::ConjecturedLogLog: return std::log((std::log(n) + 1.0) / delta);
    case RateKind::PlainLog: return inv;
    }
    return inv;
}

std::optional<std::string> rate_warning(RateKind rate, double delta) {
    if (rate == RateKind::IteratedLog && delta > 0.01)
        return "iterated-log rate is proven delta-PAC only for small delta; delta > 0.01 is outside "
               "the documented safe range";
    if (rate == RateKind::ConjecturedLogLog)
        return "loglog rate is conjectured, not proven, to be delta-PAC";
    if (rate == RateKind::PlainLog)
        return "plain rate ignores repeated testing and is not delta-PAC";
    return std::nullopt;
}

std::uint64_t ceil_fraction(double alpha, std::uint64_t t) {
    const double x = alpha * static_cast<double>(t);
    return static_cast<std::uint64_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

std::uint64_t default_tau_max(const BanditInstance& nu, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::Domain, "delta must lie in (0, 1)");
    const double cap = std::ceil(50.0 * std::log(1.0 / delta) / i_star_fc(nu));
    return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(cap));
}

RunOutcome run_elimination(const BanditInstance& nu, double delta, RateKind rate,
                           std::uint64_t tau_max, Rng& rng) {
    require_two_arms(nu);
    require_cap(tau_max);
    if (!(delta > 0.0 && delta <= 0.15))
        fail(ErrorCode::Domain, "elimination requires delta in (0, 0.15]");
    validate_rate(rate, delta);
    double sigma2 = 0.25;
    if (!is_binary(nu)) {
        const auto v = nu.common_gaussian_variance();
        if (!v) fail(ErrorCode::Domain, "elimination needs gaussian arms with equal variances or "
                                        "bernoulli arms");
        sigma2 = *v;
    }

    const auto& arm1 = nu.arm(0);
    const auto& arm2 = nu.arm(1);
    double sum = 0.0;
    std::uint64_t t = 0;
    while (t + 2 <= tau_max) {
        sum += sample(arm1, rng) - sample(arm2, rng);
        t += 2;
        if (std::abs(sum) > std::sqrt(2.0 * sigma2 * static_cast<double>(t) * eval_rate(rate, t, delta)))
            return finish(nu, t / 2, t / 2, sum < 0.0 ? 1 : 0, false);
    }
    return finish(nu, t / 2, t / 2, sum < 0.0 ? 1 : 0, true);
}

RunOutcome run_alpha_elimination(const BanditInstance& nu, double delta, RateKind rate,
                                 std::optional<double> alpha, std::uint64_t tau_max, Rng& rng) {
    require_two_arms(nu);
    require_cap(tau_max);
    validate_rate(rate, delta);
    if (nu.kind() != ArmKind::Gaussian)
        fail(ErrorCode::Domain, "alpha-elimination needs gaussian arms with known variances");
    const double var1 = nu.arm(0).variance();
    const double var2 = nu.arm(1).variance();
    const double a = alpha.value_or(std::sqrt(var1) / (std::sqrt(var1) + std::sqrt(var2)));
    if (!(a > 0.0 && a < 1.0)) fail(ErrorCode::Domain, "alpha must lie in (0, 1)");

    const auto& arm1 = nu.arm(0);
    const auto& arm2 = nu.arm(1);
    std::uint64_t n1 = 0, n2 = 0;
    double s1 = 0.0, s2 = 0.0;
    std::uint64_t t = 0;
    while (t < tau_max) {
        ++t;
        if (ceil_fraction(a, t) != n1) {
            s1 += sample(arm1, rng);
            ++n1;
        } else {
            s2 += sample(arm2, rng);
            ++n2;
        }
        if (n1 == 0 || n2 == 0) continue;
        const double m1 = s1 / static_cast<double>(n1);
        const double m2 = s2 / static_cast<double>(n2);
        const double var_t = var1 / static_cast<double>(n1) + var2 / static_cast<double>(n2);
        if (std::abs(m1 - m2) > std::sqrt(2.0 * var_t * eval_rate(rate, t, delta)))
            return finish(nu, n1, n2, empirical_best(m1, m2), false);
    }
    const double m1 = n1 ? s1 / static_cast<double>(n1) : 0.0;
    const double m2 = n2 ? s2 / static_cast<double>(n2) : 0.0;
    return finish(nu, n1, n2, empirical_best(m1, m2), true);
}

double bernoulli_glrt_rate(double x, double y) {
    const double mid = 0.5 * (x + y);
    return 0.5 * (bernoulli_kl(x, mid) + bernoulli_kl(y, mid));
}

RunOutcome run_sglrt(const BanditInstance& nu, double delta, RateKind rate,
                     std::uint64_t tau_max, Rng& rng) {
    require_two_arms(nu);
    require_cap(tau_max);
    validate_rate(rate, delta);
    if (!is_binary(nu)) fail(ErrorCode::Domain, "SGLRT needs bernoulli arms");

    const auto& arm1 = nu.arm(0);
    const auto& arm2 = nu.arm(1);
    double s1 = 0.0, s2 = 0.0;
    std::uint64_t t = 0;
    while (t + 2 <= tau_max) {
        s1 += sample(arm1, rng);
        s2 += sample(arm2, rng);
        t += 2;
        const double half = static_cast<double>(t / 2);
        const double x = s1 / half;
        const double y = s2 / half;
        if (static_cast<double>(t) * bernoulli_glrt_rate(x, y) > eval_rate(rate, t, delta))
            return finish(nu, t / 2, t / 2, empirical_best(x, y), false);
    }
    return finish(nu, t / 2, t / 2, empirical_best(s1, s2), true);
}

const char* to_string(SprtStatistic s) noexcept {
    return s == SprtStatistic::ExactLlr ? "exact-llr" : "unscaled";
}

RunOutcome run_sprt_oracle(const BanditInstance& nu, double delta, std::uint64_t tau_max,
                           Rng& rng, SprtStatistic statistic) {
    require_two_arms(nu);
    require_cap(tau_max);
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::Domain, "delta must lie in (0, 1)");
    const auto sigma2 = nu.common_gaussian_variance();
    if (!sigma2) fail(ErrorCode::Domain, "the SPRT oracle needs gaussian arms with equal variances");
    const double gap = std::abs(nu.mean(0) - nu.mean(1));
    const double scale = statistic == SprtStatistic::ExactLlr ? gap / *sigma2 : gap;
    const double threshold = std::log(1.0 / delta);

    const auto& arm1 = nu.arm(0);
    const auto& arm2 = nu.arm(1);
    double sum = 0.0;
    std::uint64_t t = 0;
    while (t + 2 <= tau_max) {
        sum += sample(arm1, rng) - sample(arm2, rng);
        t += 2;
        if (std::abs(scale * sum) > threshold)
            return finish(nu, t / 2, t / 2, sum < 0.0 ? 1 : 0, false);
    }
    return finish(nu, t / 2, t / 2, sum < 0.0 ? 1 : 0, true);
}

}  // namespace bai
