#include "bai/fb_algos.hpp"

#include <algorithm>
#include <cmath>

#include "bai/complexity.hpp"
#include "bai/error.hpp"

namespace bai {
namespace {

void require_budget(std::uint64_t t) {
    if (t < 2) fail(ErrorCode::Domain, "a static allocation needs a budget of at least 2");
}

StaticAllocation clamped(std::uint64_t n1, std::uint64_t t) {
    n1 = std::clamp<std::uint64_t>(n1, 1, t - 1);
    return {n1, t - n1};
}

void require_two_arms(const BanditInstance& nu) {
    if (nu.size() != 2 || nu.m() != 1)
        fail(ErrorCode::Domain, "static strategies are implemented for two arms, m = 1");
}

}  // namespace

StaticAllocation gaussian_allocation(double sigma1, double sigma2, std::uint64_t t) {
    require_budget(t);
    if (!(sigma1 > 0.0 && sigma2 > 0.0))
        fail(ErrorCode::Domain, "standard deviations must be positive");
    return clamped(ceil_fraction(sigma1 / (sigma1 + sigma2), t), t);
}

StaticAllocation expfam_allocation(const ExpFamily& family, double theta1, double theta2,
                                   std::uint64_t t) {
    require_budget(t);
    const auto opt = optimal_alpha(family, theta1, theta2);
    return clamped(ceil_fraction(opt.alpha, t), t);
}

StaticAllocation uniform_allocation(std::uint64_t t) {
    require_budget(t);
    return {(t + 1) / 2, t / 2};
}

StaticAllocation optimal_allocation(const BanditInstance& nu, std::uint64_t t) {
    require_two_arms(nu);
    if (nu.kind() == ArmKind::Gaussian)
        return gaussian_allocation(std::sqrt(nu.arm(0).variance()),
                                   std::sqrt(nu.arm(1).variance()), t);
    const auto p = as_exp_family_pair(nu);
    return expfam_allocation(p.family, p.theta1, p.theta2, t);
}

RunOutcome run_static(const BanditInstance& nu, const StaticAllocation& alloc, Rng& rng) {
    require_two_arms(nu);
    if (alloc.n1 < 1 || alloc.n2 < 1)
        fail(ErrorCode::Domain, "a static allocation must draw each arm at least once");
    const auto& arm1 = nu.arm(0);
    const auto& arm2 = nu.arm(1);
    double s1 = 0.0, s2 = 0.0;
    for (std::uint64_t i = 0; i < alloc.n1; ++i) s1 += sample(arm1, rng);
    for (std::uint64_t i = 0; i < alloc.n2; ++i) s2 += sample(arm2, rng);
    const double m1 = s1 / static_cast<double>(alloc.n1);
    const double m2 = s2 / static_cast<double>(alloc.n2);

    RunOutcome out;
    out.draws_per_arm = {alloc.n1, alloc.n2};
    out.tau = alloc.budget();
    out.recommended = m2 > m1 ? 1 : 0;
    out.correct = out.recommended == nu.best_arm();
    return out;
}

double theoretical_error_bound(const BanditInstance& nu, const StaticAllocation& alloc) {
    require_two_arms(nu);
    if (alloc.n1 < 1 || alloc.n2 < 1)
        fail(ErrorCode::Domain, "a static allocation must draw each arm at least once");
    if (nu.kind() == ArmKind::Gaussian) {
        const double gap = nu.mean(0) - nu.mean(1);
        const double var = nu.arm(0).variance() / static_cast<double>(alloc.n1)
                           + nu.arm(1).variance() / static_cast<double>(alloc.n2);
        return std::exp(-gap * gap / (2.0 * var));
    }
    const auto p = as_exp_family_pair(nu);
    const double t = static_cast<double>(alloc.budget());
    // The exponent is stated with the better arm first.
    if (nu.best_arm() == 0)
        return std::exp(-t * g_alpha(p.family, p.theta1, p.theta2,
                                     static_cast<double>(alloc.n1) / t));
    return std::exp(-t * g_alpha(p.family, p.theta2, p.theta1,
                                 static_cast<double>(alloc.n2) / t));
}

}  // namespace bai
