#include "bai/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bai/complexity.hpp"
#include "bai/error.hpp"

namespace bai {
namespace {

void require_fc_delta(double delta) {
    if (!(delta > 0.0 && delta <= 0.15))
        fail(ErrorCode::Domain, "the fixed-confidence lower bounds require 0 < delta <= 0.15");
}

double log_inv_2delta(double delta) { return std::log(1.0 / (2.0 * delta)); }

}  // namespace

GapProfile gap_profile(const BanditInstance& nu) {
    const std::size_t k = nu.size();
    const std::size_t m = nu.m();
    const double mu_m = nu.ranked_mean(m);
    const double mu_m1 = nu.ranked_mean(m + 1);

    GapProfile p{};
    p.gaps.resize(k);
    p.h = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        p.gaps[a] = nu.in_best_set(a) ? nu.mean(a) - mu_m1 : mu_m - nu.mean(a);
        p.h += 1.0 / (p.gaps[a] * p.gaps[a]);
    }

    const double top = nu.ranked_mean(1);
    p.h2 = 0.0;
    for (std::size_t i = 2; i <= k; ++i) {
        const double d = top - nu.ranked_mean(i);
        if (d > 0.0) p.h2 = std::max(p.h2, static_cast<double>(i) / (d * d));
    }

    const auto sigma2 = nu.common_gaussian_variance();
    if (!sigma2) return p;
    const double s = 2.0 * *sigma2;

    if (top > nu.ranked_mean(2)) {
        double hp = 0.0;
        for (std::size_t i = 2; i <= k; ++i) {
            const double d = top - nu.ranked_mean(i);
            hp += s / (d * d);
        }
        p.h_prime = hp;
    }
    double plus = 0.0, minus = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double d = nu.ranked_mean(i) - mu_m1;
        plus += s / (d * d);
    }
    for (std::size_t i = m + 1; i <= k; ++i) {
        const double d = mu_m - nu.ranked_mean(i);
        minus += s / (d * d);
    }
    p.h_plus = plus;
    p.h_minus = minus;
    p.h_gauss = plus + minus;
    const double lo = std::min(plus, minus);
    p.h_tilde = (plus + minus) * lo / (plus + minus + lo);
    return p;
}

double fc_lower_bound_general(const BanditInstance& nu, double delta) {
    require_fc_delta(delta);
    const auto& nu_m = nu.arm(nu.ranked(nu.m()));
    const auto& nu_m1 = nu.arm(nu.ranked(nu.m() + 1));
    double sum = 0.0;
    for (std::size_t a = 0; a < nu.size(); ++a)
        sum += 1.0 / kl(nu.arm(a), nu.in_best_set(a) ? nu_m1 : nu_m);
    return sum * log_inv_2delta(delta);
}

double fc_lower_bound_eps_relaxed(const BanditInstance& nu, double epsilon, double delta) {
    require_fc_delta(delta);
    if (nu.kind() != ArmKind::Bernoulli)
        fail(ErrorCode::Domain, "the epsilon-relaxed bound is stated for Bernoulli arms");
    if (!(epsilon > 0.0))
        fail(ErrorCode::Domain, "epsilon must be positive");
    const double top = nu.ranked_mean(1);
    if (!(top - epsilon > 0.0 && top + epsilon < 1.0))
        fail(ErrorCode::Domain, "mu_[1] - epsilon and mu_[1] + epsilon must lie in (0, 1)");

    std::size_t near = 0;
    double far = 0.0;
    for (double mu : nu.means()) {
        if (mu >= top - epsilon) ++near;
        if (mu <= top - epsilon) far += 1.0 / bernoulli_kl(mu, top + epsilon);
    }
    const double near_term =
        static_cast<double>(near - 1) / bernoulli_kl(top, top - epsilon);
    return (near_term + far) * log_inv_2delta(delta);
}

TwoArmedFcBounds fc_two_armed_bounds(const BanditInstance& nu, double delta) {
    require_fc_delta(delta);
    const double l = log_inv_2delta(delta);
    return {l / c_star_fc(nu).value, l / i_star_fc(nu)};
}

BanditInstance fb_modified_instance(const BanditInstance& nu, std::size_t a,
                                    std::optional<std::size_t> b) {
    if (!nu.common_gaussian_variance())
        fail(ErrorCode::Domain, "modified instances are defined for common-variance gaussian arms");
    if (a >= nu.size() || (b && *b >= nu.size()))
        fail(ErrorCode::Domain, "arm index out of range");
    const auto profile = gap_profile(nu);

    if (!b) {
        if (nu.m() != 1)
            fail(ErrorCode::Domain, "nu^[a] is defined for m = 1");
        if (a == nu.best_arm())
            fail(ErrorCode::Domain, "nu^[a] needs a suboptimal arm a");
        return nu.with_arm_mean(a, nu.mean(a) + 2.0 * profile.gaps[a]);
    }
    if (!nu.in_best_set(a) || nu.in_best_set(*b))
        fail(ErrorCode::Domain, "nu^[a,b] needs a in the best set and b outside it");
    auto arms = nu.arms();
    arms[a] = arms[a].with_mean(nu.mean(a) - 2.0 * profile.gaps[*b]);
    arms[*b] = arms[*b].with_mean(nu.mean(*b) + 2.0 * profile.gaps[a]);
    return BanditInstance(std::move(arms), nu.m());
}

FbErrorBounds fb_error_lower_bounds(const GapProfile& profile, std::uint64_t budget) {
    if (!profile.h_tilde)
        fail(ErrorCode::Domain, "fixed-budget bounds need a common-variance gaussian profile");
    const double t = static_cast<double>(budget);
    FbErrorBounds out{};
    if (profile.h_prime) out.m1 = std::exp(-4.0 * t / *profile.h_prime);
    out.general = 0.25 * std::exp(-4.0 * t / *profile.h_tilde);
    return out;
}

}  // namespace bai
