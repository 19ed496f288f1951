#include "bai/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bai/error.hpp"

namespace bai {
namespace {

// Root of f on [lo, hi] given a sign change; relative tolerance on the root.
template <class F>
double bisect(F&& f, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) == (f_hi < 0.0))
        fail(ErrorCode::Solver, "crossing is not bracketed by the arm parameters");
    for (int iter = 0; iter < kBisectionMaxIter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kBisectionRelTol * std::max(std::abs(lo), std::abs(hi))
            || mid == lo || mid == hi)
            return mid;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    fail(ErrorCode::Solver, "bisection did not converge within 200 iterations");
}

// Both sides are differences of nearly equal terms when the arms are close,
// so the residual is only checked to 1e-8 relative plus a small absolute floor.
void check_crossing(double left, double right) {
    if (std::abs(left - right) > 1e-8 * std::max(left, right) + 1e-15) {
        std::ostringstream os;
        os.precision(17);
        os << "crossing residual too large: " << left << " vs " << right;
        fail(ErrorCode::Solver, os.str());
    }
}

void require_distinct(double theta1, double theta2) {
    if (theta1 == theta2)
        fail(ErrorCode::DegenerateInstance, "the two arms have equal parameters");
}

void require_two_arms(const BanditInstance& nu) {
    if (nu.size() != 2)
        fail(ErrorCode::Domain, "two-armed complexity requires exactly two arms");
}

struct GaussianPair {
    double mu1, var1, mu2, var2;
};

GaussianPair as_gaussian_pair(const BanditInstance& nu) {
    const auto& a = std::get<GaussianArm>(nu.arm(0).params());
    const auto& b = std::get<GaussianArm>(nu.arm(1).params());
    return {a.mean, a.variance, b.mean, b.variance};
}

long double log_partition_ld(const ExpFamily& family, long double theta) {
    switch (family.id()) {
    case FamilyId::Bernoulli:
        return theta > 0 ? theta + std::log1p(std::exp(-theta)) : std::log1p(std::exp(theta));
    case FamilyId::GaussianKnownVariance:
        return 0.5L * family.known_variance() * theta * theta;
    case FamilyId::Exponential:
        return -std::log(-theta);
    }
    return 0.0L;
}

// g_alpha written as alpha b(theta1) + (1 - alpha) b(theta2) - b(theta_alpha)
// and evaluated in extended precision: the maximizer search compares nearly
// equal values of a flat function.
long double g_alpha_ld(const ExpFamily& family, double theta1, double theta2, long double alpha) {
    const long double t1 = theta1;
    const long double t2 = theta2;
    if (family.id() == FamilyId::GaussianKnownVariance)
        return 0.5L * family.known_variance() * alpha * (1 - alpha) * (t1 - t2) * (t1 - t2);
    return alpha * log_partition_ld(family, t1) + (1 - alpha) * log_partition_ld(family, t2)
           - log_partition_ld(family, alpha * t1 + (1 - alpha) * t2);
}

}  // namespace

ExpFamilyPair as_exp_family_pair(const BanditInstance& nu) {
    require_two_arms(nu);
    switch (nu.kind()) {
    case ArmKind::Bernoulli: {
        const auto family = ExpFamily::bernoulli();
        return {family, family.natural(nu.mean(0)), family.natural(nu.mean(1))};
    }
    case ArmKind::ExpFamily: {
        const auto& a = std::get<ExpFamilyArm>(nu.arm(0).params());
        const auto& b = std::get<ExpFamilyArm>(nu.arm(1).params());
        return {a.family, a.theta, b.theta};
    }
    case ArmKind::Gaussian:
        break;
    }
    fail(ErrorCode::Domain, "gaussian arms with known variances are not mapped to a shared family");
}

Crossing reversed_chernoff(const ExpFamily& family, double theta1, double theta2) {
    require_distinct(theta1, theta2);
    const double mu1 = family.mean(theta1);
    const double mu2 = family.mean(theta2);
    const double mu_star = bisect(
        [&](double mu) {
            const double theta = family.natural(mu);
            return family.kl(theta1, theta) - family.kl(theta2, theta);
        },
        mu1, mu2);
    const double theta_star = family.natural(mu_star);
    const double left = family.kl(theta1, theta_star);
    check_crossing(left, family.kl(theta2, theta_star));
    return {left, mu_star, theta_star};
}

Crossing chernoff_information(const ExpFamily& family, double theta1, double theta2) {
    require_distinct(theta1, theta2);
    const double theta_star = bisect(
        [&](double theta) { return family.kl(theta, theta1) - family.kl(theta, theta2); },
        theta1, theta2);
    const double left = family.kl(theta_star, theta1);
    check_crossing(left, family.kl(theta_star, theta2));
    return {left, family.mean(theta_star), theta_star};
}

double uniform_fc_rate(const ExpFamily& family, double theta1, double theta2) {
    require_distinct(theta1, theta2);
    const double mid = family.natural(0.5 * (family.mean(theta1) + family.mean(theta2)));
    return 0.5 * (family.kl(theta1, mid) + family.kl(theta2, mid));
}

double uniform_fb_rate(const ExpFamily& family, double theta1, double theta2) {
    require_distinct(theta1, theta2);
    const double mid = 0.5 * (theta1 + theta2);
    return 0.5 * (family.kl(mid, theta1) + family.kl(mid, theta2));
}

Crossing c_star_fc(const BanditInstance& nu) {
    require_two_arms(nu);
    if (nu.kind() == ArmKind::Gaussian) {
        const auto g = as_gaussian_pair(nu);
        const double s1 = std::sqrt(g.var1);
        const double s2 = std::sqrt(g.var2);
        const double gap = g.mu1 - g.mu2;
        const double x = (s2 * g.mu1 + s1 * g.mu2) / (s1 + s2);
        return {gap * gap / (2.0 * (s1 + s2) * (s1 + s2)), x, x};
    }
    const auto p = as_exp_family_pair(nu);
    return reversed_chernoff(p.family, p.theta1, p.theta2);
}

double i_star_fc(const BanditInstance& nu) {
    require_two_arms(nu);
    if (nu.kind() == ArmKind::Gaussian) {
        const auto g = as_gaussian_pair(nu);
        const double gap = g.mu1 - g.mu2;
        return gap * gap / (4.0 * (g.var1 + g.var2));
    }
    const auto p = as_exp_family_pair(nu);
    return uniform_fc_rate(p.family, p.theta1, p.theta2);
}

Crossing c_star_fb(const BanditInstance& nu) {
    require_two_arms(nu);
    if (nu.kind() == ArmKind::Gaussian) {
        // Each arm keeps its own known variance; the alternative models share
        // a common mean x, so the crossing is searched in mean space.
        const auto& arm1 = nu.arm(0);
        const auto& arm2 = nu.arm(1);
        const double x = bisect(
            [&](double mu) { return kl(arm1.with_mean(mu), arm1) - kl(arm2.with_mean(mu), arm2); },
            arm1.mean(), arm2.mean());
        const double left = kl(arm1.with_mean(x), arm1);
        check_crossing(left, kl(arm2.with_mean(x), arm2));
        return {left, x, x};
    }
    const auto p = as_exp_family_pair(nu);
    return chernoff_information(p.family, p.theta1, p.theta2);
}

double i_star_fb(const BanditInstance& nu) {
    require_two_arms(nu);
    if (nu.kind() == ArmKind::Gaussian) return i_star_fc(nu);
    const auto p = as_exp_family_pair(nu);
    return uniform_fb_rate(p.family, p.theta1, p.theta2);
}

TwoArmedComplexityReport complexity_report(const BanditInstance& nu) {
    const auto fc = c_star_fc(nu);
    const auto fb = c_star_fb(nu);
    return {fc.value, i_star_fc(nu), fb.value, i_star_fb(nu), fc.natural, fb.natural,
            1.0 / fc.value, 1.0 / fb.value};
}

double g_alpha(const ExpFamily& family, double theta1, double theta2, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(ErrorCode::Domain, "alpha must lie in (0, 1)");
    require_distinct(theta1, theta2);
    const double theta = alpha * theta1 + (1.0 - alpha) * theta2;
    return alpha * family.kl(theta, theta1) + (1.0 - alpha) * family.kl(theta, theta2);
}

OptimalAlpha optimal_alpha(const ExpFamily& family, double theta1, double theta2) {
    require_distinct(theta1, theta2);
    const long double ratio = (std::sqrt(5.0L) - 1) / 2;
    long double lo = 0, hi = 1;
    long double x1 = hi - ratio * (hi - lo);
    long double x2 = lo + ratio * (hi - lo);
    long double g1 = g_alpha_ld(family, theta1, theta2, x1);
    long double g2 = g_alpha_ld(family, theta1, theta2, x2);
    while (hi - lo > 1e-10L) {
        if (g1 < g2) {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + ratio * (hi - lo);
            g2 = g_alpha_ld(family, theta1, theta2, x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - ratio * (hi - lo);
            g1 = g_alpha_ld(family, theta1, theta2, x1);
        }
    }
    const double alpha = static_cast<double>((lo + hi) / 2);
    const double value = g_alpha(family, theta1, theta2, alpha);
    const double crossing = alpha * theta1 + (1.0 - alpha) * theta2;

    const auto chernoff = chernoff_information(family, theta1, theta2);
    if (std::abs(crossing - chernoff.natural) > 1e-8 || std::abs(value - chernoff.value) > 1e-8) {
        std::ostringstream os;
        os.precision(17);
        os << "maximizer of g_alpha disagrees with the Chernoff crossing: alpha=" << alpha
           << " crossing=" << crossing << " theta*=" << chernoff.natural;
        fail(ErrorCode::Solver, os.str());
    }
    return {alpha, value, crossing};
}

}  // namespace bai
