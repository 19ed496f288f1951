#include <gtest/gtest.h>

#include <cmath>

#include "bai/complexity.hpp"
#include "bai/error.hpp"
#include "bai/fb_algos.hpp"
#include "bai/harness.hpp"
#include "support.hpp"

using namespace bai;
using test::bern;
using test::gauss2;

TEST(Allocation, GaussianClosedForm) {
    const auto a = gaussian_allocation(0.5, 0.5, 100);
    EXPECT_EQ(a.n1, 50u);
    EXPECT_EQ(a.n2, 50u);
    const auto b = gaussian_allocation(1.0, 0.5, 99);
    EXPECT_EQ(b.n1, 66u);
    EXPECT_EQ(b.n2, 33u);
    const auto c = gaussian_allocation(1.0, 0.5, 2);
    EXPECT_EQ(c.n1, 1u);
    EXPECT_EQ(c.n2, 1u);
    EXPECT_THROW(gaussian_allocation(1.0, 0.5, 1), Error);
}

TEST(Allocation, Uniform) {
    EXPECT_EQ(uniform_allocation(7).n1, 4u);
    EXPECT_EQ(uniform_allocation(7).n2, 3u);
    EXPECT_EQ(uniform_allocation(100).budget(), 100u);
}

TEST(Allocation, BernoulliOptimal) {
    const auto nu = bern({0.2, 0.1});
    const auto a = optimal_allocation(nu, 1000);
    EXPECT_EQ(a.n1, static_cast<std::uint64_t>(std::ceil(0.52387549702721882 * 1000)));
    EXPECT_EQ(a.budget(), 1000u);
    const auto p = as_exp_family_pair(nu);
    const auto opt = optimal_alpha(p.family, p.theta1, p.theta2);
    EXPECT_NEAR(g_alpha(p.family, p.theta1, p.theta2, a.n1 / 1000.0), opt.value, 1e-4 * opt.value);
}

TEST(Allocation, GaussianFamilyAgreesWithClosedForm) {
    // Equal variances in the exponential-family view give alpha* = 1/2.
    const auto fam = ExpFamily::gaussian(0.25);
    for (std::uint64_t t : {2, 3, 10, 99, 1000}) {
        const auto a = expfam_allocation(fam, 2.0, 0.0, t);
        const auto b = gaussian_allocation(0.5, 0.5, t);
        EXPECT_LE(a.n1 > b.n1 ? a.n1 - b.n1 : b.n1 - a.n1, 1u) << t;
        EXPECT_EQ(a.budget(), t);
    }
}

TEST(Allocation, AlwaysDrawsBothArms) {
    const auto nu = bern({0.95, 0.05});
    for (std::uint64_t t = 2; t < 200; ++t) {
        const auto a = optimal_allocation(nu, t);
        EXPECT_GE(a.n1, 1u);
        EXPECT_GE(a.n2, 1u);
        EXPECT_EQ(a.budget(), t);
    }
}

TEST(ErrorBound, GaussianHandValue) {
    EXPECT_NEAR(theoretical_error_bound(test::easy_gaussian(), {50, 50}), std::exp(-12.5), 1e-18);
}

TEST(ErrorBound, UniformBernoulliUsesMidpointRate) {
    const auto nu = bern({0.2, 0.1});
    const double b = theoretical_error_bound(nu, uniform_allocation(1000));
    EXPECT_NEAR(b, std::exp(-1000 * i_star_fb(nu)), 1e-9 * b);
    EXPECT_NEAR(i_star_fb(nu), 0.010101353658759724, 1e-15);
}

TEST(ErrorBound, OptimalNoWorseThanUniform) {
    // Rounding n1 up can cost a little at small budgets; from t = 100 on the
    // rounded optimal allocation still beats the uniform one on these pairs.
    for (const auto& nu : {bern({0.2, 0.1}), bern({0.51, 0.5}), bern({0.9, 0.3}), bern({0.1, 0.6})})
        for (std::uint64_t t : {100, 1000, 5000})
            EXPECT_LE(theoretical_error_bound(nu, optimal_allocation(nu, t)),
                      theoretical_error_bound(nu, uniform_allocation(t)) * (1 + 1e-12));
}

TEST(ErrorBound, RejectsEmptyArm) {
    EXPECT_THROW(theoretical_error_bound(test::easy_gaussian(), {0, 10}), Error);
}

TEST(RunStatic, HugeGapNeverErrs) {
    Rng rng(1);
    const auto nu = gauss2(100.0, -100.0);
    for (int i = 0; i < 1000; ++i) {
        const auto r = run_static(nu, {1, 1}, rng);
        EXPECT_TRUE(r.correct);
        EXPECT_EQ(r.tau, 2u);
    }
}

TEST(RunStatic, EmpiricalErrorBelowBound) {
    const std::uint64_t n = 20000;
    for (const auto& nu : {gauss2(0.5, 0.0), bern({0.2, 0.1})}) {
        ExperimentConfig cfg{"s", nu, {}, {}, {10, 40, 200}, n, 3, 0};
        cfg.algorithm.kind = AlgorithmKind::Static;
        for (const auto& rec : run_fb_experiment(cfg)) {
            const auto t = static_cast<std::uint64_t>(rec.grid_value);
            const double bound = theoretical_error_bound(nu, uniform_allocation(t));
            const double se = std::sqrt(bound * (1 - bound) / n);
            EXPECT_LE(rec.error_rate, bound + 3 * se + 1.0 / n) << t;
        }
    }
}

TEST(RunStatic, NearTieErrorCloseToHalfAndDecreasing) {
    ExperimentConfig cfg{"tie", bern({0.51, 0.5}), {}, {}, {100, 1000, 20000}, 4000, 8, 0};
    cfg.algorithm.kind = AlgorithmKind::Static;
    const auto recs = run_fb_experiment(cfg);
    EXPECT_GT(recs[0].error_rate, 0.35);
    EXPECT_LT(recs[0].error_rate, 0.55);
    EXPECT_GT(recs[0].error_rate, recs[2].error_rate);
}
