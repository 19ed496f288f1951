#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bai/complexity.hpp"
#include "bai/error.hpp"
#include "support.hpp"

using namespace bai;
using test::bern;
using test::gauss2;

namespace {

// Frozen from a 40-digit mpmath root finder on the KL definitions.
constexpr double kCLower = 0.0099883332840344913;      // c_*(0.2, 0.1)
constexpr double kMuLower = 0.14764473087835980;       // mean-space crossing
constexpr double kILower = 0.0099663893411728120;      // I_*(0.2, 0.1)
constexpr double kCUpper = 0.010124516579959166;       // c^*(0.2, 0.1)
constexpr double kMuUpper = 0.14524435432427261;       // mean of the Chernoff crossing
constexpr double kThetaUpper = -1.7723981072615001;
constexpr double kIUpper = 0.010101353658759724;       // I^*(0.2, 0.1)
constexpr double kAlphaStar = 0.52387549702721882;

double relgap(double a, double b) { return std::abs(a - b) / std::max(a, b); }

}  // namespace

TEST(CStarFc, EasyGaussian) {
    const auto r = c_star_fc(test::easy_gaussian());
    EXPECT_DOUBLE_EQ(r.value, 0.125);
    EXPECT_DOUBLE_EQ(1.0 / r.value, 8.0);
    EXPECT_DOUBLE_EQ(r.mean, 0.25);
}

TEST(CStarFc, BernoulliOracle) {
    const auto r = c_star_fc(bern({0.2, 0.1}));
    EXPECT_NEAR(r.value, kCLower, 1e-12);
    EXPECT_NEAR(r.mean, kMuLower, 1e-9);
    EXPECT_NEAR(r.value, 0.009986, 1e-5);
}

TEST(CStarFc, ArmSwapSymmetry) {
    EXPECT_NEAR(c_star_fc(bern({0.2, 0.1})).value, c_star_fc(bern({0.1, 0.2})).value, 1e-13);
    EXPECT_DOUBLE_EQ(c_star_fc(gauss2(0.3, 1.0, 0.5, 2.0)).value,
                     c_star_fc(gauss2(1.0, 0.3, 2.0, 0.5)).value);
}

TEST(CStarFc, DegenerateInstanceRejected) {
    try {
        bern({0.3, 0.3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateInstance);
    }
    EXPECT_THROW(reversed_chernoff(ExpFamily::bernoulli(), 0.1, 0.1), Error);
}

TEST(IStarFc, Values) {
    EXPECT_DOUBLE_EQ(i_star_fc(test::easy_gaussian()), 0.125);
    EXPECT_NEAR(i_star_fc(bern({0.2, 0.1})), kILower, 1e-15);
    EXPECT_NEAR(i_star_fc(gauss2(1.0, 0.0, 1.0, 0.25)), 1.0 / 5.0, 1e-15);
}

TEST(IStarFc, VanishesAsGapCloses) {
    double prev = INFINITY;
    for (double gap : {0.1, 0.01, 0.001, 1e-4}) {
        const double v = i_star_fc(bern({0.5 + gap, 0.5}));
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-7);
}

TEST(IStarFc, EntropyIdentity) {
    // I_*(x, y) = H((x+y)/2) - (H(x) + H(y))/2 holds; the H(x/2), H(y/2)
    // variant does not.
    for (double x = 0.05; x < 0.96; x += 0.1)
        for (double y = 0.02; y < 0.99; y += 0.13) {
            if (std::abs(x - y) < 1e-9) continue;
            const double hi = std::max(x, y), lo = std::min(x, y);
            const double v = i_star_fc(bern({hi, lo}));
            const double identity =
                binary_entropy(0.5 * (x + y)) - 0.5 * (binary_entropy(x) + binary_entropy(y));
            EXPECT_NEAR(v, identity, 1e-12);
        }
    const double wrong = binary_entropy(0.1) - 0.5 * (binary_entropy(0.2) + binary_entropy(0.1));
    EXPECT_GT(std::abs(wrong - kILower), 1e-3);
}

TEST(CStarFb, GaussianEqualsClosedFormOnGrid) {
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double mu1 = 0.1 + 0.3 * i, mu2 = -0.5 + 0.07 * j;
            const double v1 = 0.05 + 0.2 * j, v2 = 0.1 + 0.35 * i;
            const auto nu = gauss2(mu1, mu2, v1, v2);
            EXPECT_NEAR(c_star_fb(nu).value, c_star_fc(nu).value, 1e-10) << i << "," << j;
        }
}

TEST(CStarFb, BernoulliOracle) {
    const auto nu = bern({0.2, 0.1});
    const auto r = c_star_fb(nu);
    EXPECT_NEAR(r.value, kCUpper, 1e-12);
    EXPECT_NEAR(r.mean, kMuUpper, 1e-9);
    EXPECT_NEAR(r.natural, kThetaUpper, 1e-9);
    EXPECT_GT(r.value, c_star_fc(nu).value);
}

TEST(IStarFb, Values) {
    EXPECT_NEAR(i_star_fb(bern({0.2, 0.1})), kIUpper, 1e-15);
    EXPECT_DOUBLE_EQ(i_star_fb(test::easy_gaussian()), 0.125);
}

TEST(Report, Fields) {
    const auto r = complexity_report(bern({0.2, 0.1}));
    EXPECT_NEAR(r.kappa_c_lower, 1.0 / kCLower, 1e-6);
    EXPECT_NEAR(r.kappa_b, 1.0 / kCUpper, 1e-6);
    EXPECT_NEAR(r.theta_star_chernoff, kThetaUpper, 1e-9);
    EXPECT_NEAR(r.theta_star_reversed, std::log(kMuLower / (1 - kMuLower)), 1e-8);
}

TEST(Ordering, RandomBernoulliPairs) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    const auto fam = ExpFamily::bernoulli();
    for (int i = 0; i < 200; ++i) {
        double x = u(gen), y = u(gen);
        if (std::abs(x - y) < 1e-3) continue;
        if (x < y) std::swap(x, y);
        const auto nu = bern({x, y});
        const double cl = c_star_fc(nu).value, il = i_star_fc(nu);
        const double cu = c_star_fb(nu).value, iu = i_star_fb(nu);
        EXPECT_LE(il, cl * (1 + 1e-12));
        EXPECT_LE(iu, cu * (1 + 1e-12));
        EXPECT_GT(cu, cl);
        const double t1 = fam.natural(x), t2 = fam.natural(y);
        EXPECT_GE(1.0 / cl, 1.0 / fam.kl(t1, t2) + 1.0 / fam.kl(t2, t1));
        EXPECT_GT(il, 0.5 * (x - y) * (x - y) / 4.0);
    }
}

TEST(Ordering, PinskerDirection) {
    // I_* is an average of two KLs to the midpoint, each above 2 (gap/2)^2.
    for (double x = 0.15; x < 0.99; x += 0.1)
        for (double y = 0.01; y < x - 0.05; y += 0.1)
            EXPECT_GT(i_star_fc(bern({x, y})), 2.0 * 0.25 * (x - y) * (x - y));
}

TEST(Ordering, GaussianFcEqualsFb) {
    for (double v1 : {0.1, 0.25, 1.0})
        for (double v2 : {0.25, 2.0}) {
            const auto nu = gauss2(0.7, -0.2, v1, v2);
            EXPECT_NEAR(c_star_fc(nu).value, c_star_fb(nu).value, 1e-10);
            EXPECT_NEAR(i_star_fc(nu), i_star_fb(nu), 1e-10);
        }
}

TEST(Ordering, ExponentialSelfConjugate) {
    const auto fam = ExpFamily::exponential();
    for (double t1 : {-0.2, -0.7, -1.5})
        for (double t2 : {-0.5, -2.0, -4.0}) {
            if (t1 == t2) continue;
            EXPECT_NEAR(reversed_chernoff(fam, t1, t2).value, chernoff_information(fam, t1, t2).value,
                        1e-8);
        }
}

TEST(Ordering, FigureRegimeRelativeGap) {
    for (double mu2 : {0.1, 0.5})
        for (int k = 5; k <= 95; ++k) {
            const double mu1 = k / 100.0;
            if (std::abs(mu1 - mu2) < 1e-9) continue;
            const auto nu = bern({std::max(mu1, mu2), std::min(mu1, mu2)});
            EXPECT_LE(relgap(c_star_fc(nu).value, i_star_fc(nu)), 0.025) << mu1 << " " << mu2;
            EXPECT_LE(relgap(c_star_fb(nu).value, i_star_fb(nu)), 0.025) << mu1 << " " << mu2;
        }
}

TEST(Solver, CrossingResidual) {
    const auto fam = ExpFamily::bernoulli();
    for (double x : {0.9, 0.6, 0.3})
        for (double y : {0.05, 0.2}) {
            const double t1 = fam.natural(x), t2 = fam.natural(y);
            const auto lo = reversed_chernoff(fam, t1, t2);
            EXPECT_LE(std::abs(fam.kl(t1, lo.natural) - fam.kl(t2, lo.natural)), 1e-10 * lo.value);
            const auto up = chernoff_information(fam, t1, t2);
            EXPECT_LE(std::abs(fam.kl(up.natural, t1) - fam.kl(up.natural, t2)), 1e-10 * up.value);
        }
}

TEST(GAlpha, MidpointIsUniformRate) {
    const auto fam = ExpFamily::bernoulli();
    const double t1 = fam.natural(0.2), t2 = fam.natural(0.1);
    EXPECT_NEAR(g_alpha(fam, t1, t2, 0.5), kIUpper, 1e-15);
}

TEST(GAlpha, VanishesAtEnds) {
    const auto fam = ExpFamily::bernoulli();
    const double t1 = fam.natural(0.2), t2 = fam.natural(0.1);
    EXPECT_LT(g_alpha(fam, t1, t2, 1e-9), 1e-10);
    EXPECT_LT(g_alpha(fam, t1, t2, 1.0 - 1e-9), 1e-10);
}

TEST(GAlpha, Domain) {
    const auto fam = ExpFamily::bernoulli();
    EXPECT_THROW(g_alpha(fam, -1.0, -2.0, 0.0), Error);
    EXPECT_THROW(g_alpha(fam, -1.0, -2.0, 1.0), Error);
    EXPECT_THROW(g_alpha(fam, -1.0, -1.0, 0.5), Error);
}

TEST(GAlpha, UniqueInteriorMaximumOnGrid) {
    const auto fam = ExpFamily::bernoulli();
    const double t1 = fam.natural(0.2), t2 = fam.natural(0.1);
    std::vector<double> g;
    for (int i = 1; i <= 99; ++i) g.push_back(g_alpha(fam, t1, t2, i / 100.0));
    const auto best = std::max_element(g.begin(), g.end()) - g.begin();
    EXPECT_GT(best, 0);
    EXPECT_LT(best, 98);
    for (long i = 0; i < best; ++i) EXPECT_LT(g[i], g[i + 1]);
    for (long i = best; i < 98; ++i) EXPECT_GT(g[i], g[i + 1]);
}

TEST(OptimalAlpha, GaussianIsHalf) {
    const auto fam = ExpFamily::gaussian(0.25);
    const auto r = optimal_alpha(fam, fam.natural(0.5), fam.natural(0.0));
    EXPECT_NEAR(r.alpha, 0.5, 1e-9);
    EXPECT_NEAR(r.value, 0.125, 1e-12);
}

TEST(OptimalAlpha, BernoulliCrossingFraction) {
    const auto fam = ExpFamily::bernoulli();
    const double t1 = fam.natural(0.2), t2 = fam.natural(0.1);
    const auto r = optimal_alpha(fam, t1, t2);
    EXPECT_NEAR(r.alpha, kAlphaStar, 1e-8);
    EXPECT_NEAR(r.alpha, (kThetaUpper - t2) / (t1 - t2), 1e-8);
    // swapping the roles of the arms gives the complement
    EXPECT_GT(std::abs((kThetaUpper - t1) / (t2 - t1) - r.alpha), 0.04);
    EXPECT_NEAR(r.value, kCUpper, 1e-10);
}

TEST(OptimalAlpha, DominatesHalfAndMatchesChernoff) {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.02, 0.98);
    const auto fam = ExpFamily::bernoulli();
    for (int i = 0; i < 50; ++i) {
        const double x = u(gen), y = u(gen);
        if (std::abs(x - y) < 1e-3) continue;
        const double t1 = fam.natural(x), t2 = fam.natural(y);
        const auto r = optimal_alpha(fam, t1, t2);
        const auto ch = chernoff_information(fam, t1, t2);
        EXPECT_GE(r.value, g_alpha(fam, t1, t2, 0.5) - 1e-15);
        EXPECT_NEAR(r.alpha * t1 + (1 - r.alpha) * t2, ch.natural, 1e-8);
        EXPECT_NEAR(r.value, ch.value, 1e-8);
    }
}

TEST(OptimalAlpha, Degenerate) {
    EXPECT_THROW(optimal_alpha(ExpFamily::bernoulli(), -1.0, -1.0), Error);
}
