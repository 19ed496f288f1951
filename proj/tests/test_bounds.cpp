#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "bai/bounds.hpp"
#include "bai/complexity.hpp"
#include "bai/error.hpp"
#include "support.hpp"

using namespace bai;
using test::bern;
using test::gauss;

namespace {

std::set<std::size_t> best_set_of(const BanditInstance& nu) {
    const auto b = nu.best_set();
    return {b.begin(), b.end()};
}

BanditInstance random_gaussian(std::mt19937_64& gen, std::size_t k, std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> means(k);
    for (;;) {
        for (auto& x : means) x = u(gen);
        auto sorted = means;
        std::sort(sorted.rbegin(), sorted.rend());
        bool distinct = true;
        for (std::size_t i = 0; i + 1 < k; ++i) distinct &= sorted[i] - sorted[i + 1] > 1e-3;
        if (distinct) break;
    }
    return gauss(means, std::vector<double>(k, 0.25), m);
}

}  // namespace

TEST(GapProfile, EasyGaussian) {
    const auto p = gap_profile(test::easy_gaussian());
    EXPECT_DOUBLE_EQ(p.gaps[0], 0.5);
    EXPECT_DOUBLE_EQ(p.gaps[1], 0.5);
    EXPECT_DOUBLE_EQ(p.h, 8.0);
    ASSERT_TRUE(p.h_gauss);
    // H+ + H- carries the 2 sigma^2 factor of the Gaussian statements.
    EXPECT_DOUBLE_EQ(*p.h_gauss, 2.0 * 0.25 * p.h);
    EXPECT_DOUBLE_EQ(*p.h_plus + *p.h_minus, *p.h_gauss);
    EXPECT_DOUBLE_EQ(*p.h_plus, *p.h_minus);
}

TEST(GapProfile, HPrimeHandValue) {
    const auto p = gap_profile(gauss({1.0, 0.9, 0.5}, {0.25, 0.25, 0.25}));
    ASSERT_TRUE(p.h_prime);
    EXPECT_NEAR(*p.h_prime, 52.0, 1e-10);
}

TEST(GapProfile, HTildeDefinition) {
    const auto p = gap_profile(gauss({1.0, 0.8, 0.3, 0.1}, {0.5, 0.5, 0.5, 0.5}, 2));
    const double lo = std::min(*p.h_plus, *p.h_minus);
    const double h = *p.h_gauss;
    EXPECT_NEAR(*p.h_tilde, h * lo / (h + lo), 1e-12);
    EXPECT_NEAR(p.gaps[0], 0.7, 1e-15);
    EXPECT_NEAR(p.gaps[3], 0.7, 1e-15);
    EXPECT_NEAR(p.gaps[1], 0.5, 1e-15);
}

TEST(GapProfile, NonGaussianHasMeansOnlyTerms) {
    const auto p = gap_profile(bern({0.5, 0.4, 0.3}));
    EXPECT_FALSE(p.h_prime);
    EXPECT_FALSE(p.h_tilde);
    EXPECT_NEAR(p.h, 1 / 0.01 + 1 / 0.01 + 1 / 0.04, 1e-9);
    EXPECT_NEAR(p.h2, std::max(2 / 0.01, 3 / 0.04), 1e-9);
}

TEST(FcLowerBound, TwoArmedGaussian) {
    EXPECT_NEAR(fc_lower_bound_general(test::easy_gaussian(), 0.05), 4.0 * std::log(10.0), 1e-12);
    EXPECT_NEAR(fc_lower_bound_general(test::easy_gaussian(), 0.05), 9.2103, 1e-4);
}

TEST(FcLowerBound, DeltaDomain) {
    EXPECT_THROW(fc_lower_bound_general(test::easy_gaussian(), 0.5), Error);
    EXPECT_THROW(fc_lower_bound_general(test::easy_gaussian(), 0.0), Error);
    EXPECT_NO_THROW(fc_lower_bound_general(test::easy_gaussian(), 0.15));
}

TEST(FcLowerBound, ThreeArmedBernoulli) {
    EXPECT_NEAR(fc_lower_bound_general(bern({0.5, 0.4, 0.3}), 0.1), 178.34163690663457, 1e-9);
}

TEST(FcLowerBound, TwoArmedEqualsBregmanFormAndStaysBelowChernoff) {
    const auto fam = ExpFamily::bernoulli();
    for (double x = 0.15; x < 0.96; x += 0.1)
        for (double y = 0.05; y < x - 0.02; y += 0.1) {
            const auto nu = bern({x, y});
            const double t1 = fam.natural(x), t2 = fam.natural(y);
            const double l = std::log(1.0 / (2 * 0.05));
            const double v = fc_lower_bound_general(nu, 0.05);
            EXPECT_NEAR(v, l * (1 / fam.kl(t1, t2) + 1 / fam.kl(t2, t1)), 1e-9 * v);
            EXPECT_LE(v, l / c_star_fc(nu).value);
        }
}

TEST(FcLowerBound, DecreasingInDelta) {
    const auto nu = bern({0.5, 0.4, 0.3});
    double prev = INFINITY;
    for (double d : {0.001, 0.01, 0.05, 0.1, 0.15}) {
        const double v = fc_lower_bound_general(nu, d);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(EpsRelaxed, HandComposition) {
    EXPECT_NEAR(fc_lower_bound_eps_relaxed(bern({0.5, 0.3}), 0.1, 0.1), 8.7570873403817868, 1e-10);
}

TEST(EpsRelaxed, CountTerm) {
    const auto nu = bern({0.5, 0.45, 0.2});
    const double l = std::log(5.0);
    const double expect = (1.0 / bernoulli_kl(0.5, 0.4) + 1.0 / bernoulli_kl(0.2, 0.6)) * l;
    EXPECT_NEAR(fc_lower_bound_eps_relaxed(nu, 0.1, 0.1), expect, 1e-10);
}

TEST(EpsRelaxed, Domain) {
    EXPECT_THROW(fc_lower_bound_eps_relaxed(bern({0.95, 0.3}), 0.06, 0.1), Error);
    EXPECT_THROW(fc_lower_bound_eps_relaxed(test::easy_gaussian(), 0.1, 0.1), Error);
}

TEST(TwoArmedBounds, EasyGaussian) {
    const auto b = fc_two_armed_bounds(test::easy_gaussian(), 0.05);
    EXPECT_NEAR(b.general, 8.0 * std::log(10.0), 1e-12);
    EXPECT_NEAR(b.uniform, 8.0 * std::log(10.0), 1e-12);
    EXPECT_NEAR(b.general, 18.42, 0.01);
}

TEST(TwoArmedBounds, Bernoulli) {
    const auto b = fc_two_armed_bounds(bern({0.2, 0.1}), 0.1);
    EXPECT_NEAR(b.general, 161.13177911340335, 1e-8);
    EXPECT_GE(b.uniform, b.general);
}

TEST(ModifiedInstance, SingleArm) {
    const auto nu = gauss({1.0, 0.5}, {0.25, 0.25});
    const auto mod = fb_modified_instance(nu, 1);
    EXPECT_DOUBLE_EQ(mod.mean(0), 1.0);
    EXPECT_DOUBLE_EQ(mod.mean(1), 1.5);
    EXPECT_EQ(mod.best_arm(), 1u);
}

TEST(ModifiedInstance, Misuse) {
    const auto nu = gauss({1.0, 0.5, 0.2}, {0.25, 0.25, 0.25});
    EXPECT_THROW(fb_modified_instance(nu, 0), Error);
    EXPECT_THROW(fb_modified_instance(nu, 7), Error);
    EXPECT_THROW(fb_modified_instance(nu, 1, 2), Error);
    EXPECT_THROW(fb_modified_instance(bern({0.5, 0.2}), 1), Error);
    EXPECT_THROW(fb_modified_instance(gauss({1.0, 0.5, 0.2}, {0.25, 0.25, 0.25}, 2), 2), Error);
}

TEST(ModifiedInstance, SingleArmFlipsAndLowersHPrime) {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto nu = random_gaussian(gen, 2 + trial % 5, 1);
        const double hp = *gap_profile(nu).h_prime;
        for (std::size_t a = 0; a < nu.size(); ++a) {
            if (a == nu.best_arm()) continue;
            const auto mod = fb_modified_instance(nu, a);
            EXPECT_NE(best_set_of(mod), best_set_of(nu));
            EXPECT_LE(*gap_profile(mod).h_prime, hp * (1 + 1e-12));
        }
    }
}

TEST(ModifiedInstance, PairFlipsAndSomePairLowersH) {
    std::mt19937_64 gen(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 3 + trial % 4;
        const auto nu = random_gaussian(gen, k, 1 + trial % (k - 1));
        const double h = gap_profile(nu).h;
        bool lowered = false;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                if (!nu.in_best_set(a) || nu.in_best_set(b)) continue;
                try {
                    const auto mod = fb_modified_instance(nu, a, b);
                    EXPECT_NE(best_set_of(mod), best_set_of(nu));
                    lowered |= gap_profile(mod).h < h;
                } catch (const Error& e) {
                    // Moved arms may tie at the m-th place; such pairs are skipped.
                    EXPECT_EQ(e.code(), ErrorCode::DegenerateInstance);
                }
            }
        EXPECT_TRUE(lowered) << "trial " << trial;
    }
}

TEST(FbBounds, ZeroBudget) {
    const auto b = fb_error_lower_bounds(gap_profile(test::easy_gaussian()), 0);
    ASSERT_TRUE(b.m1);
    EXPECT_DOUBLE_EQ(*b.m1, 1.0);
    EXPECT_DOUBLE_EQ(b.general, 0.25);
}

TEST(FbBounds, EasyGaussian) {
    const auto p = gap_profile(test::easy_gaussian());
    // H' = 2 sigma^2 / gap^2 = 2
    EXPECT_DOUBLE_EQ(*p.h_prime, 2.0);
    const auto b = fb_error_lower_bounds(p, 100);
    // exp(-4t/H') with H' = 2; H~ = 4 * 2 / (4 + 2) = 4/3 gives exp(-300) / 4.
    EXPECT_NEAR(std::log(*b.m1), -200.0, 1e-12);
    EXPECT_NEAR(std::log(4.0 * b.general), -300.0, 1e-10);
}

TEST(FbBounds, HardInstanceApproachesOne) {
    const auto p = gap_profile(gauss({1e-4, 0.0}, {1.0, 1.0}));
    EXPECT_GT(*fb_error_lower_bounds(p, 10).m1, 0.9999);
}

TEST(FbBounds, DecreasingInBudget) {
    const auto p = gap_profile(gauss({1.0, 0.8, 0.3}, {0.5, 0.5, 0.5}));
    double prev_m1 = 2.0, prev = 2.0;
    for (std::uint64_t t : {1, 5, 10, 50}) {
        const auto b = fb_error_lower_bounds(p, t);
        EXPECT_LT(*b.m1, prev_m1);
        EXPECT_LT(b.general, prev);
        EXPECT_GT(b.general, 0.0);
        prev_m1 = *b.m1;
        prev = b.general;
    }
}

TEST(FbBounds, NeedsGaussianProfile) {
    EXPECT_THROW(fb_error_lower_bounds(gap_profile(bern({0.5, 0.2})), 10), Error);
}
