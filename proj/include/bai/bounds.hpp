#pragma once

// Lower bounds on the sample complexity (fixed confidence) and on the error
// probability (fixed budget), plus the modified instances used to derive the
// fixed-budget bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bai/instance.hpp"

namespace bai {

struct GapProfile {
    std::vector<double> gaps;  // per arm, caller's order
    double h;                  // sum of 1 / gap^2
    double h2;                 // max_i i / (mu_[1] - mu_[i])^2 over suboptimal i
    // Common-variance Gaussian instances only.
    std::optional<double> h_prime;  // needs mu_[1] > mu_[2]
    std::optional<double> h_plus;
    std::optional<double> h_minus;
    std::optional<double> h_gauss;  // h_plus + h_minus (= 2 sigma^2 h)
    std::optional<double> h_tilde;
};

GapProfile gap_profile(const BanditInstance& nu);

/// Bound holds for any delta-PAC algorithm when delta <= 0.15 and the model
/// class satisfies the usual identifiability assumption.
double fc_lower_bound_general(const BanditInstance& nu, double delta);

/// Bound for epsilon-relaxed identification of the best Bernoulli arm.
double fc_lower_bound_eps_relaxed(const BanditInstance& nu, double epsilon, double delta);

struct TwoArmedFcBounds {
    double general;  // log(1/(2 delta)) / c_star_fc
    double uniform;  // log(1/(2 delta)) / i_star_fc
};

TwoArmedFcBounds fc_two_armed_bounds(const BanditInstance& nu, double delta);

/// nu^[a] when `b` is empty (m = 1, a not the best arm): arm a moved to
/// mu_a + 2 gap_a. nu^[a,b] otherwise (a in the best set, b outside): arm a
/// moved down by 2 gap_b and arm b up by 2 gap_a.
BanditInstance fb_modified_instance(const BanditInstance& nu, std::size_t a,
                                    std::optional<std::size_t> b = std::nullopt);

struct FbErrorBounds {
    std::optional<double> m1;  // exp(-4t / H'), single best arm
    double general;            // exp(-4t / H~) / 4
};

FbErrorBounds fb_error_lower_bounds(const GapProfile& profile, std::uint64_t budget);

}  // namespace bai
