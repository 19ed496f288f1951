#pragma once

// Fixed-budget static strategies: a predetermined number of draws per arm,
// then recommend the empirical best arm.

#include <cstdint>

#include "bai/dists.hpp"
#include "bai/fc_algos.hpp"
#include "bai/instance.hpp"

namespace bai {

struct StaticAllocation {
    std::uint64_t n1;
    std::uint64_t n2;

    std::uint64_t budget() const noexcept { return n1 + n2; }
};

/// n1 = ceil(sigma1 t / (sigma1 + sigma2)) clamped to [1, t-1]; takes
/// standard deviations.
StaticAllocation gaussian_allocation(double sigma1, double sigma2, std::uint64_t t);

/// n1 = ceil(alpha* t) clamped to [1, t-1], alpha* from optimal_alpha.
StaticAllocation expfam_allocation(const ExpFamily& family, double theta1, double theta2,
                                   std::uint64_t t);

/// (ceil(t/2), floor(t/2)).
StaticAllocation uniform_allocation(std::uint64_t t);

/// Optimal static allocation for the instance's family.
StaticAllocation optimal_allocation(const BanditInstance& nu, std::uint64_t t);

RunOutcome run_static(const BanditInstance& nu, const StaticAllocation& alloc, Rng& rng);

/// Closed-form upper bound on the error probability of the allocation.
double theoretical_error_bound(const BanditInstance& nu, const StaticAllocation& alloc);

}  // namespace bai
