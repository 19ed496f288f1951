#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bai/dists.hpp"

namespace bai {

/// Ordered list of K >= 2 arms from one family together with the number m of
/// best arms to identify. Arm indices are 0-based and always refer to the
/// caller's order; the decreasing-mean order is kept as a stable permutation.
class BanditInstance {
public:
    BanditInstance(std::vector<ArmDistribution> arms, std::size_t m = 1);

    static BanditInstance gaussian(std::span<const double> means,
                                   std::span<const double> variances,
                                   std::size_t m = 1);
    static BanditInstance bernoulli(std::span<const double> means, std::size_t m = 1);

    std::size_t size() const noexcept { return arms_.size(); }
    std::size_t m() const noexcept { return m_; }
    const ArmDistribution& arm(std::size_t a) const { return arms_.at(a); }
    const std::vector<ArmDistribution>& arms() const noexcept { return arms_; }
    ArmKind kind() const noexcept { return arms_.front().kind(); }

    double mean(std::size_t a) const { return arms_.at(a).mean(); }
    std::vector<double> means() const;

    /// Arm indices sorted by decreasing mean (ties keep the caller's order).
    const std::vector<std::size_t>& order() const noexcept { return order_; }
    /// Index of the j-th best arm, j in [1, K].
    std::size_t ranked(std::size_t j) const { return order_.at(j - 1); }
    /// Mean of the j-th best arm, j in [1, K].
    double ranked_mean(std::size_t j) const { return mean(ranked(j)); }

    bool in_best_set(std::size_t a) const;
    /// The m best arms, in decreasing-mean order.
    std::vector<std::size_t> best_set() const;
    std::size_t best_arm() const { return order_.front(); }

    /// Common variance when every arm is Gaussian with the same variance.
    std::optional<double> common_gaussian_variance() const;

    /// Copy with arm `a` replaced by the same distribution moved to `mean`.
    BanditInstance with_arm_mean(std::size_t a, double mean) const;

private:
    std::vector<ArmDistribution> arms_;
    std::size_t m_;
    std::vector<std::size_t> order_;
};

}  // namespace bai
