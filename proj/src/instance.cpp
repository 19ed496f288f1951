#include "bai/instance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bai/error.hpp"

namespace bai {

BanditInstance::BanditInstance(std::vector<ArmDistribution> arms, std::size_t m)
    : arms_(std::move(arms)), m_(m) {
    if (arms_.size() < 2)
        fail(ErrorCode::Domain, "a bandit instance needs at least two arms");
    if (m_ < 1 || m_ >= arms_.size())
        fail(ErrorCode::Domain, "m must satisfy 1 <= m < K");
    for (const auto& arm : arms_)
        if (!arm.same_family(arms_.front()))
            fail(ErrorCode::FamilyMismatch, "all arms of an instance must share one family");

    order_.resize(arms_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
        return arms_[a].mean() > arms_[b].mean();
    });
    if (!(ranked_mean(m_) > ranked_mean(m_ + 1)))
        fail(ErrorCode::DegenerateInstance,
             "the m-th and (m+1)-th best means coincide; the best set is not identifiable");
}

BanditInstance BanditInstance::gaussian(std::span<const double> means,
                                        std::span<const double> variances, std::size_t m) {
    if (means.size() != variances.size())
        fail(ErrorCode::Domain, "means and variances must have the same length");
    std::vector<ArmDistribution> arms;
    arms.reserve(means.size());
    for (std::size_t a = 0; a < means.size(); ++a)
        arms.push_back(ArmDistribution::gaussian(means[a], variances[a]));
    return BanditInstance(std::move(arms), m);
}

BanditInstance BanditInstance::bernoulli(std::span<const double> means, std::size_t m) {
    std::vector<ArmDistribution> arms;
    arms.reserve(means.size());
    for (double mu : means) arms.push_back(ArmDistribution::bernoulli(mu));
    return BanditInstance(std::move(arms), m);
}

std::vector<double> BanditInstance::means() const {
    std::vector<double> out;
    out.reserve(arms_.size());
    for (const auto& arm : arms_) out.push_back(arm.mean());
    return out;
}

bool BanditInstance::in_best_set(std::size_t a) const {
    const auto top = order_.begin() + static_cast<std::ptrdiff_t>(m_);
    return std::find(order_.begin(), top, a) != top;
}

std::vector<std::size_t> BanditInstance::best_set() const {
    return {order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(m_)};
}

std::optional<double> BanditInstance::common_gaussian_variance() const {
    if (kind() != ArmKind::Gaussian) return std::nullopt;
    const double v = arms_.front().variance();
    for (const auto& arm : arms_)
        if (arm.variance() != v) return std::nullopt;
    return v;
}

BanditInstance BanditInstance::with_arm_mean(std::size_t a, double mean) const {
    auto arms = arms_;
    arms.at(a) = arms.at(a).with_mean(mean);
    return BanditInstance(std::move(arms), m_);
}

}  // namespace bai
