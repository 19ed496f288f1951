#include "bai/dists.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bai/error.hpp"

namespace bai {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double softplus(double x) {
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// a log(a / b) with 0 log 0 = 0.
double xlogx_ratio(double a, double b) {
    if (a == 0.0) return 0.0;
    if (b == 0.0) return kInf;
    return a * std::log(a / b);
}

std::string describe(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

const char* to_string(FamilyId id) noexcept {
    switch (id) {
    case FamilyId::Bernoulli: return "bernoulli";
    case FamilyId::GaussianKnownVariance: return "gaussian";
    case FamilyId::Exponential: return "exponential";
    }
    return "unknown";
}

ExpFamily ExpFamily::bernoulli() { return {FamilyId::Bernoulli, 0.0}; }

ExpFamily ExpFamily::gaussian(double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        fail(ErrorCode::Domain, "gaussian variance must be positive, got " + describe(variance));
    return {FamilyId::GaussianKnownVariance, variance};
}

ExpFamily ExpFamily::exponential() { return {FamilyId::Exponential, 0.0}; }

Interval ExpFamily::natural_domain() const {
    if (id_ == FamilyId::Exponential) return {-kInf, 0.0};
    return {-kInf, kInf};
}

Interval ExpFamily::mean_range() const {
    switch (id_) {
    case FamilyId::Bernoulli: return {0.0, 1.0};
    case FamilyId::GaussianKnownVariance: return {-kInf, kInf};
    case FamilyId::Exponential: return {0.0, kInf};
    }
    return {-kInf, kInf};
}

double ExpFamily::log_partition(double theta) const {
    switch (id_) {
    case FamilyId::Bernoulli: return softplus(theta);
    case FamilyId::GaussianKnownVariance: return 0.5 * variance_ * theta * theta;
    case FamilyId::Exponential: return -std::log(-theta);
    }
    return 0.0;
}

double ExpFamily::mean(double theta) const {
    switch (id_) {
    case FamilyId::Bernoulli: return sigmoid(theta);
    case FamilyId::GaussianKnownVariance: return variance_ * theta;
    case FamilyId::Exponential: return -1.0 / theta;
    }
    return 0.0;
}

double ExpFamily::variance(double theta) const {
    switch (id_) {
    case FamilyId::Bernoulli: {
        const double mu = sigmoid(theta);
        return mu * (1.0 - mu);
    }
    case FamilyId::GaussianKnownVariance: return variance_;
    case FamilyId::Exponential: return 1.0 / (theta * theta);
    }
    return 0.0;
}

double ExpFamily::natural(double mean) const {
    switch (id_) {
    case FamilyId::Bernoulli: return std::log(mean) - std::log1p(-mean);
    case FamilyId::GaussianKnownVariance: return mean / variance_;
    case FamilyId::Exponential: return -1.0 / mean;
    }
    return 0.0;
}

double ExpFamily::kl(double theta1, double theta2) const {
    if (id_ == FamilyId::GaussianKnownVariance) {
        const double d = theta1 - theta2;
        return 0.5 * variance_ * d * d;
    }
    const double value = log_partition(theta2) - log_partition(theta1)
                         - mean(theta1) * (theta2 - theta1);
    // Rounding can leave a tiny negative residue when theta1 ~ theta2.
    return value > 0.0 ? value : 0.0;
}

double nat_to_mean(const ExpFamily& family, double theta) {
    if (!family.natural_domain().contains(theta))
        fail(ErrorCode::Domain, std::string("natural parameter outside the domain of the ")
                                    + to_string(family.id()) + " family: " + describe(theta));
    return family.mean(theta);
}

double mean_to_nat(const ExpFamily& family, double mean) {
    if (!family.mean_range().contains(mean))
        fail(ErrorCode::Domain, std::string("mean outside the range of the ")
                                    + to_string(family.id()) + " family: " + describe(mean));
    return family.natural(mean);
}

ArmDistribution ArmDistribution::gaussian(double mean, double variance) {
    if (!std::isfinite(mean))
        fail(ErrorCode::Domain, "gaussian mean must be finite");
    if (!(variance > 0.0) || !std::isfinite(variance))
        fail(ErrorCode::Domain, "gaussian variance must be positive, got " + describe(variance));
    return ArmDistribution(GaussianArm{mean, variance});
}

ArmDistribution ArmDistribution::bernoulli(double mean) {
    if (!(mean >= kBernoulliMargin && mean <= 1.0 - kBernoulliMargin))
        fail(ErrorCode::Domain, "bernoulli mean must lie in [1e-9, 1-1e-9], got " + describe(mean));
    return ArmDistribution(BernoulliArm{mean});
}

ArmDistribution ArmDistribution::exp_family(const ExpFamily& family, double theta) {
    if (!family.natural_domain().contains(theta))
        fail(ErrorCode::Domain, std::string("natural parameter outside the domain of the ")
                                    + to_string(family.id()) + " family: " + describe(theta));
    return ArmDistribution(ExpFamilyArm{family, theta});
}

double ArmDistribution::mean() const {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ExpFamilyArm>)
                return p.family.mean(p.theta);
            else
                return p.mean;
        },
        params_);
}

double ArmDistribution::variance() const {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianArm>)
                return p.variance;
            else if constexpr (std::is_same_v<T, BernoulliArm>)
                return p.mean * (1.0 - p.mean);
            else
                return p.family.variance(p.theta);
        },
        params_);
}

ArmDistribution ArmDistribution::with_mean(double mean) const {
    return std::visit(
        [mean](const auto& p) -> ArmDistribution {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianArm>)
                return gaussian(mean, p.variance);
            else if constexpr (std::is_same_v<T, BernoulliArm>)
                return bernoulli(mean);
            else
                return exp_family(p.family, mean_to_nat(p.family, mean));
        },
        params_);
}

bool ArmDistribution::same_family(const ArmDistribution& other) const {
    if (kind() != other.kind()) return false;
    if (kind() == ArmKind::ExpFamily)
        return std::get<ExpFamilyArm>(params_).family
               == std::get<ExpFamilyArm>(other.params_).family;
    return true;
}

bool operator==(const ArmDistribution& a, const ArmDistribution& b) {
    if (!a.same_family(b)) return false;
    switch (a.kind()) {
    case ArmKind::Gaussian: {
        const auto& x = std::get<GaussianArm>(a.params_);
        const auto& y = std::get<GaussianArm>(b.params_);
        return x.mean == y.mean && x.variance == y.variance;
    }
    case ArmKind::Bernoulli:
        return std::get<BernoulliArm>(a.params_).mean == std::get<BernoulliArm>(b.params_).mean;
    case ArmKind::ExpFamily:
        return std::get<ExpFamilyArm>(a.params_).theta == std::get<ExpFamilyArm>(b.params_).theta;
    }
    return false;
}

double sample(const ArmDistribution& dist, Rng& rng) {
    return std::visit(
        [&rng](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianArm>) {
                return rng.normal(p.mean, std::sqrt(p.variance));
            } else if constexpr (std::is_same_v<T, BernoulliArm>) {
                return rng.bernoulli(p.mean) ? 1.0 : 0.0;
            } else {
                switch (p.family.id()) {
                case FamilyId::Bernoulli:
                    return rng.bernoulli(p.family.mean(p.theta)) ? 1.0 : 0.0;
                case FamilyId::GaussianKnownVariance:
                    return rng.normal(p.family.mean(p.theta),
                                      std::sqrt(p.family.known_variance()));
                case FamilyId::Exponential:
                    return rng.exponential(-p.theta);
                }
                return 0.0;
            }
        },
        dist.params());
}

double kl(const ArmDistribution& p, const ArmDistribution& q) {
    if (!p.same_family(q))
        fail(ErrorCode::FamilyMismatch, "kl requires both distributions in the same family");
    switch (p.kind()) {
    case ArmKind::Gaussian: {
        const auto& a = std::get<GaussianArm>(p.params());
        const auto& b = std::get<GaussianArm>(q.params());
        const double d = a.mean - b.mean;
        const double r = a.variance / b.variance;
        return d * d / (2.0 * b.variance) + 0.5 * (r - 1.0 - std::log(r));
    }
    case ArmKind::Bernoulli:
        return bernoulli_kl(std::get<BernoulliArm>(p.params()).mean,
                            std::get<BernoulliArm>(q.params()).mean);
    case ArmKind::ExpFamily: {
        const auto& a = std::get<ExpFamilyArm>(p.params());
        const auto& b = std::get<ExpFamilyArm>(q.params());
        return a.family.kl(a.theta, b.theta);
    }
    }
    return 0.0;
}

double bernoulli_kl(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0))
        fail(ErrorCode::Domain, "bernoulli_kl arguments must lie in [0, 1]");
    return xlogx_ratio(x, y) + xlogx_ratio(1.0 - x, 1.0 - y);
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        fail(ErrorCode::Domain, "binary_entropy argument must lie in [0, 1], got " + describe(x));
    double h = 0.0;
    if (x > 0.0) h -= x * std::log(x);
    if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
    return h;
}

}  // namespace bai
