#pragma once

// Arm distributions, sampling and the divergence primitives shared by every
// other part of the library. All logarithms are natural.

#include <cstdint>
#include <random>
#include <variant>

namespace bai {

/// Explicitly advanced random state. Draws come from std::mt19937_64
/// (period 2^19937 - 1); Gaussian draws use std::normal_distribution, which
/// is the Marsaglia polar method in libstdc++. Sequences are reproducible
/// within one build, not across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    double normal(double mean, double sd) {
        return mean + sd * normal_(engine_);
    }
    bool bernoulli(double p) { return uniform() < p; }
    double exponential(double rate) {
        return std::exponential_distribution<double>(rate)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Open interval (lower, upper); infinite ends allowed.
struct Interval {
    double lower;
    double upper;
    bool contains(double x) const { return x > lower && x < upper; }
};

enum class FamilyId { Bernoulli, GaussianKnownVariance, Exponential };

const char* to_string(FamilyId id) noexcept;

/// Canonical one-parameter exponential family with densities
/// exp(theta * x - b(theta)) with respect to a fixed reference measure.
class ExpFamily {
public:
    static ExpFamily bernoulli();
    static ExpFamily gaussian(double variance);
    /// Exponential distributions, b(theta) = -log(-theta) on (-inf, 0).
    static ExpFamily exponential();

    FamilyId id() const noexcept { return id_; }
    /// Known variance of the Gaussian family; 0 for the others.
    double known_variance() const noexcept { return variance_; }

    Interval natural_domain() const;
    Interval mean_range() const;

    double log_partition(double theta) const;
    double mean(double theta) const;
    double variance(double theta) const;
    double natural(double mean) const;

    /// KL(nu_{theta1}, nu_{theta2}) in its Bregman form
    /// b(theta2) - b(theta1) - b'(theta1) (theta2 - theta1).
    double kl(double theta1, double theta2) const;

    friend bool operator==(const ExpFamily&, const ExpFamily&) = default;

private:
    ExpFamily(FamilyId id, double variance) : id_(id), variance_(variance) {}

    FamilyId id_;
    double variance_;
};

double nat_to_mean(const ExpFamily& family, double theta);
double mean_to_nat(const ExpFamily& family, double mean);

struct GaussianArm {
    double mean;
    double variance;
};

struct BernoulliArm {
    double mean;
};

struct ExpFamilyArm {
    ExpFamily family;
    double theta;
};

enum class ArmKind { Gaussian, Bernoulli, ExpFamily };

/// Smallest distance of a Bernoulli mean from {0, 1} accepted at construction.
inline constexpr double kBernoulliMargin = 1e-9;

class ArmDistribution {
public:
    using Params = std::variant<GaussianArm, BernoulliArm, ExpFamilyArm>;

    static ArmDistribution gaussian(double mean, double variance);
    static ArmDistribution bernoulli(double mean);
    static ArmDistribution exp_family(const ExpFamily& family, double theta);

    ArmKind kind() const noexcept {
        return static_cast<ArmKind>(params_.index());
    }
    const Params& params() const noexcept { return params_; }

    double mean() const;
    double variance() const;

    /// Same distribution but with its mean moved to `mean`; nuisance
    /// parameters (variance, family) are kept.
    ArmDistribution with_mean(double mean) const;

    /// True when both arms belong to the same parametric class, so that a
    /// KL divergence between them is defined by this library.
    bool same_family(const ArmDistribution& other) const;

    friend bool operator==(const ArmDistribution& a, const ArmDistribution& b);

private:
    explicit ArmDistribution(Params params) : params_(params) {}

    Params params_;
};

double sample(const ArmDistribution& dist, Rng& rng);

/// KL(p, q). Throws FamilyMismatch when p and q are from different classes.
double kl(const ArmDistribution& p, const ArmDistribution& q);

/// Binary relative entropy d(x, y) on [0, 1] x [0, 1] with 0 log 0 = 0.
/// Returns +inf when x is not absolutely continuous w.r.t. y.
double bernoulli_kl(double x, double y);

double binary_entropy(double x);

}  // namespace bai
