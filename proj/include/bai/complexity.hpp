#pragma once

// Informational complexity of two-armed models.
//
//   c_star_fc  inf over reversed models of max(KL(nu_1, nu_1'), KL(nu_2, nu_2'))
//   i_star_fc  same infimum of the average; governs uniform sampling
//   c_star_fb  inf over reversed models of max(KL(nu_1', nu_1), KL(nu_2', nu_2))
//   i_star_fb  same infimum of the average
//
// For a one-parameter exponential family the fixed-confidence quantity is the
// reversed Chernoff value K_*(theta1, theta2) = K(theta1, theta_*) with
// K(theta1, theta_*) = K(theta2, theta_*), and the fixed-budget one is the
// Chernoff information K^*(theta1, theta2) = K(theta^*, theta1) with
// K(theta^*, theta1) = K(theta^*, theta2). Gaussian arms with known (possibly
// different) variances use their closed forms.

#include "bai/dists.hpp"
#include "bai/instance.hpp"

namespace bai {

/// Value of a two-sided infimum together with the common point where the two
/// divergences cross. For exponential families `natural` is the crossing
/// natural parameter; for Gaussian arms both fields hold the crossing mean.
struct Crossing {
    double value;
    double mean;
    double natural;
};

struct TwoArmedComplexityReport {
    double c_star_fc;
    double i_star_fc;
    double c_star_fb;
    double i_star_fb;
    double theta_star_reversed;
    double theta_star_chernoff;
    double kappa_c_lower;  // 1 / c_star_fc
    double kappa_b;        // 1 / c_star_fb
};

/// Bisection limits shared by every crossing solver.
inline constexpr int kBisectionMaxIter = 200;
inline constexpr double kBisectionRelTol = 1e-12;

Crossing c_star_fc(const BanditInstance& nu);
double i_star_fc(const BanditInstance& nu);
Crossing c_star_fb(const BanditInstance& nu);
double i_star_fb(const BanditInstance& nu);

TwoArmedComplexityReport complexity_report(const BanditInstance& nu);

/// Exponential-family forms on natural parameters.
Crossing reversed_chernoff(const ExpFamily& family, double theta1, double theta2);
Crossing chernoff_information(const ExpFamily& family, double theta1, double theta2);
double uniform_fc_rate(const ExpFamily& family, double theta1, double theta2);
double uniform_fb_rate(const ExpFamily& family, double theta1, double theta2);

/// Error exponent of a static allocation putting a fraction alpha of the
/// budget on the arm with parameter theta1.
double g_alpha(const ExpFamily& family, double theta1, double theta2, double alpha);

struct OptimalAlpha {
    double alpha;     // fraction of draws for the theta1 arm
    double value;     // g at alpha, equal to the Chernoff information
    double crossing;  // alpha theta1 + (1 - alpha) theta2
};

/// Numerical maximizer of g_alpha (golden section to 1e-10 on alpha). The
/// result is checked against the Chernoff crossing:
/// alpha = (theta^* - theta2) / (theta1 - theta2) and g = K^* to 1e-8.
OptimalAlpha optimal_alpha(const ExpFamily& family, double theta1, double theta2);

/// Natural-parameter view of a two-armed exponential-family instance
/// (Bernoulli arms map to the Bernoulli family). Throws Domain for Gaussian
/// arms, which are handled by closed forms.
struct ExpFamilyPair {
    ExpFamily family;
    double theta1;
    double theta2;
};
ExpFamilyPair as_exp_family_pair(const BanditInstance& nu);

}  // namespace bai
