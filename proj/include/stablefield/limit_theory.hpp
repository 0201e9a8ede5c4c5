#pragma once

// Monte Carlo and quadrature evaluation of the limiting-law parameters for
// normalized means and variances of the marked field, used as oracles by
// the acceptance suite.

#include <cstddef>
#include <stdexcept>

#include "stablefield/filter.hpp"
#include "stablefield/rng.hpp"

namespace stablefield {

enum class PowerMode {
    mean_abs_alpha,     // E | sum psi(s_i) |^alpha
    square,             // E ( sum psi(s_i) )^2
    sq_sum_alpha_half,  // E ( sum psi^2(s_i) )^{alpha/2}
};

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t draws = 0;
};

// Expectation of a functional of a homogeneous Poisson process with
// intensity r, scattered on the filter's effective-support cube.
MonteCarloEstimate poisson_functional_moment(const FilterSpec& filter, double r,
                                             double alpha, PowerMode mode,
                                             std::size_t draws, Rng& rng,
                                             int workers = 1);

// Scale of the limiting law of the normalized sample mean:
// (r^{-1} E|integral psi dN|^alpha)^{1/alpha}.
MonteCarloEstimate limit_scale_mean(const FilterSpec& filter, double r,
                                    double alpha, std::size_t draws, Rng& rng,
                                    int workers = 1);

struct DegenerateLimitError : std::runtime_error {
    DegenerateLimitError(const std::string& what, double point_mass)
        : std::runtime_error(what), point_mass(point_mass) {}
    double point_mass;  // location of the degenerate limit
};

// Scale of the alpha/2-stable limit of the normalized sample variance:
// 2 (cos(pi alpha/4) E[integral psi^2 dN]^{alpha/2} E|G|^alpha)^{2/alpha}.
// Throws DegenerateLimitError at alpha = 2 carrying 2 r integral psi^2.
MonteCarloEstimate limit_scale_variance(const FilterSpec& filter, double r,
                                        double alpha, std::size_t draws,
                                        Rng& rng, int workers = 1);

// Variance of the Gaussian-case limit: r * integral tau(t) dt + tau(0) with
// tau(t) = 2 integral psi(x) psi(x+t) dx, by nested quadrature.
double gaussian_limit_variance(const FilterSpec& filter, double r = 1.0);

struct CodifferenceGap {
    double functional_moment = 0.0;  // E|integral psi dN|^alpha
    double moment_se = 0.0;
    double codifference_side = 0.0;  // (integral tau + tau(0)) / 2
    double gap = 0.0;                // |difference of the two sides|
};

// Measures how far E|integral psi dN|^alpha is from the codifference-based
// expression that matches it only at alpha = 2.
CodifferenceGap codifference_gap(const FilterSpec& filter, double alpha, double r,
                       std::size_t draws, Rng& rng, int workers = 1);

// ||a|^a - |b|^a| <= |a-b|^a  (alpha <= 1), with the extra
// 2 max(|a|,|b|)^{a/2} |a-b|^{a/2} term for alpha in (1, 2].
bool power_diff_bound_holds(double a, double b, double alpha);

struct LimitParams {
    double scale_mean = 0.0;
    double scale_variance = 0.0;
    double phi = 0.0;   // integral psi
    double phi2 = 0.0;  // sqrt(integral psi^2)
    std::size_t mc_draws = 0;
    double mc_standard_error = 0.0;  // largest of the component errors
};

// Bundles the limit parameters for alpha in (0, 2).
LimitParams compute_limit_params(const FilterSpec& filter, double r,
                                 double alpha, std::size_t draws, Rng& rng,
                                 int workers = 1);

}  // namespace stablefield
