#pragma once

// Univariate alpha-stable primitives under the scale convention where
// alpha = 2 with scale sigma means a Gaussian with variance 2*sigma^2.

#include "stablefield/rng.hpp"

namespace stablefield {

struct StableParams {
    double alpha;     // (0, 2]
    double beta;      // [-1, 1], ignored when alpha == 2
    double scale;     // >= 0
    double location;  // real

    StableParams(double alpha, double beta, double scale,
                 double location = 0.0);
};

// One draw by the Chambers-Mallows-Stuck transform.
double sample_stable(const StableParams& params, Rng& rng);

// (integral_0^inf x^{-alpha} sin x dx)^{-1}, alpha in (0, 2).
double c_alpha(double alpha);

// E|G|^alpha for standard normal G, alpha in (0, 2].
double abs_moment_gaussian(double alpha);

}  // namespace stablefield
