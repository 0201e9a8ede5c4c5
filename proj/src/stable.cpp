#include "stablefield/stable.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stablefield {

namespace {
constexpr double kPi = std::numbers::pi;
}

StableParams::StableParams(double alpha, double beta, double scale,
                           double location)
    : alpha(alpha), beta(beta), scale(scale), location(location) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("StableParams: alpha must be in (0, 2]");
    if (!(beta >= -1.0) || !(beta <= 1.0))
        throw std::domain_error("StableParams: beta must be in [-1, 1]");
    if (!(scale >= 0.0))
        throw std::domain_error("StableParams: scale must be nonnegative");
    if (!std::isfinite(location))
        throw std::domain_error("StableParams: location must be finite");
}

double sample_stable(const StableParams& p, Rng& rng) {
    const double a = p.alpha;
    double u;
    do {
        u = rng.uniform01();
    } while (u == 0.0);
    const double v = kPi * (u - 0.5);  // uniform on (-pi/2, pi/2)
    const double w = rng.exponential();

    double x;
    if (a == 2.0) {
        // beta is irrelevant; variance 2 at unit scale
        x = 2.0 * std::sin(v) * std::sqrt(w);
    } else if (p.beta == 0.0) {
        x = std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
            std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
    } else if (a != 1.0) {
        const double t = p.beta * std::tan(kPi * a / 2.0);
        const double b0 = std::atan(t) / a;
        const double s0 = std::pow(1.0 + t * t, 1.0 / (2.0 * a));
        x = s0 * std::sin(a * (v + b0)) / std::pow(std::cos(v), 1.0 / a) *
            std::pow(std::cos(v - a * (v + b0)) / w, (1.0 - a) / a);
    } else {
        const double g = kPi / 2.0 + p.beta * v;
        x = (2.0 / kPi) *
            (g * std::tan(v) -
             p.beta * std::log((kPi / 2.0) * w * std::cos(v) / g));
    }

    double out = p.scale * x + p.location;
    // scaling a skewed alpha = 1 law shifts its location
    if (a == 1.0 && p.beta != 0.0 && p.scale > 0.0)
        out += (2.0 / kPi) * p.beta * p.scale * std::log(p.scale);
    return out;
}

double c_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("c_alpha: alpha must be in (0, 2)");
    if (std::abs(alpha - 1.0) < 1e-14) return 2.0 / kPi;
    return (1.0 - alpha) /
           (std::tgamma(2.0 - alpha) * std::cos(kPi * alpha / 2.0));
}

double abs_moment_gaussian(double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("abs_moment_gaussian: alpha must be in (0, 2]");
    return std::pow(2.0, alpha / 2.0) * std::tgamma((alpha + 1.0) / 2.0) /
           std::sqrt(kPi);
}

}  // namespace stablefield
