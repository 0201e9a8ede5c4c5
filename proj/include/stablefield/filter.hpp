#pragma once

// Filter functions psi: R^d -> R with a finite effective support radius.
// Built-ins are registered by name; custom filters come in as radial
// profiles on a grid with linear interpolation.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stablefield/quadrature.hpp"

namespace stablefield {

struct FilterSpec {
    std::function<double(std::span<const double>)> evaluate;
    int dim = 0;
    double effective_radius = 0.0;  // |psi| < 1e-12 outside the cube
    double delta = 1.0;             // integrability exponent, in (0, 1]
    bool smooth = true;             // quadrature hint
    std::string name;
};

// psi(x1, x2) = exp(-(x1^2 + x2^2)/2)
FilterSpec make_gauss2d();

// psi = 1 on [0, 1), d = 1
FilterSpec make_unit_box1d();

// Radial profile with linear interpolation between grid radii; zero beyond
// the last radius. radii must start at 0 and increase.
FilterSpec make_radial_grid(std::vector<double> radii,
                            std::vector<double> values, int dim);

FilterSpec filter_by_name(const std::string& name);
std::vector<std::string> builtin_filter_names();

FilterSpec scaled_filter(const FilterSpec& base, double k);

// Quadrature defaults respecting the smoothness hint.
QuadratureOptions filter_quadrature_options(const FilterSpec& filter);

// integral of |psi|^p over the effective-support cube
double lp_norm_pow(const FilterSpec& filter, double p);

// Checks the L_delta integrability contract; throws std::domain_error.
void validate_filter(const FilterSpec& filter);

}  // namespace stablefield
