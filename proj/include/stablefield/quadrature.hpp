#pragma once

// Adaptive quadrature over axis-aligned boxes. One-dimensional integrals use
// recursive adaptive Simpson; higher dimensions integrate axis by axis. The
// min_depth knob forces subdivision before an interval may be accepted, which
// keeps discontinuous integrands (indicator or gridded filters) honest.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace stablefield {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    int base_splits = 8;   // initial uniform panels per axis
    int min_depth = 2;     // forced subdivision below each base panel
    int max_depth = 45;
    long long max_evals = 200'000'000;  // per integrate_box call
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, long long evals_used)
        : std::runtime_error(what), evals_used(evals_used) {}
    long long evals_used;
};

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lo, std::span<const double> hi,
                     const QuadratureOptions& opts = {});

// Integral over the centered cube [-radius, radius]^dim.
double integrate_cube(const std::function<double(std::span<const double>)>& f,
                      int dim, double radius,
                      const QuadratureOptions& opts = {});

}  // namespace stablefield
