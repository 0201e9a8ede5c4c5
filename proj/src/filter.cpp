#include "stablefield/filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace stablefield {

FilterSpec make_gauss2d() {
    FilterSpec f;
    f.evaluate = [](std::span<const double> x) {
        return std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]));
    };
    f.dim = 2;
    // exp(-r^2/2) < 1e-12 beyond this radius
    f.effective_radius = std::sqrt(24.0 * std::log(10.0));
    f.delta = 1.0;
    f.smooth = true;
    f.name = "gauss2d";
    return f;
}

FilterSpec make_unit_box1d() {
    FilterSpec f;
    f.evaluate = [](std::span<const double> x) {
        return (x[0] >= 0.0 && x[0] < 1.0) ? 1.0 : 0.0;
    };
    f.dim = 1;
    f.effective_radius = 1.0;
    f.delta = 1.0;
    f.smooth = false;
    f.name = "box1d";
    return f;
}

FilterSpec make_radial_grid(std::vector<double> radii,
                            std::vector<double> values, int dim) {
    if (dim < 1) throw std::domain_error("radial filter: dim must be >= 1");
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::domain_error("radial filter: need matching grids of size >= 2");
    if (radii.front() != 0.0)
        throw std::domain_error("radial filter: radii must start at 0");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw std::domain_error("radial filter: radii must increase");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::domain_error("radial filter: values must be finite");

    FilterSpec f;
    f.dim = dim;
    f.effective_radius = radii.back();
    f.delta = 1.0;
    f.smooth = false;
    f.name = "radial_grid";
    f.evaluate = [radii = std::move(radii), values = std::move(values)](
                     std::span<const double> x) {
        double r2 = 0.0;
        for (double xi : x) r2 += xi * xi;
        const double r = std::sqrt(r2);
        if (r >= radii.back()) return 0.0;
        const auto it = std::upper_bound(radii.begin(), radii.end(), r);
        const std::size_t j = std::size_t(it - radii.begin());
        const double t = (r - radii[j - 1]) / (radii[j] - radii[j - 1]);
        return values[j - 1] + t * (values[j] - values[j - 1]);
    };
    return f;
}

FilterSpec filter_by_name(const std::string& name) {
    if (name == "gauss2d") return make_gauss2d();
    if (name == "box1d") return make_unit_box1d();
    throw std::domain_error("unknown filter: " + name);
}

std::vector<std::string> builtin_filter_names() { return {"gauss2d", "box1d"}; }

FilterSpec scaled_filter(const FilterSpec& base, double k) {
    FilterSpec f = base;
    f.evaluate = [inner = base.evaluate, k](std::span<const double> x) {
        return k * inner(x);
    };
    f.name = base.name + "_scaled";
    return f;
}

QuadratureOptions filter_quadrature_options(const FilterSpec& filter) {
    QuadratureOptions o;
    if (!filter.smooth) {
        // force subdivision fine enough to pin down jumps
        o.base_splits = 16;
        o.min_depth = filter.dim == 1 ? 8 : 5;
    }
    return o;
}

double lp_norm_pow(const FilterSpec& filter, double p) {
    if (!(p > 0.0)) throw std::domain_error("lp_norm_pow: p must be positive");
    QuadratureOptions o = filter_quadrature_options(filter);
    return integrate_cube(
        [&](std::span<const double> x) {
            return std::pow(std::abs(filter.evaluate(x)), p);
        },
        filter.dim, filter.effective_radius, o);
}

void validate_filter(const FilterSpec& filter) {
    if (!filter.evaluate) throw std::domain_error("filter: missing evaluate");
    if (filter.dim < 1) throw std::domain_error("filter: dim must be >= 1");
    if (!(filter.effective_radius > 0.0))
        throw std::domain_error("filter: effective_radius must be positive");
    if (!(filter.delta > 0.0) || !(filter.delta <= 1.0))
        throw std::domain_error("filter: delta must be in (0, 1]");
    QuadratureOptions o = filter_quadrature_options(filter);
    o.rel_tol = 1e-6;  // existence check, not a precision target
    const double norm = integrate_cube(
        [&](std::span<const double> x) {
            return std::pow(std::abs(filter.evaluate(x)), filter.delta);
        },
        filter.dim, filter.effective_radius, o);
    if (!std::isfinite(norm))
        throw std::domain_error("filter: |psi|^delta is not integrable");
}

}  // namespace stablefield
