#include "stablefield/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stablefield/stable.hpp"

namespace stablefield {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxDim = 16;
}  // namespace

void ModelSpec::validate() const {
    if (!filter.evaluate || filter.dim < 1 || filter.dim > kMaxDim)
        throw std::domain_error("ModelSpec: bad filter");
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw std::domain_error("ModelSpec: alpha must be in (0, 2)");
    if (!std::isfinite(mu)) throw std::domain_error("ModelSpec: mu not finite");
    if (!center.empty() && center.size() != std::size_t(filter.dim))
        throw std::domain_error("ModelSpec: center dimension mismatch");
}

double cauchy_product_density(std::span<const double> u) {
    double q = 1.0;
    for (double ui : u) q *= kPi * (1.0 + ui * ui);
    return 1.0 / q;
}

SeriesRealization SeriesRealization::truncated(std::size_t new_terms) const {
    if (new_terms > terms())
        throw std::domain_error("truncated: more terms than available");
    SeriesRealization r;
    r.signs.assign(signs.begin(), signs.begin() + std::ptrdiff_t(new_terms));
    r.arrivals.assign(arrivals.begin(),
                      arrivals.begin() + std::ptrdiff_t(new_terms));
    r.locations.assign(
        locations.begin(),
        locations.begin() + std::ptrdiff_t(new_terms * std::size_t(dim)));
    r.weights.assign(weights.begin(),
                     weights.begin() + std::ptrdiff_t(new_terms));
    r.dim = dim;
    r.alpha = alpha;
    r.c_alpha_root = c_alpha_root;
    return r;
}

SeriesRealization draw_realization(const ModelSpec& model, std::size_t terms,
                                   Rng& rng) {
    model.validate();
    if (terms < 1) throw std::domain_error("draw_realization: terms must be >= 1");

    const int d = model.filter.dim;
    const double a = model.alpha;
    SeriesRealization r;
    r.dim = d;
    r.alpha = a;
    r.c_alpha_root = std::pow(c_alpha(a), 1.0 / a);
    r.signs.reserve(terms);
    r.arrivals.reserve(terms);
    r.locations.reserve(terms * std::size_t(d));
    r.weights.reserve(terms);

    double gamma = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        const int sign = rng.rademacher();
        gamma += rng.exponential();
        double qprod = 1.0;  // 1 / q(U_i)
        for (int k = 0; k < d; ++k) {
            const double u = rng.cauchy();
            r.locations.push_back(u);
            qprod *= kPi * (1.0 + u * u);
        }
        r.signs.push_back(sign);
        r.arrivals.push_back(gamma);
        r.weights.push_back(sign * std::pow(gamma, -1.0 / a) *
                            std::pow(qprod, 1.0 / a));
    }
    return r;
}

double eval_mark(const SeriesRealization& realization, const ModelSpec& model,
                 std::span<const double> t) {
    const int d = realization.dim;
    if (model.filter.dim != d || t.size() != std::size_t(d))
        throw std::domain_error("eval_mark: dimension mismatch");
    if (std::abs(model.alpha - realization.alpha) > 1e-12)
        throw std::domain_error("eval_mark: alpha mismatch with realization");

    double shift[kMaxDim];
    for (int k = 0; k < d; ++k) {
        const double v = model.center.empty() ? 0.0 : model.center[std::size_t(k)];
        shift[k] = t[std::size_t(k)] - v;
    }

    double x[kMaxDim];
    double sum = 0.0;
    const std::size_t n = realization.terms();
    const double* loc = realization.locations.data();
    for (std::size_t i = 0; i < n; ++i, loc += d) {
        for (int k = 0; k < d; ++k) x[k] = loc[k] + shift[k];
        const double psi = model.filter.evaluate({x, std::size_t(d)});
        if (psi != 0.0) sum += realization.weights[i] * psi;
    }
    return model.mu + realization.c_alpha_root * sum;
}

std::vector<double> eval_marks(const SeriesRealization& realization,
                               const ModelSpec& model,
                               const PointPattern& pattern) {
    std::vector<double> marks(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i)
        marks[i] = eval_mark(realization, model, pattern.point(i));
    return marks;
}

double sigma_psi(const FilterSpec& filter, double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("sigma_psi: alpha must be in (0, 2]");
    return std::pow(lp_norm_pow(filter, alpha), 1.0 / alpha);
}

}  // namespace stablefield
