#include "stablefield/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace stablefield {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty())
        throw EmptySampleError("EmpiricalDistribution: no values");
    std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return double(it - values_.begin()) / double(values_.size());
}

double sample_mean(const MarkedSample& sample) {
    sample.validate();
    if (sample.marks.empty()) throw EmptySampleError("sample_mean: empty sample");
    double s = 0.0;
    for (double m : sample.marks) s += m;
    return s / double(sample.marks.size());
}

double sample_std(const MarkedSample& sample) {
    sample.validate();
    if (sample.marks.empty()) throw EmptySampleError("sample_std: empty sample");
    const double mean = sample_mean(sample);
    double ss = 0.0;
    for (double m : sample.marks) ss += (m - mean) * (m - mean);
    return std::sqrt(ss / double(sample.marks.size()));
}

double self_normalized(const MarkedSample& sample, double mu0) {
    const double sd = sample_std(sample);
    if (sd == 0.0)
        throw std::domain_error("self_normalized: degenerate sample (zero std)");
    return std::sqrt(double(sample.marks.size())) *
           (sample_mean(sample) - mu0) / sd;
}

double codifference(const FilterSpec& filter, double alpha,
                    std::span<const double> lag) {
    if (lag.size() != std::size_t(filter.dim))
        throw std::domain_error("codifference: lag dimension mismatch");
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("codifference: alpha must be in (0, 2]");

    const double norm = lp_norm_pow(filter, alpha);

    const double r = filter.effective_radius;
    std::vector<double> lo(lag.size()), hi(lag.size());
    for (std::size_t k = 0; k < lag.size(); ++k) {
        lo[k] = -r - std::abs(lag[k]);
        hi[k] = r + std::abs(lag[k]);
    }
    std::vector<double> shifted(lag.size());
    const double diff_norm = integrate_box(
        [&](std::span<const double> x) {
            for (std::size_t k = 0; k < lag.size(); ++k)
                shifted[k] = x[k] + lag[k];
            return std::pow(
                std::abs(filter.evaluate(shifted) - filter.evaluate(x)), alpha);
        },
        lo, hi, filter_quadrature_options(filter));

    return 2.0 * norm - diff_norm;
}

double quantile(const EmpiricalDistribution& dist, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("quantile: p must be in (0, 1)");
    const std::size_t n = dist.count();
    // snap products like 0.05 * 2000 that land a hair above an integer
    std::size_t k = std::size_t(std::ceil(p * double(n) - 1e-9));
    if (k < 1) k = 1;
    if (k > n) k = n;
    return dist.values()[k - 1];
}

double ks_distance(const EmpiricalDistribution& a,
                   const EmpiricalDistribution& b) {
    const auto va = a.values();
    const auto vb = b.values();
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < va.size() || j < vb.size()) {
        double x;
        if (j >= vb.size())
            x = va[i];
        else if (i >= va.size())
            x = vb[j];
        else
            x = std::min(va[i], vb[j]);
        while (i < va.size() && va[i] == x) ++i;
        while (j < vb.size() && vb[j] == x) ++j;
        d = std::max(d, std::abs(double(i) / double(va.size()) -
                                 double(j) / double(vb.size())));
    }
    return d;
}

double ks_critical(double level, std::size_t n, std::size_t m) {
    if (!(level > 0.0) || !(level < 1.0))
        throw std::domain_error("ks_critical: level must be in (0, 1)");
    if (n == 0 || m == 0) throw EmptySampleError("ks_critical: empty sample");
    const double c = std::sqrt(-0.5 * std::log(level / 2.0));
    return c * std::sqrt(double(n + m) / (double(n) * double(m)));
}

void write_values_csv(const EmpiricalDistribution& dist, std::ostream& out) {
    out << "value\n";
    char buf[64];
    for (double v : dist.values()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf << '\n';
    }
}

}  // namespace stablefield
