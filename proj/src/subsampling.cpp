#include "stablefield/subsampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace stablefield {

void SubsampleConfig::validate() const {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("SubsampleConfig: c must be in (0, 1)");
    if (num_draws < 1 && grid_per_axis == 0)
        throw std::domain_error("SubsampleConfig: need at least one draw");
    if (method == Method::method1 && !(alpha > 1.0 && alpha <= 2.0))
        throw std::domain_error(
            "SubsampleConfig: method1 requires alpha in (1, 2]");
    if (!(tiny_sigma > 0.0))
        throw std::domain_error("SubsampleConfig: tiny_sigma must be positive");
}

double subsample_stat(std::size_t count, double dev_sum, double dev_sumsq,
                      const SubsampleConfig& config) {
    if (count == 0) return 0.0;
    const double n = double(count);
    const double centered_mean = dev_sum / n;  // mean_sub - full_mean
    if (config.method == Method::method1)
        return std::pow(n, 1.0 - 1.0 / config.alpha) * centered_mean;
    double var = dev_sumsq / n - centered_mean * centered_mean;
    if (var < 0.0) var = 0.0;
    double sd = std::sqrt(var);
    if (sd < config.tiny_sigma) sd = config.tiny_sigma;
    return std::sqrt(n) * centered_mean / sd;
}

double subsample_stat(const MarkedSample& sub, double full_mean,
                      const SubsampleConfig& config) {
    sub.validate();
    double ds = 0.0, dss = 0.0;
    for (double m : sub.marks) {
        const double d = m - full_mean;
        ds += d;
        dss += d * d;
    }
    return subsample_stat(sub.size(), ds, dss, config);
}

namespace {

std::vector<std::vector<double>> anchor_points(const Region& anchor,
                                               const SubsampleConfig& cfg,
                                               Rng& rng) {
    const std::size_t d = std::size_t(anchor.dim());
    std::vector<std::vector<double>> anchors;
    if (cfg.grid_per_axis > 0) {
        const std::size_t g = cfg.grid_per_axis;
        std::size_t total = 1;
        for (std::size_t k = 0; k < d; ++k) total *= g;
        anchors.reserve(total);
        std::vector<std::size_t> idx(d, 0);
        for (std::size_t n = 0; n < total; ++n) {
            std::vector<double> y(d);
            for (std::size_t k = 0; k < d; ++k) {
                const double frac = g == 1 ? 0.0 : double(idx[k]) / double(g - 1);
                y[k] = anchor.lower(int(k)) + frac * anchor.side(int(k));
            }
            anchors.push_back(std::move(y));
            for (std::size_t k = d; k-- > 0;) {
                if (++idx[k] < g) break;
                idx[k] = 0;
            }
        }
    } else {
        anchors.reserve(cfg.num_draws);
        for (std::size_t m = 0; m < cfg.num_draws; ++m) {
            std::vector<double> y(d);
            for (std::size_t k = 0; k < d; ++k)
                y[k] = anchor.lower(int(k)) +
                       anchor.side(int(k)) * rng.uniform01();
            anchors.push_back(std::move(y));
        }
    }
    return anchors;
}

}  // namespace

SubsamplingDistribution build_distribution(const MarkedSample& full,
                                           const SubsampleConfig& config,
                                           Rng& rng) {
    config.validate();
    full.validate();
    if (full.size() == 0)
        throw EmptySampleError("build_distribution: empty sample");

    const Erosion ero = erode(full.pattern.region, config.c);
    const double full_mean = sample_mean(full);
    const auto anchors = anchor_points(ero.anchor, config, rng);

    std::vector<double> stats;
    stats.reserve(anchors.size());
    std::size_t zero_blocks = 0;
    for (const auto& y : anchors) {
        std::size_t count = 0;
        double ds = 0.0, dss = 0.0;
        for (std::size_t i = 0; i < full.size(); ++i) {
            if (!in_block(full.pattern.point(i), y, ero.block)) continue;
            ++count;
            const double dev = full.marks[i] - full_mean;
            ds += dev;
            dss += dev * dev;
        }
        if (count == 0) ++zero_blocks;
        stats.push_back(subsample_stat(count, ds, dss, config));
    }

    SubsamplingDistribution out{EmpiricalDistribution(std::move(stats)), config,
                                double(zero_blocks) / double(anchors.size())};
    out.config.num_draws = out.stats.count();
    return out;
}

Interval ci_method1(const MarkedSample& full,
                    const SubsamplingDistribution& dist, double p,
                    double alpha) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("ci_method1: p must be in (0, 1)");
    if (dist.config.method != Method::method1)
        throw std::domain_error("ci_method1: distribution built for method2");
    if (std::abs(dist.config.alpha - alpha) > 1e-12)
        throw std::domain_error("ci_method1: alpha mismatch with distribution");
    if (full.size() == 0) throw EmptySampleError("ci_method1: empty sample");

    const double mu = sample_mean(full);
    const double rate = std::pow(double(full.size()), 1.0 / alpha - 1.0);
    return Interval{mu - quantile(dist.stats, 1.0 - p / 2.0) * rate,
                    mu - quantile(dist.stats, p / 2.0) * rate};
}

Interval ci_method2(const MarkedSample& full,
                    const SubsamplingDistribution& dist, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("ci_method2: p must be in (0, 1)");
    if (dist.config.method != Method::method2)
        throw std::domain_error("ci_method2: distribution built for method1");
    if (full.size() == 0) throw EmptySampleError("ci_method2: empty sample");

    const double mu = sample_mean(full);
    const double half = sample_std(full) / std::sqrt(double(full.size()));
    return Interval{mu - quantile(dist.stats, 1.0 - p / 2.0) * half,
                    mu - quantile(dist.stats, p / 2.0) * half};
}

nlohmann::json ci_json_record(const SubsamplingDistribution& dist,
                              const Interval& ci, double p) {
    char key[32];
    nlohmann::json quantiles;
    std::snprintf(key, sizeof(key), "%g", p / 2.0);
    quantiles[key] = quantile(dist.stats, p / 2.0);
    std::snprintf(key, sizeof(key), "%g", 1.0 - p / 2.0);
    quantiles[key] = quantile(dist.stats, 1.0 - p / 2.0);
    return nlohmann::json{
        {"method", int(dist.config.method)},
        {"c", dist.config.c},
        {"M", dist.config.num_draws},
        {"quantiles", quantiles},
        {"ci_lower", ci.lower},
        {"ci_upper", ci.upper},
        {"zero_count_fraction", dist.zero_count_fraction},
    };
}

}  // namespace stablefield
