#pragma once

// Subsampling distribution estimators over translated blocks B+y and the
// two confidence-interval constructions they calibrate. Method 1 rescales
// centered block means by N^{1-1/alpha} (alpha known); Method 2 uses the
// self-normalized statistic, so no alpha enters.

#include <cstddef>

#include "json.hpp"
#include "stablefield/statistics.hpp"

namespace stablefield {

enum class Method { method1 = 1, method2 = 2 };

struct SubsampleConfig {
    double c = 0.2;               // block ratio, in (0, 1)
    std::size_t num_draws = 10000;  // M, Monte Carlo anchor draws
    Method method = Method::method2;
    double alpha = 0.0;           // required (> 1) for method1
    double tiny_sigma = 1e-10;    // stand-in for a zero block std
    // When > 0, anchors form an exhaustive tensor grid (endpoints included)
    // with this many points per axis instead of Monte Carlo draws.
    std::size_t grid_per_axis = 0;
    // Empty blocks always contribute a statistic of 0.

    void validate() const;
};

struct SubsamplingDistribution {
    EmpiricalDistribution stats;
    SubsampleConfig config;          // echo; num_draws reflects actual count
    double zero_count_fraction = 0;  // share of empty-block draws
};

// Statistic of one block given deviations from the full-sample mean:
// dev_sum = sum(mark - full_mean), dev_sumsq = sum((mark - full_mean)^2).
double subsample_stat(std::size_t count, double dev_sum, double dev_sumsq,
                      const SubsampleConfig& config);

double subsample_stat(const MarkedSample& sub, double full_mean,
                      const SubsampleConfig& config);

SubsamplingDistribution build_distribution(const MarkedSample& full,
                                           const SubsampleConfig& config,
                                           Rng& rng);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

// [mu_hat - L_{1-p/2} N^{1/alpha-1}, mu_hat - L_{p/2} N^{1/alpha-1}]
Interval ci_method1(const MarkedSample& full,
                    const SubsamplingDistribution& dist, double p,
                    double alpha);

// [mu_hat - L_{1-p/2} sigma_hat/sqrt(N), mu_hat - L_{p/2} sigma_hat/sqrt(N)]
Interval ci_method2(const MarkedSample& full,
                    const SubsamplingDistribution& dist, double p);

nlohmann::json ci_json_record(const SubsamplingDistribution& dist,
                              const Interval& ci, double p);

}  // namespace stablefield
