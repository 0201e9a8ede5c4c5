#pragma once

// Point estimators on marked samples plus the empirical-distribution
// machinery the subsampling and test layers run on.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "stablefield/filter.hpp"
#include "stablefield/region.hpp"

namespace stablefield {

struct EmptySampleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MarkedSample {
    PointPattern pattern;
    std::vector<double> marks;  // one per point

    std::size_t size() const { return marks.size(); }
    void validate() const {
        if (marks.size() != pattern.size())
            throw std::domain_error("MarkedSample: marks/points mismatch");
    }
};

class EmpiricalDistribution {
public:
    explicit EmpiricalDistribution(std::vector<double> values);

    std::size_t count() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double cdf(double x) const;

private:
    std::vector<double> values_;  // sorted ascending
};

double sample_mean(const MarkedSample& sample);

// divisor N, not N-1
double sample_std(const MarkedSample& sample);

// sqrt(N) * (mean - mu0) / std; throws on zero std
double self_normalized(const MarkedSample& sample, double mu0);

// 2*||psi||_alpha^alpha - ||psi(.+h) - psi||_alpha^alpha by quadrature
double codifference(const FilterSpec& filter, double alpha,
                    std::span<const double> lag);

// inf{x : F(x) >= p}: the ceil(p*count)-th order statistic
double quantile(const EmpiricalDistribution& dist, double p);

double ks_distance(const EmpiricalDistribution& a,
                   const EmpiricalDistribution& b);

// Asymptotic two-sample critical value at the given test level.
double ks_critical(double level, std::size_t n, std::size_t m);

void write_values_csv(const EmpiricalDistribution& dist, std::ostream& out);

}  // namespace stablefield
