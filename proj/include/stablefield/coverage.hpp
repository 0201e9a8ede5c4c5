#pragma once

// Seeded coverage studies: simulate a marked sample per replication, build
// the configured subsampling confidence intervals, and tabulate how often
// they cover the true mean. Replications run in parallel; each derives its
// own stream from (master_seed, alpha, c, rep), so tables are identical for
// any worker count.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stablefield/field.hpp"
#include "stablefield/subsampling.hpp"

namespace stablefield {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Region region{{1.0, 1.0}, 10.0};
    std::vector<double> alphas{1.5};
    std::vector<double> c_values{0.2};
    std::vector<Method> methods{Method::method1, Method::method2};
    std::vector<double> nominal_levels{0.90};
    std::size_t replications = 1000;
    std::size_t mc_draws = 10000;   // anchor draws M per distribution
    std::size_t series_terms = 100;  // I
    double intensity = 1.0;          // r
    std::uint64_t master_seed = 0;
    double true_mu = 0.0;
    int workers = 1;
    FilterSpec filter;  // defaults to gauss2d when evaluate is empty
    double tiny_sigma = 1e-10;

    void validate() const;  // throws ConfigError
};

struct ReplicationRecord {
    bool degenerate = false;  // no points observed in the region
    double mu_hat = 0.0;
    double sigma_hat = 0.0;
    std::size_t count = 0;
    std::vector<std::uint8_t> hits;  // methods x levels, row-major
    std::vector<double> widths;
};

ReplicationRecord run_replication(const ExperimentConfig& config, double alpha,
                                  double c, std::size_t rep_index);

struct CoverageRow {
    double alpha = 0.0;
    double c = 0.0;
    Method method = Method::method1;
    double level = 0.0;
    double coverage = 0.0;
    double std_error = 0.0;
    std::size_t replications = 0;
    double mean_width = 0.0;
    double mean_count = 0.0;
};

struct CoverageTable {
    std::vector<CoverageRow> rows;
    std::size_t degenerate_replications = 0;
};

CoverageTable run_study(const ExperimentConfig& config);

// CSV with header alpha,c,method,level,coverage,se,reps,mean_width,mean_count.
void emit(const CoverageTable& table, std::ostream& out);
void emit(const CoverageTable& table, const std::string& path);

}  // namespace stablefield
