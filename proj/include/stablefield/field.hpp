#pragma once

// Symmetric alpha-stable random field X(t) = integral psi(x+t) M(dx),
// simulated by a truncated series: terms carry Rademacher signs, Poisson
// arrival times and heavy-tailed proposal locations. The location-shifted
// field is Z(t) = X(t) + mu.

#include <cstddef>
#include <span>
#include <vector>

#include "stablefield/filter.hpp"
#include "stablefield/region.hpp"
#include "stablefield/rng.hpp"

namespace stablefield {

struct ModelSpec {
    FilterSpec filter;
    double alpha = 1.5;          // (0, 2), symmetric-only simulation
    double mu = 0.0;             // location shift
    std::vector<double> center;  // v, defaults to 0

    void validate() const;
};

struct SeriesRealization {
    std::vector<int> signs;         // epsilon_i, +-1
    std::vector<double> arrivals;   // Gamma_i, strictly increasing
    std::vector<double> locations;  // U_i, interleaved, terms * dim entries
    int dim = 0;
    double alpha = 0.0;
    double c_alpha_root = 0.0;  // C_alpha^{1/alpha}
    // cached epsilon_i * Gamma_i^{-1/alpha} * q(U_i)^{-1/alpha}
    std::vector<double> weights;

    std::size_t terms() const { return signs.size(); }
    std::span<const double> location(std::size_t i) const {
        return {locations.data() + i * std::size_t(dim), std::size_t(dim)};
    }
    SeriesRealization truncated(std::size_t new_terms) const;
};

// d-fold product of standard Cauchy densities.
double cauchy_product_density(std::span<const double> u);

SeriesRealization draw_realization(const ModelSpec& model, std::size_t terms,
                                   Rng& rng);

double eval_mark(const SeriesRealization& realization, const ModelSpec& model,
                 std::span<const double> t);

std::vector<double> eval_marks(const SeriesRealization& realization,
                               const ModelSpec& model,
                               const PointPattern& pattern);

// (integral |psi|^alpha)^{1/alpha}
double sigma_psi(const FilterSpec& filter, double alpha);

}  // namespace stablefield
