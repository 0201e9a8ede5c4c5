#pragma once

// Axis-aligned observation regions K_n = n*K and homogeneous Poisson point
// patterns inside them.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "stablefield/rng.hpp"

namespace stablefield {

struct Region {
    std::vector<double> sides;   // prototype side lengths a_i, all positive
    double scale = 1.0;          // n
    std::vector<double> origin;  // defaults to 0

    Region() = default;
    Region(std::vector<double> sides, double scale,
           std::vector<double> origin = {});

    int dim() const { return int(sides.size()); }
    double side(int i) const { return scale * sides[std::size_t(i)]; }
    double lower(int i) const { return origin[std::size_t(i)]; }
    double area() const;  // Lebesgue measure of the realized box
};

double area(const Region& region);

struct Erosion {
    Region anchor;  // K_n(1-c): translations y with B+y inside K_n
    Region block;   // B = c*K_n
};

Erosion erode(const Region& region, double c);

struct PointPattern {
    std::vector<double> coords;  // interleaved, size() * dim entries
    int dim = 0;
    Region region;
    double intensity = 1.0;

    std::size_t size() const {
        return dim == 0 ? 0 : coords.size() / std::size_t(dim);
    }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * std::size_t(dim), std::size_t(dim)};
    }
};

// Poisson(r * area) points, i.i.d. uniform on the region box.
PointPattern sample_prm(const Region& region, double r, Rng& rng);

// Half-open membership of p in the block translated by y.
bool in_block(std::span<const double> p, std::span<const double> y,
              const Region& block);

// Sub-pattern of points in B+y; requires B+y inside pattern.region.
PointPattern restrict_to(const PointPattern& pattern,
                         std::span<const double> y, const Region& block);

void write_csv(const PointPattern& pattern, std::ostream& out);

}  // namespace stablefield
