#include "stablefield/region.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace stablefield {

Region::Region(std::vector<double> sides_in, double scale_in,
               std::vector<double> origin_in)
    : sides(std::move(sides_in)), scale(scale_in), origin(std::move(origin_in)) {
    if (sides.empty()) throw std::domain_error("Region: no side lengths");
    for (double a : sides)
        if (!(a > 0.0)) throw std::domain_error("Region: sides must be positive");
    if (!(scale > 0.0)) throw std::domain_error("Region: scale must be positive");
    if (origin.empty()) origin.assign(sides.size(), 0.0);
    if (origin.size() != sides.size())
        throw std::domain_error("Region: origin dimension mismatch");
}

double Region::area() const {
    double a = 1.0;
    for (int i = 0; i < dim(); ++i) a *= side(i);
    return a;
}

double area(const Region& region) { return region.area(); }

Erosion erode(const Region& region, double c) {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("erode: c must be in (0, 1)");
    std::vector<double> anchor_origin(region.origin), block_origin(region.origin);
    for (std::size_t i = 0; i < region.origin.size(); ++i) {
        anchor_origin[i] *= (1.0 - c);
        block_origin[i] *= c;
    }
    return Erosion{
        Region(region.sides, region.scale * (1.0 - c), std::move(anchor_origin)),
        Region(region.sides, region.scale * c, std::move(block_origin))};
}

PointPattern sample_prm(const Region& region, double r, Rng& rng) {
    if (!(r > 0.0)) throw std::domain_error("sample_prm: r must be positive");
    const std::uint64_t n = rng.poisson(r * region.area());
    PointPattern p;
    p.dim = region.dim();
    p.region = region;
    p.intensity = r;
    p.coords.reserve(n * std::size_t(p.dim));
    for (std::uint64_t i = 0; i < n; ++i)
        for (int k = 0; k < p.dim; ++k)
            p.coords.push_back(region.lower(k) +
                               region.side(k) * rng.uniform01());
    return p;
}

bool in_block(std::span<const double> p, std::span<const double> y,
              const Region& block) {
    for (int k = 0; k < block.dim(); ++k) {
        const double lo = block.lower(k) + y[std::size_t(k)];
        if (p[std::size_t(k)] < lo || p[std::size_t(k)] >= lo + block.side(k))
            return false;
    }
    return true;
}

PointPattern restrict_to(const PointPattern& pattern,
                         std::span<const double> y, const Region& block) {
    if (block.dim() != pattern.dim || y.size() != std::size_t(pattern.dim))
        throw std::domain_error("restrict_to: dimension mismatch");
    const Region& reg = pattern.region;
    for (int k = 0; k < block.dim(); ++k) {
        const double slack = 1e-9 * (1.0 + std::abs(reg.side(k)));
        const double lo = block.lower(k) + y[std::size_t(k)];
        if (lo < reg.lower(k) - slack ||
            lo + block.side(k) > reg.lower(k) + reg.side(k) + slack)
            throw std::domain_error("restrict_to: block not contained in region");
    }

    PointPattern sub;
    sub.dim = pattern.dim;
    sub.intensity = pattern.intensity;
    std::vector<double> sub_origin(block.origin);
    for (std::size_t k = 0; k < sub_origin.size(); ++k) sub_origin[k] += y[k];
    sub.region = Region(block.sides, block.scale, std::move(sub_origin));
    for (std::size_t i = 0; i < pattern.size(); ++i)
        if (in_block(pattern.point(i), y, block))
            for (int k = 0; k < pattern.dim; ++k)
                sub.coords.push_back(pattern.point(i)[std::size_t(k)]);
    return sub;
}

void write_csv(const PointPattern& pattern, std::ostream& out) {
    static const char* axes[] = {"x", "y", "z"};
    for (int k = 0; k < pattern.dim; ++k) {
        if (k) out << ',';
        if (pattern.dim <= 3)
            out << axes[k];
        else
            out << 'x' << (k + 1);
    }
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        for (int k = 0; k < pattern.dim; ++k) {
            if (k) out << ',';
            std::snprintf(buf, sizeof(buf), "%.9g",
                          pattern.point(i)[std::size_t(k)]);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace stablefield
