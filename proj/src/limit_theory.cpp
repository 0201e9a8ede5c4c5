#include "stablefield/limit_theory.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "stablefield/stable.hpp"
#include "stablefield/statistics.hpp"

namespace stablefield {

namespace {

constexpr std::size_t kChunk = 4096;

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

struct ChunkSums {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Fixed chunking with one derived stream per chunk: totals do not depend on
// the worker count.
MonteCarloEstimate chunked_mc(std::size_t draws, std::uint64_t base_seed,
                              int workers,
                              const std::function<double(Rng&)>& one_draw) {
    const std::size_t chunks = (draws + kChunk - 1) / kChunk;
    std::vector<ChunkSums> partial(chunks);

    auto run_chunk = [&](std::size_t j) {
        Rng rng(derive_seed(base_seed, {j}));
        const std::size_t lo = j * kChunk;
        const std::size_t hi = std::min(draws, lo + kChunk);
        ChunkSums s;
        for (std::size_t i = lo; i < hi; ++i) {
            const double v = one_draw(rng);
            s.sum += v;
            s.sumsq += v * v;
        }
        partial[j] = s;
    };

    if (workers <= 1 || chunks <= 1) {
        for (std::size_t j = 0; j < chunks; ++j) run_chunk(j);
    } else {
        std::atomic<std::size_t> next{0};
        const int nthreads = int(std::min<std::size_t>(std::size_t(workers), chunks));
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < chunks;
                     j = next.fetch_add(1))
                    run_chunk(j);
            });
        for (auto& th : pool) th.join();
    }

    std::vector<double> sums(chunks), sumsqs(chunks);
    for (std::size_t j = 0; j < chunks; ++j) {
        sums[j] = partial[j].sum;
        sumsqs[j] = partial[j].sumsq;
    }
    const double total = pairwise_sum(sums);
    const double total_sq = pairwise_sum(sumsqs);
    const double mean = total / double(draws);
    double var = 0.0;
    if (draws > 1) {
        var = (total_sq - double(draws) * mean * mean) / double(draws - 1);
        if (var < 0.0) var = 0.0;
    }
    return MonteCarloEstimate{mean, std::sqrt(var / double(draws)), draws};
}

}  // namespace

MonteCarloEstimate poisson_functional_moment(const FilterSpec& filter, double r,
                                             double alpha, PowerMode mode,
                                             std::size_t draws, Rng& rng,
                                             int workers) {
    if (!filter.evaluate || filter.dim < 1 || filter.dim > 16)
        throw std::domain_error("poisson_functional_moment: bad filter");
    if (!std::isfinite(filter.effective_radius) ||
        !(filter.effective_radius > 0.0))
        throw std::domain_error(
            "poisson_functional_moment: filter support unbounded");
    if (!(r > 0.0))
        throw std::domain_error("poisson_functional_moment: r must be positive");
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error(
            "poisson_functional_moment: alpha must be in (0, 2]");
    if (draws < 100)
        throw std::domain_error("poisson_functional_moment: draws must be >= 100");

    const int d = filter.dim;
    const double radius = filter.effective_radius;
    double volume = 1.0;
    for (int k = 0; k < d; ++k) volume *= 2.0 * radius;
    const double mean_count = r * volume;
    const std::uint64_t base_seed = rng.next_u64();

    auto one_draw = [&, d, radius, mean_count, alpha, mode](Rng& stream) {
        const std::uint64_t n = stream.poisson(mean_count);
        double s1 = 0.0, s2 = 0.0;
        double x[16];
        for (std::uint64_t i = 0; i < n; ++i) {
            for (int k = 0; k < d; ++k)
                x[k] = radius * (2.0 * stream.uniform01() - 1.0);
            const double psi = filter.evaluate({x, std::size_t(d)});
            s1 += psi;
            s2 += psi * psi;
        }
        switch (mode) {
            case PowerMode::mean_abs_alpha:
                return std::pow(std::abs(s1), alpha);
            case PowerMode::square:
                return s1 * s1;
            case PowerMode::sq_sum_alpha_half:
                return std::pow(s2, alpha / 2.0);
        }
        return 0.0;
    };

    return chunked_mc(draws, base_seed, workers, one_draw);
}

MonteCarloEstimate limit_scale_mean(const FilterSpec& filter, double r,
                                    double alpha, std::size_t draws, Rng& rng,
                                    int workers) {
    const MonteCarloEstimate m = poisson_functional_moment(
        filter, r, alpha, PowerMode::mean_abs_alpha, draws, rng, workers);
    if (m.value <= 0.0) return MonteCarloEstimate{0.0, 0.0, draws};
    const double value = std::pow(m.value / r, 1.0 / alpha);
    // delta method for the alpha-th root
    const double se = m.std_error * value / (alpha * m.value);
    return MonteCarloEstimate{value, se, draws};
}

MonteCarloEstimate limit_scale_variance(const FilterSpec& filter, double r,
                                        double alpha, std::size_t draws,
                                        Rng& rng, int workers) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("limit_scale_variance: alpha must be in (0, 2]");
    if (alpha == 2.0)
        throw DegenerateLimitError(
            "limit_scale_variance: point mass at 2 r integral psi^2 when "
            "alpha = 2",
            2.0 * r * lp_norm_pow(filter, 2.0));

    const MonteCarloEstimate m = poisson_functional_moment(
        filter, r, alpha, PowerMode::sq_sum_alpha_half, draws, rng, workers);
    if (m.value <= 0.0) return MonteCarloEstimate{0.0, 0.0, draws};
    const double factor =
        std::cos(std::numbers::pi * alpha / 4.0) * abs_moment_gaussian(alpha);
    const double inner = factor * m.value;
    const double value = 2.0 * std::pow(inner, 2.0 / alpha);
    const double se = value * (2.0 / alpha) * m.std_error / m.value;
    return MonteCarloEstimate{value, se, draws};
}

double gaussian_limit_variance(const FilterSpec& filter, double r) {
    if (!(r > 0.0))
        throw std::domain_error("gaussian_limit_variance: r must be positive");
    const double radius = filter.effective_radius;
    QuadratureOptions inner = filter_quadrature_options(filter);
    inner.rel_tol = 1e-7;
    if (filter.smooth) inner.base_splits = 4;

    // integrate psi(x) psi(x+t) over the support overlap only
    auto tau = [&](std::span<const double> t) {
        std::vector<double> lo(t.size()), hi(t.size()), shifted(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            lo[k] = std::max(-radius, -radius - t[k]);
            hi[k] = std::min(radius, radius - t[k]);
            if (!(lo[k] < hi[k])) return 0.0;
        }
        return 2.0 * integrate_box(
                         [&](std::span<const double> x) {
                             for (std::size_t k = 0; k < t.size(); ++k)
                                 shifted[k] = x[k] + t[k];
                             return filter.evaluate(x) *
                                    filter.evaluate(shifted);
                         },
                         lo, hi, inner);
    };

    QuadratureOptions outer = filter_quadrature_options(filter);
    outer.rel_tol = 1e-4;
    const double tau_integral = integrate_cube(
        [&](std::span<const double> t) { return tau(t); }, filter.dim,
        2.0 * radius, outer);

    std::vector<double> zero(std::size_t(filter.dim), 0.0);
    return r * tau_integral + tau(zero);
}

CodifferenceGap codifference_gap(const FilterSpec& filter, double alpha, double r,
                       std::size_t draws, Rng& rng, int workers) {
    const MonteCarloEstimate lhs = poisson_functional_moment(
        filter, r, alpha, PowerMode::mean_abs_alpha, draws, rng, workers);

    // The codifference is continuous in the lag even for discontinuous
    // filters, so the outer integral does not need the forced deep splits.
    QuadratureOptions outer;
    outer.rel_tol = 1e-6;
    outer.base_splits = 16;
    outer.min_depth = 4;
    const double tau_integral = integrate_cube(
        [&](std::span<const double> t) {
            return codifference(filter, alpha, t);
        },
        filter.dim, 2.0 * filter.effective_radius, outer);
    std::vector<double> zero(std::size_t(filter.dim), 0.0);
    const double rhs = 0.5 * (tau_integral + codifference(filter, alpha, zero));

    return CodifferenceGap{lhs.value, lhs.std_error, rhs,
                      std::abs(lhs.value - rhs)};
}

bool power_diff_bound_holds(double a, double b, double alpha) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::domain_error("power_diff_bound_holds: alpha must be in (0, 2]");
    const double lhs =
        std::abs(std::pow(std::abs(a), alpha) - std::pow(std::abs(b), alpha));
    double rhs = std::pow(std::abs(a - b), alpha);
    if (alpha > 1.0)
        rhs += 2.0 * std::pow(std::max(std::abs(a), std::abs(b)), alpha / 2.0) *
               std::pow(std::abs(a - b), alpha / 2.0);
    return lhs <= rhs + 1e-12;
}

LimitParams compute_limit_params(const FilterSpec& filter, double r,
                                 double alpha, std::size_t draws, Rng& rng,
                                 int workers) {
    LimitParams out;
    const MonteCarloEstimate sm =
        limit_scale_mean(filter, r, alpha, draws, rng, workers);
    const MonteCarloEstimate sv =
        limit_scale_variance(filter, r, alpha, draws, rng, workers);
    out.scale_mean = sm.value;
    out.scale_variance = sv.value;
    out.mc_draws = draws;
    out.mc_standard_error = std::max(sm.std_error, sv.std_error);
    out.phi = integrate_cube(
        [&](std::span<const double> x) { return filter.evaluate(x); },
        filter.dim, filter.effective_radius, filter_quadrature_options(filter));
    out.phi2 = std::sqrt(lp_norm_pow(filter, 2.0));
    return out;
}

}  // namespace stablefield
