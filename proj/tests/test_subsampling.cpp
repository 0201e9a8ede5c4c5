#include <doctest.h>

#include <cmath>
#include <vector>

#include "stablefield/subsampling.hpp"

using namespace stablefield;

namespace {

MarkedSample square_fixture(const std::vector<std::vector<double>>& pts,
                            const std::vector<double>& marks) {
    MarkedSample s;
    s.pattern.dim = 2;
    s.pattern.region = Region({1.0, 1.0}, 10.0);
    for (const auto& p : pts)
        for (double x : p) s.pattern.coords.push_back(x);
    s.marks = marks;
    return s;
}

SubsampleConfig method1_cfg(double c, double alpha) {
    SubsampleConfig cfg;
    cfg.c = c;
    cfg.method = Method::method1;
    cfg.alpha = alpha;
    return cfg;
}

SubsampleConfig method2_cfg(double c) {
    SubsampleConfig cfg;
    cfg.c = c;
    cfg.method = Method::method2;
    return cfg;
}

}  // namespace

TEST_CASE("subsample_stat conventions") {
    SUBCASE("empty block contributes zero for both methods") {
        CHECK(subsample_stat(0, 0.0, 0.0, method1_cfg(0.2, 1.5)) == 0.0);
        CHECK(subsample_stat(0, 0.0, 0.0, method2_cfg(0.2)) == 0.0);
    }
    SUBCASE("single point, method 2: large value with the numerator's sign") {
        const auto cfg = method2_cfg(0.2);
        MarkedSample sub = square_fixture({{1.0, 1.0}}, {3.0});
        const double above = subsample_stat(sub, 1.0, cfg);
        CHECK(above == doctest::Approx(2.0 / 1e-10));
        const double below = subsample_stat(sub, 5.0, cfg);
        CHECK(below == doctest::Approx(-2.0 / 1e-10));
    }
    SUBCASE("method 1 rate at alpha = 2") {
        // N^{1-1/alpha} = sqrt(4) = 2, centered mean 0.5
        MarkedSample sub =
            square_fixture({{1, 1}, {2, 2}, {3, 3}, {4, 4}}, {1, 1.5, 2, 2.5});
        CHECK(subsample_stat(sub, 1.25, method1_cfg(0.2, 2.0)) ==
              doctest::Approx(1.0));
    }
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(method1_cfg(0.0, 1.5).validate(), std::domain_error);
    CHECK_THROWS_AS(method1_cfg(1.0, 1.5).validate(), std::domain_error);
    CHECK_THROWS_AS(method1_cfg(0.2, 1.0).validate(), std::domain_error);
    CHECK_NOTHROW(method1_cfg(0.2, 1.5).validate());
    CHECK_NOTHROW(method2_cfg(0.4).validate());
}

TEST_CASE("build_distribution") {
    SUBCASE("identical marks: point mass at zero (method 1)") {
        Rng rng(501);
        MarkedSample s = square_fixture(
            {{1, 1}, {2, 7}, {6, 2}, {7, 8}, {4, 4}}, {3, 3, 3, 3, 3});
        auto cfg = method1_cfg(0.3, 1.5);
        cfg.num_draws = 200;
        const auto dist = build_distribution(s, cfg, rng);
        for (double v : dist.stats.values()) CHECK(v == 0.0);
    }
    SUBCASE("fixed seed gives bit-identical results") {
        MarkedSample s = square_fixture(
            {{1, 1}, {2, 7}, {6, 2}, {7, 8}, {4, 4}}, {1, 2, 4, 8, 16});
        auto cfg = method2_cfg(0.3);
        cfg.num_draws = 500;
        Rng r1(502), r2(502);
        const auto d1 = build_distribution(s, cfg, r1);
        const auto d2 = build_distribution(s, cfg, r2);
        REQUIRE(d1.stats.count() == d2.stats.count());
        for (std::size_t i = 0; i < d1.stats.count(); ++i)
            CHECK(d1.stats.values()[i] == d2.stats.values()[i]);
        CHECK(d1.zero_count_fraction == d2.zero_count_fraction);
    }
    SUBCASE("exhaustive corner grid matches hand enumeration") {
        // c = 0.5 on the 10x10 square: block 5x5, anchors {0,5}^2.
        // Blocks and their members:
        //   y=(0,0): (1,1) m=1 and (4.9,4.9) m=16 -> n=2, mean 8.5
        //   y=(0,5): (2,7) m=2                    -> n=1, mean 2
        //   y=(5,0): (6,2) m=4                    -> n=1, mean 4
        //   y=(5,5): (7,8) m=8                    -> n=1, mean 8
        // full mean 31/5 = 6.2; method 1 stat = n^{1/3} (mean - 6.2)
        MarkedSample s = square_fixture(
            {{1, 1}, {2, 7}, {6, 2}, {7, 8}, {4.9, 4.9}}, {1, 2, 4, 8, 16});
        auto cfg = method1_cfg(0.5, 1.5);
        cfg.grid_per_axis = 2;
        Rng rng(503);
        const auto dist = build_distribution(s, cfg, rng);
        REQUIRE(dist.stats.count() == 4);
        CHECK(dist.zero_count_fraction == 0.0);
        const auto v = dist.stats.values();
        CHECK(v[0] == doctest::Approx(-4.2));
        CHECK(v[1] == doctest::Approx(-2.2));
        CHECK(v[2] == doctest::Approx(1.8));
        CHECK(v[3] == doctest::Approx(std::cbrt(2.0) * 2.3));
    }
    SUBCASE("zero-count fraction drops as c grows") {
        Rng sim_rng(504);
        const Region square({1.0, 1.0}, 10.0);
        const PointPattern pattern = sample_prm(square, 1.0, sim_rng);
        MarkedSample s;
        s.pattern = pattern;
        s.marks.assign(pattern.size(), 0.0);
        for (std::size_t i = 0; i < s.marks.size(); ++i)
            s.marks[i] = double(i % 7) - 3.0;

        auto small_c = method2_cfg(0.1);
        small_c.num_draws = 2000;
        auto large_c = method2_cfg(0.4);
        large_c.num_draws = 2000;
        Rng r1(505), r2(506);
        const double f_small =
            build_distribution(s, small_c, r1).zero_count_fraction;
        const double f_large =
            build_distribution(s, large_c, r2).zero_count_fraction;
        CHECK(f_small > 0.2);  // blocks of unit area miss often
        CHECK(f_large < 0.01);
        CHECK(f_small > f_large);
    }
    SUBCASE("empty sample is rejected") {
        MarkedSample s = square_fixture({}, {});
        auto cfg = method2_cfg(0.2);
        Rng rng(507);
        CHECK_THROWS_AS(build_distribution(s, cfg, rng), EmptySampleError);
    }
}

namespace {

SubsamplingDistribution dist_from(std::vector<double> stats,
                                  SubsampleConfig cfg) {
    return SubsamplingDistribution{EmpiricalDistribution(std::move(stats)), cfg,
                                   0.0};
}

}  // namespace

TEST_CASE("ci_method1") {
    // 16 equal marks so mu_hat = 10 and the interval is mu_hat -+ L * N^{1/a-1}
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 16; ++i)
        pts.push_back({0.5 + double(i % 4) * 2, 0.5 + double(i / 4) * 2});
    const MarkedSample full =
        square_fixture(pts, std::vector<double>(16, 10.0));

    SUBCASE("point mass at zero gives a degenerate interval") {
        const auto dist = dist_from({0, 0, 0, 0}, method1_cfg(0.5, 2.0));
        const Interval ci = ci_method1(full, dist, 0.5, 2.0);
        CHECK(ci.lower == doctest::Approx(10.0));
        CHECK(ci.upper == doctest::Approx(10.0));
    }
    SUBCASE("symmetric two-point law at p = 0.5, N = 16, alpha = 2") {
        const auto dist = dist_from({-1.0, 1.0}, method1_cfg(0.5, 2.0));
        const Interval ci = ci_method1(full, dist, 0.5, 2.0);
        // L_{0.75} = 1, L_{0.25} = -1, N^{1/alpha-1} = 1/4
        CHECK(ci.lower == doctest::Approx(10.0 - 0.25));
        CHECK(ci.upper == doctest::Approx(10.0 + 0.25));
    }
    SUBCASE("translation equivariance") {
        const auto dist = dist_from({-1.0, 1.0}, method1_cfg(0.5, 2.0));
        auto shifted = full;
        for (auto& m : shifted.marks) m += 3.25;
        const Interval a = ci_method1(full, dist, 0.5, 2.0);
        const Interval b = ci_method1(shifted, dist, 0.5, 2.0);
        CHECK(b.lower == doctest::Approx(a.lower + 3.25).epsilon(1e-14));
        CHECK(b.upper == doctest::Approx(a.upper + 3.25).epsilon(1e-14));
    }
    SUBCASE("domain and consistency checks") {
        const auto dist = dist_from({-1.0, 1.0}, method1_cfg(0.5, 2.0));
        CHECK_THROWS_AS(ci_method1(full, dist, 0.0, 2.0), std::domain_error);
        CHECK_THROWS_AS(ci_method1(full, dist, 0.5, 1.5), std::domain_error);
        const auto m2 = dist_from({-1.0, 1.0}, method2_cfg(0.5));
        CHECK_THROWS_AS(ci_method1(full, m2, 0.5, 2.0), std::domain_error);
    }
}

TEST_CASE("ci_method2") {
    // marks {-2,-2,2,2}: mu_hat = 0, sigma_hat = 2 (divisor N), N = 4
    const MarkedSample full = square_fixture(
        {{1, 1}, {3, 3}, {6, 6}, {8, 8}}, {-2.0, -2.0, 2.0, 2.0});

    SUBCASE("point mass at zero") {
        const auto dist = dist_from({0, 0, 0}, method2_cfg(0.5));
        const Interval ci = ci_method2(full, dist, 0.5);
        CHECK(ci.lower == doctest::Approx(0.0));
        CHECK(ci.upper == doctest::Approx(0.0));
    }
    SUBCASE("zero sample std collapses the interval") {
        const MarkedSample flat =
            square_fixture({{1, 1}, {3, 3}}, {5.0, 5.0});
        const auto dist = dist_from({-2, -1, 1, 2}, method2_cfg(0.5));
        const Interval ci = ci_method2(flat, dist, 0.5);
        CHECK(ci.lower == doctest::Approx(5.0));
        CHECK(ci.upper == doctest::Approx(5.0));
    }
    SUBCASE("quartile law at p = 0.5, sigma = 2, N = 4") {
        // Under the inf-form quantile, 0.25 * 4 = 1 lands exactly on the
        // first order statistic, so L_{0.25} = -2 (not -1).
        const auto dist = dist_from({-2, -1, 1, 2}, method2_cfg(0.5));
        const Interval ci = ci_method2(full, dist, 0.5);
        CHECK(ci.lower == doctest::Approx(-1.0));
        CHECK(ci.upper == doctest::Approx(2.0));
    }
    SUBCASE("five-point law avoids the exact-jump edge: quantiles -+1") {
        const auto dist = dist_from({-2, -1, 0, 1, 2}, method2_cfg(0.5));
        const Interval ci = ci_method2(full, dist, 0.5);
        // L_{0.75} = 1, L_{0.25} = -1, sigma/sqrt(N) = 1
        CHECK(ci.lower == doctest::Approx(-1.0));
        CHECK(ci.upper == doctest::Approx(1.0));
    }
    SUBCASE("nested for nested p") {
        const auto dist =
            dist_from({-4, -2, -1, -0.5, 0.5, 1, 2, 4}, method2_cfg(0.5));
        const Interval wide = ci_method2(full, dist, 0.05);
        const Interval narrow = ci_method2(full, dist, 0.5);
        CHECK(wide.lower <= narrow.lower);
        CHECK(wide.upper >= narrow.upper);
    }
    SUBCASE("endpoints scale with the marks (mu0 = 0)") {
        // dense grid so every block holds several points and no tiny-sigma
        // stand-in enters the quantiles
        std::vector<std::vector<double>> grid;
        std::vector<double> marks;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                grid.push_back({1.0 + 2.0 * i, 1.0 + 2.0 * j});
                marks.push_back(double((i * 5 + j) * 7 % 11) - 5.0 + 0.25 * i);
            }
        MarkedSample s = square_fixture(grid, marks);
        auto cfg = method2_cfg(0.4);
        cfg.num_draws = 400;
        Rng r1(509), r2(509);
        const auto dist = build_distribution(s, cfg, r1);
        auto scaled = s;
        for (auto& m : scaled.marks) m *= 37.0;
        const auto dist_scaled = build_distribution(scaled, cfg, r2);
        const Interval a = ci_method2(s, dist, 0.1);
        const Interval b = ci_method2(scaled, dist_scaled, 0.1);
        CHECK(b.lower == doctest::Approx(37.0 * a.lower).epsilon(1e-12));
        CHECK(b.upper == doctest::Approx(37.0 * a.upper).epsilon(1e-12));
    }
    SUBCASE("method mismatch is rejected") {
        const auto m1 = dist_from({-1, 1}, method1_cfg(0.5, 1.5));
        CHECK_THROWS_AS(ci_method2(full, m1, 0.5), std::domain_error);
    }
}

TEST_CASE("json record carries the distribution summary") {
    const auto dist = dist_from({-2, -1, 1, 2}, method2_cfg(0.25));
    const Interval ci{-1.5, 2.5};
    const auto j = ci_json_record(dist, ci, 0.1);
    CHECK(j.at("method") == 2);
    CHECK(j.at("c") == 0.25);
    CHECK(j.at("M") == 10000);  // config echo
    CHECK(j.at("ci_lower") == -1.5);
    CHECK(j.at("ci_upper") == 2.5);
    CHECK(j.at("zero_count_fraction") == 0.0);
    CHECK(j.at("quantiles").contains("0.05"));
    CHECK(j.at("quantiles").contains("0.95"));
}
