#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "stablefield/coverage.hpp"

using namespace stablefield;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.region = Region({1.0, 1.0}, 10.0);
    cfg.alphas = {1.5};
    cfg.c_values = {0.3};
    cfg.methods = {Method::method1, Method::method2};
    cfg.nominal_levels = {0.90};
    cfg.replications = 25;
    cfg.mc_draws = 300;
    cfg.series_terms = 50;
    cfg.master_seed = 777;
    return cfg;
}

}  // namespace

TEST_CASE("run_replication is deterministic in its key") {
    const ExperimentConfig cfg = small_config();
    const auto a = run_replication(cfg, 1.5, 0.3, 7);
    const auto b = run_replication(cfg, 1.5, 0.3, 7);
    CHECK(a.mu_hat == b.mu_hat);
    CHECK(a.sigma_hat == b.sigma_hat);
    CHECK(a.count == b.count);
    CHECK(a.hits == b.hits);
    CHECK(a.widths == b.widths);
    const auto c = run_replication(cfg, 1.5, 0.3, 8);
    CHECK(a.mu_hat != c.mu_hat);
}

TEST_CASE("shifting the true mean shifts estimates but not hits") {
    ExperimentConfig cfg = small_config();
    ExperimentConfig shifted = cfg;
    shifted.true_mu = 5.0;
    for (std::size_t rep = 0; rep < 10; ++rep) {
        const auto a = run_replication(cfg, 1.5, 0.3, rep);
        const auto b = run_replication(shifted, 1.5, 0.3, rep);
        CHECK(b.mu_hat == doctest::Approx(a.mu_hat + 5.0).epsilon(1e-12));
        CHECK(b.sigma_hat == doctest::Approx(a.sigma_hat).epsilon(1e-9));
        CHECK(a.hits == b.hits);
    }
}

TEST_CASE("single-replication study has 0/1 coverage and zero SE") {
    ExperimentConfig cfg = small_config();
    cfg.replications = 1;
    const CoverageTable table = run_study(cfg);
    for (const auto& row : table.rows) {
        CHECK((row.coverage == 0.0 || row.coverage == 1.0));
        CHECK(row.std_error == 0.0);
        CHECK(row.replications == 1);
    }
}

TEST_CASE("worker count does not change the table") {
    ExperimentConfig serial = small_config();
    serial.alphas = {1.3, 1.7};
    ExperimentConfig threaded = serial;
    threaded.workers = 4;
    const CoverageTable a = run_study(serial);
    const CoverageTable b = run_study(threaded);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].coverage == b.rows[i].coverage);
        CHECK(a.rows[i].mean_width == b.rows[i].mean_width);
        CHECK(a.rows[i].mean_count == b.rows[i].mean_count);
    }
}

TEST_CASE("nested nominal levels give nested coverage") {
    ExperimentConfig cfg = small_config();
    cfg.nominal_levels = {0.90, 0.95, 0.99};
    cfg.replications = 60;
    const CoverageTable table = run_study(cfg);
    // rows are grouped per method with levels in config order
    for (std::size_t base = 0; base + 2 < table.rows.size(); base += 3) {
        CHECK(table.rows[base].coverage <= table.rows[base + 1].coverage);
        CHECK(table.rows[base + 1].coverage <= table.rows[base + 2].coverage);
    }
}

TEST_CASE("emit") {
    ExperimentConfig cfg = small_config();
    cfg.replications = 5;
    const CoverageTable table = run_study(cfg);
    std::ostringstream out;
    emit(table, out);
    const std::string text = out.str();
    CHECK(text.rfind("alpha,c,method,level,coverage,se,reps,mean_width,"
                     "mean_count\n", 0) == 0);

    SUBCASE("rows parse back to the same values") {
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);  // header
        std::size_t i = 0;
        while (std::getline(in, line)) {
            REQUIRE(i < table.rows.size());
            double alpha, c, level, coverage, se, width, count;
            int method;
            long unsigned reps;
            REQUIRE(std::sscanf(line.c_str(),
                                "%lf,%lf,%d,%lf,%lf,%lf,%lu,%lf,%lf", &alpha,
                                &c, &method, &level, &coverage, &se, &reps,
                                &width, &count) == 9);
            CHECK(alpha == doctest::Approx(table.rows[i].alpha));
            CHECK(method == int(table.rows[i].method));
            CHECK(coverage == doctest::Approx(table.rows[i].coverage).epsilon(1e-6));
            CHECK(reps == table.rows[i].replications);
            ++i;
        }
        CHECK(i == table.rows.size());
    }
    SUBCASE("empty table is an error") {
        CoverageTable empty;
        std::ostringstream sink;
        CHECK_THROWS_AS(emit(empty, sink), std::domain_error);
    }
    SUBCASE("unwritable path is an I/O error") {
        CHECK_THROWS_AS(emit(table, "/nonexistent-dir/out.csv"), IoError);
    }
}

TEST_CASE("config validation reports errors before any work") {
    ExperimentConfig cfg = small_config();
    cfg.alphas = {2.5};
    CHECK_THROWS_AS(run_study(cfg), ConfigError);
    cfg = small_config();
    cfg.c_values = {1.5};
    CHECK_THROWS_AS(run_study(cfg), ConfigError);
    cfg = small_config();
    cfg.replications = 0;
    CHECK_THROWS_AS(run_study(cfg), ConfigError);
    cfg = small_config();
    cfg.nominal_levels = {};
    CHECK_THROWS_AS(run_study(cfg), ConfigError);
}

TEST_CASE("method 2 coverage trends across the grid") {
    ExperimentConfig cfg;
    cfg.region = Region({1.0, 1.0}, 10.0);
    cfg.alphas = {1.2, 1.8};
    cfg.c_values = {0.2, 0.3, 0.4};
    cfg.methods = {Method::method2};
    cfg.nominal_levels = {0.90};
    cfg.replications = 200;
    cfg.mc_draws = 1000;
    cfg.series_terms = 100;
    cfg.master_seed = 20250101;
    const CoverageTable table = run_study(cfg);

    auto coverage_at = [&](double alpha, double c) {
        for (const auto& row : table.rows)
            if (row.alpha == alpha && row.c == c) return row.coverage;
        FAIL("missing cell");
        return 0.0;
    };

    // coverage falls in c (large expected gaps, robust to MC noise)
    for (double alpha : cfg.alphas)
        CHECK(coverage_at(alpha, 0.2) > coverage_at(alpha, 0.4));
    // coverage rises in alpha, asserted as a summed trend across c
    double trend = 0.0;
    for (double c : cfg.c_values)
        trend += coverage_at(1.8, c) - coverage_at(1.2, c);
    CHECK(trend > -0.03);
}
