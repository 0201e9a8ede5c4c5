#include "stablefield/coverage.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <thread>

namespace stablefield {

void ExperimentConfig::validate() const {
    try {
        (void)Region(region.sides, region.scale, region.origin);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    if (alphas.empty()) throw ConfigError("config: no alpha values");
    for (double a : alphas)
        if (!(a > 1.0) || !(a < 2.0))
            throw ConfigError("config: alphas must lie in (1, 2)");
    if (c_values.empty()) throw ConfigError("config: no c values");
    for (double c : c_values)
        if (!(c > 0.0) || !(c < 1.0))
            throw ConfigError("config: c values must lie in (0, 1)");
    if (methods.empty()) throw ConfigError("config: no methods");
    if (nominal_levels.empty()) throw ConfigError("config: no nominal levels");
    for (double lv : nominal_levels)
        if (!(lv > 0.0) || !(lv < 1.0))
            throw ConfigError("config: nominal levels must lie in (0, 1)");
    if (replications < 1) throw ConfigError("config: replications must be >= 1");
    if (mc_draws < 1) throw ConfigError("config: mc_draws must be >= 1");
    if (series_terms < 1) throw ConfigError("config: series_terms must be >= 1");
    if (!(intensity > 0.0)) throw ConfigError("config: intensity must be positive");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (!(tiny_sigma > 0.0)) throw ConfigError("config: tiny_sigma must be positive");
    if (filter.evaluate && filter.dim != int(region.sides.size()))
        throw ConfigError("config: filter dimension does not match region");
}

namespace {

FilterSpec effective_filter(const ExperimentConfig& cfg) {
    return cfg.filter.evaluate ? cfg.filter : make_gauss2d();
}

std::vector<double> region_midpoint(const Region& region) {
    std::vector<double> v(std::size_t(region.dim()));
    for (int k = 0; k < region.dim(); ++k)
        v[std::size_t(k)] = region.lower(k) + 0.5 * region.side(k);
    return v;
}

}  // namespace

ReplicationRecord run_replication(const ExperimentConfig& config, double alpha,
                                  double c, std::size_t rep_index) {
    const std::uint64_t child = derive_seed(
        config.master_seed, {key_bits(alpha), key_bits(c), rep_index});
    Rng rng(child);

    ReplicationRecord rec;
    rec.hits.assign(config.methods.size() * config.nominal_levels.size(), 0);
    rec.widths.assign(config.methods.size() * config.nominal_levels.size(), 0.0);

    const PointPattern pattern = sample_prm(config.region, config.intensity, rng);
    if (pattern.size() == 0) {
        rec.degenerate = true;
        return rec;
    }

    ModelSpec model;
    model.filter = effective_filter(config);
    model.alpha = alpha;
    model.mu = config.true_mu;
    model.center = region_midpoint(config.region);

    const SeriesRealization realization =
        draw_realization(model, config.series_terms, rng);
    MarkedSample full{pattern, eval_marks(realization, model, pattern)};

    rec.count = full.size();
    rec.mu_hat = sample_mean(full);
    rec.sigma_hat = sample_std(full);

    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        SubsampleConfig sub;
        sub.c = c;
        sub.num_draws = config.mc_draws;
        sub.method = config.methods[mi];
        sub.alpha = config.methods[mi] == Method::method1 ? alpha : 0.0;
        sub.tiny_sigma = config.tiny_sigma;

        Rng sub_rng(derive_seed(child, {std::uint64_t(config.methods[mi])}));
        const SubsamplingDistribution dist =
            build_distribution(full, sub, sub_rng);

        for (std::size_t li = 0; li < config.nominal_levels.size(); ++li) {
            const double p = 1.0 - config.nominal_levels[li];
            const Interval ci = config.methods[mi] == Method::method1
                                    ? ci_method1(full, dist, p, alpha)
                                    : ci_method2(full, dist, p);
            const std::size_t at = mi * config.nominal_levels.size() + li;
            rec.hits[at] = ci.contains(config.true_mu) ? 1 : 0;
            rec.widths[at] = ci.width();
        }
    }
    return rec;
}

CoverageTable run_study(const ExperimentConfig& config) {
    config.validate();

    struct Cell {
        double alpha;
        double c;
    };
    std::vector<Cell> cells;
    for (double a : config.alphas)
        for (double c : config.c_values) cells.push_back({a, c});

    const std::size_t reps = config.replications;
    std::vector<ReplicationRecord> records(cells.size() * reps);

    auto run_task = [&](std::size_t task) {
        const std::size_t cell = task / reps;
        const std::size_t rep = task % reps;
        records[task] =
            run_replication(config, cells[cell].alpha, cells[cell].c, rep);
    };

    const std::size_t tasks = cells.size() * reps;
    if (config.workers <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        const std::size_t nthreads =
            std::min<std::size_t>(std::size_t(config.workers), tasks);
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < tasks;
                     j = next.fetch_add(1))
                    run_task(j);
            });
        for (auto& th : pool) th.join();
    }

    CoverageTable table;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        std::size_t valid = 0, degenerate = 0;
        double count_sum = 0.0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const auto& rec = records[ci * reps + rep];
            if (rec.degenerate) {
                ++degenerate;
                continue;
            }
            ++valid;
            count_sum += double(rec.count);
        }
        table.degenerate_replications += degenerate;

        for (std::size_t mi = 0; mi < config.methods.size(); ++mi)
            for (std::size_t li = 0; li < config.nominal_levels.size(); ++li) {
                const std::size_t at = mi * config.nominal_levels.size() + li;
                std::size_t hits = 0;
                double width_sum = 0.0;
                for (std::size_t rep = 0; rep < reps; ++rep) {
                    const auto& rec = records[ci * reps + rep];
                    if (rec.degenerate) continue;
                    hits += rec.hits[at];
                    width_sum += rec.widths[at];
                }
                CoverageRow row;
                row.alpha = cells[ci].alpha;
                row.c = cells[ci].c;
                row.method = config.methods[mi];
                row.level = config.nominal_levels[li];
                row.replications = valid;
                row.coverage = valid ? double(hits) / double(valid) : 0.0;
                row.std_error =
                    valid ? std::sqrt(row.coverage * (1.0 - row.coverage) /
                                      double(valid))
                          : 0.0;
                row.mean_width = valid ? width_sum / double(valid) : 0.0;
                row.mean_count = valid ? count_sum / double(valid) : 0.0;
                table.rows.push_back(row);
            }
    }
    return table;
}

void emit(const CoverageTable& table, std::ostream& out) {
    if (table.rows.empty()) throw std::domain_error("emit: empty table");
    out << "alpha,c,method,level,coverage,se,reps,mean_width,mean_count\n";
    char buf[256];
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof(buf),
                      "%.6f,%.6f,%d,%.6f,%.6f,%.6f,%zu,%.6f,%.6f\n", r.alpha,
                      r.c, int(r.method), r.level, r.coverage, r.std_error,
                      r.replications, r.mean_width, r.mean_count);
        out << buf;
    }
    if (!out) throw IoError("emit: write failed");
}

void emit(const CoverageTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit: cannot open " + path);
    emit(table, out);
    out.flush();
    if (!out) throw IoError("emit: write failed for " + path);
}

}  // namespace stablefield
