// stablefield command-line driver: simulate marked samples, build subsampling
// confidence intervals, run coverage studies and evaluate limit-law oracles.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablefield/coverage.hpp"
#include "stablefield/field.hpp"
#include "stablefield/limit_theory.hpp"
#include "stablefield/stable.hpp"
#include "stablefield/subsampling.hpp"

using nlohmann::json;
using namespace stablefield;

namespace {

Region parse_region(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            vals.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("region: cannot parse '" + tok + "'");
        }
    }
    if (vals.size() < 2)
        throw ConfigError("region: expected sides...,scale (e.g. 1,1,10)");
    const double scale = vals.back();
    vals.pop_back();
    try {
        return Region(vals, scale);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

FilterSpec parse_filter_json(const json& j) {
    if (j.is_string()) return filter_by_name(j.get<std::string>());
    if (j.is_object() && j.value("type", "") == "radial_grid")
        return make_radial_grid(j.at("radii").get<std::vector<double>>(),
                                j.at("values").get<std::vector<double>>(),
                                j.value("dim", 2));
    throw ConfigError("filter: expected a name or a radial_grid object");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (j.contains("region")) {
            const auto& r = j["region"];
            cfg.region = Region(r.at("sides").get<std::vector<double>>(),
                                r.at("scale").get<double>(),
                                r.value("origin", std::vector<double>{}));
        }
        if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<double>>();
        if (j.contains("c_values"))
            cfg.c_values = j["c_values"].get<std::vector<double>>();
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (int m : j["methods"].get<std::vector<int>>()) {
                if (m != 1 && m != 2)
                    throw ConfigError("config: methods must be 1 or 2");
                cfg.methods.push_back(Method(m));
            }
        }
        if (j.contains("nominal_levels"))
            cfg.nominal_levels = j["nominal_levels"].get<std::vector<double>>();
        if (j.contains("replications")) cfg.replications = j["replications"];
        if (j.contains("mc_draws")) cfg.mc_draws = j["mc_draws"];
        if (j.contains("series_terms")) cfg.series_terms = j["series_terms"];
        if (j.contains("intensity")) cfg.intensity = j["intensity"];
        if (j.contains("master_seed")) cfg.master_seed = j["master_seed"];
        if (j.contains("true_mu")) cfg.true_mu = j["true_mu"];
        if (j.contains("workers")) cfg.workers = j["workers"];
        if (j.contains("tiny_sigma")) cfg.tiny_sigma = j["tiny_sigma"];
        if (j.contains("filter")) cfg.filter = parse_filter_json(j["filter"]);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

MarkedSample read_sample_csv(const std::string& path, const Region& region) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    MarkedSample sample;
    sample.pattern.dim = region.dim();
    sample.pattern.region = region;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> vals;
        bool numeric = true;
        while (std::getline(ss, tok, ',')) {
            try {
                vals.push_back(std::stod(tok));
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (lineno == 1) continue;  // header row
            throw ConfigError(path + ": non-numeric row at line " +
                              std::to_string(lineno));
        }
        if (int(vals.size()) != region.dim() + 1)
            throw ConfigError(path + ": expected " +
                              std::to_string(region.dim() + 1) +
                              " columns at line " + std::to_string(lineno));
        for (int k = 0; k < region.dim(); ++k)
            sample.pattern.coords.push_back(vals[std::size_t(k)]);
        sample.marks.push_back(vals.back());
    }
    for (std::size_t i = 0; i < sample.pattern.size(); ++i)
        for (int k = 0; k < region.dim(); ++k) {
            const double x = sample.pattern.point(i)[std::size_t(k)];
            const double slack = 1e-9 * (1.0 + std::abs(region.side(k)));
            if (x < region.lower(k) - slack ||
                x > region.lower(k) + region.side(k) + slack)
                throw ConfigError(path + ": point outside the region at row " +
                                  std::to_string(i + 1));
        }
    return sample;
}

std::string sample_to_csv(const MarkedSample& sample) {
    std::ostringstream out;
    static const char* axes[] = {"x", "y", "z"};
    const int d = sample.pattern.dim;
    for (int k = 0; k < d; ++k) {
        if (d <= 3)
            out << axes[k];
        else
            out << 'x' << (k + 1);
        out << ',';
    }
    out << "mark\n";
    char buf[64];
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (int k = 0; k < d; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,",
                          sample.pattern.point(i)[std::size_t(k)]);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g", sample.marks[i]);
        out << buf << '\n';
    }
    return out.str();
}

std::vector<double> region_midpoint(const Region& region) {
    std::vector<double> v(std::size_t(region.dim()));
    for (int k = 0; k < region.dim(); ++k)
        v[std::size_t(k)] = region.lower(k) + 0.5 * region.side(k);
    return v;
}

int run_simulate(double alpha, std::size_t terms, const Region& region,
                 std::uint64_t seed, double mu, double intensity,
                 const std::string& filter_name, const std::string& out) {
    ModelSpec model;
    model.filter = filter_by_name(filter_name);
    model.alpha = alpha;
    model.mu = mu;
    model.center = region_midpoint(region);
    if (model.filter.dim != region.dim())
        throw ConfigError("simulate: filter dimension does not match region");

    Rng rng(seed);
    const PointPattern pattern = sample_prm(region, intensity, rng);
    const SeriesRealization realization = draw_realization(model, terms, rng);
    MarkedSample sample{pattern, eval_marks(realization, model, pattern)};
    write_text(out, sample_to_csv(sample));
    return 0;
}

int run_ci(const std::string& in_path, const Region& region, double c,
           const std::vector<int>& methods, double alpha,
           const std::vector<double>& levels, std::size_t mc_draws,
           std::uint64_t seed, double tiny_sigma, const std::string& out) {
    const MarkedSample sample = read_sample_csv(in_path, region);
    if (sample.size() == 0) throw ConfigError("ci: empty dataset");

    json result;
    result["count"] = sample.size();
    result["mu_hat"] = sample_mean(sample);
    result["sigma_hat"] = sample_std(sample);
    result["intervals"] = json::array();

    for (int m : methods) {
        if (m != 1 && m != 2) throw ConfigError("ci: method must be 1 or 2");
        SubsampleConfig sub;
        sub.c = c;
        sub.num_draws = mc_draws;
        sub.method = Method(m);
        sub.tiny_sigma = tiny_sigma;
        if (m == 1) {
            if (!(alpha > 1.0 && alpha <= 2.0))
                throw ConfigError("ci: method 1 needs --alpha in (1, 2]");
            sub.alpha = alpha;
        }
        try {
            sub.validate();
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        Rng rng(derive_seed(seed, {std::uint64_t(m)}));
        const SubsamplingDistribution dist =
            build_distribution(sample, sub, rng);
        for (double level : levels) {
            if (!(level > 0.0 && level < 1.0))
                throw ConfigError("ci: levels must lie in (0, 1)");
            const double p = 1.0 - level;
            const Interval ci = m == 1 ? ci_method1(sample, dist, p, alpha)
                                       : ci_method2(sample, dist, p);
            json rec = ci_json_record(dist, ci, p);
            rec["level"] = level;
            result["intervals"].push_back(std::move(rec));
        }
    }
    write_text(out, result.dump(2) + "\n");
    return 0;
}

int run_oracle(const std::string& quantity, double alpha, double r,
               std::size_t draws, std::uint64_t seed,
               const std::string& filter_name, int workers,
               const std::string& out) {
    const FilterSpec filter = filter_by_name(filter_name);
    Rng rng(seed);
    json j;
    j["quantity"] = quantity;
    j["draws"] = 0;
    j["std_error"] = 0.0;
    j["seed"] = seed;

    auto fill = [&j](const MonteCarloEstimate& e) {
        j["estimate"] = e.value;
        j["std_error"] = e.std_error;
        j["draws"] = e.draws;
    };

    if (quantity == "limit_scale_mean") {
        fill(limit_scale_mean(filter, r, alpha, draws, rng, workers));
    } else if (quantity == "limit_scale_variance") {
        try {
            fill(limit_scale_variance(filter, r, alpha, draws, rng, workers));
        } catch (const DegenerateLimitError& e) {
            j["estimate"] = nullptr;
            j["degenerate_point_mass"] = e.point_mass;
        }
    } else if (quantity == "second_moment") {
        fill(poisson_functional_moment(filter, r, alpha, PowerMode::square,
                                       draws, rng, workers));
    } else if (quantity == "mean_abs_alpha") {
        fill(poisson_functional_moment(filter, r, alpha,
                                       PowerMode::mean_abs_alpha, draws, rng,
                                       workers));
    } else if (quantity == "sq_sum_alpha_half") {
        fill(poisson_functional_moment(filter, r, alpha,
                                       PowerMode::sq_sum_alpha_half, draws,
                                       rng, workers));
    } else if (quantity == "gaussian_limit_variance") {
        j["estimate"] = gaussian_limit_variance(filter, r);
    } else if (quantity == "codifference_gap") {
        const auto g = codifference_gap(filter, alpha, r, draws, rng, workers);
        j["estimate"] = g.gap;
        j["std_error"] = g.moment_se;
        j["draws"] = draws;
        j["functional_moment"] = g.functional_moment;
        j["codifference_side"] = g.codifference_side;
    } else if (quantity == "c_alpha") {
        j["estimate"] = c_alpha(alpha);
    } else if (quantity == "abs_moment_gaussian") {
        j["estimate"] = abs_moment_gaussian(alpha);
    } else if (quantity == "sigma_psi") {
        j["estimate"] = sigma_psi(filter, alpha);
    } else {
        throw ConfigError("oracle: unknown quantity " + quantity);
    }
    write_text(out, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "heavy-tailed random fields on Poisson-scattered points: simulation, "
        "subsampling confidence intervals, coverage studies"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "emit one marked sample as CSV");
    double sim_alpha = 1.5, sim_mu = 0.0, sim_r = 1.0;
    std::size_t sim_terms = 100;
    std::uint64_t sim_seed = 0;
    std::string sim_region = "1,1,10", sim_filter = "gauss2d", sim_out;
    sim->add_option("--alpha", sim_alpha, "stability index in (0, 2)");
    sim->add_option("--terms", sim_terms, "series truncation I");
    sim->add_option("--region", sim_region, "sides...,scale (e.g. 1,1,10)");
    sim->add_option("--seed", sim_seed, "random seed");
    sim->add_option("--mu", sim_mu, "true mean");
    sim->add_option("--intensity", sim_r, "Poisson intensity r");
    sim->add_option("--filter", sim_filter, "built-in filter name");
    sim->add_option("--out,-o", sim_out, "output path (default stdout)");

    auto* ci = app.add_subcommand("ci", "confidence intervals for one dataset");
    std::string ci_in, ci_region = "1,1,10", ci_out;
    double ci_c = 0.2, ci_alpha = 0.0, ci_tiny = 1e-10;
    std::vector<int> ci_methods{1, 2};
    std::vector<double> ci_levels{0.90};
    std::size_t ci_draws = 10000;
    std::uint64_t ci_seed = 0;
    ci->add_option("--in,-i", ci_in, "marked-sample CSV")->required();
    ci->add_option("--region", ci_region, "sides...,scale of the region");
    ci->add_option("--c", ci_c, "block ratio in (0, 1)");
    ci->add_option("--method", ci_methods, "1 and/or 2");
    ci->add_option("--alpha", ci_alpha, "stability index (method 1 only)");
    ci->add_option("--level", ci_levels, "nominal levels, e.g. 0.90 0.95");
    ci->add_option("--mc-draws", ci_draws, "anchor draws M");
    ci->add_option("--seed", ci_seed, "random seed");
    ci->add_option("--tiny-sigma", ci_tiny, "single-point block stand-in");
    ci->add_option("--out,-o", ci_out, "output path (default stdout)");

    auto* cov = app.add_subcommand("coverage", "run a coverage study");
    std::string cov_config, cov_region, cov_out, cov_preset;
    std::vector<double> cov_alphas, cov_cs, cov_levels;
    std::vector<int> cov_methods;
    std::optional<std::size_t> cov_reps, cov_draws, cov_terms;
    std::optional<double> cov_mu, cov_r;
    std::optional<std::uint64_t> cov_seed;
    std::optional<int> cov_workers;
    cov->add_option("--config", cov_config, "JSON config file");
    cov->add_option("--alpha", cov_alphas, "alpha grid override");
    cov->add_option("--c", cov_cs, "block-ratio grid override");
    cov->add_option("--method", cov_methods, "methods override (1 2)");
    cov->add_option("--level", cov_levels, "nominal levels override");
    cov->add_option("--reps", cov_reps, "replications per cell");
    cov->add_option("--mc-draws", cov_draws, "anchor draws M");
    cov->add_option("--terms", cov_terms, "series truncation I");
    cov->add_option("--region", cov_region, "sides...,scale override");
    cov->add_option("--mu", cov_mu, "true mean");
    cov->add_option("--intensity", cov_r, "Poisson intensity r");
    cov->add_option("--seed", cov_seed, "master seed");
    cov->add_option("--workers", cov_workers, "parallel workers");
    cov->add_option("--preset", cov_preset, "'desk' = 500 reps, 2000 draws");
    cov->add_option("--out,-o", cov_out, "output CSV path (default stdout)");

    auto* ora = app.add_subcommand("oracle", "limit-theory quantities as JSON");
    std::string ora_quantity, ora_filter = "gauss2d", ora_out;
    double ora_alpha = 1.5, ora_r = 1.0;
    std::size_t ora_draws = 100000;
    std::uint64_t ora_seed = 0;
    int ora_workers = 1;
    ora->add_option("--quantity,-q", ora_quantity,
                    "limit_scale_mean | limit_scale_variance | second_moment | "
                    "mean_abs_alpha | sq_sum_alpha_half | "
                    "gaussian_limit_variance | codifference_gap | c_alpha | "
                    "abs_moment_gaussian | sigma_psi")
        ->required();
    ora->add_option("--alpha", ora_alpha, "stability index");
    ora->add_option("--r", ora_r, "Poisson intensity");
    ora->add_option("--draws", ora_draws, "Monte Carlo draws");
    ora->add_option("--seed", ora_seed, "random seed");
    ora->add_option("--filter", ora_filter, "built-in filter name");
    ora->add_option("--workers", ora_workers, "parallel workers");
    ora->add_option("--out,-o", ora_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return run_simulate(sim_alpha, sim_terms, parse_region(sim_region),
                                sim_seed, sim_mu, sim_r, sim_filter, sim_out);
        if (ci->parsed())
            return run_ci(ci_in, parse_region(ci_region), ci_c, ci_methods,
                          ci_alpha, ci_levels, ci_draws, ci_seed, ci_tiny,
                          ci_out);
        if (cov->parsed()) {
            ExperimentConfig cfg;
            if (!cov_config.empty()) cfg = load_config(cov_config);
            if (!cov_alphas.empty()) cfg.alphas = cov_alphas;
            if (!cov_cs.empty()) cfg.c_values = cov_cs;
            if (!cov_methods.empty()) {
                cfg.methods.clear();
                for (int m : cov_methods) {
                    if (m != 1 && m != 2)
                        throw ConfigError("coverage: method must be 1 or 2");
                    cfg.methods.push_back(Method(m));
                }
            }
            if (!cov_levels.empty()) cfg.nominal_levels = cov_levels;
            if (cov_preset == "desk") {
                cfg.replications = 500;
                cfg.mc_draws = 2000;
            } else if (!cov_preset.empty()) {
                throw ConfigError("coverage: unknown preset " + cov_preset);
            }
            if (cov_reps) cfg.replications = *cov_reps;
            if (cov_draws) cfg.mc_draws = *cov_draws;
            if (cov_terms) cfg.series_terms = *cov_terms;
            if (!cov_region.empty()) cfg.region = parse_region(cov_region);
            if (cov_mu) cfg.true_mu = *cov_mu;
            if (cov_r) cfg.intensity = *cov_r;
            if (cov_seed) cfg.master_seed = *cov_seed;
            if (cov_workers) cfg.workers = *cov_workers;
            cfg.validate();
            const CoverageTable table = run_study(cfg);
            std::ostringstream csv;
            emit(table, csv);
            write_text(cov_out, csv.str());
            return 0;
        }
        if (ora->parsed())
            return run_oracle(ora_quantity, ora_alpha, ora_r, ora_draws,
                              ora_seed, ora_filter, ora_workers, ora_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
