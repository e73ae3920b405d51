#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bsopt/cli.hpp"
#include "bsopt/errors.hpp"
#include "bsopt/version.hpp"

namespace {

void add_station_options(CLI::App* cmd, bsopt::cli::StationParams& station) {
    cmd->add_option("--m-a", station.m_a, "Max inventory, battery type A")->capture_default_str();
    cmd->add_option("--m-b", station.m_b, "Max inventory, battery type B")->capture_default_str();
    cmd->add_option("--tau-s", station.tau_s, "Satisfaction floor in (0,1]")->capture_default_str();
    cmd->add_option("--tau-1", station.tau_1, "Penalty added when satisfaction drops below the floor")
        ->capture_default_str();
    cmd->add_option("--satisfaction", station.satisfaction, "Satisfaction term: literal | one-minus")
        ->capture_default_str()
        ->check(CLI::IsMember({"literal", "one-minus"}));
}

void add_ga_options(CLI::App* cmd, bsopt::cli::GaParams& ga) {
    cmd->add_option("--population", ga.population, "Population size")->capture_default_str();
    cmd->add_option("--crossover-prob", ga.crossover_prob, "Midpoint crossover probability")
        ->capture_default_str();
    cmd->add_option("--mutation-rate", ga.mutation_rate, "Per-gene mutation probability")
        ->capture_default_str();
    cmd->add_option("--iterations", ga.iterations, "Number of generations")->capture_default_str();
    cmd->add_option("--tournament", ga.tournament, "Tournament size")->capture_default_str();
    cmd->add_option("--elitism", ga.elitism, "Elites carried to the next generation")->capture_default_str();
    cmd->add_option("--seed", ga.seed, "Master random seed")->capture_default_str();
    cmd->add_option("--strategy", ga.strategy, "Sampling strategy: lru | uniform")
        ->capture_default_str()
        ->check(CLI::IsMember({"lru", "uniform"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery swap station demand estimation and charging-schedule optimization"};
    app.set_version_flag("--version", std::string(bsopt::kVersion));
    app.set_config("--config", "", "Config file with default option values")->envname("BSOPT_CONFIG");
    app.require_subcommand(1);

    bsopt::cli::EstimateParams estimate;
    auto* est = app.add_subcommand("estimate", "Estimate hourly swap demand from charging sessions");
    est->add_option("--sessions", estimate.sessions_path, "Charging sessions CSV")->required();
    est->add_option("--prices", estimate.prices_path, "Electricity prices CSV (hour,price)");
    est->add_flag("--prices-full", estimate.prices_full, "Treat the prices file as a full-horizon series");
    est->add_option("--col-start", estimate.col_start, "Start-time column name")->capture_default_str();
    auto* dur_opt =
        est->add_option("--col-duration", estimate.col_duration, "Duration column name (minutes)")
            ->capture_default_str();
    est->add_option("--col-end", estimate.col_end, "End-time column name (used instead of duration)")
        ->excludes(dur_opt);
    est->add_option("--col-energy", estimate.col_energy, "Energy column name (kWh)")->capture_default_str();
    est->add_option("--col-region", estimate.col_region, "Region column name")->capture_default_str();
    est->add_option("--region", estimate.region_filter, "Keep only sessions from this region");
    est->add_option("--reject-threshold", estimate.reject_threshold,
                    "Maximum tolerated fraction of malformed rows")
        ->capture_default_str();
    est->add_option("--theta", estimate.theta, "Logistic weights for duration, energy, swap time")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    est->add_option("--swap-time", estimate.swap_time_minutes, "Battery swap time in minutes")
        ->capture_default_str();
    est->add_option("--ratio-a", estimate.ratio_a, "Share of demand assigned to battery type A")
        ->capture_default_str();
    est->add_flag("--lambda-smoothing", estimate.lambda_smoothing,
                  "Average arrival rates over the same hour-of-week across weeks");
    est->add_option("-o,--out", estimate.out_dir, "Output directory")->capture_default_str();

    bsopt::cli::MetricsParams metrics;
    auto* met = app.add_subcommand("metrics", "Score a demand series (trend, periodicity, outliers)");
    met->add_option("--input", metrics.input_path, "CSV with the series to score")->required();
    met->add_option("--column", metrics.column, "Column holding the series")->capture_default_str();
    met->add_option("--window", metrics.window_hours, "Trend window length in hours")->capture_default_str();
    met->add_option("--periods", metrics.periods, "Expected periods in hours")
        ->delimiter(',')
        ->capture_default_str();
    met->add_option("--top-k", metrics.top_k, "Number of spectral peaks to keep")->capture_default_str();
    met->add_option("-o,--out", metrics.out_dir, "Output directory")->capture_default_str();

    bsopt::cli::OptimizeParams optimize;
    auto* opt = app.add_subcommand("optimize", "Optimize a 24-hour charging plan with the GA");
    opt->add_option("--demand", optimize.demand_path, "demand.csv produced by estimate")->required();
    opt->add_option("--day", optimize.day, "Which 24-hour slice of the demand file to use")
        ->capture_default_str();
    add_station_options(opt, optimize.station);
    add_ga_options(opt, optimize.ga);
    opt->add_option("-o,--out", optimize.out_dir, "Output directory")->capture_default_str();

    bsopt::cli::BaselineParams baseline;
    auto* base = app.add_subcommand("baseline", "Evaluate the immediate swap-and-charge strategy");
    base->add_option("--demand", baseline.demand_path, "demand.csv produced by estimate")->required();
    base->add_option("--day", baseline.day, "Which 24-hour slice of the demand file to use")
        ->capture_default_str();
    add_station_options(base, baseline.station);
    base->add_option("-o,--out", baseline.out_dir, "Output directory")->capture_default_str();

    bsopt::cli::CompareParams compare;
    auto* cmp = app.add_subcommand("compare", "Compare GA-EVLRU against the plain GA over regions");
    cmp->add_option("--demand", compare.demand_paths, "demand.csv files, one region each");
    cmp->add_option("--synthetic", compare.synthetic_regions, "Number of synthetic regions to generate");
    cmp->add_option("--synthetic-seed", compare.synthetic_seed, "Base seed for synthetic regions")
        ->capture_default_str();
    cmp->add_option("--day", compare.day, "Which 24-hour slice of each demand file to use")
        ->capture_default_str();
    cmp->add_option("--seeds", compare.seeds, "Run seeds")->delimiter(',')->capture_default_str();
    add_station_options(cmp, compare.station);
    add_ga_options(cmp, compare.ga);
    cmp->add_option("-o,--out", compare.out_dir, "Output directory")->capture_default_str();

    std::string rerun_manifest;
    std::string rerun_out;
    auto* rerun = app.add_subcommand("rerun", "Re-execute a command from its manifest.json");
    rerun->add_option("manifest", rerun_manifest, "Path to a manifest.json")->required();
    rerun->add_option("-o,--out", rerun_out, "Output directory (default: the manifest's directory)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    }

    try {
        if (est->parsed()) return bsopt::cli::cmd_estimate(estimate);
        if (met->parsed()) return bsopt::cli::cmd_metrics(metrics);
        if (opt->parsed()) return bsopt::cli::cmd_optimize(optimize);
        if (base->parsed()) return bsopt::cli::cmd_baseline(baseline);
        if (cmp->parsed()) return bsopt::cli::cmd_compare(compare);
        if (rerun->parsed()) return bsopt::cli::cmd_rerun(rerun_manifest, rerun_out);
    } catch (const bsopt::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
