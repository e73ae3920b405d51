#ifndef BSOPT_CLI_HPP
#define BSOPT_CLI_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsopt/ga_engine.hpp"
#include "bsopt/ingest.hpp"
#include "bsopt/series_metrics.hpp"
#include "bsopt/station_sim.hpp"

// Command implementations behind the bsopt binary. Each command writes
// its outputs plus a manifest.json into out_dir; everything written to
// disk is a deterministic function of the parameters and input bytes
// (wall-clock timings are reported on stdout only).
namespace bsopt::cli {

struct EstimateParams {
    std::string sessions_path;
    std::string prices_path;  // empty -> flat price 1.0
    bool prices_full = false;
    std::string col_start = "start";
    std::string col_duration = "duration_min";
    std::string col_end;
    std::string col_energy = "energy_kwh";
    std::string col_region = "region";
    std::string region_filter;
    double reject_threshold = 0.10;
    std::array<double, 3> theta{0.08, 0.08, -0.8};
    double swap_time_minutes = 5.0;
    double ratio_a = 5.0 / 13.0;
    bool lambda_smoothing = false;
    std::string out_dir = ".";
};

struct MetricsParams {
    std::string input_path;
    std::string column = "expected";
    int window_hours = 24;
    std::vector<double> periods{24.0, 168.0};
    int top_k = 2;
    std::string out_dir = ".";
};

struct StationParams {
    int m_a = 5;
    int m_b = 8;
    double tau_s = 0.9;
    double tau_1 = 2.0;
    std::string satisfaction = "literal";  // literal | one-minus

    StationConfig to_config() const;
};

struct GaParams {
    int population = 100;
    double crossover_prob = 0.8;
    double mutation_rate = 0.005;
    int iterations = 500;
    int tournament = 3;
    int elitism = 1;
    std::uint64_t seed = 42;
    std::string strategy = "lru";  // lru | uniform

    GaConfig to_config() const;
};

struct OptimizeParams {
    std::string demand_path;
    int day = 0;
    StationParams station;
    GaParams ga;
    std::string out_dir = ".";
};

struct BaselineParams {
    std::string demand_path;
    int day = 0;
    StationParams station;
    std::string out_dir = ".";
};

struct CompareParams {
    std::vector<std::string> demand_paths;  // one region per file
    int synthetic_regions = 0;
    std::uint64_t synthetic_seed = 2024;
    int day = 0;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    StationParams station;
    GaParams ga;
    std::string out_dir = ".";
};

int cmd_estimate(const EstimateParams& params);
int cmd_metrics(const MetricsParams& params);
int cmd_optimize(const OptimizeParams& params);
int cmd_baseline(const BaselineParams& params);
int cmd_compare(const CompareParams& params);

// Re-executes the command recorded in a manifest. Inputs are verified
// against their recorded digests first. out_dir_override, when empty,
// defaults to the manifest's own directory.
int cmd_rerun(const std::string& manifest_path, const std::string& out_dir_override = "");

nlohmann::ordered_json to_json(const EstimateParams& params);
nlohmann::ordered_json to_json(const MetricsParams& params);
nlohmann::ordered_json to_json(const OptimizeParams& params);
nlohmann::ordered_json to_json(const BaselineParams& params);
nlohmann::ordered_json to_json(const CompareParams& params);

EstimateParams estimate_params_from_json(const nlohmann::ordered_json& j);
MetricsParams metrics_params_from_json(const nlohmann::ordered_json& j);
OptimizeParams optimize_params_from_json(const nlohmann::ordered_json& j);
BaselineParams baseline_params_from_json(const nlohmann::ordered_json& j);
CompareParams compare_params_from_json(const nlohmann::ordered_json& j);

}  // namespace bsopt::cli

#endif  // BSOPT_CLI_HPP
