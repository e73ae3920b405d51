#include "bsopt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bsopt/csv.hpp"
#include "bsopt/demand_model.hpp"
#include "bsopt/errors.hpp"
#include "bsopt/manifest.hpp"
#include "bsopt/synthetic.hpp"
#include "bsopt/version.hpp"

namespace fs = std::filesystem;

namespace bsopt::cli {

namespace {

std::string absolute_path(const std::string& path) {
    return fs::absolute(fs::path(path)).lexically_normal().string();
}

void ensure_out_dir(const std::string& out_dir) {
    if (!out_dir.empty()) fs::create_directories(out_dir);
}

std::string join(const std::string& out_dir, const std::string& name) {
    return (fs::path(out_dir) / name).string();
}

RunManifest make_manifest(const std::string& command, nlohmann::ordered_json parameters,
                          const std::vector<std::string>& input_paths,
                          const std::vector<std::string>& outputs) {
    RunManifest m;
    m.tool = kToolName;
    m.version = kVersion;
    m.command = command;
    m.parameters = std::move(parameters);
    m.inputs = nlohmann::ordered_json::object();
    for (const auto& p : input_paths) m.inputs[absolute_path(p)] = file_digest(p);
    m.outputs = outputs;
    return m;
}

nlohmann::ordered_json station_to_json(const StationParams& s) {
    return {{"m_a", s.m_a}, {"m_b", s.m_b},           {"tau_s", s.tau_s},
            {"tau_1", s.tau_1}, {"satisfaction", s.satisfaction}};
}

StationParams station_from_json(const nlohmann::ordered_json& j) {
    StationParams s;
    s.m_a = j.at("m_a").get<int>();
    s.m_b = j.at("m_b").get<int>();
    s.tau_s = j.at("tau_s").get<double>();
    s.tau_1 = j.at("tau_1").get<double>();
    s.satisfaction = j.at("satisfaction").get<std::string>();
    return s;
}

nlohmann::ordered_json ga_to_json(const GaParams& g) {
    return {{"population", g.population},
            {"crossover_prob", g.crossover_prob},
            {"mutation_rate", g.mutation_rate},
            {"iterations", g.iterations},
            {"tournament", g.tournament},
            {"elitism", g.elitism},
            {"seed", g.seed},
            {"strategy", g.strategy}};
}

GaParams ga_from_json(const nlohmann::ordered_json& j) {
    GaParams g;
    g.population = j.at("population").get<int>();
    g.crossover_prob = j.at("crossover_prob").get<double>();
    g.mutation_rate = j.at("mutation_rate").get<double>();
    g.iterations = j.at("iterations").get<int>();
    g.tournament = j.at("tournament").get<int>();
    g.elitism = j.at("elitism").get<int>();
    g.seed = j.at("seed").get<std::uint64_t>();
    g.strategy = j.at("strategy").get<std::string>();
    return g;
}

nlohmann::ordered_json plan_json(const char* strategy_label, const DemandProfile& profile,
                                 const StationParams& station, const SimulationTrace& trace,
                                 double cost_immediate, int best_generation) {
    const double r_opt = cost_immediate > 0.0 ? (cost_immediate - trace.cost) / cost_immediate : 0.0;
    nlohmann::ordered_json j;
    j["strategy"] = strategy_label;
    j["horizon_hours"] = profile.horizon();
    j["station"] = station_to_json(station);
    j["cost"] = trace.cost;
    j["cost_immediate"] = cost_immediate;
    j["r_opt"] = r_opt;
    j["gamma"] = trace.gamma;
    j["penalty"] = trace.penalty;
    j["fitness"] = trace.fitness;
    j["best_generation"] = best_generation;
    auto type_block = [&profile, &trace](BatteryType type) {
        const auto& tt = trace.type(type);
        nlohmann::ordered_json b;
        b["demand"] = type == BatteryType::A ? profile.demand_a : profile.demand_b;
        b["supplied"] = tt.supplied;
        b["charge"] = tt.applied_charge;
        b["full"] = tt.full;
        b["empty"] = tt.empty;
        return b;
    };
    j["type_a"] = type_block(BatteryType::A);
    j["type_b"] = type_block(BatteryType::B);
    j["price"] = profile.price;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

PriceSeries flat_prices() {
    PriceSeries prices;
    prices.daily_profile = true;
    prices.hourly_price.assign(24, 1.0);
    return prices;
}

}  // namespace

StationConfig StationParams::to_config() const {
    StationConfig cfg;
    cfg.m_a = m_a;
    cfg.m_b = m_b;
    cfg.tau_s = tau_s;
    cfg.tau_1 = tau_1;
    if (satisfaction == "literal") {
        cfg.satisfaction_term = SatisfactionTerm::literal_gamma;
    } else if (satisfaction == "one-minus") {
        cfg.satisfaction_term = SatisfactionTerm::one_minus_gamma;
    } else {
        throw DataError("satisfaction mode must be 'literal' or 'one-minus', got '" + satisfaction + "'");
    }
    cfg.validate();
    return cfg;
}

GaConfig GaParams::to_config() const {
    GaConfig cfg;
    cfg.population_size = population;
    cfg.crossover_prob = crossover_prob;
    cfg.mutation_rate = mutation_rate;
    cfg.max_iterations = iterations;
    cfg.tournament_size = tournament;
    cfg.elitism_count = elitism;
    cfg.seed = seed;
    if (strategy == "lru") {
        cfg.strategy = Strategy::lru;
    } else if (strategy == "uniform") {
        cfg.strategy = Strategy::uniform;
    } else {
        throw DataError("strategy must be 'lru' or 'uniform', got '" + strategy + "'");
    }
    cfg.validate();
    return cfg;
}

nlohmann::ordered_json to_json(const EstimateParams& p) {
    nlohmann::ordered_json j;
    j["sessions"] = absolute_path(p.sessions_path);
    j["prices"] = p.prices_path.empty() ? "" : absolute_path(p.prices_path);
    j["prices_full"] = p.prices_full;
    j["col_start"] = p.col_start;
    j["col_duration"] = p.col_duration;
    j["col_end"] = p.col_end;
    j["col_energy"] = p.col_energy;
    j["col_region"] = p.col_region;
    j["region_filter"] = p.region_filter;
    j["reject_threshold"] = p.reject_threshold;
    j["theta"] = p.theta;
    j["swap_time_minutes"] = p.swap_time_minutes;
    j["ratio_a"] = p.ratio_a;
    j["lambda_smoothing"] = p.lambda_smoothing;
    return j;
}

EstimateParams estimate_params_from_json(const nlohmann::ordered_json& j) {
    EstimateParams p;
    p.sessions_path = j.at("sessions").get<std::string>();
    p.prices_path = j.at("prices").get<std::string>();
    p.prices_full = j.at("prices_full").get<bool>();
    p.col_start = j.at("col_start").get<std::string>();
    p.col_duration = j.at("col_duration").get<std::string>();
    p.col_end = j.at("col_end").get<std::string>();
    p.col_energy = j.at("col_energy").get<std::string>();
    p.col_region = j.at("col_region").get<std::string>();
    p.region_filter = j.at("region_filter").get<std::string>();
    p.reject_threshold = j.at("reject_threshold").get<double>();
    p.theta = j.at("theta").get<std::array<double, 3>>();
    p.swap_time_minutes = j.at("swap_time_minutes").get<double>();
    p.ratio_a = j.at("ratio_a").get<double>();
    p.lambda_smoothing = j.at("lambda_smoothing").get<bool>();
    return p;
}

nlohmann::ordered_json to_json(const MetricsParams& p) {
    nlohmann::ordered_json j;
    j["input"] = absolute_path(p.input_path);
    j["column"] = p.column;
    j["window_hours"] = p.window_hours;
    j["periods"] = p.periods;
    j["top_k"] = p.top_k;
    return j;
}

MetricsParams metrics_params_from_json(const nlohmann::ordered_json& j) {
    MetricsParams p;
    p.input_path = j.at("input").get<std::string>();
    p.column = j.at("column").get<std::string>();
    p.window_hours = j.at("window_hours").get<int>();
    p.periods = j.at("periods").get<std::vector<double>>();
    p.top_k = j.at("top_k").get<int>();
    return p;
}

nlohmann::ordered_json to_json(const OptimizeParams& p) {
    nlohmann::ordered_json j;
    j["demand"] = absolute_path(p.demand_path);
    j["day"] = p.day;
    j["station"] = station_to_json(p.station);
    j["ga"] = ga_to_json(p.ga);
    return j;
}

OptimizeParams optimize_params_from_json(const nlohmann::ordered_json& j) {
    OptimizeParams p;
    p.demand_path = j.at("demand").get<std::string>();
    p.day = j.at("day").get<int>();
    p.station = station_from_json(j.at("station"));
    p.ga = ga_from_json(j.at("ga"));
    return p;
}

nlohmann::ordered_json to_json(const BaselineParams& p) {
    nlohmann::ordered_json j;
    j["demand"] = absolute_path(p.demand_path);
    j["day"] = p.day;
    j["station"] = station_to_json(p.station);
    return j;
}

BaselineParams baseline_params_from_json(const nlohmann::ordered_json& j) {
    BaselineParams p;
    p.demand_path = j.at("demand").get<std::string>();
    p.day = j.at("day").get<int>();
    p.station = station_from_json(j.at("station"));
    return p;
}

nlohmann::ordered_json to_json(const CompareParams& p) {
    nlohmann::ordered_json j;
    auto demands = nlohmann::ordered_json::array();
    for (const auto& d : p.demand_paths) demands.push_back(absolute_path(d));
    j["demands"] = demands;
    j["synthetic_regions"] = p.synthetic_regions;
    j["synthetic_seed"] = p.synthetic_seed;
    j["day"] = p.day;
    j["seeds"] = p.seeds;
    j["station"] = station_to_json(p.station);
    j["ga"] = ga_to_json(p.ga);
    return j;
}

CompareParams compare_params_from_json(const nlohmann::ordered_json& j) {
    CompareParams p;
    p.demand_paths = j.at("demands").get<std::vector<std::string>>();
    p.synthetic_regions = j.at("synthetic_regions").get<int>();
    p.synthetic_seed = j.at("synthetic_seed").get<std::uint64_t>();
    p.day = j.at("day").get<int>();
    p.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    p.station = station_from_json(j.at("station"));
    p.ga = ga_from_json(j.at("ga"));
    return p;
}

int cmd_estimate(const EstimateParams& params) {
    SessionSchema schema;
    schema.start = params.col_start;
    schema.duration = params.col_duration;
    schema.end = params.col_end;
    schema.energy = params.col_energy;
    schema.region = params.col_region;
    schema.region_filter = params.region_filter;
    schema.max_reject_fraction = params.reject_threshold;

    ParseReport report;
    const auto sessions = parse_sessions(params.sessions_path, schema, &report);
    if (sessions.empty()) throw DataError("no sessions accepted from " + params.sessions_path);

    PriceSeries prices;
    if (params.prices_path.empty()) {
        std::cout << "no prices file given; using flat price 1.0\n";
        prices = flat_prices();
    } else {
        prices = load_prices(params.prices_path, !params.prices_full);
    }

    ModelParams model;
    model.theta = params.theta;
    model.swap_time_minutes = params.swap_time_minutes;
    EstimateOptions options;
    options.lambda_smoothing = params.lambda_smoothing;
    const DemandSeries series = estimate_demand_series(sessions, model, options);

    std::vector<std::string> inputs{params.sessions_path};
    if (!params.prices_path.empty()) inputs.push_back(params.prices_path);
    const RunManifest manifest = make_manifest("estimate", to_json(params), inputs, {"demand.csv"});

    ensure_out_dir(params.out_dir);
    write_demand_csv(join(params.out_dir, "demand.csv"), series, params.ratio_a, prices);
    save_manifest(join(params.out_dir, "manifest.json"), manifest);

    double total_expected = 0.0;
    for (double e : series.expected) total_expected += e;
    std::cout << "accepted " << report.accepted << " of " << report.total_rows << " rows ("
              << report.rejected << " rejected)\n";
    std::cout << "estimated " << series.expected.size() << " hours from " << format_timestamp(series.origin)
              << ", total expected demand " << csv::format_double(total_expected) << "\n";
    std::cout << "wrote " << join(params.out_dir, "demand.csv") << "\n";
    return 0;
}

int cmd_metrics(const MetricsParams& params) {
    const csv::Table table = csv::read_table(params.input_path);
    const auto col = table.column(params.column);
    if (!col) throw DataError("metrics input " + params.input_path + ": missing column '" + params.column + "'");
    std::vector<double> series;
    series.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        const auto v = csv::parse_double(row[*col]);
        if (!v) throw DataError("metrics input " + params.input_path + ": non-numeric value in '" +
                                params.column + "'");
        series.push_back(*v);
    }

    const MetricsReport report = evaluate_dataset(series, params.window_hours, params.periods, params.top_k);

    nlohmann::ordered_json j;
    j["s_m"] = report.s_m;
    j["p_m"] = report.p_m;
    j["o_m"] = report.o_m;
    j["window"] = report.window_hours;
    j["periods"] = report.expected_periods;

    const RunManifest manifest =
        make_manifest("metrics", to_json(params), {params.input_path}, {"metrics.json"});
    ensure_out_dir(params.out_dir);
    write_json_file(join(params.out_dir, "metrics.json"), j);
    save_manifest(join(params.out_dir, "manifest.json"), manifest);

    std::cout << "series: " << series.size() << " points from " << params.input_path << " ('"
              << params.column << "')\n";
    std::cout << "  trend stability  S_m = " << csv::format_double(report.s_m) << "\n";
    std::cout << "  period match     P_m = " << csv::format_double(report.p_m) << "\n";
    std::cout << "  outlier ratio    O_m = " << csv::format_double(report.o_m) << "\n";
    return 0;
}

namespace {

void write_convergence_csv(const std::string& path, const std::vector<double>& curve) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << "generation,best_fitness\n";
    for (std::size_t g = 0; g < curve.size(); ++g) {
        out << g << ',' << csv::format_double(curve[g]) << '\n';
    }
}

}  // namespace

int cmd_optimize(const OptimizeParams& params) {
    const DemandTable table = read_demand_csv(params.demand_path);
    const DemandProfile profile = profile_from_table(table, params.day);
    const StationConfig station = params.station.to_config();
    const GaConfig ga = params.ga.to_config();

    const RunResult result = run(profile, station, ga);
    const double cost_immediate = result.xi_max;
    const SimulationTrace trace = simulate(result.best_individual, profile, station, result.xi_max);
    const double r_opt = cost_immediate > 0.0 ? (cost_immediate - trace.cost) / cost_immediate : 0.0;

    const RunManifest manifest = make_manifest("optimize", to_json(params), {params.demand_path},
                                               {"plan.json", "convergence.csv"});
    ensure_out_dir(params.out_dir);
    write_json_file(join(params.out_dir, "plan.json"),
                    plan_json(strategy_name(ga.strategy), profile, params.station, trace, cost_immediate,
                              result.best_generation));
    write_convergence_csv(join(params.out_dir, "convergence.csv"), result.best_fitness_per_generation);
    save_manifest(join(params.out_dir, "manifest.json"), manifest);

    std::cout << "strategy " << strategy_name(ga.strategy) << ", " << ga.max_iterations << " iterations, seed "
              << ga.seed << "\n";
    std::cout << "  C_is    = " << csv::format_double(cost_immediate) << "\n";
    std::cout << "  C_ours  = " << csv::format_double(trace.cost) << "\n";
    std::cout << "  r_opt   = " << csv::format_double(r_opt * 100.0) << "%\n";
    std::cout << "  gamma   = " << csv::format_double(trace.gamma) << "\n";
    std::cout << "  fitness = " << csv::format_double(result.best_fitness) << " (generation "
              << result.best_generation << ")\n";
    std::cout << "  tau     = " << csv::format_double(result.per_iteration_seconds) << " s/iteration\n";
    return 0;
}

int cmd_baseline(const BaselineParams& params) {
    const DemandTable table = read_demand_csv(params.demand_path);
    const DemandProfile profile = profile_from_table(table, params.day);
    const StationConfig station = params.station.to_config();

    const auto [plan, cost] = immediate_plan(profile, station);
    const SimulationTrace trace = simulate(plan, profile, station, cost);

    const RunManifest manifest =
        make_manifest("baseline", to_json(params), {params.demand_path}, {"plan.json"});
    ensure_out_dir(params.out_dir);
    write_json_file(join(params.out_dir, "plan.json"),
                    plan_json("immediate", profile, params.station, trace, cost, 0));
    save_manifest(join(params.out_dir, "manifest.json"), manifest);

    std::cout << "immediate swap-and-charge baseline\n";
    std::cout << "  cost  = " << csv::format_double(cost) << "\n";
    std::cout << "  gamma = " << csv::format_double(trace.gamma) << "\n";
    return 0;
}

int cmd_compare(const CompareParams& params) {
    if (params.demand_paths.empty() && params.synthetic_regions <= 0) {
        throw DataError("compare: give at least one --demand file or --synthetic N");
    }
    const StationConfig station = params.station.to_config();
    GaConfig ga = params.ga.to_config();

    struct Region {
        std::string name;
        DemandProfile profile;
    };
    std::vector<Region> regions;
    for (const auto& path : params.demand_paths) {
        const DemandTable table = read_demand_csv(path);
        regions.push_back({fs::path(path).stem().string(), profile_from_table(table, params.day)});
    }
    for (int r = 0; r < params.synthetic_regions; ++r) {
        const std::uint64_t seed = params.synthetic_seed + std::uint64_t(r);
        regions.push_back({"synthetic-" + std::to_string(seed), synthetic_region(seed, station)});
    }

    nlohmann::ordered_json region_blocks = nlohmann::ordered_json::array();
    int lru_better_regions = 0;
    int seed_wins_lru = 0, seed_wins_uniform = 0, seed_ties = 0;
    double time_sum = 0.0;
    std::size_t time_count = 0;

    ensure_out_dir(params.out_dir);
    std::ofstream conv(join(params.out_dir, "convergence.csv"));
    if (!conv) throw DataError("cannot write file: " + join(params.out_dir, "convergence.csv"));
    conv << "region,strategy,seed,generation,best_fitness\n";

    for (const auto& region : regions) {
        const ComparisonReport report = compare(region.profile, station, ga, params.seeds);

        auto strategy_block = [](const StrategySummary& s) {
            nlohmann::ordered_json b;
            b["f_best"] = s.f_best;
            b["best_generation"] = s.best_generation;
            b["mean_best_fitness"] = s.mean_best_fitness;
            b["median_f_best"] = s.median_f_best;
            return b;
        };
        const bool lru_better = report.first.median_f_best < report.second.median_f_best;
        nlohmann::ordered_json block;
        block["region"] = region.name;
        block["lru"] = strategy_block(report.first);
        block["uniform"] = strategy_block(report.second);
        block["lru_wins"] = report.first_wins;
        block["uniform_wins"] = report.second_wins;
        block["ties"] = report.ties;
        block["lru_median_strictly_better"] = lru_better;
        region_blocks.push_back(block);

        if (lru_better) ++lru_better_regions;
        seed_wins_lru += report.first_wins;
        seed_wins_uniform += report.second_wins;
        seed_ties += report.ties;
        time_sum += report.first.mean_iteration_seconds + report.second.mean_iteration_seconds;
        time_count += 2;

        for (const auto* summary : {&report.first, &report.second}) {
            for (std::size_t si = 0; si < params.seeds.size(); ++si) {
                const auto& curve = summary->curves[si];
                for (std::size_t g = 0; g < curve.size(); ++g) {
                    conv << region.name << ',' << strategy_name(summary->strategy) << ',' << params.seeds[si]
                         << ',' << g << ',' << csv::format_double(curve[g]) << '\n';
                }
            }
        }

        std::cout << region.name << ": lru median f_best " << csv::format_double(report.first.median_f_best)
                  << " vs uniform " << csv::format_double(report.second.median_f_best)
                  << (lru_better ? "  [lru better]" : "") << "\n";
    }
    conv.close();

    nlohmann::ordered_json j;
    j["ga"] = ga_to_json(params.ga);
    j["station"] = station_to_json(params.station);
    j["seeds"] = params.seeds;
    j["regions"] = region_blocks;
    j["summary"] = {{"regions_lru_better", lru_better_regions},
                    {"total_regions", regions.size()},
                    {"region_win_rate", regions.empty() ? 0.0 : double(lru_better_regions) / double(regions.size())},
                    {"seed_wins", {{"lru", seed_wins_lru}, {"uniform", seed_wins_uniform}, {"ties", seed_ties}}}};

    const RunManifest manifest = make_manifest("compare", to_json(params), params.demand_paths,
                                               {"comparison.json", "convergence.csv"});
    write_json_file(join(params.out_dir, "comparison.json"), j);
    save_manifest(join(params.out_dir, "manifest.json"), manifest);

    std::cout << "lru median strictly better in " << lru_better_regions << " of " << regions.size()
              << " regions; per-seed wins lru=" << seed_wins_lru << " uniform=" << seed_wins_uniform
              << " ties=" << seed_ties << "\n";
    if (time_count > 0) {
        std::cout << "mean iteration time " << csv::format_double(time_sum / double(time_count))
                  << " s (console only; not persisted)\n";
    }
    return 0;
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir_override) {
    const RunManifest manifest = load_manifest(manifest_path);
    for (const auto& [path, digest] : manifest.inputs.items()) {
        const std::string current = file_digest(path);
        if (current != digest.get<std::string>()) {
            throw DataError("rerun: input " + path + " changed (digest " + current + ", manifest has " +
                            digest.get<std::string>() + ")");
        }
    }
    const std::string out_dir = out_dir_override.empty()
                                    ? fs::path(manifest_path).parent_path().string()
                                    : out_dir_override;

    if (manifest.command == "estimate") {
        auto p = estimate_params_from_json(manifest.parameters);
        p.out_dir = out_dir.empty() ? "." : out_dir;
        return cmd_estimate(p);
    }
    if (manifest.command == "metrics") {
        auto p = metrics_params_from_json(manifest.parameters);
        p.out_dir = out_dir.empty() ? "." : out_dir;
        return cmd_metrics(p);
    }
    if (manifest.command == "optimize") {
        auto p = optimize_params_from_json(manifest.parameters);
        p.out_dir = out_dir.empty() ? "." : out_dir;
        return cmd_optimize(p);
    }
    if (manifest.command == "baseline") {
        auto p = baseline_params_from_json(manifest.parameters);
        p.out_dir = out_dir.empty() ? "." : out_dir;
        return cmd_baseline(p);
    }
    if (manifest.command == "compare") {
        auto p = compare_params_from_json(manifest.parameters);
        p.out_dir = out_dir.empty() ? "." : out_dir;
        return cmd_compare(p);
    }
    throw DataError("rerun: unknown command '" + manifest.command + "' in " + manifest_path);
}

}  // namespace bsopt::cli
