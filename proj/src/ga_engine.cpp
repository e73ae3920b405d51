#include "bsopt/ga_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "bsopt/errors.hpp"

namespace bsopt {

const char* strategy_name(Strategy s) {
    return s == Strategy::lru ? "lru" : "uniform";
}

void GaConfig::validate() const {
    if (population_size < 1) throw DataError("GaConfig: population_size must be >= 1");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw DataError("GaConfig: crossover_prob outside [0,1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw DataError("GaConfig: mutation_rate outside [0,1]");
    if (max_iterations < 1) throw DataError("GaConfig: max_iterations must be >= 1");
    if (tournament_size < 1 || tournament_size > population_size) {
        throw DataError("GaConfig: tournament_size must be in [1, population_size]");
    }
    if (elitism_count < 0 || elitism_count >= population_size) {
        throw DataError("GaConfig: elitism_count must be in [0, population_size)");
    }
}

int lru_delta(int d_i, int d_j, int e) {
    return std::max(0, std::min(d_i - d_j, e));
}

int sample_charge(int d_i, int d_j, int e, Strategy strategy, Rng& rng) {
    if (e <= 0) return 0;
    const int lo = strategy == Strategy::lru ? lru_delta(d_i, d_j, e) : 0;
    return rng.uniform_int(lo, e);
}

Individual generate_individual(const DemandProfile& profile, const StationConfig& cfg, Strategy strategy,
                               Rng& rng) {
    cfg.validate();
    profile.validate();
    const std::size_t horizon = profile.horizon();

    Individual ind;
    ind.genes.assign(2 * horizon, 0);
    for (BatteryType type : {BatteryType::A, BatteryType::B}) {
        const auto& demand_i = type == BatteryType::A ? profile.demand_a : profile.demand_b;
        const auto& demand_j = type == BatteryType::A ? profile.demand_b : profile.demand_a;
        int full = cfg.capacity(type);
        int empty = 0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const int supplied = clamp_supply(demand_i[t], full);
            empty += supplied;
            full -= supplied;
            const int charge = sample_charge(demand_i[t], demand_j[t], empty, strategy, rng);
            full += charge;
            empty -= charge;
            ind.gene(type, t, horizon) = charge;
        }
    }
    return ind;
}

namespace {

// Floyd's algorithm: k distinct indices from [0, n) with uniform
// probability over subsets.
void sample_distinct(int n, int k, Rng& rng, std::vector<int>& out) {
    out.clear();
    for (int j = n - k; j < n; ++j) {
        const int t = rng.uniform_int(0, j);
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        } else {
            out.push_back(j);
        }
    }
}

}  // namespace

Individual tournament_select(std::span<const Individual> population, std::span<const double> fitnesses, int k,
                             Rng& rng) {
    if (population.empty() || fitnesses.size() != population.size()) {
        throw DataError("tournament_select: empty population or mismatched fitnesses");
    }
    if (k < 1 || std::size_t(k) > population.size()) {
        throw DataError("tournament_select: k outside [1, population size]");
    }
    std::vector<int> contenders;
    contenders.reserve(std::size_t(k));
    sample_distinct(int(population.size()), k, rng, contenders);

    int best = -1;
    for (int idx : contenders) {
        if (best < 0 || fitnesses[std::size_t(idx)] < fitnesses[std::size_t(best)] ||
            (fitnesses[std::size_t(idx)] == fitnesses[std::size_t(best)] && idx < best)) {
            best = idx;
        }
    }
    return population[std::size_t(best)];
}

std::pair<Individual, Individual> midpoint_crossover(const Individual& p1, const Individual& p2, Rng& rng,
                                                     double prob) {
    if (p1.genes.size() != p2.genes.size() || p1.genes.size() % 2 != 0) {
        throw DataError("midpoint_crossover: parents must have equal even-length genomes");
    }
    if (!rng.bernoulli(prob)) return {p1, p2};
    const std::size_t half = p1.genes.size() / 2;
    Individual c1 = p1, c2 = p2;
    std::copy(p2.genes.begin() + std::ptrdiff_t(half), p2.genes.end(), c1.genes.begin() + std::ptrdiff_t(half));
    std::copy(p1.genes.begin() + std::ptrdiff_t(half), p1.genes.end(), c2.genes.begin() + std::ptrdiff_t(half));
    return {std::move(c1), std::move(c2)};
}

bool mutation_fires(double mutation_rate, std::size_t gene_count, Rng& rng) {
    bool fired = false;
    for (std::size_t g = 0; g < gene_count; ++g) {
        fired = rng.bernoulli(mutation_rate) || fired;
    }
    return fired;
}

Individual mutate(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg,
                  const GaConfig& ga, Rng& rng) {
    if (!mutation_fires(ga.mutation_rate, ind.genes.size(), rng)) return ind;
    return generate_individual(profile, cfg, ga.strategy, rng);
}

RunResult run(const DemandProfile& profile, const StationConfig& station, const GaConfig& ga) {
    ga.validate();
    station.validate();
    profile.validate();

    Rng init_rng = derive_stream(ga.seed, StreamPurpose::init);
    Rng selection_rng = derive_stream(ga.seed, StreamPurpose::selection);
    Rng crossover_rng = derive_stream(ga.seed, StreamPurpose::crossover);
    Rng mutation_rng = derive_stream(ga.seed, StreamPurpose::mutation);

    const double xi_max = immediate_plan(profile, station).second;

    const std::size_t pop_size = std::size_t(ga.population_size);
    std::vector<Individual> population;
    population.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        population.push_back(generate_individual(profile, station, ga.strategy, init_rng));
    }

    RunResult result;
    result.xi_max = xi_max;
    result.best_fitness_per_generation.reserve(std::size_t(ga.max_iterations));
    result.best_fitness = std::numeric_limits<double>::infinity();

    std::vector<double> fitnesses(pop_size);
    std::vector<std::size_t> order(pop_size);
    std::vector<Individual> next;
    next.reserve(pop_size);

    const auto start_time = std::chrono::steady_clock::now();
    for (int generation = 0; generation < ga.max_iterations; ++generation) {
        for (std::size_t i = 0; i < pop_size; ++i) {
            fitnesses[i] = fitness(population[i], profile, station, xi_max);
        }

        std::size_t gen_best = 0;
        for (std::size_t i = 1; i < pop_size; ++i) {
            if (fitnesses[i] < fitnesses[gen_best]) gen_best = i;
        }
        result.best_fitness_per_generation.push_back(fitnesses[gen_best]);
        if (fitnesses[gen_best] < result.best_fitness) {
            result.best_fitness = fitnesses[gen_best];
            result.best_individual = population[gen_best];
            result.best_generation = generation;
        }

        if (generation == ga.max_iterations - 1) break;

        next.clear();
        if (ga.elitism_count > 0) {
            for (std::size_t i = 0; i < pop_size; ++i) order[i] = i;
            std::partial_sort(order.begin(), order.begin() + ga.elitism_count, order.end(),
                              [&fitnesses](std::size_t a, std::size_t b) {
                                  if (fitnesses[a] != fitnesses[b]) return fitnesses[a] < fitnesses[b];
                                  return a < b;
                              });
            for (int e = 0; e < ga.elitism_count; ++e) next.push_back(population[order[std::size_t(e)]]);
        }
        while (next.size() < pop_size) {
            Individual p1 = tournament_select(population, fitnesses, ga.tournament_size, selection_rng);
            Individual p2 = tournament_select(population, fitnesses, ga.tournament_size, selection_rng);
            auto [c1, c2] = midpoint_crossover(p1, p2, crossover_rng, ga.crossover_prob);
            next.push_back(mutate(c1, profile, station, ga, mutation_rng));
            if (next.size() < pop_size) next.push_back(mutate(c2, profile, station, ga, mutation_rng));
        }
        population.swap(next);
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();

    result.per_iteration_seconds = elapsed / double(ga.max_iterations);
    double sum = 0.0;
    for (double f : result.best_fitness_per_generation) sum += f;
    result.mean_best_fitness = sum / double(result.best_fitness_per_generation.size());
    return result;
}

double median(std::vector<double> values) {
    if (values.empty()) throw DataError("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

StrategySummary summarize(Strategy strategy, const std::vector<RunResult>& runs) {
    StrategySummary s;
    s.strategy = strategy;
    double time_sum = 0.0;
    for (const auto& r : runs) {
        s.f_best.push_back(r.best_fitness);
        s.best_generation.push_back(r.best_generation);
        s.mean_best_fitness.push_back(r.mean_best_fitness);
        s.curves.push_back(r.best_fitness_per_generation);
        time_sum += r.per_iteration_seconds;
    }
    s.median_f_best = median(s.f_best);
    s.mean_iteration_seconds = runs.empty() ? 0.0 : time_sum / double(runs.size());
    return s;
}

}  // namespace

ComparisonReport compare(const DemandProfile& profile, const StationConfig& station, GaConfig ga,
                         std::span<const std::uint64_t> seeds, Strategy strategy_a, Strategy strategy_b) {
    if (seeds.empty()) throw DataError("compare: need at least one seed");

    std::vector<RunResult> runs_a, runs_b;
    runs_a.reserve(seeds.size());
    runs_b.reserve(seeds.size());
    ComparisonReport report;
    report.seeds.assign(seeds.begin(), seeds.end());

    for (std::uint64_t seed : seeds) {
        ga.seed = seed;
        ga.strategy = strategy_a;
        runs_a.push_back(run(profile, station, ga));
        ga.strategy = strategy_b;
        runs_b.push_back(run(profile, station, ga));

        const double fa = runs_a.back().best_fitness;
        const double fb = runs_b.back().best_fitness;
        if (fa < fb) {
            ++report.first_wins;
        } else if (fb < fa) {
            ++report.second_wins;
        } else {
            ++report.ties;
        }
    }

    report.first = summarize(strategy_a, runs_a);
    report.second = summarize(strategy_b, runs_b);
    return report;
}

}  // namespace bsopt
