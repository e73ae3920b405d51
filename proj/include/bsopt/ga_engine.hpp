#ifndef BSOPT_GA_ENGINE_HPP
#define BSOPT_GA_ENGINE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bsopt/rng.hpp"
#include "bsopt/station_sim.hpp"

namespace bsopt {

enum class Strategy {
    lru,      // demand-difference guided sampling (directed search)
    uniform,  // blind uniform sampling over the empty stock
};

const char* strategy_name(Strategy s);

struct GaConfig {
    int population_size = 100;
    double crossover_prob = 0.8;
    double mutation_rate = 0.005;  // per gene
    int max_iterations = 500;
    int tournament_size = 3;
    int elitism_count = 1;
    std::uint64_t seed = 42;
    Strategy strategy = Strategy::lru;

    void validate() const;
};

struct RunResult {
    Individual best_individual;
    double best_fitness = 0.0;
    int best_generation = 0;  // first generation attaining best_fitness
    std::vector<double> best_fitness_per_generation;
    double mean_best_fitness = 0.0;
    double per_iteration_seconds = 0.0;
    double xi_max = 0.0;  // immediate swap-and-charge cost on this profile
};

// Demand difference between battery types, capped by the empty stock:
// max(0, min(d_i - d_j, e)).
int lru_delta(int d_i, int d_j, int e);

// One charging-quantity draw. LRU: 0 when no empties; uniform over
// [delta, e] when d_i > d_j; uniform over [0, e] otherwise. Uniform
// strategy: uniform over [0, e]. Bounds inclusive.
int sample_charge(int d_i, int d_j, int e, Strategy strategy, Rng& rng);

// Builds one dynamically feasible individual by simulating the station
// forward and drawing each hour's charge from the current empty stock
// (type A genes first, then type B).
Individual generate_individual(const DemandProfile& profile, const StationConfig& cfg, Strategy strategy,
                               Rng& rng);

// Draws k distinct indices uniformly and returns a copy of the
// lowest-fitness member; ties break to the lowest index.
Individual tournament_select(std::span<const Individual> population, std::span<const double> fitnesses, int k,
                             Rng& rng);

// With probability prob the children exchange their type-A and type-B
// halves; otherwise they are copies of the parents.
std::pair<Individual, Individual> midpoint_crossover(const Individual& p1, const Individual& p2, Rng& rng,
                                                     double prob);

// Performs one Bernoulli(mutation_rate) trial per gene; if any fires the
// whole individual is regenerated with the run's strategy.
Individual mutate(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg,
                  const GaConfig& ga, Rng& rng);

// The per-gene trial block used by mutate, exposed for statistical tests.
bool mutation_fires(double mutation_rate, std::size_t gene_count, Rng& rng);

// Full GA loop: seeded initialization, tournament selection, midpoint
// crossover, regeneration mutation, elitism. Identical (profile, configs,
// seed) give bit-identical results.
RunResult run(const DemandProfile& profile, const StationConfig& station, const GaConfig& ga);

struct StrategySummary {
    Strategy strategy = Strategy::lru;
    std::vector<double> f_best;              // per seed
    std::vector<int> best_generation;        // per seed
    std::vector<double> mean_best_fitness;   // per seed
    std::vector<std::vector<double>> curves; // per seed convergence curves
    double median_f_best = 0.0;
    double mean_iteration_seconds = 0.0;
};

struct ComparisonReport {
    std::vector<std::uint64_t> seeds;
    StrategySummary first;   // strategy_a (GA-EVLRU by default)
    StrategySummary second;  // strategy_b (plain GA by default)
    int first_wins = 0;      // seeds where first has strictly lower f_best
    int second_wins = 0;
    int ties = 0;
};

// Runs both strategies on the same profile for every seed.
ComparisonReport compare(const DemandProfile& profile, const StationConfig& station, GaConfig ga,
                         std::span<const std::uint64_t> seeds, Strategy strategy_a = Strategy::lru,
                         Strategy strategy_b = Strategy::uniform);

double median(std::vector<double> values);

}  // namespace bsopt

#endif  // BSOPT_GA_ENGINE_HPP
