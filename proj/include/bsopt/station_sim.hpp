#ifndef BSOPT_STATION_SIM_HPP
#define BSOPT_STATION_SIM_HPP

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "bsopt/demand_model.hpp"

namespace bsopt {

enum class BatteryType : std::size_t { A = 0, B = 1 };

enum class SatisfactionTerm {
    literal_gamma,    // objective adds +gamma, as printed in the paper
    one_minus_gamma,  // objective adds +(1 - gamma)
};

struct StationConfig {
    int m_a = 5;  // max inventory, type A
    int m_b = 8;  // max inventory, type B
    double tau_s = 0.9;
    double tau_1 = 2.0;
    SatisfactionTerm satisfaction_term = SatisfactionTerm::literal_gamma;

    int capacity(BatteryType type) const { return type == BatteryType::A ? m_a : m_b; }
    void validate() const;
};

// Charging plan chromosome: one gene per (type, hour), type A first.
// Length 2H; 48 on the production 24-hour horizon.
struct Individual {
    std::vector<int> genes;

    int& gene(BatteryType type, std::size_t t, std::size_t horizon) {
        return genes[static_cast<std::size_t>(type) * horizon + t];
    }
    int gene(BatteryType type, std::size_t t, std::size_t horizon) const {
        return genes[static_cast<std::size_t>(type) * horizon + t];
    }
};

// Hour-by-hour record of the deterministic station dynamics.
struct SimulationTrace {
    struct TypeTrace {
        std::vector<int> supplied;        // min(demand, previous full stock)
        std::vector<int> full;            // full inventory at end of hour
        std::vector<int> empty;           // empty inventory at end of hour
        std::vector<int> applied_charge;  // gene after feasibility repair
    };
    std::array<TypeTrace, 2> per_type;
    double cost = 0.0;     // sum_t (sum_i charge) * price_t
    double gamma = 0.0;    // total charged / total demanded (1 when demand is 0)
    double penalty = 0.0;  // 0 or tau_1
    double fitness = 0.0;  // cost/xi_max + satisfaction term + penalty

    TypeTrace& type(BatteryType t) { return per_type[static_cast<std::size_t>(t)]; }
    const TypeTrace& type(BatteryType t) const { return per_type[static_cast<std::size_t>(t)]; }
};

// min(demand, previous hour's full stock).
int clamp_supply(int demand, int full_prev);

// Runs the 24-hour (or profile-length) inventory dynamics: swap-outs
// first, then charging clamped to the empties available after them.
// Infeasible genes are repaired by that clamp, never rejected. When
// xi_max is 0 the cost term of the fitness is defined as 0.
SimulationTrace simulate(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg,
                         double xi_max = 0.0);

// Same arithmetic as simulate().fitness without building the trace;
// used in the optimizer's inner loop.
double fitness(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg, double xi_max);

double satisfaction(const SimulationTrace& trace, const DemandProfile& profile);

double penalty(double gamma, const StationConfig& cfg);

// The immediate swap-and-charge baseline: every battery swapped out in
// hour t is recharged in hour t. Returns the plan and its total cost,
// which defines the fitness normalizer xi_max.
std::pair<Individual, double> immediate_plan(const DemandProfile& profile, const StationConfig& cfg);

}  // namespace bsopt

#endif  // BSOPT_STATION_SIM_HPP
