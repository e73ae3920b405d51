#include "bsopt/station_sim.hpp"

#include <algorithm>
#include <cmath>

#include "bsopt/errors.hpp"

namespace bsopt {

void StationConfig::validate() const {
    if (m_a < 1 || m_b < 1) throw DataError("StationConfig: inventories m_a, m_b must be >= 1");
    if (!(tau_s > 0.0 && tau_s <= 1.0)) throw DataError("StationConfig: tau_s must be in (0, 1]");
    if (!(tau_1 >= 0.0)) throw DataError("StationConfig: tau_1 must be >= 0");
}

int clamp_supply(int demand, int full_prev) {
    return std::min(demand, full_prev);
}

namespace {

void check_inputs(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg) {
    cfg.validate();
    profile.validate();
    if (ind.genes.size() != 2 * profile.horizon()) {
        throw DataError("Individual: expected " + std::to_string(2 * profile.horizon()) + " genes, got " +
                        std::to_string(ind.genes.size()));
    }
    for (int g : ind.genes) {
        if (g < 0) throw DataError("Individual: negative gene");
    }
}

double fitness_value(double cost, double gamma, double pen, const StationConfig& cfg, double xi_max) {
    const double cost_term = xi_max > 0.0 ? cost / xi_max : 0.0;
    const double sat_term = cfg.satisfaction_term == SatisfactionTerm::literal_gamma ? gamma : 1.0 - gamma;
    return cost_term + sat_term + pen;
}

}  // namespace

SimulationTrace simulate(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg,
                         double xi_max) {
    check_inputs(ind, profile, cfg);
    const std::size_t horizon = profile.horizon();

    SimulationTrace trace;
    double cost = 0.0;
    long long total_demand = 0, total_charged = 0;
    std::vector<int> hour_charge(horizon, 0);

    for (BatteryType type : {BatteryType::A, BatteryType::B}) {
        auto& tt = trace.type(type);
        tt.supplied.resize(horizon);
        tt.full.resize(horizon);
        tt.empty.resize(horizon);
        tt.applied_charge.resize(horizon);

        const auto& demand = type == BatteryType::A ? profile.demand_a : profile.demand_b;
        int full = cfg.capacity(type);
        int empty = 0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const int supplied = clamp_supply(demand[t], full);
            empty += supplied;
            full -= supplied;
            const int charge = std::min(ind.gene(type, t, horizon), empty);  // repair
            full += charge;
            empty -= charge;

            tt.supplied[t] = supplied;
            tt.full[t] = full;
            tt.empty[t] = empty;
            tt.applied_charge[t] = charge;
            hour_charge[t] += charge;
            total_demand += demand[t];
            total_charged += charge;
        }
    }

    for (std::size_t t = 0; t < horizon; ++t) cost += double(hour_charge[t]) * profile.price[t];

    trace.cost = cost;
    trace.gamma = total_demand == 0 ? 1.0 : double(total_charged) / double(total_demand);
    trace.penalty = penalty(trace.gamma, cfg);
    trace.fitness = fitness_value(cost, trace.gamma, trace.penalty, cfg, xi_max);
    return trace;
}

double fitness(const Individual& ind, const DemandProfile& profile, const StationConfig& cfg, double xi_max) {
    check_inputs(ind, profile, cfg);
    const std::size_t horizon = profile.horizon();

    double cost = 0.0;
    long long total_demand = 0, total_charged = 0;
    for (BatteryType type : {BatteryType::A, BatteryType::B}) {
        const auto& demand = type == BatteryType::A ? profile.demand_a : profile.demand_b;
        int full = cfg.capacity(type);
        int empty = 0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const int supplied = clamp_supply(demand[t], full);
            empty += supplied;
            full -= supplied;
            const int charge = std::min(ind.gene(type, t, horizon), empty);
            full += charge;
            empty -= charge;
            cost += double(charge) * profile.price[t];
            total_demand += demand[t];
            total_charged += charge;
        }
    }

    const double gamma = total_demand == 0 ? 1.0 : double(total_charged) / double(total_demand);
    return fitness_value(cost, gamma, penalty(gamma, cfg), cfg, xi_max);
}

double satisfaction(const SimulationTrace& trace, const DemandProfile& profile) {
    long long total_demand = 0, total_charged = 0;
    for (std::size_t t = 0; t < profile.horizon(); ++t) {
        total_demand += profile.demand_a[t] + profile.demand_b[t];
    }
    for (const auto& tt : trace.per_type) {
        for (int c : tt.applied_charge) total_charged += c;
    }
    return total_demand == 0 ? 1.0 : double(total_charged) / double(total_demand);
}

double penalty(double gamma, const StationConfig& cfg) {
    return gamma >= cfg.tau_s ? 0.0 : cfg.tau_1;
}

std::pair<Individual, double> immediate_plan(const DemandProfile& profile, const StationConfig& cfg) {
    cfg.validate();
    profile.validate();
    const std::size_t horizon = profile.horizon();

    Individual ind;
    ind.genes.assign(2 * horizon, 0);
    double cost = 0.0;
    for (BatteryType type : {BatteryType::A, BatteryType::B}) {
        const auto& demand = type == BatteryType::A ? profile.demand_a : profile.demand_b;
        int full = cfg.capacity(type);
        for (std::size_t t = 0; t < horizon; ++t) {
            const int supplied = clamp_supply(demand[t], full);
            // everything swapped out this hour is recharged this hour
            ind.gene(type, t, horizon) = supplied;
            cost += double(supplied) * profile.price[t];
        }
    }
    return {std::move(ind), cost};
}

}  // namespace bsopt
