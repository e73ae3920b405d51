#include <doctest.h>

#include <numeric>

#include "bsopt/errors.hpp"
#include "bsopt/rng.hpp"
#include "bsopt/station_sim.hpp"

using namespace bsopt;

namespace {

DemandProfile zero_profile(std::size_t horizon = 24, double price = 1.0) {
    DemandProfile p;
    p.demand_a.assign(horizon, 0);
    p.demand_b.assign(horizon, 0);
    p.price.assign(horizon, price);
    return p;
}

Individual zero_individual(std::size_t horizon = 24) {
    Individual ind;
    ind.genes.assign(2 * horizon, 0);
    return ind;
}

DemandProfile random_profile(Rng& rng, const StationConfig& cfg, std::size_t horizon = 24) {
    DemandProfile p;
    p.demand_a.resize(horizon);
    p.demand_b.resize(horizon);
    p.price.resize(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        p.demand_a[t] = rng.uniform_int(0, 2 * cfg.m_a);
        p.demand_b[t] = rng.uniform_int(0, 2 * cfg.m_b);
        p.price[t] = rng.uniform_real() * 2.0;
    }
    return p;
}

Individual random_individual(Rng& rng, const StationConfig& cfg, std::size_t horizon = 24) {
    Individual ind;
    ind.genes.resize(2 * horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        ind.gene(BatteryType::A, t, horizon) = rng.uniform_int(0, 2 * cfg.m_a);
        ind.gene(BatteryType::B, t, horizon) = rng.uniform_int(0, 2 * cfg.m_b);
    }
    return ind;
}

}  // namespace

TEST_CASE("clamp_supply") {
    CHECK(clamp_supply(3, 5) == 3);
    CHECK(clamp_supply(7, 5) == 5);
    CHECK(clamp_supply(0, 5) == 0);
}

TEST_CASE("zero demand and zero genes is a fixed point") {
    const StationConfig cfg;
    const auto trace = simulate(zero_individual(), zero_profile(), cfg);
    for (BatteryType type : {BatteryType::A, BatteryType::B}) {
        for (std::size_t t = 0; t < 24; ++t) {
            CHECK(trace.type(type).full[t] == cfg.capacity(type));
            CHECK(trace.type(type).empty[t] == 0);
            CHECK(trace.type(type).supplied[t] == 0);
        }
    }
    CHECK(trace.gamma == 1.0);
    CHECK(trace.penalty == 0.0);
    CHECK(trace.cost == 0.0);
    CHECK(trace.fitness == doctest::Approx(1.0));  // xi_max 0 -> cost term 0, literal gamma
}

TEST_CASE("hand-stepped first hour") {
    StationConfig cfg;
    cfg.m_a = 5;
    auto profile = zero_profile();
    profile.demand_a[0] = 5;
    auto ind = zero_individual();
    ind.gene(BatteryType::A, 0, 24) = 5;
    const auto trace = simulate(ind, profile, cfg);
    CHECK(trace.type(BatteryType::A).supplied[0] == 5);
    CHECK(trace.type(BatteryType::A).full[0] == 5);
    CHECK(trace.type(BatteryType::A).empty[0] == 0);
    CHECK(trace.type(BatteryType::A).applied_charge[0] == 5);
}

TEST_CASE("repair clamps a gene to the available empties") {
    StationConfig cfg;
    cfg.m_a = 5;
    auto profile = zero_profile();
    profile.demand_a[0] = 3;
    auto ind = zero_individual();
    ind.gene(BatteryType::A, 0, 24) = 10;  // only 3 empties exist
    const auto trace = simulate(ind, profile, cfg);
    CHECK(trace.type(BatteryType::A).applied_charge[0] == 3);
}

TEST_CASE("satisfaction is total charge over total demand") {
    StationConfig cfg;
    cfg.m_a = 50;
    cfg.m_b = 50;
    auto profile = zero_profile();
    profile.demand_a[0] = 30;
    profile.demand_b[0] = 20;  // total 50
    auto ind = zero_individual();
    ind.gene(BatteryType::A, 0, 24) = 30;
    ind.gene(BatteryType::B, 0, 24) = 15;  // total charged 45
    const auto trace = simulate(ind, profile, cfg);
    CHECK(trace.gamma == doctest::Approx(0.9));
    CHECK(satisfaction(trace, profile) == doctest::Approx(trace.gamma));

    ind.gene(BatteryType::B, 0, 24) = 20;  // everything recharged
    const auto full = simulate(ind, profile, cfg);
    CHECK(full.gamma == doctest::Approx(1.0));
}

TEST_CASE("penalty branches, boundary inclusive") {
    const StationConfig cfg;  // tau_s 0.9, tau_1 2
    CHECK(penalty(0.95, cfg) == 0.0);
    CHECK(penalty(0.85, cfg) == 2.0);
    CHECK(penalty(0.9, cfg) == 0.0);
}

TEST_CASE("immediate plan recharges every swap in its hour") {
    StationConfig cfg;
    auto profile = zero_profile();
    // 40 総 swaps across the horizon at flat price 1.0
    for (int t = 0; t < 10; ++t) {
        profile.demand_a[std::size_t(t)] = 2;
        profile.demand_b[std::size_t(t)] = 2;
    }
    const auto [plan, cost] = immediate_plan(profile, cfg);
    CHECK(cost == doctest::Approx(40.0));
    const auto trace = simulate(plan, profile, cfg, cost);
    CHECK(trace.gamma == doctest::Approx(1.0));
    CHECK(trace.cost == doctest::Approx(cost));

    const auto [zero_plan, zero_cost] = immediate_plan(zero_profile(), cfg);
    CHECK(zero_cost == 0.0);

    auto priced = zero_profile();
    priced.demand_a[0] = 2;
    priced.price[0] = 3.0;
    CHECK(immediate_plan(priced, cfg).second == doctest::Approx(6.0));
}

TEST_CASE("immediate plan demand above inventory is clamped") {
    StationConfig cfg;
    cfg.m_a = 5;
    auto profile = zero_profile();
    profile.demand_a[0] = 9;
    const auto [plan, cost] = immediate_plan(profile, cfg);
    CHECK(plan.gene(BatteryType::A, 0, 24) == 5);
    CHECK(cost == doctest::Approx(5.0));
}

TEST_CASE("fitness of the immediate plan has cost term exactly 1") {
    StationConfig cfg;
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const auto profile = random_profile(rng, cfg);
        const auto [plan, c_imm] = immediate_plan(profile, cfg);
        if (c_imm <= 0.0) continue;
        const auto trace = simulate(plan, profile, cfg, c_imm);
        CHECK(trace.fitness - trace.gamma - trace.penalty == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("fitness includes the low-satisfaction penalty") {
    StationConfig cfg;
    cfg.m_a = 50;
    cfg.m_b = 50;
    auto profile = zero_profile();
    profile.demand_a[0] = 100;  // clamped to 50 supplied
    auto ind = zero_individual();
    ind.gene(BatteryType::A, 0, 24) = 50;  // gamma = 0.5 < tau_s
    const auto trace = simulate(ind, profile, cfg, 1.0);
    CHECK(trace.gamma == doctest::Approx(0.5));
    CHECK(trace.penalty == 2.0);
    CHECK(trace.fitness == doctest::Approx(50.0 / 1.0 + 0.5 + 2.0));
}

TEST_CASE("one-minus-gamma mode flips the satisfaction term") {
    StationConfig literal;
    StationConfig flipped;
    flipped.satisfaction_term = SatisfactionTerm::one_minus_gamma;
    auto profile = zero_profile();
    profile.demand_a[0] = 2;
    auto ind = zero_individual();
    ind.gene(BatteryType::A, 0, 24) = 2;
    const double f_lit = simulate(ind, profile, literal, 2.0).fitness;
    const double f_flip = simulate(ind, profile, flipped, 2.0).fitness;
    CHECK(f_lit == doctest::Approx(1.0 + 1.0));   // cost/xi + gamma
    CHECK(f_flip == doctest::Approx(1.0 + 0.0));  // cost/xi + (1 - gamma)
}

TEST_CASE("conservation holds for arbitrary chromosomes") {
    StationConfig cfg;
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto profile = random_profile(rng, cfg);
        const auto ind = random_individual(rng, cfg);
        const auto trace = simulate(ind, profile, cfg);
        for (BatteryType type : {BatteryType::A, BatteryType::B}) {
            const auto& tt = trace.type(type);
            const int m = cfg.capacity(type);
            int full_prev = m;
            for (std::size_t t = 0; t < 24; ++t) {
                CHECK(tt.empty[t] + tt.full[t] == m);
                CHECK(tt.empty[t] >= 0);
                CHECK(tt.full[t] >= 0);
                const auto& demand = type == BatteryType::A ? profile.demand_a : profile.demand_b;
                CHECK(tt.supplied[t] == std::min(demand[t], full_prev));
                CHECK(tt.applied_charge[t] <= full_prev - tt.supplied[t] + m - full_prev + tt.supplied[t]);
                full_prev = tt.full[t];
            }
        }
    }
}

TEST_CASE("fitness fast path agrees with the trace") {
    StationConfig cfg;
    Rng rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto profile = random_profile(rng, cfg);
        const auto ind = random_individual(rng, cfg);
        const double xi = 1.0 + rng.uniform_real() * 50.0;
        CHECK(fitness(ind, profile, cfg, xi) == simulate(ind, profile, cfg, xi).fitness);
    }
}

TEST_CASE("flat prices make cost schedule-independent") {
    StationConfig cfg;
    Rng rng(9);
    const double price = 1.3;
    for (int trial = 0; trial < 200; ++trial) {
        const auto profile = random_profile(rng, cfg);
        auto flat = profile;
        flat.price.assign(flat.price.size(), price);
        const auto trace = simulate(random_individual(rng, cfg), flat, cfg);
        long long total_applied = 0;
        for (const auto& tt : trace.per_type) {
            total_applied += std::accumulate(tt.applied_charge.begin(), tt.applied_charge.end(), 0LL);
        }
        CHECK(trace.cost == doctest::Approx(double(total_applied) * price).epsilon(1e-12));
    }
}

TEST_CASE("simulate is deterministic and validates inputs") {
    StationConfig cfg;
    Rng rng(10);
    const auto profile = random_profile(rng, cfg);
    const auto ind = random_individual(rng, cfg);
    const auto t1 = simulate(ind, profile, cfg, 5.0);
    const auto t2 = simulate(ind, profile, cfg, 5.0);
    CHECK(t1.fitness == t2.fitness);
    CHECK(t1.cost == t2.cost);
    CHECK(t1.type(BatteryType::A).full == t2.type(BatteryType::A).full);

    Individual wrong;
    wrong.genes.assign(10, 0);
    CHECK_THROWS_AS(simulate(wrong, profile, cfg), DataError);
    Individual negative = ind;
    negative.genes[0] = -1;
    CHECK_THROWS_AS(simulate(negative, profile, cfg), DataError);

    StationConfig bad;
    bad.tau_s = 1.5;
    CHECK_THROWS_AS(simulate(ind, profile, bad), DataError);
}
