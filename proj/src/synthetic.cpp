#include "bsopt/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "bsopt/rng.hpp"

namespace bsopt {

DemandProfile synthetic_region(std::uint64_t seed, const StationConfig& cfg) {
    Rng rng = derive_stream(seed, StreamPurpose::synthetic);

    const bool a_hot = rng.bernoulli(0.5);
    const double hot_peak = 1.1 + 0.7 * rng.uniform_real();    // peak demand vs inventory
    const double cold_scale = 0.15 + 0.25 * rng.uniform_real();
    const double base_level = 0.15 + 0.15 * rng.uniform_real();
    const int morning = rng.uniform_int(7, 10);
    const int evening = rng.uniform_int(17, 20);
    const double width = 1.8 + 1.4 * rng.uniform_real();

    DemandProfile profile;
    profile.demand_a.resize(24);
    profile.demand_b.resize(24);
    profile.price.resize(24);

    const int m_hot = a_hot ? cfg.m_a : cfg.m_b;
    const int m_cold = a_hot ? cfg.m_b : cfg.m_a;
    for (int t = 0; t < 24; ++t) {
        const double dm = double(t - morning);
        const double de = double(t - evening);
        const double shape = std::exp(-dm * dm / (2.0 * width * width)) +
                             std::exp(-de * de / (2.0 * width * width));
        const double hot_mean = (base_level + hot_peak * shape) * double(m_hot);
        const double cold_mean = (base_level + hot_peak * shape) * cold_scale * double(m_cold);
        const int hot = std::max(0, round_half_up(hot_mean + 0.35 * rng.normal()));
        const int cold = std::max(0, round_half_up(cold_mean + 0.25 * rng.normal()));
        profile.demand_a[t] = a_hot ? hot : cold;
        profile.demand_b[t] = a_hot ? cold : hot;
    }

    // Time-of-use curve: night valley, daytime shoulder, evening peak,
    // cheap late-night tail; small per-region level jitter.
    const double level = 0.9 + 0.2 * rng.uniform_real();
    for (int t = 0; t < 24; ++t) {
        double p = 0.8;
        if (t <= 6) {
            p = 0.3;
        } else if (t >= 17 && t <= 21) {
            p = 1.3;
        } else if (t >= 22) {
            p = 0.35;
        }
        profile.price[t] = level * p;
    }

    profile.validate();
    return profile;
}

DemandProfile valley_profile() {
    DemandProfile profile;
    profile.demand_a.assign(24, 0);
    profile.demand_b.assign(24, 0);
    profile.price.assign(24, 1.0);
    for (int t = 1; t <= 6; ++t) {
        profile.demand_a[t] = 2;
        profile.demand_b[t] = 3;
    }
    for (int t = 12; t < 24; ++t) profile.price[t] = 0.2;
    profile.validate();
    return profile;
}

DemandProfile toy_profile() {
    DemandProfile profile;
    profile.demand_a = {2, 1, 0, 1};
    profile.demand_b = {1, 2, 1, 0};
    profile.price = {1.0, 0.7, 0.2, 0.5};
    profile.validate();
    return profile;
}

StationConfig toy_station() {
    StationConfig cfg;
    cfg.m_a = 3;
    cfg.m_b = 3;
    return cfg;
}

}  // namespace bsopt
