#ifndef BSOPT_SYNTHETIC_HPP
#define BSOPT_SYNTHETIC_HPP

#include <cstdint>

#include "bsopt/station_sim.hpp"

namespace bsopt {

// Deterministic synthetic 24-hour region: daily-periodic demand with
// morning/evening peaks, a randomized skew between battery types, and a
// time-of-use price curve with an off-peak valley. Demand is scaled
// against the station inventories so charging decisions matter. The
// same (seed, cfg) always produces the same profile.
DemandProfile synthetic_region(std::uint64_t seed, const StationConfig& cfg);

// Fixed profile with all demand in early high-price hours and a deep
// late-day price valley, so deferred charging is strictly cheaper than
// the immediate strategy.
DemandProfile valley_profile();

// 4-hour toy horizon, inventories <= 3 per type: small enough that every
// chromosome in [0, m]^8 can be enumerated.
DemandProfile toy_profile();
StationConfig toy_station();

}  // namespace bsopt

#endif  // BSOPT_SYNTHETIC_HPP
