#ifndef BSOPT_DEMAND_MODEL_HPP
#define BSOPT_DEMAND_MODEL_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bsopt/ingest.hpp"

namespace bsopt {

// Logistic model parameters: weights for (t_sum, v_sum, c_r) plus the
// station's battery swap time in minutes.
struct ModelParams {
    std::array<double, 3> theta{0.08, 0.08, -0.8};
    double swap_time_minutes = 5.0;

    void validate() const;
};

// Per-user features: total charging duration (minutes), total charging
// energy (kWh), swap time (minutes).
struct FeatureVector {
    double t_sum = 0.0;
    double v_sum = 0.0;
    double c_r = 0.0;
};

// Expected hourly swap demand and its integer rounding, aligned to the
// arrival-series origin.
struct DemandSeries {
    std::vector<double> expected;
    std::vector<int> rounded;
    Timestamp origin = 0;
};

// 24-hour optimization input: per-type integer demand plus electricity
// price. The horizon is 24 in production; shorter profiles are accepted
// so small horizons can be enumerated exhaustively in tests.
struct DemandProfile {
    std::vector<int> demand_a;
    std::vector<int> demand_b;
    std::vector<double> price;

    std::size_t horizon() const { return demand_a.size(); }
    void validate() const;
};

// Half-up rounding of a non-negative value.
int round_half_up(double x);

// Probability that one user with features x demands a swap:
// sigma(theta . x), evaluated with the numerically stable two-branch
// logistic (no overflow for |z| <= 700).
double swap_probability(const FeatureVector& x, const ModelParams& p);

// E(Y) = prob * lambda for Poisson arrivals with i.i.d. features.
double expected_demand_poisson(double prob, double lambda);

// Independent oracle for expected_demand_poisson: the truncated
// total-expectation sum  sum_{n=0..N} (n * prob) * pmf(n).
// Fails when the Poisson tail mass beyond N exceeds 1e-12.
double expected_demand_total_expectation(double prob, double lambda, int truncation_n);

struct EstimateOptions {
    // Replace the raw per-hour rate with the mean over the same
    // hour-of-week across weeks (for sparse data).
    bool lambda_smoothing = false;
};

// Per hour: sums the per-session swap probabilities of that hour's
// sessions (the total-expectation inner sum with the realized arrivals,
// which reduces to prob * lambda for identical features).
DemandSeries estimate_demand_series(std::span<const ChargingSession> sessions, const ModelParams& p,
                                    const EstimateOptions& options = {});

// Splits the first 24 hours of a demand series into types A and B
// (d_a = half-up(ratio_a * total), d_b = remainder) and aligns the daily
// price profile by clock hour-of-day.
DemandProfile split_demand(const DemandSeries& series, double ratio_a, const PriceSeries& prices);

// demand.csv schema: hour,expected,demand_a,demand_b,price. One row per
// hour of the full estimated series, split per-hour with the same rule
// as split_demand.
void write_demand_csv(const std::string& path, const DemandSeries& series, double ratio_a,
                      const PriceSeries& prices);

struct DemandTable {
    std::vector<double> expected;
    std::vector<int> demand_a;
    std::vector<int> demand_b;
    std::vector<double> price;
};

DemandTable read_demand_csv(const std::string& path);

// Extracts the 24-hour profile starting at hour 24*day.
DemandProfile profile_from_table(const DemandTable& table, int day);

}  // namespace bsopt

#endif  // BSOPT_DEMAND_MODEL_HPP
