#ifndef BSOPT_SERIES_METRICS_HPP
#define BSOPT_SERIES_METRICS_HPP

#include <span>
#include <vector>

namespace bsopt {

struct MetricsReport {
    double s_m = 0.0;  // stddev of per-window OLS slopes
    double p_m = 0.0;  // spectral cosine similarity vs expected periods, in [0,1]
    double o_m = 0.0;  // 3-sigma outlier fraction, in [0,1]
    int window_hours = 24;
    std::vector<double> expected_periods;
};

// Population standard deviation of the least-squares slopes of
// consecutive non-overlapping windows (trailing partial window dropped).
// Requires window_hours >= 2 and at least two full windows.
double trend_stability(std::span<const double> series, int window_hours);

// Mean-centers the series, takes the DFT amplitude spectrum, keeps the
// top_k non-DC bins, and builds the detected-periodicity vector a over
// the expected periods: a_i is the normalized amplitude of a kept bin
// whose period (N/k samples) lies within +-1 sample of expected period
// i, 0 if none does. Returns the cosine similarity against the all-ones
// vector, or 0 when nothing was detected (constant input included).
double period_match(std::span<const double> series, std::span<const double> expected_periods, int top_k);

// Fraction of points outside the open interval (mu - 3 sigma, mu + 3 sigma),
// population sigma; 0 when sigma is 0.
double outlier_ratio(std::span<const double> series);

MetricsReport evaluate_dataset(std::span<const double> series, int window_hours = 24,
                               std::span<const double> expected_periods = {}, int top_k = 2);

}  // namespace bsopt

#endif  // BSOPT_SERIES_METRICS_HPP
