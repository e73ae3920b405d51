#include "bsopt/series_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bsopt/errors.hpp"

namespace bsopt {

namespace {

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
}

double population_stddev(std::span<const double> xs) {
    const double mu = mean_of(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - mu) * (x - mu);
    return std::sqrt(acc / double(xs.size()));
}

// OLS slope of y against x = 0..n-1.
double window_slope(std::span<const double> y) {
    const std::size_t n = y.size();
    const double x_mean = double(n - 1) / 2.0;
    const double y_mean = mean_of(y);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = double(k) - x_mean;
        num += dx * (y[k] - y_mean);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace

double trend_stability(std::span<const double> series, int window_hours) {
    if (window_hours < 2) throw DataError("trend_stability: window must be >= 2 hours");
    const std::size_t window = std::size_t(window_hours);
    if (series.size() < 2 * window) {
        throw DataError("trend_stability: series too short (need >= " + std::to_string(2 * window) +
                        " points, got " + std::to_string(series.size()) + ")");
    }
    const std::size_t n_windows = series.size() / window;
    std::vector<double> slopes(n_windows);
    for (std::size_t w = 0; w < n_windows; ++w) {
        slopes[w] = window_slope(series.subspan(w * window, window));
    }
    return population_stddev(slopes);
}

double period_match(std::span<const double> series, std::span<const double> expected_periods, int top_k) {
    if (expected_periods.empty()) throw DataError("period_match: expected period list is empty");
    if (top_k < 1) throw DataError("period_match: top_k must be >= 1");
    double max_period = 0.0;
    for (double p : expected_periods) {
        if (!(p > 0.0)) throw DataError("period_match: expected periods must be positive");
        max_period = std::max(max_period, p);
    }

    const std::size_t n = series.size();
    const double mu = n == 0 ? 0.0 : mean_of(series);
    double max_abs = 0.0, max_dev = 0.0;
    for (double x : series) {
        max_abs = std::max(max_abs, std::abs(x));
        max_dev = std::max(max_dev, std::abs(x - mu));
    }
    // A constant series has no periodicity at any length; the relative
    // threshold also absorbs the rounding noise of the mean itself.
    if (max_dev <= 1e-12 * std::max(std::abs(mu), max_abs)) return 0.0;

    if (double(n) < 2.0 * max_period) {
        throw DataError("period_match: series too short (need >= " +
                        std::to_string(std::size_t(2.0 * max_period)) + " points, got " + std::to_string(n) + ")");
    }

    // Amplitude spectrum of the centered series, non-DC bins 1..n/2.
    const std::size_t n_bins = n / 2;
    std::vector<double> amplitude(n_bins + 1, 0.0);
    for (std::size_t k = 1; k <= n_bins; ++k) {
        double re = 0.0, im = 0.0;
        const double w = -2.0 * std::numbers::pi * double(k) / double(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = w * double(t);
            const double centered = series[t] - mu;
            re += centered * std::cos(angle);
            im += centered * std::sin(angle);
        }
        amplitude[k] = std::hypot(re, im);
    }

    // Top-k bins by amplitude (ties to the lower bin).
    std::vector<std::size_t> bins(n_bins);
    std::iota(bins.begin(), bins.end(), std::size_t(1));
    const std::size_t keep = std::min<std::size_t>(std::size_t(top_k), bins.size());
    std::partial_sort(bins.begin(), bins.begin() + std::ptrdiff_t(keep), bins.end(),
                      [&amplitude](std::size_t a, std::size_t b) {
                          if (amplitude[a] != amplitude[b]) return amplitude[a] > amplitude[b];
                          return a < b;
                      });
    bins.resize(keep);

    double peak_max = 0.0;
    for (std::size_t k : bins) peak_max = std::max(peak_max, amplitude[k]);
    if (peak_max <= 0.0) return 0.0;

    // Detected vector over the expected-period index set: the normalized
    // amplitude of the strongest kept bin within +-1 sample of the
    // expected period.
    std::vector<double> detected(expected_periods.size(), 0.0);
    for (std::size_t i = 0; i < expected_periods.size(); ++i) {
        double best = 0.0;
        for (std::size_t k : bins) {
            const double period = double(n) / double(k);
            if (std::abs(period - expected_periods[i]) <= 1.0) best = std::max(best, amplitude[k]);
        }
        detected[i] = best / peak_max;
    }

    const double dot = std::accumulate(detected.begin(), detected.end(), 0.0);
    double norm_sq = 0.0;
    for (double a : detected) norm_sq += a * a;
    if (norm_sq == 0.0) return 0.0;
    return dot / (std::sqrt(norm_sq) * std::sqrt(double(expected_periods.size())));
}

double outlier_ratio(std::span<const double> series) {
    if (series.size() < 2) throw DataError("outlier_ratio: series too short (need >= 2 points)");
    const double mu = mean_of(series);
    const double sigma = population_stddev(series);
    if (sigma == 0.0) return 0.0;
    const double lo = mu - 3.0 * sigma;
    const double hi = mu + 3.0 * sigma;
    std::size_t outliers = 0;
    for (double x : series) {
        if (x <= lo || x >= hi) ++outliers;
    }
    return double(outliers) / double(series.size());
}

MetricsReport evaluate_dataset(std::span<const double> series, int window_hours,
                               std::span<const double> expected_periods, int top_k) {
    static const std::vector<double> kDefaultPeriods{24.0, 168.0};
    MetricsReport report;
    report.window_hours = window_hours;
    if (expected_periods.empty()) {
        report.expected_periods = kDefaultPeriods;
    } else {
        report.expected_periods.assign(expected_periods.begin(), expected_periods.end());
    }
    report.s_m = trend_stability(series, window_hours);
    report.p_m = period_match(series, report.expected_periods, top_k);
    report.o_m = outlier_ratio(series);
    return report;
}

}  // namespace bsopt
