#include "bsopt/demand_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "bsopt/csv.hpp"
#include "bsopt/errors.hpp"

namespace bsopt {

void ModelParams::validate() const {
    for (double t : theta) {
        if (!std::isfinite(t)) throw DataError("ModelParams: theta must be finite");
    }
    if (!(swap_time_minutes > 0.0) || !std::isfinite(swap_time_minutes)) {
        throw DataError("ModelParams: swap_time_minutes must be positive");
    }
}

void DemandProfile::validate() const {
    if (demand_a.empty() || demand_b.size() != demand_a.size() || price.size() != demand_a.size()) {
        throw DataError("DemandProfile: demand_a, demand_b and price must have equal nonzero length");
    }
    for (std::size_t t = 0; t < demand_a.size(); ++t) {
        if (demand_a[t] < 0 || demand_b[t] < 0) throw DataError("DemandProfile: negative demand");
        if (price[t] < 0.0 || !std::isfinite(price[t])) throw DataError("DemandProfile: invalid price");
    }
}

int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

double swap_probability(const FeatureVector& x, const ModelParams& p) {
    if (!std::isfinite(x.t_sum) || !std::isfinite(x.v_sum) || !std::isfinite(x.c_r)) {
        throw DataError("swap_probability: non-finite feature");
    }
    const double z = p.theta[0] * x.t_sum + p.theta[1] * x.v_sum + p.theta[2] * x.c_r;
    if (!std::isfinite(z)) throw DataError("swap_probability: non-finite linear term");
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double ez = std::exp(z);
    return ez / (1.0 + ez);
}

double expected_demand_poisson(double prob, double lambda) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw DataError("expected_demand_poisson: prob outside [0,1]");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DataError("expected_demand_poisson: lambda must be >= 0");
    return prob * lambda;
}

double expected_demand_total_expectation(double prob, double lambda, int truncation_n) {
    if (!(prob >= 0.0 && prob <= 1.0)) throw DataError("expected_demand_total_expectation: prob outside [0,1]");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DataError("expected_demand_total_expectation: lambda must be >= 0");
    }
    if (truncation_n < 0) throw DataError("expected_demand_total_expectation: negative truncation");

    double pmf = std::exp(-lambda);  // P(N = 0)
    double mass = pmf;
    double sum = 0.0;
    for (int n = 1; n <= truncation_n; ++n) {
        pmf *= lambda / double(n);
        mass += pmf;
        sum += double(n) * prob * pmf;
    }
    const double tail = 1.0 - mass;
    if (tail >= 1e-12) {
        throw DataError("expected_demand_total_expectation: truncation_n too small (tail mass " +
                        csv::format_double(tail) + ")");
    }
    return sum;
}

DemandSeries estimate_demand_series(std::span<const ChargingSession> sessions, const ModelParams& p,
                                    const EstimateOptions& options) {
    p.validate();
    if (sessions.empty()) throw DataError("estimate_demand_series: no sessions");

    const ArrivalSeries arrivals = hourly_arrivals(sessions);
    const std::size_t n_hours = arrivals.hourly_counts.size();
    const std::int64_t origin_hour = hour_index(arrivals.origin);

    // Per-hour sum of session probabilities (the realized inner sum of
    // the total-expectation formula).
    std::vector<double> prob_sum(n_hours, 0.0);
    for (const auto& s : sessions) {
        const FeatureVector x{s.duration_minutes, s.energy_kwh, p.swap_time_minutes};
        prob_sum[std::size_t(hour_index(s.start_time) - origin_hour)] += swap_probability(x, p);
    }

    DemandSeries series;
    series.origin = arrivals.origin;
    series.expected.resize(n_hours);
    series.rounded.resize(n_hours);

    if (!options.lambda_smoothing) {
        for (std::size_t h = 0; h < n_hours; ++h) series.expected[h] = prob_sum[h];
    } else {
        // Hour-of-week buckets; the rate becomes the bucket-mean count and
        // the per-user probability the bucket-mean probability.
        constexpr std::size_t kWeekHours = 168;
        std::array<double, kWeekHours> bucket_prob_sum{};
        std::array<long long, kWeekHours> bucket_count{};
        std::array<long long, kWeekHours> bucket_hours{};
        for (std::size_t h = 0; h < n_hours; ++h) {
            const std::size_t b = std::size_t((origin_hour + std::int64_t(h)) % kWeekHours);
            bucket_prob_sum[b] += prob_sum[h];
            bucket_count[b] += arrivals.hourly_counts[h];
            bucket_hours[b] += 1;
        }
        for (std::size_t h = 0; h < n_hours; ++h) {
            const std::size_t b = std::size_t((origin_hour + std::int64_t(h)) % kWeekHours);
            if (bucket_count[b] == 0) {
                series.expected[h] = 0.0;
                continue;
            }
            const double lambda_bar = double(bucket_count[b]) / double(bucket_hours[b]);
            const double prob_bar = bucket_prob_sum[b] / double(bucket_count[b]);
            series.expected[h] = expected_demand_poisson(std::clamp(prob_bar, 0.0, 1.0), lambda_bar);
        }
    }

    for (std::size_t h = 0; h < n_hours; ++h) series.rounded[h] = round_half_up(series.expected[h]);
    return series;
}

namespace {

void split_hour(int total, double ratio_a, int& d_a, int& d_b) {
    d_a = round_half_up(ratio_a * double(total));
    d_a = std::clamp(d_a, 0, total);
    d_b = total - d_a;
}

double price_at(const PriceSeries& prices, std::int64_t origin_hour, std::size_t h) {
    if (prices.daily_profile) {
        const std::int64_t clock = (origin_hour + std::int64_t(h)) % 24;
        return prices.hourly_price[std::size_t(clock < 0 ? clock + 24 : clock)];
    }
    if (h >= prices.hourly_price.size()) {
        throw DataError("price series shorter than demand series (hour " + std::to_string(h) + ")");
    }
    return prices.hourly_price[h];
}

}  // namespace

DemandProfile split_demand(const DemandSeries& series, double ratio_a, const PriceSeries& prices) {
    if (!(ratio_a >= 0.0 && ratio_a <= 1.0)) throw DataError("split_demand: ratio_a outside [0,1]");
    if (series.rounded.size() < 24) {
        throw DataError("split_demand: series must cover at least 24 hours, got " +
                        std::to_string(series.rounded.size()));
    }
    const std::int64_t origin_hour = hour_index(series.origin);
    DemandProfile profile;
    profile.demand_a.resize(24);
    profile.demand_b.resize(24);
    profile.price.resize(24);
    for (std::size_t h = 0; h < 24; ++h) {
        split_hour(series.rounded[h], ratio_a, profile.demand_a[h], profile.demand_b[h]);
        profile.price[h] = price_at(prices, origin_hour, h);
    }
    profile.validate();
    return profile;
}

void write_demand_csv(const std::string& path, const DemandSeries& series, double ratio_a,
                      const PriceSeries& prices) {
    if (!(ratio_a >= 0.0 && ratio_a <= 1.0)) throw DataError("write_demand_csv: ratio_a outside [0,1]");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    const std::int64_t origin_hour = hour_index(series.origin);
    out << "hour,expected,demand_a,demand_b,price\n";
    for (std::size_t h = 0; h < series.expected.size(); ++h) {
        int d_a = 0, d_b = 0;
        split_hour(series.rounded[h], ratio_a, d_a, d_b);
        out << h << ',' << csv::format_double(series.expected[h]) << ',' << d_a << ',' << d_b << ','
            << csv::format_double(price_at(prices, origin_hour, h)) << '\n';
    }
}

DemandTable read_demand_csv(const std::string& path) {
    const csv::Table table = csv::read_table(path);
    const auto expected_col = table.column("expected");
    const auto a_col = table.column("demand_a");
    const auto b_col = table.column("demand_b");
    const auto price_col = table.column("price");
    if (!expected_col || !a_col || !b_col || !price_col) {
        throw DataError("demand file " + path + ": requires columns expected,demand_a,demand_b,price");
    }
    DemandTable out;
    for (const auto& row : table.rows) {
        const auto exp = csv::parse_double(row[*expected_col]);
        const auto a = csv::parse_int(row[*a_col]);
        const auto b = csv::parse_int(row[*b_col]);
        const auto price = csv::parse_double(row[*price_col]);
        if (!exp || !a || !b || !price) throw DataError("demand file " + path + ": non-numeric row");
        if (*a < 0 || *b < 0 || *price < 0.0) throw DataError("demand file " + path + ": negative value");
        out.expected.push_back(*exp);
        out.demand_a.push_back(int(*a));
        out.demand_b.push_back(int(*b));
        out.price.push_back(*price);
    }
    return out;
}

DemandProfile profile_from_table(const DemandTable& table, int day) {
    if (day < 0) throw DataError("profile_from_table: day must be >= 0");
    const std::size_t begin = std::size_t(day) * 24;
    if (begin + 24 > table.demand_a.size()) {
        throw DataError("profile_from_table: day " + std::to_string(day) + " needs " +
                        std::to_string(begin + 24) + " rows, file has " + std::to_string(table.demand_a.size()));
    }
    DemandProfile profile;
    profile.demand_a.assign(table.demand_a.begin() + begin, table.demand_a.begin() + begin + 24);
    profile.demand_b.assign(table.demand_b.begin() + begin, table.demand_b.begin() + begin + 24);
    profile.price.assign(table.price.begin() + begin, table.price.begin() + begin + 24);
    profile.validate();
    return profile;
}

}  // namespace bsopt
