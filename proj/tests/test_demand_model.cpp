#include <doctest.h>

#include <cmath>

#include "bsopt/demand_model.hpp"
#include "bsopt/errors.hpp"
#include "bsopt/rng.hpp"
#include "test_util.hpp"

using namespace bsopt;

namespace {

ChargingSession session_at(const char* when, double duration, double energy) {
    ChargingSession s;
    s.start_time = *parse_timestamp(when);
    s.duration_minutes = duration;
    s.energy_kwh = energy;
    return s;
}

}  // namespace

TEST_CASE("swap_probability matches hand-evaluated logistic values") {
    const ModelParams p;
    CHECK(swap_probability({0, 0, 0}, p) == doctest::Approx(0.5));
    // z = 0.08*60 + 0.08*30 - 0.8*5 = 3.2
    CHECK(swap_probability({60, 30, 5}, p) == doctest::Approx(0.9608342772032356).epsilon(1e-12));
    // z = -0.8*10 = -8
    CHECK(swap_probability({0, 0, 10}, p) == doctest::Approx(0.0003353501304664781).epsilon(1e-12));
}

TEST_CASE("swap_probability is stable out to |z| = 700") {
    const ModelParams negative{{-700.0, 0.0, 0.0}, 1.0};
    const double tiny = swap_probability({1, 0, 0}, negative);
    CHECK(tiny > 0.0);
    CHECK(tiny < 1e-300);
    const ModelParams positive{{700.0, 0.0, 0.0}, 1.0};
    const double big = swap_probability({1, 0, 0}, positive);
    CHECK(big <= 1.0);
    CHECK(std::isfinite(big));
}

TEST_CASE("sigma(-z) = 1 - sigma(z)") {
    const ModelParams direct{{1.0, 0.0, 0.0}, 1.0};
    const ModelParams mirrored{{-1.0, 0.0, 0.0}, 1.0};
    for (double z = 0.0; z <= 30.0; z += 0.37) {
        const FeatureVector x{z, 0, 0};
        const double diff = std::abs(swap_probability(x, mirrored) - (1.0 - swap_probability(x, direct)));
        CHECK(diff <= 1e-15);
    }
}

TEST_CASE("swap_probability monotone in each feature with default theta") {
    const ModelParams p;
    double prev = swap_probability({0, 10, 5}, p);
    for (double t = 5; t <= 100; t += 5) {
        const double cur = swap_probability({t, 10, 5}, p);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = swap_probability({30, 0, 5}, p);
    for (double v = 5; v <= 100; v += 5) {
        const double cur = swap_probability({30, v, 5}, p);
        CHECK(cur > prev);
        prev = cur;
    }
    prev = swap_probability({30, 10, 0}, p);
    for (double c = 1; c <= 30; c += 1) {
        const double cur = swap_probability({30, 10, c}, p);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("swap_probability rejects non-finite input") {
    const ModelParams p;
    CHECK_THROWS_AS(swap_probability({std::nan(""), 0, 0}, p), DataError);
}

TEST_CASE("expected_demand_poisson is the plain product") {
    CHECK(expected_demand_poisson(0.5, 10) == doctest::Approx(5.0));
    CHECK(expected_demand_poisson(0.37, 0) == 0.0);
    CHECK(expected_demand_poisson(1.0, 7) == doctest::Approx(7.0));
    CHECK_THROWS_AS(expected_demand_poisson(1.5, 1), DataError);
    CHECK_THROWS_AS(expected_demand_poisson(0.5, -1), DataError);
}

TEST_CASE("expected_demand_poisson is linear in lambda") {
    for (double a : {0.5, 2.0, 7.25}) {
        CHECK(expected_demand_poisson(0.3, a * 4.0) == doctest::Approx(a * expected_demand_poisson(0.3, 4.0)));
    }
}

TEST_CASE("total-expectation oracle agrees with the product form") {
    CHECK(expected_demand_total_expectation(0.5, 10, 200) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(expected_demand_total_expectation(0.3, 2, 100) == doctest::Approx(0.6).epsilon(1e-9));
    CHECK(expected_demand_total_expectation(0.7, 0, 10) == 0.0);

    for (double lambda : {0.0, 0.5, 1.0, 5.0, 20.0, 50.0}) {
        for (double prob : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const double fast = expected_demand_poisson(prob, lambda);
            const double oracle = expected_demand_total_expectation(prob, lambda, 200);
            if (fast == 0.0) {
                CHECK(oracle == 0.0);
            } else {
                CHECK(std::abs(oracle - fast) <= 1e-9 * fast);
            }
        }
    }
}

TEST_CASE("total-expectation detects insufficient truncation") {
    CHECK_THROWS_AS(expected_demand_total_expectation(0.5, 50, 55), DataError);
}

TEST_CASE("estimate_demand_series sums per-session probabilities per hour") {
    const ModelParams p;  // theta defaults, c_r = 5
    std::vector<ChargingSession> sessions{
        session_at("2022-06-19T08:10", 60, 30),  // prob = sigma(3.2)
    };
    auto series = estimate_demand_series(sessions, p);
    REQUIRE(series.expected.size() == 1);
    CHECK(series.expected[0] == doctest::Approx(0.9608342772032356).epsilon(1e-12));
    CHECK(series.rounded[0] == 1);

    // an empty hour between two active ones stays zero
    sessions.push_back(session_at("2022-06-19T10:30", 60, 30));
    series = estimate_demand_series(sessions, p);
    REQUIRE(series.expected.size() == 3);
    CHECK(series.expected[1] == 0.0);
    CHECK(series.rounded[1] == 0);

    // three identical sessions degenerate to 3p (Poisson product with lambda = 3)
    std::vector<ChargingSession> triple(3, session_at("2022-06-19T08:00", 60, 30));
    series = estimate_demand_series(triple, p);
    const double prob = swap_probability({60, 30, p.swap_time_minutes}, p);
    CHECK(series.expected[0] == doctest::Approx(expected_demand_poisson(prob, 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(estimate_demand_series({}, p), DataError);
}

TEST_CASE("lambda smoothing averages the same hour-of-week") {
    const ModelParams p;
    // two weeks, same weekday hour: counts 2 and 4 -> smoothed rate 3 everywhere
    std::vector<ChargingSession> sessions;
    for (int i = 0; i < 2; ++i) sessions.push_back(session_at("2022-06-19T08:00", 60, 30));
    for (int i = 0; i < 4; ++i) sessions.push_back(session_at("2022-06-26T08:00", 60, 30));
    EstimateOptions smooth;
    smooth.lambda_smoothing = true;
    const auto series = estimate_demand_series(sessions, p, smooth);
    const double prob = swap_probability({60, 30, p.swap_time_minutes}, p);
    REQUIRE(series.expected.size() == 169);
    CHECK(series.expected[0] == doctest::Approx(3.0 * prob).epsilon(1e-12));
    CHECK(series.expected[168] == doctest::Approx(3.0 * prob).epsilon(1e-12));
    // hours of the week with no sessions stay zero
    CHECK(series.expected[1] == 0.0);
}

namespace {

DemandSeries flat_series(int hours, int per_hour) {
    DemandSeries s;
    s.origin = 0;
    s.expected.assign(std::size_t(hours), double(per_hour));
    s.rounded.assign(std::size_t(hours), per_hour);
    return s;
}

PriceSeries flat_prices(double value = 1.0) {
    PriceSeries p;
    p.daily_profile = true;
    p.hourly_price.assign(24, value);
    return p;
}

}  // namespace

TEST_CASE("split_demand follows the rounding rule") {
    const auto profile = split_demand(flat_series(24, 13), 5.0 / 13.0, flat_prices());
    CHECK(profile.demand_a[0] == 5);
    CHECK(profile.demand_b[0] == 8);

    const auto zero = split_demand(flat_series(24, 0), 0.5, flat_prices());
    CHECK(zero.demand_a[3] == 0);
    CHECK(zero.demand_b[3] == 0);

    const auto all_a = split_demand(flat_series(24, 7), 1.0, flat_prices());
    CHECK(all_a.demand_a[0] == 7);
    CHECK(all_a.demand_b[0] == 0);

    CHECK_THROWS_AS(split_demand(flat_series(24, 1), 1.5, flat_prices()), DataError);
    CHECK_THROWS_AS(split_demand(flat_series(23, 1), 0.5, flat_prices()), DataError);
}

TEST_CASE("split_demand conserves totals for random ratios") {
    Rng rng(888);
    for (int trial = 0; trial < 200; ++trial) {
        const int total = rng.uniform_int(0, 40);
        const double ratio = rng.uniform_real();
        const auto profile = split_demand(flat_series(24, total), ratio, flat_prices());
        for (int t = 0; t < 24; ++t) {
            CHECK(profile.demand_a[t] + profile.demand_b[t] == total);
            CHECK(profile.demand_a[t] >= 0);
            CHECK(profile.demand_b[t] >= 0);
        }
    }
}

TEST_CASE("split_demand aligns daily prices to the clock") {
    DemandSeries series = flat_series(24, 2);
    series.origin = *parse_timestamp("2022-06-19T08:00");
    PriceSeries prices = flat_prices();
    prices.hourly_price[8] = 9.0;   // clock hour 8 -> profile hour 0
    prices.hourly_price[0] = 4.0;   // clock hour 0 -> profile hour 16
    const auto profile = split_demand(series, 0.5, prices);
    CHECK(profile.price[0] == doctest::Approx(9.0));
    CHECK(profile.price[16] == doctest::Approx(4.0));
}

TEST_CASE("demand csv round trips through read_demand_csv") {
    testutil::TempDir tmp;
    DemandSeries series = flat_series(48, 0);
    Rng rng(31337);
    for (int h = 0; h < 48; ++h) {
        series.expected[std::size_t(h)] = rng.uniform_real() * 12.0;
        series.rounded[std::size_t(h)] = round_half_up(series.expected[std::size_t(h)]);
    }
    const auto path = tmp.file("demand.csv");
    write_demand_csv(path, series, 5.0 / 13.0, flat_prices(0.7));
    const auto table = read_demand_csv(path);
    REQUIRE(table.expected.size() == 48);
    for (int h = 0; h < 48; ++h) {
        CHECK(table.expected[std::size_t(h)] == series.expected[std::size_t(h)]);  // bit-exact
        CHECK(table.demand_a[std::size_t(h)] + table.demand_b[std::size_t(h)] ==
              series.rounded[std::size_t(h)]);
        CHECK(table.price[std::size_t(h)] == 0.7);
    }

    const auto profile = profile_from_table(table, 1);
    CHECK(profile.demand_a[0] == table.demand_a[24]);
    CHECK_THROWS_AS(profile_from_table(table, 2), DataError);
}

TEST_CASE("round_half_up behaves at the boundary") {
    CHECK(round_half_up(0.0) == 0);
    CHECK(round_half_up(0.49) == 0);
    CHECK(round_half_up(0.5) == 1);
    CHECK(round_half_up(1.5) == 2);
    CHECK(round_half_up(2.4999) == 2);
}
