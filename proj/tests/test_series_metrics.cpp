#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bsopt/errors.hpp"
#include "bsopt/rng.hpp"
#include "bsopt/series_metrics.hpp"

using namespace bsopt;

namespace {

std::vector<double> sinusoid(std::size_t n, double period, double amplitude = 1.0, double offset = 0.0) {
    std::vector<double> xs(n);
    for (std::size_t t = 0; t < n; ++t) {
        xs[t] = offset + amplitude * std::sin(2.0 * std::numbers::pi * double(t) / period);
    }
    return xs;
}

}  // namespace

TEST_CASE("trend_stability is zero for a pure line") {
    std::vector<double> line(96);
    for (std::size_t t = 0; t < line.size(); ++t) line[t] = 3.0 * double(t);
    CHECK(trend_stability(line, 24) <= 1e-12);
}

TEST_CASE("trend_stability of two hand-built windows") {
    // windows of 2 points with slopes 1 and 3 -> population stddev 1
    const std::vector<double> series{0.0, 1.0, 0.0, 3.0};
    CHECK(trend_stability(series, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trend_stability is zero for constants and shift-invariant") {
    const std::vector<double> constant(96, 5.5);
    CHECK(trend_stability(constant, 24) == 0.0);

    Rng rng(11);
    std::vector<double> noisy(96);
    for (auto& x : noisy) x = rng.uniform_real() * 10.0;
    std::vector<double> shifted = noisy;
    for (auto& x : shifted) x += 123.456;
    CHECK(trend_stability(shifted, 24) == doctest::Approx(trend_stability(noisy, 24)).epsilon(1e-9));
}

TEST_CASE("line plus aligned daily sinusoid keeps identical window slopes") {
    std::vector<double> series(96);
    for (std::size_t t = 0; t < series.size(); ++t) {
        series[t] = 3.0 * double(t) + std::sin(2.0 * std::numbers::pi * double(t) / 24.0);
    }
    CHECK(trend_stability(series, 24) <= 1e-9);
}

TEST_CASE("trend_stability rejects short input and tiny windows") {
    CHECK_THROWS_AS(trend_stability(std::vector<double>(40, 1.0), 24), DataError);
    CHECK_THROWS_AS(trend_stability(std::vector<double>(40, 1.0), 1), DataError);
}

TEST_CASE("period_match on a pure daily sinusoid") {
    const auto series = sinusoid(336, 24.0);
    const std::vector<double> periods{24.0, 168.0};
    CHECK(period_match(series, periods, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("period_match on the equal-amplitude daily+weekly composite") {
    std::vector<double> series(336);
    for (std::size_t t = 0; t < series.size(); ++t) {
        series[t] = std::sin(2.0 * std::numbers::pi * double(t) / 24.0) +
                    std::sin(2.0 * std::numbers::pi * double(t) / 168.0);
    }
    const std::vector<double> periods{24.0, 168.0};
    CHECK(period_match(series, periods, 2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("period_match of constants is zero at any length") {
    const std::vector<double> periods{24.0, 168.0};
    CHECK(period_match(std::vector<double>(168, 7.0), periods, 2) == 0.0);
    CHECK(period_match(std::vector<double>(336, 0.1), periods, 2) == 0.0);
}

TEST_CASE("period_match is invariant under positive scaling") {
    const auto series = sinusoid(336, 24.0, 1.0, 10.0);
    const std::vector<double> periods{24.0, 168.0};
    const double base = period_match(series, periods, 2);
    for (double scale : {1e-3, 12.0, 1e6}) {
        std::vector<double> scaled = series;
        for (auto& x : scaled) x *= scale;
        CHECK(period_match(scaled, periods, 2) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("period_match validates its inputs") {
    const auto series = sinusoid(336, 24.0);
    CHECK_THROWS_AS(period_match(series, {}, 2), DataError);
    CHECK_THROWS_AS(period_match(series, std::vector<double>{24.0}, 0), DataError);
    CHECK_THROWS_AS(period_match(sinusoid(100, 24.0), std::vector<double>{24.0, 168.0}, 2), DataError);
    CHECK_THROWS_AS(period_match(series, std::vector<double>{-24.0}, 2), DataError);
}

TEST_CASE("period_match with a single expected period") {
    const auto series = sinusoid(240, 24.0);
    CHECK(period_match(series, std::vector<double>{24.0}, 2) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("outlier_ratio hand cases") {
    CHECK(outlier_ratio(std::vector<double>(50, 3.25)) == 0.0);

    std::vector<double> spike(100, 0.0);
    spike[17] = 100.0;  // mu = 1, sigma = sqrt(99), 100 > mu + 3 sigma
    CHECK(outlier_ratio(spike) == doctest::Approx(0.01));

    std::vector<double> alternating(100);
    for (std::size_t i = 0; i < alternating.size(); ++i) alternating[i] = i % 2 == 0 ? 1.0 : -1.0;
    CHECK(outlier_ratio(alternating) == 0.0);

    CHECK_THROWS_AS(outlier_ratio(std::vector<double>{1.0}), DataError);
}

TEST_CASE("outlier_ratio of seeded gaussian noise stays below 2%") {
    Rng rng = derive_stream(1234, StreamPurpose::test);
    std::vector<double> xs(1000);
    for (auto& x : xs) x = rng.normal();
    CHECK(outlier_ratio(xs) <= 0.02);
}

TEST_CASE("evaluate_dataset composes the three metrics") {
    const auto zeros = evaluate_dataset(std::vector<double>(168, 4.0));
    CHECK(zeros.s_m == 0.0);
    CHECK(zeros.p_m == 0.0);
    CHECK(zeros.o_m == 0.0);
    CHECK(zeros.window_hours == 24);
    REQUIRE(zeros.expected_periods.size() == 2);
    CHECK(zeros.expected_periods[0] == 24.0);
    CHECK(zeros.expected_periods[1] == 168.0);

    const auto daily = evaluate_dataset(sinusoid(336, 24.0));
    CHECK(daily.p_m == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(daily.o_m == 0.0);
}
