#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "bsopt/rng.hpp"

using namespace bsopt;

TEST_CASE("same seed gives identical sequences") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("derived streams differ by purpose") {
    Rng init = derive_stream(7, StreamPurpose::init);
    Rng mut = derive_stream(7, StreamPurpose::mutation);
    int differing = 0;
    for (int i = 0; i < 64; ++i) {
        if (init.next_u64() != mut.next_u64()) ++differing;
    }
    CHECK(differing > 60);
}

TEST_CASE("uniform_int stays in bounds and hits both ends") {
    Rng rng(99);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 20000; ++i) {
        const int v = rng.uniform_int(-3, 11);
        CHECK(v >= -3);
        CHECK(v <= 11);
        saw_lo |= v == -3;
        saw_hi |= v == 11;
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
    CHECK(rng.uniform_int(5, 5) == 5);
}

TEST_CASE("uniform_int chi-square uniformity") {
    // 10 buckets, 1e5 draws, fixed seed; critical value chi2_{9, 0.01}.
    Rng rng(2024);
    std::array<long long, 10> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[std::size_t(rng.uniform_int(0, 9))];
    const double expected = double(n) / 10.0;
    double chi2 = 0.0;
    for (long long c : counts) chi2 += (double(c) - expected) * (double(c) - expected) / expected;
    CHECK(chi2 < 21.666);
}

TEST_CASE("uniform_real is in [0,1)") {
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform_real();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normal moments are plausible") {
    Rng rng(31);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
}
