#ifndef BSOPT_RNG_HPP
#define BSOPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bsopt {

// splitmix64 finalizer, used to derive well-separated child seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seeded random stream. All draw algorithms are implemented here rather
// than with std::*_distribution so that a given seed produces the same
// sequence on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], both ends inclusive. Unbiased
    // (rejection sampling on the top of the 64-bit range).
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        const std::uint64_t n = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1ULL;
        if (n == 0) return lo;  // full 64-bit span, cannot happen for int args
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return static_cast<int>(lo + static_cast<std::int64_t>(v % n));
    }

    // Uniform real in [0, 1), 53-bit resolution.
    double uniform_real() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform_real() < p; }

    // Standard normal via Box-Muller. Used by test fixtures and the
    // synthetic region generator only.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform_real();
        double u2 = uniform_real();
        while (u1 <= 0.0) u1 = uniform_real();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // UniformRandomBitGenerator interface.
    using result_type = std::uint64_t;
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Named purposes for deriving independent sub-streams from one master
// seed. Keeping the draws on separate streams means evaluation order
// (or future parallelism) cannot perturb a seeded run.
enum class StreamPurpose : std::uint64_t {
    init = 1,
    selection = 2,
    crossover = 3,
    mutation = 4,
    synthetic = 5,
    test = 6,
};

inline Rng derive_stream(std::uint64_t master_seed, StreamPurpose purpose) {
    return Rng(splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(purpose))));
}

}  // namespace bsopt

#endif  // BSOPT_RNG_HPP
