#pragma once

#include <cmath>
#include <cstdint>

namespace topicwalk {

// Counter-based deterministic generator (splitmix64 stream). Output depends
// only on (seed, draw index), so runs are reproducible across platforms
// without relying on libstdc++ distribution internals.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform in (0, hi]: flips the half-open interval so 0 is excluded.
    double uniform_pos(double hi) { return hi * (1.0 - next_double()); }

    double rayleigh(double sigma) {
        return sigma * std::sqrt(-2.0 * std::log(1.0 - next_double()));
    }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - next_double();
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * M_PI * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    double pareto(double a, double alpha) {
        return a * std::pow(1.0 - next_double(), -1.0 / alpha);
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace topicwalk
