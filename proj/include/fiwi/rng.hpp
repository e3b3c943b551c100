#pragma once

#include <cmath>
#include <cstdint>

namespace fiwi {

// Self-contained counter-style generator (splitmix64) with hand-rolled
// samplers, so that fixed seeds reproduce bit-identical streams on every
// platform and standard library.
class RandomStream {
public:
    explicit RandomStream(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Mean-1 exponential; uniform() < 1 keeps the log argument positive.
    double exponential() { return -std::log(1.0 - uniform()); }

    // Poisson by Knuth's product method, split into chunks so the
    // e^{-mean} threshold never underflows.
    int poisson(double mean) {
        int count = 0;
        while (mean > 30.0) {
            count += poisson_small(30.0);
            mean -= 30.0;
        }
        if (mean > 0.0) count += poisson_small(mean);
        return count;
    }

    // Gamma(shape, 1/shape) for integer shape: sum of `shape` unit
    // exponentials scaled to unit mean.
    double gamma_unit_mean(int shape) {
        double sum = 0.0;
        for (int i = 0; i < shape; ++i) sum += exponential();
        double h = sum / static_cast<double>(shape);
        return h > 1e-300 ? h : 1e-300;
    }

    // Deterministic stream derivation (sweep point i, trial t, ...).
    static uint64_t mix(uint64_t seed, uint64_t a) {
        return finalize(seed + 0x9E3779B97F4A7C15ULL * (a + 1));
    }
    static uint64_t mix(uint64_t seed, uint64_t a, uint64_t b) {
        return mix(mix(seed, a), b);
    }

private:
    static uint64_t finalize(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    int poisson_small(double mean) {
        const double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    uint64_t state_;
};

}  // namespace fiwi
