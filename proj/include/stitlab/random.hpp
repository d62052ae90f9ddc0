#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace stitlab {

// Stream seed for replicate i: the splitmix64 finalizer applied to
// seed + (i + 1) * 0x9E3779B97F4A7C15.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// mt19937_64 with hand-rolled transforms so draws are identical across
// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }
    std::uint64_t bits() { return engine_(); }
    // Standard normal via Box-Muller (one value per call).
    double normal() {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2 * std::log(u1)) * std::cos(2 * 3.14159265358979323846 * u2);
    }
    // Poisson by inversion for small means, by splitting for large ones.
    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 30) {
            // Count of arrivals of a unit-rate process in [0, 30].
            double t = 0;
            for (;;) {
                t += exponential(1.0);
                if (t > 30) break;
                ++total;
            }
            mean -= 30;
        }
        double l = std::exp(-mean), p = 1;
        for (;;) {
            p *= uniform();
            if (p <= l) break;
            ++total;
        }
        return total;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace stitlab
