#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace latc {

/// Seeded random source with a fixed bit-to-double mapping.
///
/// std::mt19937_64 output is specified by the standard, but the standard
/// distributions are not; mapping raw bits ourselves keeps masks and
/// initializations reproducible across compilers and platforms.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (two engine draws per call).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        // u1 = 0 would send log to -inf
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace latc
