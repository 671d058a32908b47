#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tzone {

/// SplitMix64 step. Used to decorrelate (seed, stream) pairs before seeding
/// the main engine, so that per-path streams are independent even for
/// adjacent seeds or path indices.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream of standard normal deviates, reproducible from (seed, stream).
///
/// Engine is std::mt19937_64 (fully specified by the standard), seeded via
/// SplitMix64 mixing of the user seed and the stream index. Normals come from
/// Box-Muller on 53-bit uniforms; one spare deviate is cached between calls.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t state = seed;
        (void)splitmix64(state);
        state ^= 0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL;
        engine_.seed(splitmix64(state));
    }

    /// Uniform draw in (0, 1]; never returns 0 so log() below is safe.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// One standard normal deviate.
    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace tzone
