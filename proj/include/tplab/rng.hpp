#ifndef TPLAB_RNG_HPP
#define TPLAB_RNG_HPP

// Seeding contract: path i of a run with master seed m is drawn from
// mt19937_64 seeded with derive_substream_seed(m, i); standard normals come
// from Box-Muller on 53-bit uniforms. The pair below names this scheme in
// every report so reproducibility claims stay meaningful across builds.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tplab {

inline constexpr const char* kRngAlgorithm = "mt19937_64/splitmix64-substreams/box-muller-53";

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Injective in path_index for a fixed master seed: the additive step is odd
/// and the finalizer is a bijection of 64-bit words.
inline constexpr std::uint64_t derive_substream_seed(std::uint64_t master, std::uint64_t path_index) {
    return splitmix64_mix(master + (path_index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Standard normal draws from a single substream.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 == 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    template <class It>
    void fill(It first, It last) {
        for (; first != last; ++first) {
            *first = (*this)();
        }
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace tplab

#endif
