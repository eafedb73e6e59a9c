#ifndef TPLAB_TESTS_GEN_HPP
#define TPLAB_TESTS_GEN_HPP

// Seeded generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

namespace tplab::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    bool coin() { return integer(0, 1) == 1; }

private:
    std::mt19937_64 eng_;
};

inline constexpr int kCases = 200;

inline double rel_err(double actual, double expected) { return std::abs(actual - expected) / std::abs(expected); }

}  // namespace tplab::testing

#endif
