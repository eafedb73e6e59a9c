#include <cmath>

#include <gtest/gtest.h>

#include "gen.hpp"
#include "tplab/estimators.hpp"
#include "tplab/rng.hpp"

using namespace tplab;

namespace {

std::vector<GaussianPath> make_paths(std::size_t count, std::size_t n, double dt,
                                     const std::function<double(std::size_t, std::size_t)>& value) {
    std::vector<GaussianPath> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        out[k].grid = {0.0, dt, n};
        out[k].process = ProcessDescriptor::tfbm({1.0, 1e-6});
        out[k].values.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[k].values[i] = value(k, i);
        }
    }
    return out;
}

// Random walks: Brownian motion sampled on the grid.
std::vector<GaussianPath> brownian(std::size_t count, std::size_t n, double dt, std::uint64_t seed) {
    std::vector<GaussianPath> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        NormalStream r(derive_substream_seed(seed, k));
        out[k].grid = {0.0, dt, n};
        out[k].process = ProcessDescriptor::tfbm({1.0, 1e-6});
        out[k].values.resize(n);
        double acc = 0;
        for (std::size_t i = 1; i < n; ++i) {
            acc += std::sqrt(dt) * r();
            out[k].values[i] = acc;
        }
    }
    return out;
}

}  // namespace

TEST(LineFit, RecoversLine) {
    auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
}

TEST(Variogram, LinearPathsHaveSlopeTwo) {
    auto paths = make_paths(120, 200, 0.01, [](std::size_t k, std::size_t i) {
        return (1.0 + 0.01 * static_cast<double>(k)) * static_cast<double>(i);
    });
    auto v = variogram(paths, default_lags());
    EXPECT_NEAR(v.slope, 2.0, 1e-12);
    EXPECT_EQ(v.fit_points, 10u);
    EXPECT_NEAR(v.slope_stderr, 0.0, 1e-10);
}

TEST(Variogram, BrownianHurstHalf) {
    auto paths = brownian(200, 400, 1e-3, 4);
    auto h = hurst_local(paths);
    EXPECT_NEAR(h.h_hat, 0.5, 4 * h.std_error + 0.01);
    EXPECT_FALSE(h.regime_warning);
    auto d = fractal_dimension(paths);
    EXPECT_NEAR(d.d_hat, 2 - h.h_hat, 1e-15);
}

TEST(Variogram, InsufficientData) {
    auto few = brownian(10, 100, 1e-3, 1);
    EXPECT_THROW(variogram(few, default_lags()), InsufficientData);
    auto short_paths = brownian(150, 8, 1e-3, 1);
    EXPECT_THROW(variogram(short_paths, default_lags()), InsufficientData);
    auto paths = brownian(150, 100, 1e-3, 1);
    EXPECT_THROW(variogram(paths, {1, 2, 4, 8}), InsufficientData);
    EXPECT_THROW(variogram(paths, {2, 1}), InsufficientData);
}

TEST(HurstLocal, RegimeWarning) {
    auto paths = brownian(150, 100, 0.1, 2);
    for (auto& p : paths) {
        p.process = ProcessDescriptor::tfbm({1.0, 1.0});
    }
    auto h = hurst_local(paths);
    EXPECT_TRUE(h.regime_warning);
    EXPECT_FALSE(h.warning.empty());
}

TEST(HurstWindowed, ConstantIndexGivesFlatProfile) {
    auto paths = brownian(150, 800, 1e-3, 3);
    auto w = hurst_windowed(paths, 1e-6);
    ASSERT_GE(w.size(), 10u);
    for (const auto& e : w) {
        EXPECT_NEAR(e.h_hat, 0.5, 5 * e.std_error + 0.02);
    }
    for (std::size_t i = 1; i < w.size(); ++i) {
        EXPECT_GT(w[i].t_center, w[i - 1].t_center);
    }
}

TEST(Plateau, PerfectlyCorrelatedPaths) {
    auto paths = make_paths(150, 50, 0.1, [](std::size_t k, std::size_t i) {
        return (static_cast<double>(k % 7) - 3.0) * (1 + static_cast<double>(i));
    });
    auto est = lrd_plateau_empirical(paths, 1.0, {1.0, 2.0});
    for (const auto& e : est) {
        EXPECT_NEAR(e.r_hat, 1.0, 1e-14);
        EXPECT_NEAR(e.std_error, 0.0, 1e-13);
    }
    EXPECT_THROW(lrd_plateau_empirical(paths, 1.0, {100.0}), InsufficientData);
    EXPECT_THROW(lrd_plateau_empirical(paths, 1.05, {1.0}), InsufficientData);
}

TEST(StationaryCorrelation, WhiteNoiseUncorrelated) {
    std::vector<GaussianPath> paths(50);
    for (std::size_t k = 0; k < paths.size(); ++k) {
        NormalStream r(k + 1);
        paths[k].grid = {0, 1, 500};
        paths[k].values.resize(500);
        r.fill(paths[k].values.begin(), paths[k].values.end());
    }
    EXPECT_NEAR(stationary_correlation(paths, 0), 1.0, 1e-15);
    EXPECT_NEAR(stationary_correlation(paths, 3), 0.0, 5.0 / std::sqrt(50.0 * 500));
}

TEST(Moments, CovarianceAndMean) {
    std::vector<std::vector<double>> s{{1, 2}, {-1, -2}, {2, 4}, {-2, -4}};
    auto c = empirical_cov(s, 0, 1);
    EXPECT_DOUBLE_EQ(c.value, 5.0);
    EXPECT_GT(c.std_error, 0);
    auto paths = make_paths(4, 3, 1.0, [](std::size_t k, std::size_t i) { return static_cast<double>(k + i); });
    EXPECT_DOUBLE_EQ(empirical_mean(paths, 1).value, 2.5);
}
