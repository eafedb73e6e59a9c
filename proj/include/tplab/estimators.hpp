#ifndef TPLAB_ESTIMATORS_HPP
#define TPLAB_ESTIMATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tplab/errors.hpp"
#include "tplab/sampler.hpp"

namespace tplab {

struct VariogramEstimate {
    std::vector<double> lags;       ///< time lags
    std::vector<double> gamma_hat;  ///< mean squared increments
    double slope = 0;
    double slope_stderr = 0;
    std::size_t fit_points = 0;
};

struct LineFit {
    double slope;
    double intercept;
};

/// Ordinary least squares of y on x.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw InsufficientData("fit_line: need at least two points");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) {
        throw InsufficientData("fit_line: x values are all equal");
    }
    double b = sxy / sxx;
    return {b, my - b * mx};
}

/// Slope of log(gamma) against log(lag).
inline double fit_loglog_slope(const std::vector<double>& lags, const std::vector<double>& gamma) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (!(gamma[i] > 0) || !(lags[i] > 0)) {
            throw InsufficientData("fit_loglog_slope: lags and variogram values must be positive");
        }
        lx.push_back(std::log(lags[i]));
        ly.push_back(std::log(gamma[i]));
    }
    return fit_line(lx, ly).slope;
}

struct VariogramOptions {
    std::size_t min_paths = 100;
    std::size_t min_fit_points = 6;
    std::size_t groups = 10;
    /// Restrict increments to start indices in [first, last).
    std::size_t window_first = 0;
    std::size_t window_last = static_cast<std::size_t>(-1);
};

namespace detail {

inline void check_paths(const std::vector<GaussianPath>& paths, std::size_t min_paths) {
    if (paths.size() < min_paths) {
        throw InsufficientData("need at least " + std::to_string(min_paths) + " paths, got " +
                               std::to_string(paths.size()));
    }
    const auto& g = paths.front().grid;
    for (const auto& p : paths) {
        if (p.grid.n != g.n || p.grid.dt != g.dt || p.values.size() != g.n) {
            throw InsufficientData("paths must share one grid");
        }
    }
}

/// Sum of squared increments at a lag (in steps) over the paths [p0, p1).
inline double sum_sq_increments(const std::vector<GaussianPath>& paths, std::size_t p0, std::size_t p1,
                                std::size_t lag, std::size_t first, std::size_t last, std::size_t& count) {
    double s = 0;
    count = 0;
    for (std::size_t p = p0; p < p1; ++p) {
        const auto& v = paths[p].values;
        const std::size_t end = std::min(last, v.size());
        for (std::size_t i = first; i + lag < end; ++i) {
            double d = v[i + lag] - v[i];
            s += d * d;
            ++count;
        }
    }
    return s;
}

}  // namespace detail

/// Empirical variogram at the given lags (grid steps). The log-log slope is
/// fitted over the smallest decade of lags; its standard error comes from the
/// spread of the slopes fitted on disjoint groups of paths.
inline VariogramEstimate variogram(const std::vector<GaussianPath>& paths, const std::vector<std::size_t>& lag_steps,
                                   const VariogramOptions& opt = {}) {
    detail::check_paths(paths, opt.min_paths);
    if (lag_steps.empty()) {
        throw InsufficientData("variogram: empty lag set");
    }
    for (std::size_t i = 0; i < lag_steps.size(); ++i) {
        if (lag_steps[i] == 0 || (i > 0 && lag_steps[i] <= lag_steps[i - 1])) {
            throw InsufficientData("variogram: lags must be positive and strictly increasing");
        }
    }
    const auto& grid = paths.front().grid;
    const std::size_t n = grid.n;
    const std::size_t first = opt.window_first;
    const std::size_t last = std::min(opt.window_last, n);
    if (lag_steps.back() + first >= last) {
        throw InsufficientData("variogram: largest lag does not fit in the grid window");
    }
    // Smallest decade of lags.
    std::vector<std::size_t> fit_idx;
    for (std::size_t i = 0; i < lag_steps.size(); ++i) {
        if (lag_steps[i] <= 10 * lag_steps.front()) {
            fit_idx.push_back(i);
        }
    }
    if (fit_idx.size() < opt.min_fit_points) {
        throw InsufficientData("variogram: the smallest decade holds fewer than " +
                               std::to_string(opt.min_fit_points) + " lags");
    }
    VariogramEstimate est;
    for (std::size_t lag : lag_steps) {
        std::size_t count;
        double s = detail::sum_sq_increments(paths, 0, paths.size(), lag, first, last, count);
        est.lags.push_back(static_cast<double>(lag) * grid.dt);
        est.gamma_hat.push_back(s / static_cast<double>(count));
    }
    auto fit_on = [&](const std::vector<double>& gamma) {
        std::vector<double> lx, ly;
        for (std::size_t i : fit_idx) {
            lx.push_back(est.lags[i]);
            ly.push_back(gamma[i]);
        }
        return fit_loglog_slope(lx, ly);
    };
    est.slope = fit_on(est.gamma_hat);
    est.fit_points = fit_idx.size();

    const std::size_t groups = std::min(opt.groups, paths.size());
    if (groups >= 2) {
        std::vector<double> slopes;
        for (std::size_t gi = 0; gi < groups; ++gi) {
            std::size_t p0 = gi * paths.size() / groups;
            std::size_t p1 = (gi + 1) * paths.size() / groups;
            std::vector<double> gamma(lag_steps.size());
            for (std::size_t i : fit_idx) {
                std::size_t count;
                double s = detail::sum_sq_increments(paths, p0, p1, lag_steps[i], first, last, count);
                gamma[i] = s / static_cast<double>(count);
            }
            slopes.push_back(fit_on(gamma));
        }
        double m = 0;
        for (double s : slopes) {
            m += s;
        }
        m /= static_cast<double>(slopes.size());
        double v = 0;
        for (double s : slopes) {
            v += (s - m) * (s - m);
        }
        v /= static_cast<double>(slopes.size() - 1);
        est.slope_stderr = std::sqrt(v / static_cast<double>(slopes.size()));
    }
    return est;
}

inline std::vector<std::size_t> default_lags(std::size_t count = 10) {
    std::vector<std::size_t> lags(count);
    for (std::size_t i = 0; i < count; ++i) {
        lags[i] = i + 1;
    }
    return lags;
}

struct HurstEstimate {
    double h_hat = 0;
    double std_error = 0;
    bool regime_warning = false;  ///< dt * lambda > 0.01: tempering biases the local law
    std::string warning;
};

/// Local Hurst index from the variogram slope at the smallest lags.
inline HurstEstimate hurst_local(const std::vector<GaussianPath>& paths,
                                 const std::vector<std::size_t>& lag_steps = default_lags(),
                                 const VariogramOptions& opt = {}) {
    auto v = variogram(paths, lag_steps, opt);
    HurstEstimate h{v.slope / 2, v.slope_stderr / 2, false, ""};
    const double dt = paths.front().grid.dt;
    const double lambda = paths.front().process.lambda();
    if (dt * lambda > 0.01) {
        h.regime_warning = true;
        h.warning = "dt*lambda = " + std::to_string(dt * lambda) + " exceeds 0.01; tempering contaminates the local law";
    }
    return h;
}

struct FractalDimension {
    double d_hat;
    double std_error;
    bool regime_warning;
};

/// Graph dimension D = 2 - H.
inline FractalDimension fractal_dimension(const std::vector<GaussianPath>& paths,
                                          const std::vector<std::size_t>& lag_steps = default_lags(),
                                          const VariogramOptions& opt = {}) {
    auto h = hurst_local(paths, lag_steps, opt);
    return {2 - h.h_hat, h.std_error, h.regime_warning};
}

struct WindowedHurst {
    double t_center;
    double h_hat;
    double std_error;
};

/// Sliding-window local Hurst index for multifractional paths. Window width
/// is min(1/(4 lambda dt), n/8) grid points; windows advance by half a width.
inline std::vector<WindowedHurst> hurst_windowed(const std::vector<GaussianPath>& paths, double lambda,
                                                 std::size_t fit_lags = 6, const VariogramOptions& base = {}) {
    detail::check_paths(paths, base.min_paths);
    const auto& g = paths.front().grid;
    if (!(lambda > 0)) {
        throw DomainError("hurst_windowed: lambda must be positive");
    }
    double w_time = 1.0 / (4.0 * lambda * g.dt);
    std::size_t width = static_cast<std::size_t>(std::min(w_time, static_cast<double>(g.n / 8)));
    if (width < fit_lags + 2) {
        throw InsufficientData("hurst_windowed: window of " + std::to_string(width) + " points is too narrow");
    }
    std::vector<WindowedHurst> out;
    const std::size_t step = std::max<std::size_t>(1, width / 2);
    for (std::size_t first = 0; first + width <= g.n; first += step) {
        VariogramOptions opt = base;
        opt.window_first = first;
        opt.window_last = first + width;
        opt.min_fit_points = fit_lags;
        auto v = variogram(paths, default_lags(fit_lags), opt);
        double tc = g.at(first) + 0.5 * static_cast<double>(width - 1) * g.dt;
        out.push_back({tc, v.slope / 2, v.slope_stderr / 2});
    }
    return out;
}

struct CorrelationEstimate {
    double tau;
    double r_hat;
    double std_error;
};

/// Empirical correlation R(t, t + tau) across paths (the processes are
/// centred, so moments are taken about zero).
inline std::vector<CorrelationEstimate> lrd_plateau_empirical(const std::vector<GaussianPath>& paths, double t,
                                                              const std::vector<double>& tau_grid,
                                                              std::size_t min_paths = 100) {
    detail::check_paths(paths, min_paths);
    const auto& g = paths.front().grid;
    auto index_of = [&](double time) {
        double k = (time - g.t0) / g.dt;
        double r = std::round(k);
        if (r < 0 || r >= static_cast<double>(g.n) || std::abs(k - r) > 1e-6) {
            throw InsufficientData("lrd_plateau_empirical: time " + std::to_string(time) + " is not on the grid");
        }
        return static_cast<std::size_t>(r);
    };
    const std::size_t i = index_of(t);
    const double N = static_cast<double>(paths.size());
    std::vector<CorrelationEstimate> out;
    for (double tau : tau_grid) {
        const std::size_t j = index_of(t + tau);
        double sxy = 0, sxx = 0, syy = 0;
        for (const auto& p : paths) {
            sxy += p.values[i] * p.values[j];
            sxx += p.values[i] * p.values[i];
            syy += p.values[j] * p.values[j];
        }
        if (!(sxx > 0) || !(syy > 0)) {
            throw InsufficientData("lrd_plateau_empirical: zero variance at t or t + tau");
        }
        double r = sxy / std::sqrt(sxx * syy);
        out.push_back({tau, r, (1 - r * r) / std::sqrt(N)});
    }
    return out;
}

/// Correlation at a lag (grid steps) pooled over all time origins, for
/// stationary paths.
inline double stationary_correlation(const std::vector<GaussianPath>& paths, std::size_t lag_steps) {
    detail::check_paths(paths, 1);
    double sxy = 0, sxx = 0, syy = 0;
    for (const auto& p : paths) {
        const auto& v = p.values;
        for (std::size_t i = 0; i + lag_steps < v.size(); ++i) {
            sxy += v[i] * v[i + lag_steps];
            sxx += v[i] * v[i];
            syy += v[i + lag_steps] * v[i + lag_steps];
        }
    }
    if (!(sxx > 0) || !(syy > 0)) {
        throw InsufficientData("stationary_correlation: lag does not fit or paths are zero");
    }
    return sxy / std::sqrt(sxx * syy);
}

struct MomentEstimate {
    double value;
    double std_error;
};

namespace detail {

template <class Rows, class Get>
MomentEstimate mean_product(const Rows& rows, Get get, std::size_t i, std::size_t j) {
    const std::size_t n = rows.size();
    if (n < 2) {
        throw InsufficientData("empirical_cov: need at least two samples");
    }
    double m = 0;
    for (const auto& r : rows) {
        m += get(r)[i] * get(r)[j];
    }
    m /= static_cast<double>(n);
    double v = 0;
    for (const auto& r : rows) {
        double d = get(r)[i] * get(r)[j] - m;
        v += d * d;
    }
    v /= static_cast<double>(n - 1);
    return {m, std::sqrt(v / static_cast<double>(n))};
}

}  // namespace detail

/// Mean of X_i X_j over samples with its Monte Carlo standard error.
inline MomentEstimate empirical_cov(const std::vector<std::vector<double>>& samples, std::size_t i, std::size_t j) {
    return detail::mean_product(samples, [](const std::vector<double>& r) -> const std::vector<double>& { return r; },
                                i, j);
}

inline MomentEstimate empirical_cov(const std::vector<GaussianPath>& paths, std::size_t i, std::size_t j) {
    return detail::mean_product(paths, [](const GaussianPath& p) -> const std::vector<double>& { return p.values; },
                                i, j);
}

inline MomentEstimate empirical_mean(const std::vector<GaussianPath>& paths, std::size_t i) {
    const std::size_t n = paths.size();
    if (n < 2) {
        throw InsufficientData("empirical_mean: need at least two paths");
    }
    double m = 0;
    for (const auto& p : paths) {
        m += p.values[i];
    }
    m /= static_cast<double>(n);
    double v = 0;
    for (const auto& p : paths) {
        v += (p.values[i] - m) * (p.values[i] - m);
    }
    v /= static_cast<double>(n - 1);
    return {m, std::sqrt(v / static_cast<double>(n))};
}

}  // namespace tplab

#endif
