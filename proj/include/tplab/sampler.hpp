#ifndef TPLAB_SAMPLER_HPP
#define TPLAB_SAMPLER_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "tplab/errors.hpp"
#include "tplab/kernels.hpp"
#include "tplab/parallel.hpp"
#include "tplab/process.hpp"
#include "tplab/rng.hpp"

namespace tplab {

inline constexpr std::size_t kMaxExactPoints = 4096;

struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 1;

    double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }

    void validate() const {
        if (!std::isfinite(t0) || !std::isfinite(dt) || !(dt > 0)) {
            throw DomainError("TimeGrid: dt must be positive and finite");
        }
        if (n < 1) {
            throw DomainError("TimeGrid: need at least one point");
        }
        if (!std::isfinite(at(n - 1))) {
            throw DomainError("TimeGrid: grid exceeds floating range");
        }
    }

    std::vector<double> times() const {
        std::vector<double> t(n);
        for (std::size_t i = 0; i < n; ++i) {
            t[i] = at(i);
        }
        return t;
    }

    /// Index of t = 0 if it lies on the grid.
    std::optional<std::size_t> zero_index() const {
        double k = -t0 / dt;
        double r = std::round(k);
        if (r >= 0 && r < static_cast<double>(n) && std::abs(at(static_cast<std::size_t>(r))) <= 1e-12 * dt) {
            return static_cast<std::size_t>(r);
        }
        return std::nullopt;
    }
};

enum class SampleMethod { cholesky, spectral_increments };

inline std::string method_name(SampleMethod m) {
    return m == SampleMethod::cholesky ? "cholesky" : "spectral_increments";
}

struct GaussianPath {
    TimeGrid grid;
    std::vector<double> values;
    ProcessDescriptor process;
    std::uint64_t seed = 0;         ///< substream seed the values were drawn from
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
    SampleMethod method = SampleMethod::cholesky;
    double jitter = 0.0;            ///< diagonal jitter added before factorization
    std::vector<std::string> warnings;
};

/// Gram matrix of the process on the grid, built from lag tables where the
/// covariance structure allows it.
inline Eigen::MatrixXd gram_matrix(const ProcessDescriptor& d, const TimeGrid& g) {
    d.validate();
    g.validate();
    const std::size_t n = g.n;
    Eigen::MatrixXd G(n, n);
    auto lag_table = [&](auto&& kernel) {
        std::vector<double> L(n);
        parallel_for(n, [&](std::size_t k) { L[k] = kernel(static_cast<double>(k) * g.dt); });
        return L;
    };
    auto point_table = [&](auto&& kernel) {
        std::vector<double> P(n);
        parallel_for(n, [&](std::size_t i) { P[i] = kernel(g.at(i)); });
        return P;
    };
    auto reduced_from_stationary = [&](auto&& kernel, double weight2) {
        auto L = lag_table(kernel);
        auto P = point_table(kernel);
        const double s2 = kernel(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t lag = i > j ? i - j : j - i;
                G(i, j) += weight2 * (L[lag] - P[i] - P[j] + s2);
            }
        }
    };
    switch (d.family) {
        case Family::fou:
        case Family::tfgn: {
            auto L = lag_table([&](double tau) { return d.stationary_kernel(tau); });
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    G(i, j) = L[i > j ? i - j : j - i];
                }
            }
            break;
        }
        case Family::tfbm:
        case Family::tfbm2:
            G.setZero();
            reduced_from_stationary([&](double tau) { return d.stationary_kernel(tau); }, 1.0);
            break;
        case Family::mixed:
            G.setZero();
            for (const auto& c : d.mixture.components) {
                reduced_from_stationary([&](double tau) { return fou_cov(c.params, tau); }, c.weight * c.weight);
            }
            break;
        case Family::tmbm: {
            const auto times = g.times();
            parallel_for(n, [&](std::size_t i) {
                for (std::size_t j = 0; j <= i; ++j) {
                    G(i, j) = i == j ? tmbm_var(*d.profile, d.single.lambda, times[i])
                                     : tmbm_cov(*d.profile, d.single.lambda, times[i], times[j]);
                }
            });
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    G(i, j) = G(j, i);
                }
            }
            break;
        }
    }
    if (d.reduced()) {
        if (auto z = g.zero_index()) {
            G.row(*z).setZero();
            G.col(*z).setZero();
        }
    }
    return G;
}

/// Cholesky factor of a Gram matrix over its nonzero-variance rows.
struct GramFactor {
    Eigen::MatrixXd lower;
    std::vector<std::size_t> active;
    std::size_t n = 0;
    double jitter = 0.0;
};

inline GramFactor factorize_gram(const Eigen::MatrixXd& G) {
    const std::size_t n = static_cast<std::size_t>(G.rows());
    GramFactor f;
    f.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (G(i, i) > 0) {
            f.active.push_back(i);
        } else if (G(i, i) < 0) {
            throw NotPSD("Gram matrix has a negative diagonal entry at row " + std::to_string(i));
        }
    }
    const std::size_t m = f.active.size();
    if (m == 0) {
        return f;
    }
    Eigen::MatrixXd A(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            A(i, j) = G(f.active[i], f.active[j]);
        }
    }
    const double mean_diag = A.diagonal().mean();
    const double cap = 1e-10 * A.trace() / static_cast<double>(m);
    double jitter = 0.0;
    while (true) {
        Eigen::LLT<Eigen::MatrixXd> llt(A + jitter * Eigen::MatrixXd::Identity(m, m));
        if (llt.info() == Eigen::Success) {
            f.lower = llt.matrixL();
            f.jitter = jitter;
            return f;
        }
        jitter = jitter == 0.0 ? 1e-14 * mean_diag : jitter * 10;
        if (jitter > cap * (1 + 1e-12)) {
            throw NotPSD("Cholesky failed even with diagonal jitter " + std::to_string(cap));
        }
    }
}

/// Exact sampler: factorizes the Gram matrix once and draws paths from it.
class ExactSampler {
public:
    ExactSampler(ProcessDescriptor d, TimeGrid g) : process_(std::move(d)), grid_(g) {
        grid_.validate();
        if (grid_.n > kMaxExactPoints) {
            throw DomainError("sample_exact: at most 4096 grid points are supported");
        }
        factor_ = factorize_gram(gram_matrix(process_, grid_));
    }

    std::vector<double> draw(std::uint64_t seed) const {
        NormalStream rng(seed);
        const std::size_t m = factor_.active.size();
        Eigen::VectorXd z(m);
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = rng();
        }
        Eigen::VectorXd x = factor_.lower.triangularView<Eigen::Lower>() * z;
        std::vector<double> values(grid_.n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            values[factor_.active[i]] = x[i];
        }
        return values;
    }

    GaussianPath path(std::uint64_t master, std::uint64_t index) const {
        GaussianPath p;
        p.grid = grid_;
        p.process = process_;
        p.master_seed = master;
        p.path_index = index;
        p.seed = derive_substream_seed(master, index);
        p.method = SampleMethod::cholesky;
        p.jitter = factor_.jitter;
        p.values = draw(p.seed);
        return p;
    }

    double jitter() const { return factor_.jitter; }

private:
    ProcessDescriptor process_;
    TimeGrid grid_;
    GramFactor factor_;
};

/// n_paths exact draws; path i uses derive_substream_seed(seed, i).
inline std::vector<GaussianPath> sample_exact(const ProcessDescriptor& d, const TimeGrid& g, std::uint64_t seed,
                                              std::size_t n_paths) {
    ExactSampler sampler(d, g);
    std::vector<GaussianPath> out(n_paths);
    parallel_for(n_paths, [&](std::size_t i) { out[i] = sampler.path(seed, i); });
    return out;
}

/// Circulant-embedding sampler for TFBM on a grid starting at 0: the
/// stationary increments are synthesized and cumulatively summed.
class TfbmSpectralSampler {
public:
    TfbmSpectralSampler(FracOUParams p, TimeGrid g) : params_(p), grid_(g) {
        p.validate();
        grid_.validate();
        if (grid_.t0 != 0.0) {
            throw DomainError("sample_tfbm_spectral: grid must start at t0 = 0");
        }
        const std::size_t m = grid_.n - 1;  // number of increments
        if (m <= 1) {
            embedding_ok_ = m == 0;
            if (m == 1) {
                single_sd_ = std::sqrt(tfbm_var(p, grid_.dt));
                embedding_ok_ = true;
            }
            return;
        }
        std::size_t M = 1;
        while (M < 2 * (m - 1)) {
            M <<= 1;
        }
        size_ = M;
        std::vector<double> r(M / 2 + 1);
        parallel_for(r.size(), [&](std::size_t j) {
            r[j] = tfbm_increment_cov(params_, grid_.dt, static_cast<double>(j) * grid_.dt);
        });
        std::vector<std::complex<double>> c(M), ev;
        for (std::size_t j = 0; j <= M / 2; ++j) {
            c[j] = r[j];
        }
        for (std::size_t j = M / 2 + 1; j < M; ++j) {
            c[j] = r[M - j];
        }
        Eigen::FFT<double> fft;
        fft.fwd(ev, c);
        eigen_.resize(M);
        double maxev = 0;
        double minev = 0;
        for (std::size_t j = 0; j < M; ++j) {
            eigen_[j] = ev[j].real();
            maxev = std::max(maxev, eigen_[j]);
            minev = std::min(minev, eigen_[j]);
        }
        if (minev < -1e-8 * maxev) {
            embedding_ok_ = false;
            warnings_.push_back("circulant embedding not nonnegative definite (min eigenvalue " +
                                std::to_string(minev) + "); fell back to exact sampling");
            fallback_.emplace(ProcessDescriptor::tfbm(params_), grid_);
            return;
        }
        if (minev < 0) {
            warnings_.push_back("clamped small negative embedding eigenvalues (min " + std::to_string(minev) + ")");
        }
        for (auto& e : eigen_) {
            e = std::sqrt(std::max(e, 0.0) / static_cast<double>(M));
        }
        embedding_ok_ = true;
    }

    bool embedding_ok() const { return embedding_ok_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::vector<double> draw(std::uint64_t seed) const {
        if (fallback_) {
            return fallback_->draw(seed);
        }
        std::vector<double> values(grid_.n, 0.0);
        NormalStream rng(seed);
        if (grid_.n == 2) {
            values[1] = single_sd_ * rng();
            return values;
        }
        if (grid_.n < 2) {
            return values;
        }
        std::vector<std::complex<double>> w(size_), y;
        for (std::size_t j = 0; j < size_; ++j) {
            double re = rng();
            double im = rng();
            w[j] = std::complex<double>(re, im) * eigen_[j];
        }
        Eigen::FFT<double> fft;
        fft.fwd(y, w);
        double acc = 0;
        for (std::size_t i = 1; i < grid_.n; ++i) {
            acc += y[i - 1].real();
            values[i] = acc;
        }
        return values;
    }

    GaussianPath path(std::uint64_t seed) const {
        GaussianPath p;
        p.grid = grid_;
        p.process = ProcessDescriptor::tfbm(params_);
        p.seed = seed;
        p.master_seed = seed;
        p.method = fallback_ ? SampleMethod::cholesky : SampleMethod::spectral_increments;
        p.jitter = fallback_ ? fallback_->jitter() : 0.0;
        p.warnings = warnings_;
        p.values = draw(seed);
        return p;
    }

    GaussianPath path(std::uint64_t master, std::uint64_t index) const {
        GaussianPath p = path(derive_substream_seed(master, index));
        p.master_seed = master;
        p.path_index = index;
        return p;
    }

private:
    FracOUParams params_;
    TimeGrid grid_;
    std::size_t size_ = 0;
    std::vector<double> eigen_;
    bool embedding_ok_ = false;
    double single_sd_ = 0;
    std::vector<std::string> warnings_;
    std::optional<ExactSampler> fallback_;
};

/// One TFBM path by circulant embedding of the increments, drawn from `seed`.
inline GaussianPath sample_tfbm_spectral(const FracOUParams& p, const TimeGrid& g, std::uint64_t seed) {
    return TfbmSpectralSampler(p, g).path(seed);
}

/// n_paths spectral draws; path i uses derive_substream_seed(seed, i).
inline std::vector<GaussianPath> sample_tfbm_spectral_paths(const FracOUParams& p, const TimeGrid& g,
                                                            std::uint64_t seed, std::size_t n_paths) {
    TfbmSpectralSampler sampler(p, g);
    std::vector<GaussianPath> out(n_paths);
    parallel_for(n_paths, [&](std::size_t i) { out[i] = sampler.path(seed, i); });
    return out;
}

}  // namespace tplab

#endif
