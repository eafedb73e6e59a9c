#ifndef TPLAB_KERNELS_HPP
#define TPLAB_KERNELS_HPP

// Covariances, variances, spectral densities and asymptotic laws of the
// tempered fractional family. Spectral densities carry the 1/(2 pi) factor,
// so every stationary covariance is (1/pi) * int_0^inf g(k) cos(k tau) dk
// with g the density without that factor.

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "tplab/errors.hpp"
#include "tplab/params.hpp"
#include "tplab/quad.hpp"
#include "tplab/specfun.hpp"

namespace tplab {

namespace detail {

/// Gamma(2a-1) / (Gamma(a)^2 (2 lambda)^(2a-1)).
inline double fou_var_raw(double a, double lambda) {
    return std::exp(lgamma_fn(2 * a - 1) - 2 * lgamma_fn(a) - (2 * a - 1) * std::log(2 * lambda));
}

/// (1/(sqrt(pi) Gamma(a))) (|tau|/(2 lambda))^(a-1/2) K_{a-1/2}(lambda |tau|).
inline double fou_cov_raw(double a, double lambda, double tau) {
    tau = std::abs(tau);
    if (tau == 0) {
        return fou_var_raw(a, lambda);
    }
    const double x = lambda * tau;
    const double nu = a - 0.5;
    const double logpre = -0.5 * std::log(std::numbers::pi) - lgamma_fn(a) + nu * std::log(tau / (2 * lambda));
    if (x < 0.1) {
        double v = std::exp(logpre) * bessel_k_series(nu, x);
        return std::isfinite(v) ? v : fou_var_raw(a, lambda);
    }
    const double scaled = bessel_k_scaled_integral(nu, x).value;
    return std::exp(logpre + std::log(scaled) - x);
}

/// sigma^2 - C(tau). At small lambda tau the direct difference cancels, so
/// use the ascending series of the normalized x^nu K_nu(x):
/// 1 - C/sigma^2 = G y^nu sum y^k/(k! (1+nu)_k) - sum_{k>=1} y^k/(k! (1-nu)_k),
/// y = (x/2)^2, G = Gamma(1-nu)/Gamma(1+nu). Both sums blow up near integer nu.
inline double fou_drop_raw(double a, double lambda, double tau) {
    tau = std::abs(tau);
    if (tau == 0) {
        return 0.0;
    }
    const double nu = a - 0.5, x = lambda * tau;
    const double var = fou_var_raw(a, lambda);
    if (x >= 0.5 || (nu > 0.5 && std::abs(nu - std::round(nu)) < 1e-3)) {
        return var - fou_cov_raw(a, lambda, tau);
    }
    const double y = 0.25 * x * x;
    double s1 = 1, t1 = 1, s2 = 0, t2 = 1;
    for (int k = 1; k < 40; ++k) {
        t1 *= y / (k * (k + nu));
        t2 *= y / (k * (k - nu));
        s1 += t1;
        s2 += t2;
        if (std::abs(t1) <= 1e-17 * s1 && std::abs(t2) <= 1e-17 * std::abs(s2)) {
            break;
        }
    }
    const double g = std::exp(lgamma_fn(1 - nu) - lgamma_fn(1 + nu)) * (std::tgamma(1 - nu) < 0 ? -1 : 1);
    return var * (g * std::pow(y, nu) * s1 - s2);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FOU

inline double fou_var(const FracOUParams& p) {
    p.validate();
    return detail::fou_var_raw(p.alpha, p.lambda);
}

inline double fou_cov(const FracOUParams& p, double tau) {
    p.validate();
    return detail::fou_cov_raw(p.alpha, p.lambda, tau);
}

/// (1/2pi) (k^2 + lambda^2)^(-alpha).
inline double fou_spectral(const FracOUParams& p, double k) {
    p.validate();
    return std::pow(k * k + p.lambda * p.lambda, -p.alpha) / (2 * std::numbers::pi);
}

struct LocalExpansion {
    double constant_term;
    double power_term_coeff;
    double exponent;
};

/// C(tau) ~ sigma^2 + |tau|^(2 alpha - 1) / (2 Gamma(2 alpha) cos(alpha pi)) as tau -> 0.
inline LocalExpansion fou_local_expansion(const FracOUParams& p) {
    p.require_unit_hurst("fou_local_expansion");
    if (p.alpha == 1.0) {
        throw DegenerateExpansion("fou_local_expansion: alpha = 1 changes the expansion; use the OU closed form");
    }
    return {fou_var(p), 1.0 / (2 * gamma_fn(2 * p.alpha) * std::cos(p.alpha * std::numbers::pi)), 2 * p.alpha - 1};
}

/// Factor that converts this library's 1/Gamma(alpha) normalization to the
/// Meerschaert-Sabzikar one: multiply a covariance by Gamma(H + 1/2)^2.
inline double meerschaert_sabzikar_factor(const FracOUParams& p) {
    p.validate();
    double g = gamma_fn(p.alpha);
    return g * g;
}

// ---------------------------------------------------------------------------
// TFBM (reduced FOU)

inline double tfbm_cov(const FracOUParams& p, double t, double s) {
    p.validate();
    const double a = p.alpha, l = p.lambda;
    return detail::fou_drop_raw(a, l, t) + detail::fou_drop_raw(a, l, s) - detail::fou_drop_raw(a, l, t - s);
}

inline double tfbm_var(const FracOUParams& p, double t) {
    p.validate();
    if (t == 0) {
        return 0.0;
    }
    return 2 * detail::fou_drop_raw(p.alpha, p.lambda, t);
}

/// c_t with C(t, s) = (c_t |t|^2H + c_s |s|^2H - c_{t-s} |t-s|^2H) / 2,
/// i.e. c_t = (2 sigma^2 - 2 C(t)) / |t|^2H.
inline double tfbm_ct_coefficient(const FracOUParams& p, double t) {
    p.require_unit_hurst("tfbm_ct_coefficient");
    if (t == 0) {
        throw DomainError("tfbm_ct_coefficient: t must be nonzero");
    }
    return 2 * detail::fou_drop_raw(p.alpha, p.lambda, t) * std::pow(std::abs(t), -2 * p.hurst());
}

/// TFBM covariance assembled from the c_t coefficients.
inline double tfbm_cov_ct_route(const FracOUParams& p, double t, double s) {
    const double h2 = 2 * p.hurst();
    auto term = [&](double u) { return u == 0 ? 0.0 : tfbm_ct_coefficient(p, u) * std::pow(std::abs(u), h2); };
    return 0.5 * (term(t) + term(s) - term(t - s));
}

/// Covariance of the increments of lag tau at separation d = t - s.
inline double tfbm_increment_cov(const FracOUParams& p, double lag_tau, double d) {
    p.validate();
    if (!(lag_tau > 0)) {
        throw DomainError("tfbm_increment_cov: lag must be positive");
    }
    const double a = p.alpha, l = p.lambda;
    return 2 * detail::fou_cov_raw(a, l, d) - detail::fou_cov_raw(a, l, d + lag_tau) -
           detail::fou_cov_raw(a, l, d - lag_tau);
}

/// (2 - 2 cos(k tau)) (k^2 + lambda^2)^(-alpha) / (2 pi).
inline double tfbm_increment_spectral(const FracOUParams& p, double lag_tau, double k) {
    p.validate();
    return (2 - 2 * std::cos(k * lag_tau)) * std::pow(k * k + p.lambda * p.lambda, -p.alpha) /
           (2 * std::numbers::pi);
}

/// Limit of the correlation R(t, t + tau) as tau -> inf:
/// (1/2) sqrt(var(t) / (2 sigma^2)).
inline double tfbm_lrd_plateau(const FracOUParams& p, double t) {
    p.validate();
    if (!(t > 0)) {
        throw DomainError("tfbm_lrd_plateau: t must be positive");
    }
    return 0.5 * std::sqrt(tfbm_var(p, t) / (2 * fou_var(p)));
}

/// Exact correlation of TFBM between times t and t + tau.
inline double tfbm_correlation(const FracOUParams& p, double t, double tau) {
    return tfbm_cov(p, t, t + tau) / std::sqrt(tfbm_var(p, t) * tfbm_var(p, t + tau));
}

// ---------------------------------------------------------------------------
// Mixed TFBM

inline double mixed_cov(const MixtureParams& m, double t, double s) {
    m.validate();
    double sum = 0;
    for (const auto& c : m.components) {
        sum += c.weight * c.weight * tfbm_cov(c.params, t, s);
    }
    return sum;
}

inline double mixed_var(const MixtureParams& m, double t) {
    m.validate();
    double sum = 0;
    for (const auto& c : m.components) {
        sum += c.weight * c.weight * tfbm_var(c.params, t);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Two-index processes

enum class TwoIndexVariant { X, Y };

/// Y: (1/2pi) (|k|^2beta + lambda^2beta)^(-alpha).
/// X: (1/2pi) (|k|^2beta + 2 lambda^beta |k|^beta cos(alpha pi / 2) + lambda^2beta)^(-alpha).
inline double twoindex_spectral(const TwoIndexParams& q, double k, TwoIndexVariant variant = TwoIndexVariant::Y) {
    q.validate();
    const double ak = std::abs(k);
    const double kb = std::pow(ak, q.beta);
    const double lb = std::pow(q.lambda, q.beta);
    double base = kb * kb + lb * lb;
    if (variant == TwoIndexVariant::X) {
        base += 2 * lb * kb * std::cos(q.alpha * std::numbers::pi / 2);
    }
    return std::pow(base, -q.alpha) / (2 * std::numbers::pi);
}

/// Gamma(1/2beta) Gamma(alpha - 1/2beta) / (2 pi beta Gamma(alpha)) lambda^(1 - 2 alpha beta).
inline double twoindex_var(const TwoIndexParams& q) {
    q.validate();
    const double ib = 1 / (2 * q.beta);
    if (is_nonpositive_integer(q.alpha - ib)) {
        throw DomainError("twoindex_var: alpha - 1/(2 beta) hits a gamma pole");
    }
    return gamma_fn(ib) * gamma_fn(q.alpha - ib) / (2 * std::numbers::pi * q.beta * gamma_fn(q.alpha)) *
           std::pow(q.lambda, 1 - 2 * q.alpha * q.beta);
}

namespace detail {

inline std::map<std::array<double, 4>, quad::QuadResult<double>>& twoindex_cache() {
    thread_local std::map<std::array<double, 4>, quad::QuadResult<double>> cache;
    return cache;
}

}  // namespace detail

/// Stationary covariance of the Y-variant by cosine transform of its spectral
/// density; results are memoized per thread.
inline quad::QuadResult<double> twoindex_cov(const TwoIndexParams& q, double tau) {
    q.validate();
    tau = std::abs(tau);
    const double var = twoindex_var(q);
    if (tau == 0) {
        return {var, 0.0, 0};
    }
    auto& cache = detail::twoindex_cache();
    const std::array<double, 4> key{q.alpha, q.beta, q.lambda, tau};
    if (auto it = cache.find(key); it != cache.end()) {
        return it->second;
    }
    const double lb2 = std::pow(q.lambda, 2 * q.beta);
    auto g = [&](double k) { return std::pow(std::pow(k, 2 * q.beta) + lb2, -q.alpha); };
    quad::CosTransformOptions<double> opt;
    opt.tol = 1e-12 * std::numbers::pi * var;
    opt.decay_exponent = 2 * q.alpha * q.beta;
    auto r = quad::fourier_cos_halfline<double>(g, tau, opt);
    quad::QuadResult<double> out{r.value / std::numbers::pi, r.abs_error_estimate / std::numbers::pi, r.subdivisions};
    if (cache.size() > 200000) {
        cache.clear();
    }
    cache.emplace(key, out);
    return out;
}

/// Covariance of the reduced two-index process B(t) = Y(t) - Y(0).
inline double twoindex_reduced_cov(const TwoIndexParams& q, double t, double s) {
    return twoindex_cov(q, t - s).value - twoindex_cov(q, t).value - twoindex_cov(q, s).value + twoindex_var(q);
}

/// E (Y(t) - Y(0))^2 = 2 (sigma^2 - C(t)).
inline double twoindex_increment_var(const TwoIndexParams& q, double t) {
    if (t == 0) {
        return 0.0;
    }
    return 2 * (twoindex_var(q) - twoindex_cov(q, t).value);
}

struct TailSeries {
    double value;
    int terms_used;
    bool truncated;  ///< terms stopped decreasing before n_terms were summed
};

/// Large-lag expansion of twoindex_cov, summed up to n_terms or up to the
/// smallest term of the asymptotic series.
inline TailSeries twoindex_cov_tail_series(const TwoIndexParams& q, double tau, int n_terms) {
    q.validate();
    if (!(q.beta < 1)) {
        throw DomainError("twoindex_cov_tail_series: requires beta < 1");
    }
    tau = std::abs(tau);
    if (!(q.lambda * tau >= 5)) {
        throw DomainError("twoindex_cov_tail_series: requires lambda * tau >= 5");
    }
    if (n_terms < 1) {
        throw DomainError("twoindex_cov_tail_series: n_terms must be positive");
    }
    const double a = q.alpha, b = q.beta;
    const double lga = lgamma_fn(a);
    auto log_envelope = [&](int j) {
        return -2 * b * (a + j) * std::log(q.lambda) + lgamma_fn(a + j) + lgamma_fn(1 + 2 * b * j) - lga -
               lgamma_fn(j + 1.0) - (2 * b * j + 1) * std::log(tau);
    };
    double sum = 0;
    int used = 0;
    bool truncated = false;
    double prev_env = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n_terms; ++j) {
        double env = log_envelope(j);
        if (env > prev_env) {
            truncated = true;
            break;
        }
        prev_env = env;
        double sign = (j % 2 == 1) ? 1.0 : -1.0;
        sum += sign * std::exp(env) * std::sin(b * j * std::numbers::pi) / std::numbers::pi;
        used = j;
    }
    return {sum, used, truncated};
}

struct PowerLaw {
    double leading_coeff;
    double exponent;
    double value;  ///< leading_coeff * |t|^exponent
};

/// c(s) = (4/pi) int_0^inf k^-s sin^2(k/2) dk, for 1 < s < 3.
inline double smalltime_constant(double s) { return quad::power_sine_squared_integral(s).value; }

/// Small-t law of the two-index increment variance: c(2 alpha beta) |t|^(2 alpha beta - 1).
inline PowerLaw twoindex_smalltime_incvar(const TwoIndexParams& q, double t) {
    q.validate();
    const double ab = q.product();
    if (!(ab > 0.5 && ab < 1.5)) {
        throw DomainError("twoindex_smalltime_incvar: requires 1/2 < alpha*beta < 3/2");
    }
    if (ab == 1.0) {
        throw DegenerateExpansion("twoindex_smalltime_incvar: alpha*beta = 1; use twoindex_increment_var");
    }
    const double c = smalltime_constant(2 * ab);
    const double e = 2 * ab - 1;
    return {c, e, c * std::pow(std::abs(t), e)};
}

// ---------------------------------------------------------------------------
// Multifractional processes

enum class MouRoute { kummer, whittaker };

/// Covariance of the Weyl-type multifractional OU process between times t
/// and s (t != s), through Kummer U or Whittaker W.
inline double tmbm_mou_cov(const HurstProfile& h, double lambda, double t, double s, MouRoute route) {
    if (!(lambda > 0)) {
        throw DomainError("tmbm_mou_cov: lambda must be positive");
    }
    if (t == s) {
        throw DomainError("tmbm_mou_cov: t = s is not covered by these representations");
    }
    if (t < s) {
        std::swap(t, s);
    }
    const double at = h(t), as = h(s);
    const double ap = 0.5 * (at + as);
    const double am = 0.5 * (at - as);
    const double d = t - s;
    const double z = 2 * lambda * d;
    if (route == MouRoute::kummer) {
        const double u = kummer_u(as, 2 * ap, z).value;
        return std::exp(-lambda * d + (2 * ap - 1) * std::log(d) - lgamma_fn(at)) * u;
    }
    const double w = whittaker_w(am, 0.5 - ap, z).value;
    return std::exp((ap - 1) * std::log(d) - lgamma_fn(at) - ap * std::log(2 * lambda)) * w;
}

/// Covariance of the reduced Riesz-type multifractional process; all four
/// terms are taken at the averaged index alpha_+(s, t).
inline double tmbm_cov(const HurstProfile& h, double lambda, double t, double s) {
    if (!(lambda > 0)) {
        throw DomainError("tmbm_cov: lambda must be positive");
    }
    if (t == 0 || s == 0) {
        return 0.0;
    }
    const double ap = h.alpha_plus(t, s);
    return detail::fou_cov_raw(ap, lambda, t - s) - detail::fou_cov_raw(ap, lambda, t) -
           detail::fou_cov_raw(ap, lambda, s) + detail::fou_var_raw(ap, lambda);
}

inline double tmbm_var(const HurstProfile& h, double lambda, double t) {
    if (!(lambda > 0)) {
        throw DomainError("tmbm_var: lambda must be positive");
    }
    if (t == 0) {
        return 0.0;
    }
    const double a = h(t);
    return 2 * (detail::fou_var_raw(a, lambda) - detail::fou_cov_raw(a, lambda, t));
}

/// TMBM covariance from the c_t coefficients at H_+ = alpha_+ - 1/2.
inline double tmbm_cov_ct_route(const HurstProfile& h, double lambda, double t, double s) {
    FracOUParams p{h.alpha_plus(t, s), lambda};
    return tfbm_cov_ct_route(p, t, s);
}

// ---------------------------------------------------------------------------
// Tempered fractional Gaussian noise

/// C^{mu,nu}(tau) = e^{-lambda tau} tau^{mu+nu-1} U(nu, mu+nu, 2 lambda tau) / Gamma(mu).
inline double tfgn_cross_cov(double mu, double nu, double lambda, double tau) {
    if (!(mu > 0) || !(nu > 0)) {
        throw DomainError("tfgn_cross_cov: mu and nu must be positive");
    }
    if (!(lambda > 0)) {
        throw DomainError("tfgn_cross_cov: lambda must be positive");
    }
    if (!(tau > 0)) {
        throw DomainError("tfgn_cross_cov: tau must be positive");
    }
    const double u = kummer_u(nu, mu + nu, 2 * lambda * tau).value;
    return std::exp(-lambda * tau + (mu + nu - 1) * std::log(tau) - lgamma_fn(mu)) * u;
}

/// tau -> 0 limit of C^{mu,nu}, finite when mu + nu > 1.
inline double tfgn_cross_cov_at_zero(double mu, double nu, double lambda) {
    if (!(mu + nu > 1)) {
        throw DomainError("tfgn_cross_cov_at_zero: requires mu + nu > 1");
    }
    return std::exp(lgamma_fn(mu + nu - 1) - lgamma_fn(mu) - lgamma_fn(nu) - (mu + nu - 1) * std::log(2 * lambda));
}

/// TFGN covariance C^{a-1,a-1} - lambda C^{a-1,a} - lambda C^{a,a-1} + lambda^2 C^{a,a};
/// defined for alpha > 1, with a finite variance only for alpha > 3/2.
inline double tfgn_cov(const FracOUParams& p, double tau) {
    p.validate();
    const double a = p.alpha, l = p.lambda;
    if (!(a > 1)) {
        throw DomainError("tfgn_cov: requires alpha > 1");
    }
    tau = std::abs(tau);
    if (tau == 0) {
        if (!(a > 1.5)) {
            throw DomainError("tfgn_cov: variance is infinite for alpha <= 3/2");
        }
        return tfgn_cross_cov_at_zero(a - 1, a - 1, l) - 2 * l * tfgn_cross_cov_at_zero(a - 1, a, l) +
               l * l * tfgn_cross_cov_at_zero(a, a, l);
    }
    return tfgn_cross_cov(a - 1, a - 1, l, tau) - l * tfgn_cross_cov(a - 1, a, l, tau) -
           l * tfgn_cross_cov(a, a - 1, l, tau) + l * l * tfgn_cross_cov(a, a, l, tau);
}

}  // namespace tplab

#endif
