#ifndef TPLAB_SPECFUN_HPP
#define TPLAB_SPECFUN_HPP

// Real-argument special functions: gamma, log-gamma, modified Bessel K of
// real order, Kummer U and Whittaker W.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tplab/errors.hpp"
#include "tplab/quad.hpp"

namespace tplab {

struct SpecFunResult {
    double value = 0;
    double abs_error_estimate = 0;
};

/// Supported box for bessel_k.
inline constexpr double kBesselMaxOrder = 5.0;
inline constexpr double kBesselMinArg = 1e-6;
inline constexpr double kBesselMaxArg = 700.0;

inline bool is_nonpositive_integer(double x) { return x <= 0 && std::floor(x) == x; }

/// Gamma function; the C library handles reflection for negative x.
inline double gamma_fn(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("gamma_fn: non-finite argument");
    }
    if (is_nonpositive_integer(x)) {
        throw PoleError("gamma_fn: pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

/// log|Gamma(x)|.
inline double lgamma_fn(double x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("lgamma_fn: pole at " + std::to_string(x));
    }
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

namespace detail {

// Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k, k = 1..30.
inline constexpr std::array<double, 30> kRecipGammaCoeffs = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
};

/// Temme's auxiliary functions for |mu| <= 1/2:
/// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    const auto& c = kRecipGammaCoeffs;
    const double m2 = mu * mu;
    gam1 = 0;
    gam2 = 0;
    // Horner in mu^2 over the even and odd coefficient chains.
    for (int k = 28; k >= 0; k -= 2) {
        gam2 = gam2 * m2 + c[k];          // c1 + c3 mu^2 + ...
    }
    for (int k = 29; k >= 1; k -= 2) {
        gam1 = gam1 * m2 + c[k];          // c2 + c4 mu^2 + ...
    }
    gam1 = -gam1;
    gampl = gam2 - mu * gam1;  // 1/Gamma(1+mu)
    gammi = gam2 + mu * gam1;  // 1/Gamma(1-mu)
}

/// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2 and 0 < x <= 2 by Temme's series.
inline void temme_series(double mu, double x, double& kmu, double& kmu1) {
    const double pi = std::numbers::pi;
    const double eps = std::numeric_limits<double>::epsilon();
    const double x2 = 0.5 * x;
    const double pimu = pi * mu;
    const double fact = std::abs(pimu) < eps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < eps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 500; ++i) {
        ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        double del = c * ff;
        sum += del;
        double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::abs(del) < std::abs(sum) * eps) {
            break;
        }
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / x);
}

/// K_nu(x) by the series plus forward recurrence in the order.
inline double bessel_k_series(double nu, double x) {
    nu = std::abs(nu);
    const int nl = static_cast<int>(std::floor(nu + 0.5));
    const double mu = nu - nl;
    double kmu, kmu1;
    temme_series(mu, x, kmu, kmu1);
    const double xi2 = 2.0 / x;
    for (int i = 1; i <= nl; ++i) {
        double next = (mu + i) * xi2 * kmu1 + kmu;
        kmu = kmu1;
        kmu1 = next;
    }
    return kmu;
}

/// e^x K_nu(x) = int_0^inf exp(-x (cosh t - 1)) cosh(nu t) dt.
inline quad::QuadResult<double> bessel_k_scaled_integral(double nu, double x) {
    nu = std::abs(nu);
    auto exponent = [nu, x](double t, double sgn) {
        double h = std::sinh(0.5 * t);
        return sgn * nu * t - 2.0 * x * h * h;
    };
    auto f = [&](double t) { return 0.5 * (std::exp(exponent(t, 1.0)) + std::exp(exponent(t, -1.0))); };
    // Peak of the dominant exponential, then march until it has fallen by e^-45.
    const double tpeak = std::asinh(nu / x);
    const double fpeak = exponent(tpeak, 1.0);
    double upper = tpeak + std::min(0.5, 4.0 / std::sqrt(x));
    while (exponent(upper, 1.0) > fpeak - 45.0) {
        upper += 0.5 + 0.25 * upper;
    }
    quad::QuadOptions<double> opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-14;
    if (tpeak > 0.0) {
        auto lo = quad::integrate_adaptive<double>(f, 0.0, tpeak, opt);
        auto hi = quad::integrate_adaptive<double>(f, tpeak, upper, opt);
        return {lo.value + hi.value, lo.abs_error_estimate + hi.abs_error_estimate,
                lo.subdivisions + hi.subdivisions};
    }
    return quad::integrate_adaptive<double>(f, 0.0, upper, opt);
}

/// K_nu(x) for any x > 0 without the box check. Beyond the box the integral
/// route is evaluated in log space and may underflow to zero; below it the
/// series may overflow to infinity.
inline double bessel_k_unchecked(double nu, double x) {
    if (x < 0.1) {
        return bessel_k_series(nu, x);
    }
    auto r = bessel_k_scaled_integral(nu, x);
    if (x > kBesselMaxArg) {
        return std::exp(std::log(r.value) - x);
    }
    return r.value * std::exp(-x);
}

inline void check_bessel_box(double nu, double x, const char* who) {
    if (!(x > 0)) {
        throw DomainError(std::string(who) + ": argument must be positive");
    }
    if (!(std::abs(nu) <= kBesselMaxOrder) || x < kBesselMinArg || x > kBesselMaxArg) {
        throw DomainError(std::string(who) + ": (nu, x) outside the supported box |nu| <= 5, 1e-6 <= x <= 700");
    }
}

}  // namespace detail

/// e^x K_nu(x) over the supported box.
inline SpecFunResult bessel_k_scaled(double nu, double x) {
    detail::check_bessel_box(nu, x, "bessel_k_scaled");
    if (x < 0.1) {
        double v = detail::bessel_k_series(nu, x) * std::exp(x);
        return {v, 1e-14 * (std::abs(nu) + 1.0) * v};
    }
    auto r = detail::bessel_k_scaled_integral(nu, x);
    if (r.abs_error_estimate > 1e-10 * std::max(1.0, std::abs(r.value))) {
        throw AccuracyError("bessel_k_scaled: error estimate above tolerance");
    }
    return {r.value, r.abs_error_estimate};
}

/// Modified Bessel function of the second kind K_nu(x).
inline SpecFunResult bessel_k(double nu, double x) {
    detail::check_bessel_box(nu, x, "bessel_k");
    if (x < 0.1) {
        double v = detail::bessel_k_series(nu, x);
        return {v, 1e-14 * (std::abs(nu) + 1.0) * v};
    }
    auto r = detail::bessel_k_scaled_integral(nu, x);
    const double scale = std::exp(-x);
    SpecFunResult out{r.value * scale, r.abs_error_estimate * scale};
    if (out.abs_error_estimate > 1e-10 * std::max(1.0, std::abs(out.value))) {
        throw AccuracyError("bessel_k: error estimate above tolerance");
    }
    return out;
}

/// Kummer's confluent hypergeometric function of the second kind,
/// U(a, b, z) = (1/Gamma(a)) int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt.
inline SpecFunResult kummer_u(double a, double b, double z) {
    if (!(a > 0)) {
        throw DomainError("kummer_u: requires a > 0");
    }
    if (!(z > 0)) {
        throw DomainError("kummer_u: requires z > 0");
    }
    if (!std::isfinite(b)) {
        throw DomainError("kummer_u: non-finite b");
    }
    quad::QuadOptions<double> opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-13;
    const double inf = std::numeric_limits<double>::infinity();
    const double c = b - a - 1.0;
    quad::QuadResult<double> r;
    if (a < 1.0) {
        // t = w^{1/a} absorbs the t^{a-1} endpoint singularity.
        const double inva = 1.0 / a;
        auto f = [=](double w) {
            double t = std::pow(w, inva);
            return std::exp(-z * t + c * std::log1p(t)) * inva;
        };
        opt.scale = std::pow(std::max(a, 1.0) / z, a);
        r = quad::integrate_adaptive<double>(f, 0.0, inf, opt);
    } else {
        auto f = [=](double t) {
            if (t == 0.0) {
                return a == 1.0 ? 1.0 : 0.0;
            }
            return std::exp(-z * t + (a - 1.0) * std::log(t) + c * std::log1p(t));
        };
        opt.scale = std::max(a, 1.0) / z;
        r = quad::integrate_adaptive<double>(f, 0.0, inf, opt);
    }
    const double rg = 1.0 / gamma_fn(a);
    SpecFunResult out{r.value * rg, r.abs_error_estimate * std::abs(rg)};
    if (out.abs_error_estimate > 1e-10 * std::max(1.0, std::abs(out.value))) {
        throw AccuracyError("kummer_u: error estimate above tolerance");
    }
    return out;
}

/// Whittaker function W_{kappa,mu}(z) = e^{-z/2} z^{1/2+mu} U(1/2+mu-kappa, 1+2mu, z).
/// W is even in mu; the sign of mu is chosen so that the U integral converges.
inline SpecFunResult whittaker_w(double kappa, double mu, double z) {
    if (!(z > 0)) {
        throw DomainError("whittaker_w: requires z > 0");
    }
    double m = mu;
    if (!(0.5 + m - kappa > 0)) {
        m = -mu;
        if (!(0.5 + m - kappa > 0)) {
            throw DomainError("whittaker_w: 1/2 +- mu - kappa must be positive for the integral route");
        }
    }
    auto u = kummer_u(0.5 + m - kappa, 1.0 + 2.0 * m, z);
    const double pre = std::exp(-0.5 * z + (0.5 + m) * std::log(z));
    return {pre * u.value, pre * u.abs_error_estimate};
}

}  // namespace tplab

#endif
