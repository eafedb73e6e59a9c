#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "gen.hpp"
#include "tplab/kernels.hpp"

using namespace tplab;
using tplab::testing::Gen;
using tplab::testing::rel_err;

namespace {

// (1/pi) int_0^inf (k^2 + lambda^2)^-alpha cos(k tau) dk by a plain oscillatory
// quadrature independent of the library's cosine transform.
double fou_cov_oracle(double alpha, double lambda, double tau) {
    auto g = [&](double k) { return std::pow(k * k + lambda * lambda, -alpha) * std::cos(k * tau); };
    quad::QuadOptions<double> opt;
    opt.abs_tol = 1e-15;
    const double period = 2 * std::numbers::pi / std::max(tau, 1e-3);
    double sum = 0;
    double a = 0;
    // Integrate whole periods until the remaining amplitude is negligible,
    // then bound the rest by alternation.
    for (int i = 0; i < 200000; ++i) {
        double piece = quad::integrate_adaptive<double>(g, a, a + period, opt).value;
        sum += piece;
        a += period;
        if (std::pow(a * a, -alpha) * period < 1e-16) {
            break;
        }
    }
    return sum / std::numbers::pi;
}

}  // namespace

TEST(FouCov, ReferenceValues) {
    // mpmath besselk closed form, 30 digits.
    EXPECT_LT(rel_err(fou_cov({0.75, 1.0}, 0.3), 0.41490190675709317), 1e-13);
    EXPECT_LT(rel_err(fou_cov({1.25, 0.5}, 1.7), 0.611130706866860521), 1e-13);
    EXPECT_LT(rel_err(fou_cov({0.6, 0.25}, 5.0), 0.142377485921668259), 1e-13);
    EXPECT_LT(rel_err(fou_cov({1.4, 4.0}, 0.01), 0.027889166874785893), 1e-13);
    EXPECT_LT(rel_err(fou_cov({0.6, 4.0}, 10.0), 3.25183843182533503e-19), 1e-12);
    EXPECT_LT(rel_err(fou_var({0.75, 1.0}), 0.834626841674073186), 1e-14);
}

TEST(FouCov, OrnsteinUhlenbeckCase) {
    Gen g(31);
    for (int i = 0; i < 50; ++i) {
        double l = g.log_uniform(0.05, 20), tau = g.uniform(0, 30);
        double expected = std::exp(-l * tau) / (2 * l);
        EXPECT_LT(rel_err(fou_cov({1.0, l}, tau), expected), 1e-12) << l << " " << tau;
    }
}

TEST(FouCov, SpectralQuadratureOracle) {
    for (double a : {0.75, 1.3}) {
        for (double tau : {0.5, 2.0}) {
            EXPECT_LT(rel_err(fou_cov({a, 1.0}, tau), fou_cov_oracle(a, 1.0, tau)), 1e-7) << a << " " << tau;
        }
    }
}

TEST(FouCov, EvenBoundedDecreasingProperty) {
    Gen g(32);
    for (int i = 0; i < tplab::testing::kCases; ++i) {
        FracOUParams p{g.uniform(0.55, 2.5), g.log_uniform(0.1, 10)};
        double tau = g.log_uniform(1e-4, 50);
        double c = fou_cov(p, tau);
        EXPECT_EQ(c, fou_cov(p, -tau));
        EXPECT_LE(c, fou_var(p) * (1 + 1e-14));
        EXPECT_GT(c, 0);
        EXPECT_LT(fou_cov(p, tau * 1.1), c);
    }
}

TEST(FouCov, GramMatrixPositiveSemidefiniteProperty) {
    Gen g(33);
    for (int trial = 0; trial < 20; ++trial) {
        FracOUParams p{g.uniform(0.55, 1.45), g.log_uniform(0.1, 5)};
        const int n = 30;
        std::vector<double> ts(n);
        for (auto& t : ts) {
            t = g.uniform(0, 20);
        }
        Eigen::MatrixXd G(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                G(i, j) = fou_cov(p, ts[i] - ts[j]);
            }
        }
        double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues().minCoeff();
        EXPECT_GT(min_eig, -1e-12 * G.trace());
    }
}

TEST(FouCov, ScalingProperty) {
    Gen g(34);
    for (int i = 0; i < tplab::testing::kCases; ++i) {
        double a = g.uniform(0.55, 1.45), l = g.log_uniform(0.1, 3), r = g.log_uniform(0.2, 8);
        double tau = g.log_uniform(0.01, 5);
        EXPECT_LT(rel_err(fou_cov({a, l}, r * tau), std::pow(r, 2 * a - 1) * fou_cov({a, r * l}, tau)), 1e-12);
    }
}

TEST(FouCov, ExtremeLagsUnderflowGracefully) {
    EXPECT_EQ(fou_cov({0.75, 0.5}, 1e4), 0.0);
    EXPECT_GT(fou_cov({0.75, 0.5}, 1000), 0.0);
    EXPECT_LT(rel_err(fou_cov({1.25, 1.0}, 1e-300), fou_var({1.25, 1.0})), 1e-13);
}

TEST(FouCov, InvalidParametersThrow) {
    EXPECT_THROW(fou_cov({0.5, 1.0}, 1.0), DomainError);
    EXPECT_THROW(fou_cov({1.0, 0.0}, 1.0), DomainError);
    EXPECT_THROW(fou_var({0.4, 1.0}), DomainError);
}

TEST(FouLocalExpansion, SmallLagLaw) {
    for (double a : {0.7, 1.2}) {
        FracOUParams p{a, 1.0};
        auto e = fou_local_expansion(p);
        EXPECT_EQ(e.exponent, 2 * a - 1);
        EXPECT_LT(e.power_term_coeff, 0);
        double tau = 1e-6;
        double ratio = (fou_cov(p, tau) - e.constant_term) / (e.power_term_coeff * std::pow(tau, e.exponent));
        EXPECT_NEAR(ratio, 1.0, 1e-3) << a;
    }
}

TEST(FouLocalExpansion, DegenerateAndOutOfRange) {
    EXPECT_THROW(fou_local_expansion({1.0, 1.0}), DegenerateExpansion);
    EXPECT_THROW(fou_local_expansion({1.5, 1.0}), DomainError);
}

TEST(FouSpectral, IntegratesToVariance) {
    FracOUParams p{0.9, 0.7};
    quad::QuadOptions<double> opt;
    opt.abs_tol = 1e-13;
    opt.decay_exponent = 1.8;
    double v = 2 * quad::integrate_adaptive<double>([&](double k) { return fou_spectral(p, k); }, 0.0,
                                                    std::numeric_limits<double>::infinity(), opt)
                       .value;
    EXPECT_LT(rel_err(v, fou_var(p)), 1e-10);
}

TEST(Tfbm, ReferenceValues) {
    EXPECT_LT(rel_err(tfbm_cov({1.25, 0.5}, 2.0, 0.5), 0.244539360670345685), 1e-12);
    EXPECT_LT(rel_err(tfbm_cov({0.75, 1.0}, 1.0, 3.0), 0.70312270640584455), 1e-12);
}

TEST(Tfbm, StructuralProperties) {
    Gen g(35);
    for (int i = 0; i < tplab::testing::kCases; ++i) {
        FracOUParams p{g.uniform(0.55, 1.45), g.log_uniform(0.1, 5)};
        double t = g.uniform(0.01, 20), s = g.uniform(0.01, 20);
        EXPECT_EQ(tfbm_cov(p, t, 0.0), 0.0);
        EXPECT_NEAR(tfbm_cov(p, t, s), tfbm_cov(p, s, t), 1e-15);
        EXPECT_NEAR(tfbm_cov(p, t, t), tfbm_var(p, t), 1e-13 * (1 + tfbm_var(p, t)));
        double c = tfbm_cov(p, t, s);
        EXPECT_LE(c * c, tfbm_var(p, t) * tfbm_var(p, s) * (1 + 1e-12));
        EXPECT_LE(tfbm_var(p, t), 2 * fou_var(p) * (1 + 1e-14));
        EXPECT_LT(std::abs(tfbm_cov(p, t, s) - tfbm_cov_ct_route(p, t, s)),
                  1e-10 * std::max(1.0, std::abs(tfbm_cov(p, t, s))));
    }
}

TEST(Tfbm, TinyTimeVarianceKeepsPrecision) {
    // mpmath, 40 digits: 2 (sigma^2 - C(t)) at alpha = 1.49, lambda = 1.
    EXPECT_LT(rel_err(tfbm_var({1.49, 1.0}, 1e-12), 2 * 6.080753469159808e-24), 1e-12);
    EXPECT_LT(rel_err(tfbm_var({1.49, 1.0}, 1e-6), 2 * 2.679648823566408e-12), 1e-12);
    EXPECT_LT(rel_err(tfbm_var({1.49, 1.0}, 0.01), 2 * 8.817763847338539e-5), 1e-12);
    // Continuity where the series hands over to the direct difference.
    for (double a : {0.6, 1.0, 1.3}) {
        EXPECT_LT(rel_err(tfbm_var({a, 1.0}, std::nextafter(0.5, 0.0)), tfbm_var({a, 1.0}, 0.5)), 1e-13) << a;
    }
}

TEST(Tfbm, CtCoefficientLimits) {
    FracOUParams p{1.25, 1.0};
    const double h = p.hurst();
    double small_limit = std::tgamma(1 - 2 * h) * std::cos(h * std::numbers::pi) / (h * std::numbers::pi);
    // The correction is O(t^{2 - 2H}) = O(sqrt(t)) here.
    double e6 = std::abs(tfbm_ct_coefficient(p, 1e-6) / small_limit - 1);
    double e10 = std::abs(tfbm_ct_coefficient(p, 1e-10) / small_limit - 1);
    EXPECT_LT(e10, 1e-5);
    EXPECT_NEAR(e6 / e10, 100.0, 1e-3);
    // At large lambda t, c_t |t|^{2H} -> 2 sigma^2.
    double t = 200;
    EXPECT_NEAR(tfbm_ct_coefficient(p, t) * std::pow(t, 2 * h) / (2 * fou_var(p)), 1.0, 1e-12);
}

TEST(Tfbm, IncrementsStationary) {
    Gen g(36);
    for (int i = 0; i < 50; ++i) {
        FracOUParams p{g.uniform(0.55, 1.45), g.log_uniform(0.1, 5)};
        double h = g.uniform(0.01, 2), d = g.uniform(0, 5), t = g.uniform(0, 10);
        double direct = tfbm_cov(p, t + d + h, t + h) - tfbm_cov(p, t + d + h, t) - tfbm_cov(p, t + d, t + h) +
                        tfbm_cov(p, t + d, t);
        EXPECT_NEAR(direct, tfbm_increment_cov(p, h, d), 1e-12 * (1 + fou_var(p)));
    }
}

TEST(Tfbm, AsymptoticStationarity) {
    FracOUParams p{0.8, 1.0};
    for (double d : {-1.0, 0.0, 2.0}) {
        double t = 60;
        EXPECT_NEAR(tfbm_cov(p, t, t - d), fou_cov(p, d) + fou_var(p), 1e-12);
    }
}

TEST(Tfbm, PlateauIsLargeLagCorrelation) {
    FracOUParams p{1.25, 0.5};
    for (double t : {0.5, 1.0, 4.0}) {
        EXPECT_NEAR(tfbm_correlation(p, t, 200.0), tfbm_lrd_plateau(p, t), 1e-10);
    }
    EXPECT_NEAR(tfbm_lrd_plateau(p, 500.0), 0.5, 1e-12);
}

TEST(Mixed, AdditiveOverComponents) {
    MixtureParams m{{{2.0, {0.8, 1.0}}, {0.5, {1.2, 0.25}}}};
    double expected = 4 * tfbm_cov({0.8, 1.0}, 1.5, 0.4) + 0.25 * tfbm_cov({1.2, 0.25}, 1.5, 0.4);
    EXPECT_NEAR(mixed_cov(m, 1.5, 0.4), expected, 1e-15);
    EXPECT_NEAR(mixed_var(m, 1.5), mixed_cov(m, 1.5, 1.5), 1e-14);
    MixtureParams dup{{{1.0, {0.8, 1.0}}, {1.0, {0.8, 2.0}}}};
    EXPECT_THROW(mixed_cov(dup, 1, 1), DomainError);
}

TEST(TwoIndex, ReferenceValues) {
    EXPECT_LT(rel_err(twoindex_var({0.9, 0.8, 1.0}), 0.875567089325799672), 1e-12);
    EXPECT_LT(rel_err(twoindex_cov({0.9, 0.6, 1.0}, 20).value, 0.000427516698408328588), 1e-7);
    EXPECT_LT(rel_err(twoindex_cov({0.9, 0.8, 1.0}, 0.5).value, 0.283435105768169711), 1e-7);
    EXPECT_LT(rel_err(twoindex_cov({1.2, 0.7, 0.5}, 3).value, 0.152828956032005656), 1e-7);
    EXPECT_LT(rel_err(twoindex_cov({1.5, 0.7, 1.0}, 40).value, 7.077471589555689e-05), 1e-7);
}

TEST(TwoIndex, BetaOneReducesToFou) {
    for (double a : {0.6, 0.9, 1.3}) {
        EXPECT_LT(rel_err(twoindex_var({a, 1.0, 0.7}), fou_var({a, 0.7})), 1e-12);
        EXPECT_LT(rel_err(twoindex_cov({a, 1.0, 0.7}, 1.1).value, fou_cov({a, 0.7}, 1.1)), 1e-8);
    }
}

TEST(TwoIndex, VariantsDiffer) {
    TwoIndexParams q{0.9, 0.6, 1.0};
    for (double k : {0.1, 1.0, 5.0}) {
        double y = twoindex_spectral(q, k, TwoIndexVariant::Y);
        double x = twoindex_spectral(q, k, TwoIndexVariant::X);
        EXPECT_GT(y, 0);
        EXPECT_GT(x, 0);
        EXPECT_NE(x, y);
    }
}

TEST(TwoIndex, TailSeriesApproachesCovariance) {
    TwoIndexParams q{0.9, 0.6, 1.0};
    double prev = 1;
    for (double tau : {10.0, 20.0, 40.0, 80.0}) {
        auto lead = twoindex_cov_tail_series(q, tau, 1);
        EXPECT_GT(lead.value, 0);
        double err = std::abs(lead.value / twoindex_cov(q, tau).value - 1);
        EXPECT_LT(err, prev);
        prev = err;
        auto full = twoindex_cov_tail_series(q, tau, 200);
        EXPECT_LT(rel_err(full.value, twoindex_cov(q, tau).value), 1e-3) << tau;
    }
}

TEST(TwoIndex, TailSeriesDomain) {
    EXPECT_THROW(twoindex_cov_tail_series({0.9, 1.0, 1.0}, 10, 1), DomainError);
    EXPECT_THROW(twoindex_cov_tail_series({0.9, 0.6, 1.0}, 4, 1), DomainError);
}

TEST(TwoIndex, SmallTimeLaw) {
    for (TwoIndexParams q : {TwoIndexParams{0.9, 0.6, 1.0}, TwoIndexParams{1.5, 0.7, 1.0}}) {
        double t = 1e-3;
        double ratio = twoindex_increment_var(q, t) / twoindex_smalltime_incvar(q, t).value;
        EXPECT_NEAR(ratio, 1.0, 0.02);
    }
    EXPECT_THROW(twoindex_smalltime_incvar({1.25, 0.8, 1.0}, 1e-3), DegenerateExpansion);
}

TEST(Tmbm, MouReferenceAndRouteAgreement) {
    auto h = HurstProfile::saturating(0.8, 0.1);
    EXPECT_LT(rel_err(tmbm_mou_cov(h, 1, 2, 0.5, MouRoute::kummer), 0.105022616297592797), 1e-10);
    EXPECT_LT(rel_err(tmbm_mou_cov(h, 1, 2, 0.5, MouRoute::whittaker), 0.105022616297592797), 1e-10);
    EXPECT_THROW(tmbm_mou_cov(h, 1, 1, 1, MouRoute::kummer), DomainError);
}

TEST(Tmbm, RoutesAgreeProperty) {
    Gen g(37);
    for (int i = 0; i < 60; ++i) {
        double a0 = g.uniform(0.55, 1.1), amp = g.uniform(-0.04, 0.3);
        auto h = HurstProfile::saturating(a0, amp);
        double t = g.uniform(0.05, 6), s = g.uniform(0.05, 6), l = g.log_uniform(0.2, 3);
        if (std::abs(t - s) < 1e-3) {
            continue;
        }
        double k = tmbm_mou_cov(h, l, t, s, MouRoute::kummer);
        EXPECT_LT(rel_err(tmbm_mou_cov(h, l, t, s, MouRoute::whittaker), k), 1e-8);
        EXPECT_EQ(k, tmbm_mou_cov(h, l, s, t, MouRoute::kummer));
    }
}

TEST(Tmbm, ConstantProfileReducesToTfbm) {
    auto h = HurstProfile::constant(0.9);
    for (double t : {0.3, 2.0}) {
        for (double s : {0.0, 0.7, 5.0}) {
            EXPECT_NEAR(tmbm_cov(h, 0.6, t, s), tfbm_cov({0.9, 0.6}, t, s), 1e-12);
        }
        EXPECT_NEAR(tmbm_var(h, 0.6, t), tfbm_var({0.9, 0.6}, t), 1e-12);
        EXPECT_LT(rel_err(tmbm_mou_cov(h, 0.6, t, 1.1, MouRoute::kummer), fou_cov({0.9, 0.6}, t - 1.1)), 1e-9);
    }
}

TEST(Tmbm, CtRouteAndPinnedOrigin) {
    auto h = HurstProfile::ramp(0.7, 1.3, 0, 10);
    EXPECT_EQ(tmbm_cov(h, 1.0, 0.0, 3.0), 0.0);
    EXPECT_LT(rel_err(tmbm_cov_ct_route(h, 1.0, 4.0, 1.5), tmbm_cov(h, 1.0, 4.0, 1.5)), 1e-10);
}

TEST(Tfgn, ReferenceAndDerivative) {
    EXPECT_LT(rel_err(tfgn_cross_cov(1.2, 0.9, 1, 2), 0.0942520133809210757), 1e-12);
    FracOUParams g{1.8, 1.0};
    const double tau = 0.7, h = 1e-3;
    double d2 = (fou_cov(g, tau + h) - 2 * fou_cov(g, tau) + fou_cov(g, tau - h)) / (h * h);
    EXPECT_NEAR(tfgn_cov(g, tau) / -d2, 1.0, 1e-5);
    // C(0) - C(tau) ~ tau^{2H - 2} = tau^{0.6}.
    EXPECT_NEAR(tfgn_cov(g, 1e-12), tfgn_cov(g, 0.0), 1e-5);
}

TEST(Tfgn, Domain) {
    EXPECT_THROW(tfgn_cov({1.0, 1.0}, 1.0), DomainError);
    EXPECT_THROW(tfgn_cov({1.3, 1.0}, 0.0), DomainError);
    EXPECT_NO_THROW(tfgn_cov({1.3, 1.0}, 0.5));
    EXPECT_THROW(tfgn_cross_cov(1, 1, 1, 0), DomainError);
}
