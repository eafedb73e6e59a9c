#ifndef TPLAB_PROCESS_HPP
#define TPLAB_PROCESS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tplab/errors.hpp"
#include "tplab/kernels.hpp"
#include "tplab/params.hpp"

namespace tplab {

enum class Family { fou, tfbm, mixed, tfbm2, tmbm, tfgn };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::fou: return "fou";
        case Family::tfbm: return "tfbm";
        case Family::mixed: return "mixed";
        case Family::tfbm2: return "tfbm2";
        case Family::tmbm: return "tmbm";
        case Family::tfgn: return "tfgn";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    if (s == "fou") return Family::fou;
    if (s == "tfbm") return Family::tfbm;
    if (s == "mixed") return Family::mixed;
    if (s == "tfbm2") return Family::tfbm2;
    if (s == "tmbm") return Family::tmbm;
    if (s == "tfgn") return Family::tfgn;
    throw DomainError("unknown process family '" + s + "'");
}

/// A process family together with its parameters.
struct ProcessDescriptor {
    Family family = Family::fou;
    FracOUParams single;           // fou, tfbm, tfgn; lambda also used by tmbm
    TwoIndexParams two;            // tfbm2
    MixtureParams mixture;         // mixed
    std::optional<HurstProfile> profile;  // tmbm

    static ProcessDescriptor fou(FracOUParams p) { return {Family::fou, p, {}, {}, std::nullopt}; }
    static ProcessDescriptor tfbm(FracOUParams p) { return {Family::tfbm, p, {}, {}, std::nullopt}; }
    static ProcessDescriptor tfgn(FracOUParams p) { return {Family::tfgn, p, {}, {}, std::nullopt}; }
    static ProcessDescriptor tfbm2(TwoIndexParams q) { return {Family::tfbm2, {}, q, {}, std::nullopt}; }
    static ProcessDescriptor mixed(MixtureParams m) { return {Family::mixed, {}, {}, std::move(m), std::nullopt}; }
    static ProcessDescriptor tmbm(HurstProfile h, double lambda) {
        return {Family::tmbm, {h.alpha_min(), lambda}, {}, {}, std::move(h)};
    }

    void validate() const {
        switch (family) {
            case Family::fou:
            case Family::tfbm: single.validate(); break;
            case Family::tfgn:
                single.validate();
                if (!(single.alpha > 1.5)) {
                    throw DomainError("tfgn: sampling needs alpha > 3/2 (finite variance)");
                }
                break;
            case Family::tfbm2: two.validate(); break;
            case Family::mixed: mixture.validate(); break;
            case Family::tmbm:
                if (!profile) {
                    throw DomainError("tmbm: a Hurst profile is required");
                }
                if (!(single.lambda > 0)) {
                    throw DomainError("tmbm: lambda must be positive");
                }
                break;
        }
    }

    bool stationary() const { return family == Family::fou || family == Family::tfgn; }
    /// Pinned to zero at t = 0.
    bool reduced() const { return !stationary(); }

    /// Characteristic tempering rate, used by the estimators' regime checks.
    double lambda() const {
        switch (family) {
            case Family::tfbm2: return two.lambda;
            case Family::mixed: {
                double l = 0;
                for (const auto& c : mixture.components) {
                    l = std::max(l, c.params.lambda);
                }
                return l;
            }
            default: return single.lambda;
        }
    }

    /// Stationary kernel C(tau) for the stationary families and for the
    /// stationary parent of the reduced single-index families.
    double stationary_kernel(double tau) const {
        switch (family) {
            case Family::fou:
            case Family::tfbm: return fou_cov(single, tau);
            case Family::tfgn: return tfgn_cov(single, tau);
            case Family::tfbm2: return twoindex_cov(two, tau).value;
            default: throw DomainError("stationary_kernel: not defined for " + family_name(family));
        }
    }

    double covariance(double t, double s) const {
        switch (family) {
            case Family::fou: return fou_cov(single, t - s);
            case Family::tfgn: return tfgn_cov(single, t - s);
            case Family::tfbm: return tfbm_cov(single, t, s);
            case Family::mixed: return mixed_cov(mixture, t, s);
            case Family::tfbm2: return twoindex_reduced_cov(two, t, s);
            case Family::tmbm: return tmbm_cov(*profile, single.lambda, t, s);
        }
        return 0;
    }

    double variance(double t) const {
        switch (family) {
            case Family::fou: return fou_var(single);
            case Family::tfgn: return tfgn_cov(single, 0.0);
            case Family::tfbm: return tfbm_var(single, t);
            case Family::mixed: return mixed_var(mixture, t);
            case Family::tfbm2: return twoindex_increment_var(two, t);
            case Family::tmbm: return tmbm_var(*profile, single.lambda, t);
        }
        return 0;
    }

    /// Local Hurst index at time t (the minimum over components for mixtures).
    double hurst(double t = 0) const {
        switch (family) {
            case Family::fou:
            case Family::tfbm:
            case Family::tfgn: return single.hurst();
            case Family::mixed: return mixture.min_alpha() - 0.5;
            case Family::tfbm2: return two.hurst();
            case Family::tmbm: return (*profile)(t)-0.5;
        }
        return 0;
    }
};

}  // namespace tplab

#endif
