#ifndef TPLAB_PARAMS_HPP
#define TPLAB_PARAMS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tplab/errors.hpp"

namespace tplab {

/// Single-index tempered parameters (alpha, lambda); H = alpha - 1/2.
struct FracOUParams {
    double alpha = 1.0;
    double lambda = 1.0;

    double hurst() const { return alpha - 0.5; }

    void validate() const {
        if (!std::isfinite(alpha) || !(alpha > 0.5)) {
            throw DomainError("FracOUParams: alpha must exceed 1/2");
        }
        if (!std::isfinite(lambda) || !(lambda > 0)) {
            throw DomainError("FracOUParams: lambda must be positive");
        }
    }
    /// Additional check for operations that need H in (0, 1).
    void require_unit_hurst(const char* who) const {
        validate();
        if (!(alpha < 1.5)) {
            throw DomainError(std::string(who) + ": requires alpha < 3/2");
        }
    }
};

/// Riesz-type two-index parameters (alpha, beta, lambda); H = alpha*beta - 1/2.
struct TwoIndexParams {
    double alpha = 1.0;
    double beta = 1.0;
    double lambda = 1.0;

    double product() const { return alpha * beta; }
    double hurst() const { return alpha * beta - 0.5; }

    void validate() const {
        if (!std::isfinite(alpha) || !(alpha > 0)) {
            throw DomainError("TwoIndexParams: alpha must be positive");
        }
        if (!std::isfinite(beta) || !(beta > 0) || beta > 1) {
            throw DomainError("TwoIndexParams: beta must lie in (0, 1]");
        }
        if (!std::isfinite(lambda) || !(lambda > 0)) {
            throw DomainError("TwoIndexParams: lambda must be positive");
        }
        if (!(alpha * beta > 0.5)) {
            throw DomainError("TwoIndexParams: alpha*beta must exceed 1/2");
        }
    }
};

struct MixtureComponent {
    double weight = 1.0;
    FracOUParams params;
};

/// Independent single-index components with distinct alphas.
struct MixtureParams {
    std::vector<MixtureComponent> components;

    void validate() const {
        if (components.empty()) {
            throw DomainError("MixtureParams: at least one component required");
        }
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (!(components[i].weight > 0) || !std::isfinite(components[i].weight)) {
                throw DomainError("MixtureParams: weights must be positive");
            }
            components[i].params.validate();
            for (std::size_t j = 0; j < i; ++j) {
                if (components[i].params.alpha == components[j].params.alpha) {
                    throw DomainError("MixtureParams: component alphas must be distinct");
                }
            }
        }
    }

    double min_alpha() const {
        double a = components.at(0).params.alpha;
        for (const auto& c : components) {
            a = std::min(a, c.params.alpha);
        }
        return a;
    }
};

/// Time-varying index alpha(t) with Hoelder metadata and declared bounds.
class HurstProfile {
public:
    using Fn = std::function<double(double)>;

    HurstProfile() : HurstProfile(constant(1.0)) {}

    static HurstProfile constant(double a) {
        HurstProfile h([a](double) { return a; }, a, a, 0.0, 1.0, "constant:" + fmt(a));
        h.constant_ = true;
        return h;
    }

    /// Linear from a0 at t_start to a1 at t_end, held constant outside.
    static HurstProfile ramp(double a0, double a1, double t_start, double t_end) {
        if (!(t_end > t_start)) {
            throw DomainError("HurstProfile::ramp: t_end must exceed t_start");
        }
        Fn f = [=](double t) {
            double u = std::clamp((t - t_start) / (t_end - t_start), 0.0, 1.0);
            return a0 + (a1 - a0) * u;
        };
        double k = std::abs(a1 - a0) / (t_end - t_start);
        return HurstProfile(f, std::min(a0, a1), std::max(a0, a1), k, 1.0,
                            "ramp:" + fmt(a0) + "," + fmt(a1) + "," + fmt(t_start) + "," + fmt(t_end));
    }

    /// a0 + amp * t / (1 + t) for t >= 0; Lipschitz with constant |amp|.
    static HurstProfile saturating(double a0, double amp) {
        Fn f = [=](double t) {
            double u = std::abs(t);
            return a0 + amp * u / (1.0 + u);
        };
        return HurstProfile(f, std::min(a0, a0 + amp), std::max(a0, a0 + amp), std::abs(amp), 1.0,
                            "saturating:" + fmt(a0) + "," + fmt(amp));
    }

    static HurstProfile from_function(Fn f, double alpha_min, double alpha_max, double holder_constant,
                                      double holder_exponent, std::string description = "function") {
        return HurstProfile(std::move(f), alpha_min, alpha_max, holder_constant, holder_exponent,
                            std::move(description));
    }

    /// Piecewise-linear interpolation of (t, alpha) knots, constant beyond the ends.
    static HurstProfile tabulated(std::vector<double> ts, std::vector<double> as) {
        if (ts.size() != as.size() || ts.empty()) {
            throw DomainError("HurstProfile::tabulated: need matching, nonempty knot vectors");
        }
        for (std::size_t i = 1; i < ts.size(); ++i) {
            if (!(ts[i] > ts[i - 1])) {
                throw DomainError("HurstProfile::tabulated: knot times must increase strictly");
            }
        }
        double k = 0.0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            k = std::max(k, std::abs(as[i] - as[i - 1]) / (ts[i] - ts[i - 1]));
        }
        auto lo = *std::min_element(as.begin(), as.end());
        auto hi = *std::max_element(as.begin(), as.end());
        auto tp = std::make_shared<std::vector<double>>(std::move(ts));
        auto ap = std::make_shared<std::vector<double>>(std::move(as));
        Fn f = [tp, ap](double t) {
            const auto& T = *tp;
            const auto& A = *ap;
            if (t <= T.front()) {
                return A.front();
            }
            if (t >= T.back()) {
                return A.back();
            }
            auto it = std::upper_bound(T.begin(), T.end(), t);
            std::size_t j = static_cast<std::size_t>(it - T.begin());
            double u = (t - T[j - 1]) / (T[j] - T[j - 1]);
            return A[j - 1] + u * (A[j] - A[j - 1]);
        };
        return HurstProfile(f, lo, hi, k, 1.0, "tabulated:" + std::to_string(tp->size()) + " knots");
    }

    /// Reads a CSV with header "t,alpha" (header optional).
    static HurstProfile from_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw DomainError("HurstProfile: cannot open profile file " + path);
        }
        std::vector<double> ts, as;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') {
                continue;
            }
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ss(line);
            double t, a;
            if (!(ss >> t >> a)) {
                if (lineno == 1) {
                    continue;  // header
                }
                throw DomainError("HurstProfile: malformed line " + std::to_string(lineno) + " in " + path);
            }
            ts.push_back(t);
            as.push_back(a);
        }
        auto h = tabulated(std::move(ts), std::move(as));
        h.description_ = "file:" + path;
        return h;
    }

    /// Builds a profile from "constant:A", "ramp:A0,A1,T0,T1",
    /// "saturating:A0,AMP" or, failing those prefixes, a CSV file path.
    static HurstProfile parse(const std::string& spec) {
        auto numbers = [&](const std::string& body) {
            std::vector<double> v;
            std::string item;
            std::istringstream ss(body);
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    v.push_back(std::stod(item, &used));
                    if (used != item.size()) {
                        throw std::invalid_argument(item);
                    }
                } catch (const std::exception&) {
                    throw DomainError("HurstProfile: bad number '" + item + "' in profile '" + spec + "'");
                }
            }
            return v;
        };
        auto starts = [&](const char* prefix) { return spec.rfind(prefix, 0) == 0; };
        if (starts("constant:")) {
            auto v = numbers(spec.substr(9));
            if (v.size() != 1) {
                throw DomainError("HurstProfile: constant profile takes one value");
            }
            return constant(v[0]);
        }
        if (starts("ramp:")) {
            auto v = numbers(spec.substr(5));
            if (v.size() != 4) {
                throw DomainError("HurstProfile: ramp profile takes A0,A1,T0,T1");
            }
            return ramp(v[0], v[1], v[2], v[3]);
        }
        if (starts("saturating:")) {
            auto v = numbers(spec.substr(11));
            if (v.size() != 2) {
                throw DomainError("HurstProfile: saturating profile takes A0,AMP");
            }
            return saturating(v[0], v[1]);
        }
        if (starts("file:")) {
            return from_csv(spec.substr(5));
        }
        return from_csv(spec);
    }

    double operator()(double t) const {
        double a = fn_(t);
        if (!(a >= alpha_min_ - 1e-12 && a <= alpha_max_ + 1e-12)) {
            throw DomainError("HurstProfile: alpha(" + fmt(t) + ") = " + fmt(a) + " outside declared bounds");
        }
        return a;
    }

    /// alpha_+(s, t) = (alpha(t) + alpha(s)) / 2.
    double alpha_plus(double t, double s) const { return 0.5 * ((*this)(t) + (*this)(s)); }
    /// alpha_-(s, t) = (alpha(t) - alpha(s)) / 2.
    double alpha_minus(double t, double s) const { return 0.5 * ((*this)(t) - (*this)(s)); }

    double alpha_min() const { return alpha_min_; }
    double alpha_max() const { return alpha_max_; }
    double holder_constant() const { return holder_constant_; }
    double holder_exponent() const { return holder_exponent_; }
    bool is_constant() const { return constant_; }
    const std::string& description() const { return description_; }

    /// Spot-checks |alpha(t) - alpha(s)| <= k |t - s|^beta on consecutive and
    /// all-pairs points of the given grid.
    bool holder_holds(const std::vector<double>& ts) const {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double d = std::abs((*this)(ts[i]) - (*this)(ts[j]));
                double bound = holder_constant_ * std::pow(std::abs(ts[i] - ts[j]), holder_exponent_);
                if (d > bound * (1 + 1e-9) + 1e-14) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    HurstProfile(Fn f, double lo, double hi, double k, double beta_h, std::string description)
        : fn_(std::move(f)),
          alpha_min_(lo),
          alpha_max_(hi),
          holder_constant_(k),
          holder_exponent_(beta_h),
          description_(std::move(description)) {
        if (!(lo > 0.5) || !(hi < 1.5) || lo > hi) {
            throw DomainError("HurstProfile: bounds must satisfy 1/2 < alpha_min <= alpha_max < 3/2");
        }
        if (!(k >= 0) || !(beta_h > 0 && beta_h <= 1)) {
            throw DomainError("HurstProfile: Hoelder constant must be >= 0 and exponent in (0, 1]");
        }
    }

    // Shortest text that parses back to x.
    static std::string fmt(double x) {
        char buf[32];
        auto r = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, r.ptr);
    }

    Fn fn_;
    double alpha_min_, alpha_max_;
    double holder_constant_, holder_exponent_;
    std::string description_;
    bool constant_ = false;
};

}  // namespace tplab

#endif
