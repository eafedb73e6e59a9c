#ifndef TPLAB_QUAD_HPP
#define TPLAB_QUAD_HPP

// Adaptive quadrature and half-line cosine transforms.
//
// Everything here is templated on the floating type so the same code can run
// in double or in boost::multiprecision::float128 when a transform has to
// resolve values far below double round-off relative to its integrand.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "tplab/errors.hpp"

namespace tplab::quad {

template <class Real = double>
struct QuadResult {
    Real value{0};
    Real abs_error_estimate{0};
    std::size_t subdivisions{0};
};

template <class Real = double>
struct QuadOptions {
    Real abs_tol = Real(1e-10);
    Real rel_tol = Real(0);
    std::size_t max_subdivisions = 10000;
    /// Length scale used when mapping an infinite range onto a finite one.
    Real scale = Real(1);
    /// Algebraic decay exponent p of the integrand at infinity (|f| ~ k^-p).
    /// When p > 1 is declared, the tail is integrated after a power
    /// substitution that makes a k^-p integrand constant; otherwise the
    /// range is mapped by k = a + scale*u/(1-u).
    Real decay_exponent = Real(0);
};

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1], generated by Newton iteration
/// in the target precision.
template <class Real>
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        using std::abs;
        using std::cos;
        const Real pi = boost::math::constants::pi<Real>();
        const Real eps = std::numeric_limits<Real>::epsilon();
        for (int i = 0; i < (n + 1) / 2; ++i) {
            Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
            Real dp = 0;
            for (int iter = 0; iter < 100; ++iter) {
                Real p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = Real(n) * (x * p1 - p0) / (x * x - 1);
                Real dx = p1 / dp;
                x -= dx;
                if (abs(dx) <= 4 * eps) {
                    break;
                }
            }
            // Refresh the derivative at the converged node.
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (x * p1 - p0) / (x * x - 1);
            Real w = 2 / ((1 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
    }
};

template <class Real>
const GaussLegendre<Real>& gauss_rule() {
    static const GaussLegendre<Real> rule(15);
    return rule;
}

template <class Real, class F>
void apply_rule(F& f, Real a, Real b, Real& value, Real& abs_value) {
    using std::abs;
    const auto& rule = gauss_rule<Real>();
    const Real half = (b - a) / 2;
    const Real mid = a + half;
    Real sum = 0, asum = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Real fx = Real(f(mid + half * rule.nodes[i]));
        sum += rule.weights[i] * fx;
        asum += rule.weights[i] * abs(fx);
    }
    value = sum * half;
    abs_value = asum * abs(half);
}

/// Globally adaptive bisection over a finite interval. Each panel carries
/// the two-half Gauss-Legendre estimate as its value and the difference to
/// the one-panel estimate as its error.
template <class Real, class F>
QuadResult<Real> adaptive_finite(F&& f, Real a, Real b, const QuadOptions<Real>& opt) {
    using std::abs;
    using std::max;
    struct Node {
        Real a, b, left, right, err, absval;
        bool splittable;
    };
    auto make = [&](Real lo, Real hi, Real whole) {
        Node n{lo, hi, 0, 0, 0, 0, true};
        Real mid = lo + (hi - lo) / 2;
        Real al, ar;
        apply_rule<Real>(f, lo, mid, n.left, al);
        apply_rule<Real>(f, mid, hi, n.right, ar);
        n.absval = al + ar;
        n.err = abs(n.left + n.right - whole);
        Real width = abs(hi - lo);
        Real scale = max(abs(lo), abs(hi));
        if (!(width > 64 * std::numeric_limits<Real>::epsilon() * scale) ||
            width < 16 * std::numeric_limits<Real>::min()) {
            n.splittable = false;
        }
        return n;
    };

    std::vector<Node> nodes;
    nodes.reserve(64);
    Real whole, whole_abs;
    apply_rule<Real>(f, a, b, whole, whole_abs);
    nodes.push_back(make(a, b, whole));

    auto cmp = [&](std::size_t i, std::size_t j) { return nodes[i].err < nodes[j].err; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
    heap.push(0);

    std::size_t subdivisions = 1;
    const Real eps = std::numeric_limits<Real>::epsilon();
    using std::isfinite;
    Real total = nodes[0].left + nodes[0].right;
    Real total_err = nodes[0].err;
    Real total_abs = nodes[0].absval;
    while (true) {
        if (!isfinite(total) || !isfinite(total_err)) {
            throw NonConvergence("integrand produced a non-finite value", 0.0, 0.0);
        }
        Real floor = 50 * eps * total_abs;
        Real target = max(max(opt.abs_tol, opt.rel_tol * abs(total)), floor);
        if (total_err <= target) {
            // Re-sum from scratch so the running totals carry no drift.
            total = 0;
            total_err = 0;
            total_abs = 0;
            for (const auto& n : nodes) {
                total += n.left + n.right;
                total_err += n.err;
                total_abs += n.absval;
            }
            floor = 50 * eps * total_abs;
            target = max(max(opt.abs_tol, opt.rel_tol * abs(total)), floor);
            if (total_err <= target) {
                return {total, max(total_err, floor), subdivisions};
            }
        }
        // Pick the worst splittable panel.
        std::size_t worst = nodes.size();
        while (!heap.empty()) {
            std::size_t i = heap.top();
            heap.pop();
            if (nodes[i].splittable) {
                worst = i;
                break;
            }
        }
        if (worst == nodes.size() || subdivisions >= opt.max_subdivisions) {
            throw NonConvergence("adaptive quadrature reached its subdivision cap (" +
                                     std::to_string(subdivisions) + " panels)",
                                 static_cast<double>(total), static_cast<double>(total_err));
        }
        Node parent = nodes[worst];
        Real mid = parent.a + (parent.b - parent.a) / 2;
        nodes[worst] = make(parent.a, mid, parent.left);
        nodes.push_back(make(mid, parent.b, parent.right));
        const Node& l = nodes[worst];
        const Node& r = nodes.back();
        total += l.left + l.right + r.left + r.right - parent.left - parent.right;
        total_err += l.err + r.err - parent.err;
        total_abs += l.absval + r.absval - parent.absval;
        heap.push(worst);
        heap.push(nodes.size() - 1);
        ++subdivisions;
    }
}

}  // namespace detail

/// Integrates f over [a, b]; b may be +infinity.
template <class Real = double, class F>
QuadResult<Real> integrate_adaptive(F&& f, Real a, Real b, QuadOptions<Real> opt = {}) {
    using std::isinf;
    using std::pow;
    if (!(b > a)) {
        if (b == a) {
            return {Real(0), Real(0), 0};
        }
        throw DomainError("integrate_adaptive: upper limit below lower limit");
    }
    if (!isinf(b)) {
        return detail::adaptive_finite<Real>(f, a, b, opt);
    }
    const Real scale = opt.scale;
    if (opt.decay_exponent > 1) {
        // [a, a+scale] directly, tail through k = a + scale * w^(-q).
        const Real q = 1 / (opt.decay_exponent - 1);
        QuadOptions<Real> part = opt;
        part.abs_tol = opt.abs_tol / 2;
        auto head = detail::adaptive_finite<Real>(f, a, a + scale, part);
        auto tail_integrand = [&](Real w) -> Real {
            Real wq = pow(w, -q);
            return Real(f(a + scale * wq)) * scale * q * wq / w;
        };
        auto tail = detail::adaptive_finite<Real>(tail_integrand, Real(0), Real(1), part);
        return {head.value + tail.value, head.abs_error_estimate + tail.abs_error_estimate,
                head.subdivisions + tail.subdivisions};
    }
    auto mapped = [&](Real u) -> Real {
        Real om = 1 - u;
        Real x = a + scale * u / om;
        Real fx = Real(f(x));
        if (fx == 0) {
            return Real(0);
        }
        return fx * scale / (om * om);
    };
    return detail::adaptive_finite<Real>(mapped, Real(0), Real(1), opt);
}

template <class Real = double>
struct CosTransformOptions {
    Real tol = Real(1e-10);
    /// Declared algebraic decay exponent of the amplitude (|g| ~ k^-p).
    Real decay_exponent = Real(2);
    std::size_t max_lobes = 2000;
    std::size_t max_subdivisions = 10000;
};

namespace detail {

/// Wynn epsilon algorithm fed one partial sum at a time.
template <class Real>
class WynnEpsilon {
public:
    /// Adds S_n and returns the current best extrapolated limit.
    Real push(Real s) {
        using std::abs;
        std::vector<Real> next(last_.size() + 1);
        next[0] = s;
        Real best = s;
        bool ok = true;
        for (std::size_t j = 1; j < next.size(); ++j) {
            Real prev2 = j >= 2 ? last_[j - 2] : Real(0);
            Real diff = next[j - 1] - last_[j - 1];
            if (!ok || diff == 0) {
                ok = false;
                next.resize(j);
                break;
            }
            next[j] = prev2 + 1 / diff;
            if (j % 2 == 0) {
                best = next[j];
            }
        }
        using std::isfinite;
        if (!isfinite(best)) {
            best = s;
        }
        last_ = std::move(next);
        if (last_.size() > 60) {
            last_.resize(60);
        }
        return best;
    }

private:
    std::vector<Real> last_;
};

}  // namespace detail

/// Computes the integral of g(k) cos(k tau) over [start, inf). Lobes between
/// consecutive zeros of the cosine are integrated adaptively and the
/// alternating partial sums are extrapolated with the Wynn epsilon algorithm.
template <class Real = double, class G>
QuadResult<Real> fourier_cos(G&& g, Real tau, Real start, CosTransformOptions<Real> opt = {}) {
    using std::abs;
    using std::cos;
    using std::floor;
    using std::max;
    if (tau < 0) {
        tau = -tau;
    }
    if (opt.decay_exponent <= 0) {
        throw SlowDecay("fourier_cos: amplitude must decay at infinity", 0.0, 0.0);
    }
    QuadOptions<Real> qopt;
    qopt.max_subdivisions = opt.max_subdivisions;
    if (tau == 0) {
        qopt.abs_tol = opt.tol;
        qopt.decay_exponent = opt.decay_exponent;
        qopt.scale = max(Real(1), abs(start));
        return integrate_adaptive<Real>(g, start, std::numeric_limits<Real>::infinity(), qopt);
    }
    const Real pi = boost::math::constants::pi<Real>();
    const Real period = pi / tau;
    auto integrand = [&](Real k) -> Real { return Real(g(k)) * cos(k * tau); };
    // First zero of cos(k tau) strictly above start.
    Real j0 = floor(start / period - Real(0.5)) + 1;
    Real lo = start;
    Real hi = (j0 + Real(0.5)) * period;
    qopt.abs_tol = opt.tol / 20;

    detail::WynnEpsilon<Real> wynn;
    Real partial = 0;
    Real prev_est = 0, prev2_est = 0;
    Real last_lobe = 0;
    std::size_t subdivisions = 0;
    for (std::size_t n = 0; n < opt.max_lobes; ++n) {
        auto lobe = integrate_adaptive<Real>(integrand, lo, hi, qopt);
        subdivisions += lobe.subdivisions;
        partial += lobe.value;
        Real est = wynn.push(partial);
        // Tail of the absolutely convergent remainder, from the declared decay.
        Real tail_bound = std::numeric_limits<Real>::infinity();
        if (opt.decay_exponent > 1) {
            tail_bound = abs(Real(g(hi))) * hi / (opt.decay_exponent - 1);
        }
        if (n >= 2 && abs(lobe.value) <= opt.tol / 100 && abs(last_lobe) <= opt.tol / 100 &&
            tail_bound <= opt.tol / 2) {
            return {partial, abs(lobe.value) + tail_bound, subdivisions};
        }
        if (n >= 6) {
            Real err = abs(est - prev_est) + abs(est - prev2_est);
            if (err <= opt.tol) {
                return {est, err, subdivisions};
            }
        }
        prev2_est = prev_est;
        prev_est = est;
        last_lobe = lobe.value;
        lo = hi;
        hi += period;
    }
    throw SlowDecay("fourier_cos: tail did not converge within " + std::to_string(opt.max_lobes) + " lobes",
                    static_cast<double>(prev_est), static_cast<double>(abs(prev_est - prev2_est)));
}

/// Integral of g(k) cos(k tau) over [0, inf); even in tau.
template <class Real = double, class G>
QuadResult<Real> fourier_cos_halfline(G&& g, Real tau, CosTransformOptions<Real> opt = {}) {
    return fourier_cos<Real>(g, tau, Real(0), opt);
}

/// (4/pi) * integral over [0, inf) of k^-s sin^2(k/2), for 1 < s < 3.
/// On [0, 1] the sine square is expanded in its power series and integrated
/// term by term; on [1, inf) it is written as (1 - cos k)/2 so the
/// non-oscillatory part is exact and the cosine part goes through fourier_cos.
inline QuadResult<double> power_sine_squared_integral(double s, double tol = 1e-13) {
    if (!(s > 1 && s < 3)) {
        throw DomainError("power_sine_squared_integral: exponent must lie in (1, 3)");
    }
    // sin^2(k/2) = sum_{m>=1} (-1)^{m+1} k^{2m} / (2 (2m)!)
    double head = 0;
    double fact = 1;  // (2m)!
    for (int m = 1; m <= 30; ++m) {
        fact *= (2.0 * m - 1) * (2.0 * m);
        double term = 1.0 / (2.0 * fact * (2.0 * m + 1 - s));
        head += (m % 2 == 1) ? term : -term;
        if (term < 1e-18 * std::abs(head)) {
            break;
        }
    }
    CosTransformOptions<double> opt;
    opt.tol = tol;
    opt.decay_exponent = s;
    auto osc = fourier_cos<double>([s](double k) { return std::pow(k, -s); }, 1.0, 1.0, opt);
    const double pi = boost::math::constants::pi<double>();
    double value = head + 1.0 / (2.0 * (s - 1)) - 0.5 * osc.value;
    return {4.0 / pi * value, 4.0 / pi * (0.5 * osc.abs_error_estimate + 1e-16), osc.subdivisions};
}

}  // namespace tplab::quad

#endif
