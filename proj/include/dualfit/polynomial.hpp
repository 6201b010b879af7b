#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dualfit/errors.hpp"

namespace dualfit {

/// Real polynomial of fixed degree, coefficients in descending degree:
/// coeffs[0] * t^Degree + ... + coeffs[Degree].
template <std::size_t Degree>
struct Polynomial {
    static constexpr std::size_t degree = Degree;
    std::array<double, Degree + 1> coeffs{};

    double operator()(double t) const noexcept {
        double acc = 0.0;
        for (double c : coeffs) acc = acc * t + c;
        return acc;
    }

    double leading() const noexcept { return coeffs[0]; }

    /// max(1, largest |coefficient|).
    double scale() const noexcept {
        double m = 1.0;
        for (double c : coeffs) m = std::max(m, std::abs(c));
        return m;
    }

    /// max(1, largest |c_i t^i|): the magnitude rounding errors in p(t) are
    /// proportional to. Equals scale() for |t| <= 1.
    double residual_scale(double t) const noexcept {
        const double a = std::max(1.0, std::abs(t));
        double m = 1.0;
        double power = 1.0;
        for (std::size_t i = Degree + 1; i-- > 0;) {
            m = std::max(m, std::abs(coeffs[i]) * power);
            power *= a;
        }
        return m;
    }

    Polynomial<(Degree > 0 ? Degree - 1 : 0)> derivative() const noexcept
        requires(Degree > 0)
    {
        Polynomial<Degree - 1> d;
        for (std::size_t i = 0; i < Degree; ++i) {
            d.coeffs[i] = coeffs[i] * static_cast<double>(Degree - i);
        }
        return d;
    }
};

using Quartic = Polynomial<4>;

namespace detail {

template <std::size_t Degree>
double cauchy_bound(const Polynomial<Degree>& p) noexcept {
    double m = 0.0;
    for (std::size_t i = 1; i <= Degree; ++i) m = std::max(m, std::abs(p.coeffs[i] / p.coeffs[0]));
    return 1.0 + m;
}

// p(lo) and p(hi) have strictly opposite signs. Bisect until the bracket
// cannot shrink further in double precision.
template <std::size_t Degree>
double bisect(const Polynomial<Degree>& p, double lo, double hi, double f_lo) noexcept {
    for (int iter = 0; iter < 2200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = p(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <std::size_t Degree>
double newton_polish(const Polynomial<Degree>& p, double r) noexcept {
    const auto dp = p.derivative();
    double f = p(r);
    for (int iter = 0; iter < 8 && f != 0.0; ++iter) {
        const double slope = dp(r);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double next = r - f / slope;
        const double f_next = p(next);
        if (!(std::abs(f_next) < std::abs(f))) break;
        r = next;
        f = f_next;
    }
    return r;
}

// Unpolished roots found by splitting the line at the critical points into
// monotone pieces, each of which holds at most one simple root.
template <std::size_t Degree>
std::vector<double> isolate_roots(const Polynomial<Degree>& p, double touch_tol) {
    // touch_tol is relative to residual_scale at the extremum; 0 disables.
    if constexpr (Degree == 0) {
        return {};
    } else if constexpr (Degree == 1) {
        return {-p.coeffs[1] / p.coeffs[0]};
    } else {
        const double bound = cauchy_bound(p);
        std::vector<double> knots{-bound};
        for (double c : isolate_roots(p.derivative(), 0.0)) {
            if (c > -bound && c < bound) knots.push_back(c);
        }
        knots.push_back(bound);

        std::vector<double> roots;
        for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
            // Extremum that touches zero: even-multiplicity root.
            if (std::abs(p(knots[i])) <= touch_tol * p.residual_scale(knots[i])) roots.push_back(knots[i]);
        }
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            const double a = knots[i];
            const double b = knots[i + 1];
            const double fa = p(a);
            const double fb = p(b);
            if (fa == 0.0) {
                roots.push_back(a);
            } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
                roots.push_back(bisect(p, a, b, fa));
            }
        }
        if (p(bound) == 0.0) roots.push_back(bound);
        return roots;
    }
}

}  // namespace detail

/// All real roots of p, ascending, each Newton-polished so that
/// |p(r)| <= residual_tol * p.residual_scale(r). Roots closer than ~1e-9
/// relative are reported once. Throws SolverFailure if a root cannot meet the
/// tolerance.
template <std::size_t Degree>
std::vector<double> real_roots(const Polynomial<Degree>& p, double residual_tol) {
    if (p.leading() == 0.0) {
        throw Error(ErrorKind::InvalidInput, "leading coefficient is zero");
    }
    for (double c : p.coeffs) {
        if (!std::isfinite(c)) throw Error(ErrorKind::InvalidInput, "non-finite coefficient");
    }

    auto roots = detail::isolate_roots(p, residual_tol);
    for (double& r : roots) {
        r = detail::newton_polish(p, r);
        const double residual = std::abs(p(r));
        if (!(residual <= residual_tol * p.residual_scale(r))) {
            throw Error(ErrorKind::SolverFailure, "root polishing stalled at " + std::to_string(r) +
                                                      " with residual " + std::to_string(residual));
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || std::abs(r - unique.back()) > 1e-9 * std::max(1.0, std::abs(r))) {
            unique.push_back(r);
        }
    }
    return unique;
}

}  // namespace dualfit
