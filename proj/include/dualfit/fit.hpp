#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dualfit/errors.hpp"
#include "dualfit/objective.hpp"
#include "dualfit/polynomial.hpp"
#include "dualfit/stats.hpp"

namespace dualfit {

enum class NegativeCorrelationPolicy { Error, Reflect };

struct FitConfig {
    double gamma = 0.5;
    double root_residual_tol = 1e-10;
    /// Absolute tolerance handed to the golden-section oracle.
    double oracle_tol = 1e-9;
    /// Relative widening of the admissible slope interval.
    double bound_slack = 1e-8;
    NegativeCorrelationPolicy negative_correlation_policy = NegativeCorrelationPolicy::Error;
};

inline void validate(const FitConfig& c) {
    if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) {
        throw Error(ErrorKind::InvalidInput, "gamma must lie in [0, 1], got " + std::to_string(c.gamma));
    }
    if (!(c.root_residual_tol > 0.0) || !(c.oracle_tol > 0.0) || !(c.bound_slack > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "tolerances must be positive");
    }
}

/// |rho| below this makes both endpoint slopes and the slope interval meaningless.
inline constexpr double kZeroCorrelation = 1e-12;

/// Stationarity condition of the profile SSE in the slope, normalized by
/// sqrt(S_xx * S_yy). Only defined for interior gamma.
inline Quartic build_quartic(const SufficientStats& s, double gamma) {
    if (!(s.s_xx > 0.0) || !(s.s_yy > 0.0)) {
        throw Error(ErrorKind::DegenerateData, "S_xx and S_yy must be positive");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorKind::InvalidInput, "quartic requires 0 < gamma < 1");
    }
    const double spread_ratio = std::sqrt(s.s_xx / s.s_yy);
    return Quartic{{gamma * spread_ratio, -gamma * s.rho, 0.0, (1.0 - gamma) * s.rho,
                    -(1.0 - gamma) / spread_ratio}};
}

struct SlopeBounds {
    double lower = 0.0;  // OLS slope of y on x
    double upper = 0.0;  // slope of the x-on-y regression line
};

/// Interval that holds the fitted slope for every gamma on positively
/// correlated data. Computed as S_xy/S_xx and S_yy/S_xy.
inline SlopeBounds slope_bounds(const SufficientStats& s) {
    if (!(s.s_xx > 0.0) || !(s.s_yy > 0.0)) {
        throw Error(ErrorKind::DegenerateData, "S_xx and S_yy must be positive");
    }
    if (!(s.rho > 0.0) || !(s.s_xy > 0.0)) {
        throw Error(ErrorKind::NonPositiveCorrelation,
                    "slope bounds need positive correlation, rho = " + std::to_string(s.rho));
    }
    SlopeBounds b{s.s_xy / s.s_xx, s.s_yy / s.s_xy};
    if (s.rho == 1.0 || b.upper < b.lower) b.upper = b.lower = 0.5 * (b.lower + b.upper);
    return b;
}

/// SSE as a function of slope alone, intercept set to pass through the centroid.
inline double profile_sse_at(const SufficientStats& s, double beta1, double gamma) {
    return sse(s, intercept(s, beta1), beta1, gamma);
}

struct SlopeSelection {
    double slope = 0.0;
    /// True when no root was strictly admissible and a near-miss was clamped.
    bool clamped = false;
    /// Relative distance the accepted root sat outside the slack interval.
    double bound_violation = 0.0;
};

/// Picks the fitted slope among the real roots of the stationarity quartic:
/// admissible roots lie in the slope interval widened by bound_slack, and the
/// one with the smallest profile SSE wins (ties go to the smaller slope).
/// The winner must also beat the profile SSE at both interval ends.
inline SlopeSelection select_slope(const std::vector<double>& roots, const SufficientStats& s,
                                   double gamma, const FitConfig& config) {
    const auto bounds = slope_bounds(s);
    const double lo = bounds.lower * (1.0 - config.bound_slack);
    const double hi = bounds.upper * (1.0 + config.bound_slack);

    SlopeSelection best;
    double best_sse = 0.0;
    bool found = false;
    for (double r : roots) {
        if (r < lo || r > hi) continue;
        const double value = profile_sse_at(s, r, gamma);
        if (!found || value < best_sse || (value == best_sse && r < best.slope)) {
            best.slope = r;
            best_sse = value;
            found = true;
        }
    }

    if (!found) {
        const double near_lo = bounds.lower * (1.0 - 10.0 * config.bound_slack);
        const double near_hi = bounds.upper * (1.0 + 10.0 * config.bound_slack);
        double best_gap = 0.0;
        for (double r : roots) {
            if (r <= 0.0 || r < near_lo || r > near_hi) continue;
            const double gap = r < lo ? (bounds.lower - r) / bounds.lower : (r - bounds.upper) / bounds.upper;
            if (!found || gap < best_gap) {
                best.slope = std::clamp(r, lo, hi);
                best_gap = gap;
                found = true;
            }
        }
        if (!found) {
            throw Error(ErrorKind::NoAdmissibleRoot,
                        "no positive root in [" + std::to_string(bounds.lower) + ", " +
                            std::to_string(bounds.upper) + "]");
        }
        best.clamped = true;
        best.bound_violation = best_gap;
        best_sse = profile_sse_at(s, best.slope, gamma);
    }

    // A stationary point that loses to an interval end is not the minimizer.
    const double slack = 1e-12 * std::abs(best_sse);
    for (double end : {bounds.lower, bounds.upper}) {
        if (profile_sse_at(s, end, gamma) + slack < best_sse) {
            throw Error(ErrorKind::NoAdmissibleRoot,
                        "stationary slope " + std::to_string(best.slope) +
                            " has larger SSE than interval end " + std::to_string(end));
        }
    }
    return best;
}

struct FittedLine {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double gamma = 0.0;
    double sse = 0.0;
    /// Real roots of the stationarity quartic; empty at gamma 0 or 1.
    std::vector<double> candidate_roots;
    double selected_root_residual = 0.0;
    bool reflected = false;
    bool clamped = false;
    double bound_violation = 0.0;
};

inline double predict(const FittedLine& line, double x) noexcept { return line.beta0 + line.beta1 * x; }

inline double inverse_predict(const FittedLine& line, double y) {
    if (line.beta1 == 0.0) {
        throw Error(ErrorKind::SingularSlope, "a horizontal line has no inverse");
    }
    return y / line.beta1 - line.beta0 / line.beta1;
}

namespace detail {

inline FittedLine fit_positive(const SufficientStats& s, const FitConfig& config) {
    FittedLine line;
    line.gamma = config.gamma;
    if (config.gamma == 1.0) {
        line.beta1 = s.s_xy / s.s_xx;
    } else if (config.gamma == 0.0) {
        line.beta1 = s.s_yy / s.s_xy;
    } else {
        const auto q = build_quartic(s, config.gamma);
        line.candidate_roots = real_roots(q, config.root_residual_tol);
        const auto choice = select_slope(line.candidate_roots, s, config.gamma, config);
        line.beta1 = choice.slope;
        line.clamped = choice.clamped;
        line.bound_violation = choice.bound_violation;
        line.selected_root_residual = std::abs(q(choice.slope));
    }
    line.beta0 = intercept(s, line.beta1);
    line.sse = sse(s, line.beta0, line.beta1, config.gamma);
    return line;
}

}  // namespace detail

/// Fits the line minimizing the gamma-weighted vertical plus horizontal SSE.
/// gamma = 1 and gamma = 0 use the closed-form regression slopes; interior
/// gamma goes through the quartic.
inline FittedLine fit(const SufficientStats& s, const FitConfig& config) {
    validate(config);
    if (!(s.s_xx > 0.0) || !(s.s_yy > 0.0)) {
        throw Error(ErrorKind::DegenerateData, "S_xx and S_yy must be positive");
    }
    if (std::abs(s.rho) < kZeroCorrelation) {
        throw Error(ErrorKind::ZeroCorrelation, "x and y are uncorrelated");
    }
    if (s.rho > 0.0) return detail::fit_positive(s, config);

    if (config.negative_correlation_policy == NegativeCorrelationPolicy::Error) {
        throw Error(ErrorKind::NonPositiveCorrelation,
                    "rho = " + std::to_string(s.rho) + "; enable reflection to fit negatively correlated data");
    }
    auto line = detail::fit_positive(reflect_y(s), config);
    line.beta1 = -line.beta1;
    line.beta0 = intercept(s, line.beta1);
    line.sse = sse(s, line.beta0, line.beta1, config.gamma);
    for (double& r : line.candidate_roots) r = -r;
    std::reverse(line.candidate_roots.begin(), line.candidate_roots.end());
    line.reflected = true;
    return line;
}

inline FittedLine fit(const Dataset& data, const FitConfig& config) {
    validate(config);
    return fit(compute_stats(data), config);
}

}  // namespace dualfit
