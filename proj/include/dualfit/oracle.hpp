#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "dualfit/errors.hpp"
#include "dualfit/fit.hpp"
#include "dualfit/objective.hpp"
#include "dualfit/stats.hpp"

// Derivative-free cross-checks of the quartic fit. Nothing in here touches
// build_quartic or real_roots.
namespace dualfit::oracle {

/// Agreement required between the quartic slope and the oracle slope,
/// relative to (1 + |slope|), and the allowed gradient relative error.
inline constexpr double kSlopeAgreementTol = 1e-6;
inline constexpr double kGradientTol = 1e-6;
inline constexpr std::size_t kMaxProfileEvals = 200;

inline double profile_sse(const SufficientStats& s, double beta1, double gamma) {
    if (beta1 == 0.0) {
        throw Error(ErrorKind::SingularSlope, "profile SSE is undefined at slope 0");
    }
    return sse(s, intercept(s, beta1), beta1, gamma);
}

struct ProfileMinimum {
    double slope = 0.0;
    std::size_t evaluations = 0;
    double bracket_lower = 0.0;
    double bracket_upper = 0.0;
};

/// Golden-section search for the minimizer of profile_sse over the slope
/// bounds widened by 1% on each side. A coarse grid of probes picks the
/// starting sub-bracket (the neighbours of the best probe); the search stops
/// once the bracket is narrower than tol or the evaluation budget runs out.
inline ProfileMinimum minimize_profile(const SufficientStats& s, double gamma, double tol) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw Error(ErrorKind::InvalidInput, "gamma must lie in [0, 1]");
    }
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");

    const auto bounds = slope_bounds(s);
    ProfileMinimum result;
    result.bracket_lower = 0.99 * bounds.lower;
    result.bracket_upper = 1.01 * bounds.upper;

    auto f = [&](double b) {
        ++result.evaluations;
        return profile_sse(s, b, gamma);
    };

    // Probes: both widened ends, then a uniform grid over the unwidened
    // bounds (ends included). The profile falls below the lower bound and
    // rises above the upper one, so a well-posed problem never has its
    // lowest probe at a widened end.
    constexpr std::size_t kGrid = 17;
    std::array<double, kGrid + 2> xs{};
    std::array<double, kGrid + 2> fs{};
    xs.front() = result.bracket_lower;
    xs.back() = result.bracket_upper;
    for (std::size_t i = 0; i < kGrid; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(kGrid - 1);
        xs[i + 1] = bounds.lower + t * (bounds.upper - bounds.lower);
    }
    xs[kGrid] = bounds.upper;
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

    const auto interior_best =
        std::min_element(fs.begin() + 1, fs.end() - 1) - fs.begin();
    if (std::min(fs.front(), fs.back()) < fs[interior_best]) {
        throw Error(ErrorKind::BracketFailure,
                    "profile SSE is lowest at the bracket end; interval [" +
                        std::to_string(result.bracket_lower) + ", " + std::to_string(result.bracket_upper) +
                        "] does not bracket a minimum");
    }

    constexpr double kInvPhi = 0.6180339887498948482;
    double a = xs[interior_best - 1];
    double b = xs[interior_best + 1];
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol && result.evaluations < kMaxProfileEvals) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        if (!(c > a && d < b)) break;  // bracket below double resolution
    }
    result.slope = 0.5 * (a + b);
    return result;
}

/// Largest relative error over the two components between sse_gradient and
/// central differences of sse. Per-component step is step * (1 + |beta|);
/// the error is relative to max(|analytic|, |numeric|, 1 + |SSE|).
inline double check_gradient(const SufficientStats& s, double beta0, double beta1, double gamma,
                             double step) {
    const double h0 = step * (1.0 + std::abs(beta0));
    const double h1 = step * (1.0 + std::abs(beta1));
    if (beta1 == 0.0 || std::abs(beta1) <= h1) {
        throw Error(ErrorKind::SingularSlope, "finite-difference stencil straddles slope 0");
    }

    const auto analytic = sse_gradient(s, beta0, beta1, gamma);
    const double numeric0 = (sse(s, beta0 + h0, beta1, gamma) - sse(s, beta0 - h0, beta1, gamma)) / (2.0 * h0);
    const double numeric1 = (sse(s, beta0, beta1 + h1, gamma) - sse(s, beta0, beta1 - h1, gamma)) / (2.0 * h1);
    const double floor = 1.0 + std::abs(sse(s, beta0, beta1, gamma));

    auto rel = [floor](double a, double n) {
        return std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor});
    };
    return std::max(rel(analytic.d_beta0, numeric0), rel(analytic.d_beta1, numeric1));
}

struct OracleReport {
    double oracle_slope = 0.0;
    double quartic_slope = 0.0;
    double abs_gap = 0.0;
    std::size_t profile_evals = 0;
    double bracket_lower = 0.0;
    double bracket_upper = 0.0;
    double gradient_max_rel_err = 0.0;

    bool passed(double agreement_tol = kSlopeAgreementTol) const noexcept {
        return abs_gap <= agreement_tol * (1.0 + std::abs(quartic_slope)) &&
               gradient_max_rel_err <= kGradientTol;
    }
};

/// Fits with config, then re-derives the slope with minimize_profile and
/// checks the analytic gradient at the fitted line.
inline OracleReport verify(const SufficientStats& s, const FitConfig& config) {
    const auto line = fit(s, config);
    const bool flip = line.reflected;
    const auto positive = flip ? reflect_y(s) : s;

    const auto minimum = minimize_profile(positive, config.gamma, config.oracle_tol);
    OracleReport report;
    report.quartic_slope = line.beta1;
    report.oracle_slope = flip ? -minimum.slope : minimum.slope;
    report.abs_gap = std::abs(report.oracle_slope - report.quartic_slope);
    report.profile_evals = minimum.evaluations;
    report.bracket_lower = flip ? -minimum.bracket_upper : minimum.bracket_lower;
    report.bracket_upper = flip ? -minimum.bracket_lower : minimum.bracket_upper;
    report.gradient_max_rel_err = check_gradient(s, line.beta0, line.beta1, config.gamma, 1e-6);
    return report;
}

}  // namespace dualfit::oracle
