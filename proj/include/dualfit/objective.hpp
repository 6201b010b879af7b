#pragma once

#include "dualfit/errors.hpp"
#include "dualfit/stats.hpp"

namespace dualfit {

/// Least-squares intercept for a given slope; the fitted line always passes
/// through the centroid regardless of the error weighting.
inline double intercept(const SufficientStats& s, double beta1) noexcept {
    return s.y_bar - beta1 * s.x_bar;
}

namespace detail {

// Both error components share the bracket
//   V = S_yy - 2 b1 S_xy + b1^2 S_xx + n (y_bar - b0 - b1 x_bar)^2,
// the horizontal one scaled by 1/b1^2. Hence SSE = (gamma + (1-gamma)/b1^2) * V.
struct SplitObjective {
    double mean_residual;  // y_bar - b0 - b1 x_bar
    double bracket;        // V
    double weight;         // gamma + (1 - gamma) / b1^2
};

inline SplitObjective split(const SufficientStats& s, double beta0, double beta1, double gamma) {
    const double n = static_cast<double>(s.n);
    const double m = s.y_bar - beta0 - beta1 * s.x_bar;
    const double v = s.s_yy - 2.0 * beta1 * s.s_xy + beta1 * beta1 * s.s_xx + n * m * m;
    const double w = gamma == 1.0 ? 1.0 : gamma + (1.0 - gamma) / (beta1 * beta1);
    return {m, v, w};
}

}  // namespace detail

/// Gamma-weighted sum of squared vertical and squared horizontal errors,
/// evaluated from sufficient statistics.
inline double sse(const SufficientStats& s, double beta0, double beta1, double gamma) {
    if (beta1 == 0.0 && gamma < 1.0) {
        throw Error(ErrorKind::SingularSlope, "horizontal errors are undefined at slope 0");
    }
    const auto parts = detail::split(s, beta0, beta1, gamma);
    return parts.weight * parts.bracket;
}

struct Gradient {
    double d_beta0 = 0.0;
    double d_beta1 = 0.0;
};

/// Partial derivatives of sse with respect to intercept and slope.
inline Gradient sse_gradient(const SufficientStats& s, double beta0, double beta1, double gamma) {
    if (beta1 == 0.0) {
        throw Error(ErrorKind::SingularSlope, "gradient is undefined at slope 0");
    }
    const double n = static_cast<double>(s.n);
    const auto [m, v, w] = detail::split(s, beta0, beta1, gamma);

    const double dv_db0 = -2.0 * n * m;
    const double dv_db1 = -2.0 * s.s_xy + 2.0 * beta1 * s.s_xx - 2.0 * n * m * s.x_bar;
    const double dw_db1 = -2.0 * (1.0 - gamma) / (beta1 * beta1 * beta1);

    return {w * dv_db0, w * dv_db1 + v * dw_db1};
}

}  // namespace dualfit
