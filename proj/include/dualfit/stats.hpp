#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dualfit/errors.hpp"

namespace dualfit {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Ordered (x, y) observations. Construction validates n >= 2 and finiteness,
/// so every Dataset in circulation is usable by compute_stats.
class Dataset {
  public:
    explicit Dataset(std::vector<Point> points) : points_(std::move(points)) {
        if (points_.size() < 2) {
            throw Error(ErrorKind::InvalidInput,
                        "need at least 2 observations, got " + std::to_string(points_.size()));
        }
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
                throw Error(ErrorKind::InvalidInput,
                            "observation " + std::to_string(i) + " has a non-finite coordinate");
            }
        }
    }

    std::span<const Point> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const noexcept { return points_[i]; }

  private:
    std::vector<Point> points_;
};

/// Centered second moments of a dataset. Every fit quantity is a function of
/// these alone.
struct SufficientStats {
    std::size_t n = 0;
    double x_bar = 0.0;
    double y_bar = 0.0;
    double s_xx = 0.0;
    double s_yy = 0.0;
    double s_xy = 0.0;
    double rho = 0.0;
};

/// Two-pass centered sums. Throws DegenerateData when all x (or all y) coincide.
inline SufficientStats compute_stats(const Dataset& data) {
    const auto pts = data.points();
    const auto n = pts.size();

    double sum_x = 0.0;
    double sum_y = 0.0;
    for (const auto& p : pts) {
        sum_x += p.x;
        sum_y += p.y;
    }

    SufficientStats s;
    s.n = n;
    s.x_bar = sum_x / static_cast<double>(n);
    s.y_bar = sum_y / static_cast<double>(n);

    for (const auto& p : pts) {
        const double dx = p.x - s.x_bar;
        const double dy = p.y - s.y_bar;
        s.s_xx += dx * dx;
        s.s_yy += dy * dy;
        s.s_xy += dx * dy;
    }

    if (s.s_xx == 0.0) {
        throw Error(ErrorKind::DegenerateData, "all x values are equal (S_xx = 0)");
    }
    if (s.s_yy == 0.0) {
        throw Error(ErrorKind::DegenerateData, "all y values are equal (S_yy = 0)");
    }

    // Rounding can push |rho| a hair past 1 on collinear data.
    s.rho = s.s_xy / std::sqrt(s.s_xx * s.s_yy);
    if (s.rho > 1.0) s.rho = 1.0;
    if (s.rho < -1.0) s.rho = -1.0;
    return s;
}

/// Statistics of the dataset with every y negated.
inline SufficientStats reflect_y(const SufficientStats& s) noexcept {
    SufficientStats r = s;
    r.y_bar = -s.y_bar;
    r.s_xy = -s.s_xy;
    r.rho = -s.rho;
    return r;
}

}  // namespace dualfit
