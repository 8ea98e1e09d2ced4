#pragma once
// Independent reference computations used only by the tests.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "qhkit/domain.hpp"

namespace oracle {

using qhkit::Point;

/// Enclosure of ∫ ds / d over [a, b] using only that d is 1-Lipschitz: on a piece
/// of length h with midpoint distance m, 1/d lies in [1/(m + h/2), 1/(m - h/2)].
inline std::pair<double, double> lipschitz_enclosure(const qhkit::Domain& dom, const Point& a, const Point& b,
                                                     int pieces) {
    double lo = 0.0, hi = 0.0;
    const double h = qhkit::distance(a, b) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double m = dom.dist_to_boundary(qhkit::lerp(a, b, (i + 0.5) / pieces));
        lo += h / (m + 0.5 * h);
        hi += (m > 0.5 * h) ? h / (m - 0.5 * h) : INFINITY;
    }
    return {lo, hi};
}

/// Minimum distance from p to a list of boundary samples.
inline double nearest(const Point& p, const std::vector<Point>& samples) {
    double best = INFINITY;
    for (const auto& q : samples) best = std::min(best, qhkit::distance(p, q));
    return best;
}

inline std::vector<Point> circle(const Point& c, double r, int n) {
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        out.push_back(c + Point(std::cos(t), std::sin(t)) * r);
    }
    return out;
}

inline std::vector<Point> segment(const Point& a, const Point& b, int n) {
    std::vector<Point> out;
    for (int i = 0; i <= n; ++i) out.push_back(qhkit::lerp(a, b, double(i) / n));
    return out;
}

/// Hyperbolic distance of the upper half-plane, which equals its quasihyperbolic metric.
inline double half_plane_k(const Point& x, const Point& y) {
    const int n = x.dim() - 1;
    return std::acosh(1.0 + (x - y).norm2() / (2.0 * x[n] * y[n]));
}

/// Hyperbolic distance of the unit disk with density 2/(1 - |z|^2); k <= rho <= 2k.
inline double disk_rho(const Point& x, const Point& y) {
    return std::acosh(1.0 + 2.0 * (x - y).norm2() / ((1.0 - x.norm2()) * (1.0 - y.norm2())));
}

inline Point random_in_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        Point p(u(rng), u(rng));
        if (p.norm() < 1.0) return p * radius;
    }
}

}  // namespace oracle
