#include "qhkit/chain.hpp"

#include <cmath>
#include <optional>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

/// Smallest u in [u0, 1] with |a + u (b - a) - z| = radius, given |a + u0 (b - a) - z| <= radius.
std::optional<double> first_exit(const Point& a, const Point& b, double u0, const Point& z, double radius) {
    const Point dir = b - a;
    const Point off = a - z;
    const double A = dir.norm2();
    const double B = 2.0 * dir.dot(off);
    const double C = off.norm2() - radius * radius;
    if (A == 0.0) return std::nullopt;
    // The quadratic is convex in u; once inside at u0 the exit is its larger root.
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (B + std::copysign(sq, B));
    double r1 = q / A, r2 = q != 0.0 ? C / q : r1;
    double root = std::max(r1, r2);
    if (root < u0 || root > 1.0) return std::nullopt;
    // polish on |p(u) - z| - radius
    for (int it = 0; it < 3; ++it) {
        const Point p = a + dir * root - z;
        const double f = p.norm() - radius;
        const double df = dir.dot(p) / std::max(p.norm(), 1e-300);
        if (df == 0.0) break;
        const double next = root - f / df;
        if (!(next >= u0 && next <= 1.0)) break;
        root = next;
    }
    return root;
}

}  // namespace

std::vector<ChainPoint> chain_decompose(const Domain& domain, const Path& path, double step_fraction) {
    if (!(step_fraction > 0.0 && step_fraction < 1.0)) throw ValidationError("/step_fraction", "must lie in (0, 1)");
    validate_path(domain, path);
    std::vector<ChainPoint> chain{{path.front(), 0, 0.0}};
    const std::size_t nseg = path.size() - 1;
    while (true) {
        const ChainPoint& cur = chain.back();
        const double radius = step_fraction * domain.dist_to_boundary(cur.point);
        bool found = false;
        ChainPoint next;
        for (std::size_t s = cur.segment; s < nseg && !found; ++s) {
            const double u0 = s == cur.segment ? cur.t : 0.0;
            const Point& a = path.points[s];
            const Point& b = path.points[s + 1];
            // Segment distance to the centre is convex, so the end tells whether it exits.
            if (distance(b, cur.point) <= radius) continue;
            if (auto u = first_exit(a, b, u0, cur.point, radius)) {
                next = {lerp(a, b, *u), s, *u};
                found = true;
            }
        }
        if (!found) break;
        chain.push_back(next);
    }
    return chain;
}

}  // namespace qhkit
