#include "qhkit/sampling.hpp"

#include <cmath>
#include <random>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

Point in_unit_ball(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        Point p = Point::zero(dim);
        for (int i = 0; i < dim; ++i) p[i] = u(rng);
        if (p.norm2() < 1.0) return p;
    }
}

}  // namespace

std::vector<PointPair> sample_pairs(const Domain& domain, std::size_t n, double margin, std::uint64_t seed) {
    const auto pts = domain.sample_interior(2 * n, margin, seed);
    std::vector<PointPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back({pts[2 * i], pts[2 * i + 1]});
    return out;
}

std::vector<PointPair> sample_local_pairs(const Domain& domain, std::size_t n, double margin, double max_rel,
                                          std::uint64_t seed) {
    if (!(max_rel > 0.0)) throw ValidationError("/max_rel", "must be positive");
    const auto xs = domain.sample_interior(n, margin, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<PointPair> out;
    out.reserve(n);
    for (const Point& x : xs) {
        const double dx = domain.dist_to_boundary(x);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000) throw SamplingError("could not place a partner point near " + x.str());
            const Point y = x + in_unit_ball(domain.dim(), rng) * (max_rel * dx);
            if (y == x || !domain.contains(y)) continue;
            out.push_back({x, y});
            break;
        }
    }
    return out;
}

std::vector<Triple> sample_triples(const Point& center, double radius, std::size_t n, std::uint64_t seed) {
    if (!(radius > 0.0)) throw ValidationError("/radius", "must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Triple> out;
    out.reserve(n);
    while (out.size() < n) {
        Triple t{center + in_unit_ball(center.dim(), rng) * radius, center + in_unit_ball(center.dim(), rng) * radius,
                 center + in_unit_ball(center.dim(), rng) * radius};
        if (t.x == t.a || t.x == t.b || t.a == t.b) continue;
        out.push_back(t);
    }
    return out;
}

}  // namespace qhkit
