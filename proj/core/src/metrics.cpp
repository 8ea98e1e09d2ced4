#include "qhkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qhkit/errors.hpp"
#include "qhkit/grid_graph.hpp"

namespace qhkit {

double j_metric(const Domain& domain, const Point& x, const Point& y) {
    const double dx = domain.dist_to_boundary(x);
    const double dy = domain.dist_to_boundary(y);
    return std::log1p(distance(x, y) / std::min(dx, dy));
}

MetricEstimate k_lower(const Domain& domain, const Point& x, const Point& y) {
    return {j_metric(domain, x, y), EstimateKind::lower, 0.0};
}

namespace {

struct Route {
    double value = 0.0;
    std::vector<int> nodes;  ///< interior graph nodes from x to y
    std::size_t edges = 0;
};

Route shortest_route(const Domain& domain, const Point& x, const Point& y, int level, double edge_tol) {
    domain.dist_to_boundary(x);
    domain.dist_to_boundary(y);
    if (x == y) return {};
    const Point xs = domain.to_shape(x), ys = domain.to_shape(y);
    auto& cache = GraphCache::instance();
    const auto g = cache.graph(domain, level, edge_tol);
    const auto tree = cache.tree(domain, *g, xs);

    Route best;
    best.value = std::numeric_limits<double>::infinity();
    if (auto w = g->direct_edge(domain, xs, ys)) {
        best.value = *w;
        best.edges = 1;
    }
    int last = -1;
    for (const auto& e : g->attach(domain, ys)) {
        const double v = tree->dist[static_cast<std::size_t>(e.to)] + e.weight;
        if (v < best.value) {
            best.value = v;
            last = e.to;
        }
    }
    if (!std::isfinite(best.value))
        throw ResolutionError("points " + x.str() + " and " + y.str() + " are not connected at level " +
                              std::to_string(level) + " in '" + domain.name() + "'");
    if (last >= 0) {
        best.nodes.clear();
        for (int u = last; u >= 0; u = tree->pred[static_cast<std::size_t>(u)]) best.nodes.push_back(u);
        std::reverse(best.nodes.begin(), best.nodes.end());
        best.edges = best.nodes.size() + 1;
    }
    return best;
}

}  // namespace

MetricEstimate k_upper(const Domain& domain, const Point& x, const Point& y, int level, double edge_tol) {
    const Route r = shortest_route(domain, x, y, level, edge_tol);
    return {r.value, EstimateKind::upper, edge_tol * static_cast<double>(r.edges)};
}

Path extract_neargeodesic(const Domain& domain, const Point& x, const Point& y, int level, double edge_tol) {
    if (x == y) throw ValidationError("a near-geodesic needs two distinct endpoints");
    const Route r = shortest_route(domain, x, y, level, edge_tol);
    const auto g = GraphCache::instance().graph(domain, level, edge_tol);
    Path p;
    p.points.push_back(x);
    for (int u : r.nodes) {
        const Point w = domain.to_world(g->node(u));
        if (!(w == p.points.back())) p.points.push_back(w);
    }
    if (p.points.back() == y) p.points.pop_back();
    p.points.push_back(y);
    return p;
}

std::vector<RefineStep> refine_k(const Domain& domain, const Point& x, const Point& y, int levels, int first_level) {
    if (levels < 2) throw ValidationError("/levels", "must be at least 2");
    std::vector<RefineStep> out;
    for (int l = first_level; l < first_level + levels; ++l) {
        RefineStep s{l, std::nullopt};
        try {
            s.estimate = k_upper(domain, x, y, l);
        } catch (const ResolutionError&) {
        }
        out.push_back(s);
    }
    return out;
}

NeargeodesicConstant neargeodesic_constant(const Path& path, const Domain& domain, std::size_t sample_pairs,
                                           int level, std::uint64_t seed) {
    if (sample_pairs < 1) throw ValidationError("/sample_pairs", "must be at least 1");
    validate_path(domain, path);
    const std::size_t n = path.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t all = n * (n - 1) / 2;
    if (sample_pairs >= all) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        while (pairs.size() < sample_pairs) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    // prefix sums of segment lengths give every subpath length
    std::vector<double> prefix(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        prefix[i + 1] = prefix[i] + qh_length(path.subpath(i, i + 1), domain, kDefaultEdgeTol * 1e-2).value;

    NeargeodesicConstant c;
    for (const auto& [i, j] : pairs) {
        const Point& u = path.points[i];
        const Point& v = path.points[j];
        if (u == v) continue;
        const double len = prefix[j] - prefix[i];
        const double lower = j_metric(domain, u, v);
        const double ratio = len / lower;
        if (ratio > c.certified) {
            c.certified = ratio;
            c.worst_i = i;
            c.worst_j = j;
        }
        try {
            c.estimated = std::max(c.estimated, len / k_upper(domain, u, v, level).value);
        } catch (const ResolutionError&) {
        }
        ++c.pairs_evaluated;
    }
    return c;
}

double lemma1_bound(const Domain& domain, const Point& x, const Point& y, double s) {
    if (!(s > 0.0 && s < 1.0)) throw ValidationError("/s", "must lie in (0, 1)");
    const double dx = domain.dist_to_boundary(x);
    const double sep = distance(x, y);
    if (sep > s * dx * (1.0 + 1e-12)) throw ValidationError("/y", "|x - y| exceeds s d(x)");
    return std::log1p(sep / dx) / (1.0 - s);
}

}  // namespace qhkit
