#include "qhkit/path.hpp"

#include <queue>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qhkit/errors.hpp"

namespace qhkit {

double Path::euclidean_length() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) s += distance(points[i], points[i + 1]);
    return s;
}

Path Path::subpath(std::size_t i, std::size_t j) const {
    return Path{std::vector<Point>(points.begin() + static_cast<std::ptrdiff_t>(i),
                                   points.begin() + static_cast<std::ptrdiff_t>(j) + 1)};
}

const char* to_string(EstimateKind k) {
    switch (k) {
        case EstimateKind::upper:
            return "upper";
        case EstimateKind::lower:
            return "lower";
        case EstimateKind::exact:
            return "exact";
    }
    return "?";
}

void validate_path(const Domain& domain, const Path& path) {
    if (path.size() < 2) throw PathError("a path needs at least two points");
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!domain.contains(path.points[i]))
            throw PathError("path vertex " + std::to_string(i) + " " + path.points[i].str() + " is not inside '" +
                            domain.name() + "'");
        if (i > 0 && path.points[i] == path.points[i - 1])
            throw PathError("path vertices " + std::to_string(i - 1) + " and " + std::to_string(i) + " coincide");
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!domain.segment_inside(path.points[i], path.points[i + 1]))
            throw PathError("path segment " + std::to_string(i) + " is not certified inside '" + domain.name() + "'");
}

namespace {

constexpr int kMaxSplits = 4000;

// Globally adaptive Gauss-Kronrod: bisect the interval with the largest error
// until the summed error meets the absolute budget. Kinks of the distance
// function then cost a few bisections instead of a full-depth recursion.
double integrate_piece(const Domain& domain, const Point& a, const Point& b, double tol, double& err) {
    const double len = distance(a, b);
    if (len == 0.0) return 0.0;
    auto f = [&](double t) {
        const double d = domain.shape_distance(lerp(a, b, t));
        if (!(d > 0.0)) throw PathError("integrand evaluated outside the domain at " + lerp(a, b, t).str());
        return 1.0 / d;
    };
    struct Piece {
        double lo, hi, value, error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    auto rule = [&](double lo, double hi) {
        double e = 0.0;
        const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &e);
        // Boost reports the single-rule error on the reference interval [-1, 1].
        return Piece{lo, hi, v, e * 0.5 * (hi - lo)};
    };
    std::priority_queue<Piece> work;
    work.push(rule(0.0, 1.0));
    double total_err = work.top().error;
    for (int n = 0; n < kMaxSplits && total_err * len > tol; ++n) {
        const Piece p = work.top();
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi)) break;
        work.pop();
        const Piece l = rule(p.lo, mid), r = rule(mid, p.hi);
        total_err += l.error + r.error - p.error;
        work.push(l);
        work.push(r);
    }
    double v = 0.0, e = 0.0;
    for (; !work.empty(); work.pop()) {
        v += work.top().value;
        e += work.top().error;
    }
    err += e * len;
    return v * len;
}

}  // namespace

double qh_segment_shape(const Domain& domain, const Point& a, const Point& b, double tol, double* err) {
    double e = 0.0;
    const double v = integrate_piece(domain, a, b, tol, e);
    if (err) *err = e;
    return v;
}

MetricEstimate qh_length(const Path& path, const Domain& domain, double tol) {
    if (!(tol > 0.0)) throw ValidationError("/tol", "must be positive");
    validate_path(domain, path);
    const double per = tol / static_cast<double>(path.size() - 1);
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        double e = 0.0;
        total += qh_segment_shape(domain, domain.to_shape(path.points[i]), domain.to_shape(path.points[i + 1]), per, &e);
        err += e;
    }
    return {total, EstimateKind::exact, std::max(tol, err)};
}

}  // namespace qhkit
