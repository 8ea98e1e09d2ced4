#include "qhkit/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double polyline_distance(const Point& p, const std::vector<Point>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) best = std::min(best, distance_to_segment(p, v[i], v[i + 1]));
    return best;
}

double polygon_distance(const Point& p, const std::vector<Point>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
        best = std::min(best, distance_to_segment(p, v[i], v[(i + 1) % v.size()]));
    return best;
}

/// Distance from an interior point to the boundary of an image set.
double image_set_distance(const ImageSet& s, const Point& p) {
    if (!s.curve || !s.index) {
        const double d = s.index ? s.index->distance(p) : polygon_distance(p, s.boundary);
        return d - s.chord_error;
    }
    thread_local std::vector<std::size_t> near;
    const double dp = s.index->distance(p, 2.0 * s.chord_error, near);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(s.boundary.size());
    double best = std::numeric_limits<double>::infinity();
    auto g = [&](double th) { return distance(p, s.curve(th)); };
    // Consecutive candidate edges are searched together, at most three per run.
    const long n = static_cast<long>(s.boundary.size());
    std::sort(near.begin(), near.end());
    std::size_t i = 0;
    if (near.size() > 1 && near.front() == 0 && static_cast<long>(near.back()) == n - 1) {
        // Start after the wrap so a run crossing edge 0 stays whole.
        while (i + 1 < near.size() && near[i + 1] == near[i] + 1) ++i;
        std::rotate(near.begin(), near.begin() + static_cast<long>(i) + 1, near.end());
    }
    for (std::size_t k = 0; k < near.size();) {
        long first = static_cast<long>(near[k]), last = first;
        std::size_t len = 1;
        while (k + len < near.size() && len < 3 && static_cast<long>(near[k + len]) == (last + 1) % n) {
            last = static_cast<long>(near[k + len]);
            ++len;
        }
        if (last < first) last += n;
        k += len;
        const double a = step * (static_cast<double>(first) - 0.5), b = step * (static_cast<double>(last) + 1.5);
        const auto [th, v] = boost::math::tools::brent_find_minima(g, a, b, 26);
        (void)th;
        best = std::min(best, v);
    }
    // The curve stays within chord_error of the polygon, which bounds the true
    // distance on both sides; a failed minimisation falls back to the low side.
    if (!(best <= dp + s.chord_error && best >= dp - s.chord_error)) best = dp - s.chord_error;
    return best * (1.0 - 1e-12);
}

void require_finite(const Point& p, const std::string& field) {
    if (!p.finite()) throw ValidationError(field, "coordinates must be finite");
}

void require_radius(double r, const std::string& field) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError(field, "must be a finite positive number");
}

int validate(const Shape& shape) {
    return std::visit(
        Overloaded{
            [](const Ball& b) {
                require_finite(b.center, "/center");
                require_radius(b.radius, "/radius");
                return b.center.dim();
            },
            [](const PuncturedBall& b) {
                require_finite(b.center, "/center");
                require_finite(b.puncture, "/puncture");
                require_radius(b.radius, "/radius");
                if (b.puncture.dim() != b.center.dim())
                    throw ValidationError("/puncture", "dimension differs from center");
                if (!(distance(b.puncture, b.center) < b.radius))
                    throw ValidationError("/puncture", "must lie strictly inside the ball");
                return b.center.dim();
            },
            [](const SlitDisk&) { return 2; },
            [](const HalfPlane& h) {
                if (h.dim != 2 && h.dim != 3) throw ValidationError("/dim", "must be 2 or 3");
                return h.dim;
            },
            [](const StraightTube& t) {
                require_radius(t.length, "/length");
                require_radius(t.radius, "/radius");
                if (t.dim != 2 && t.dim != 3) throw ValidationError("/dim", "must be 2 or 3");
                return t.dim;
            },
            [](const ZigzagTube& z) {
                require_radius(z.radius, "/radius");
                if (z.vertices.size() < 2) throw ValidationError("/vertices", "need at least two vertices");
                const int dim = z.vertices.front().dim();
                double min_len = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < z.vertices.size(); ++i) {
                    const std::string f = "/vertices/" + std::to_string(i);
                    require_finite(z.vertices[i], f);
                    if (z.vertices[i].dim() != dim) throw ValidationError(f, "dimension mismatch");
                    if (i > 0) min_len = std::min(min_len, distance(z.vertices[i], z.vertices[i - 1]));
                }
                if (!(min_len > 0.0)) throw ValidationError("/vertices", "consecutive vertices must differ");
                if (z.radius > min_len / 10.0)
                    throw ValidationError("/radius", "must not exceed 1/10 of the shortest segment length");
                return dim;
            },
            [](const ImageSet& s) {
                if (s.boundary.size() < 3) throw ValidationError("/boundary", "need at least three vertices");
                if (!s.inside) throw ValidationError("/inside", "membership predicate missing");
                return 2;
            },
        },
        shape);
}

std::string key_of(const Shape& shape) {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const Ball& b) { os << "ball" << b.center.str() << b.radius; },
                   [&](const PuncturedBall& b) {
                       os << "punctured_ball" << b.center.str() << b.radius << b.puncture.str();
                   },
                   [&](const SlitDisk&) { os << "slit_disk"; },
                   [&](const HalfPlane& h) { os << "half_plane" << h.dim; },
                   [&](const StraightTube& t) { os << "straight_tube" << t.length << ',' << t.radius << ',' << t.dim; },
                   [&](const ZigzagTube& z) {
                       os << "zigzag_tube" << z.radius;
                       for (const auto& v : z.vertices) os << v.str();
                   },
                   [&](const ImageSet& s) { os << "image_set#" << s.id; },
               },
               shape);
    return os.str();
}

}  // namespace

Domain::Domain(Shape shape, std::string name) : Domain(std::move(shape), Frame(2), std::move(name)) {}

Domain::Domain(Shape shape, Frame frame, std::string name)
    : shape_(std::make_shared<const Shape>(std::move(shape))), frame_(std::move(frame)), name_(std::move(name)) {
    dim_ = validate(*shape_);
    if (frame_.is_identity() && frame_.dim() != dim_) frame_ = Frame(dim_);
    if (frame_.dim() != dim_) throw ValidationError("/frame", "dimension differs from shape");
    shape_key_ = key_of(*shape_);
    if (name_.empty()) name_ = kind();
}

std::string Domain::kind() const {
    static const char* kNames[] = {"ball",          "punctured_ball", "slit_disk", "half_plane",
                                   "straight_tube", "zigzag_tube",    "image_set"};
    return kNames[shape_->index()];
}

Domain Domain::transformed(const Frame& outer, std::string name) const {
    Domain d = *this;
    d.frame_ = outer.compose(frame_);
    if (!name.empty()) d.name_ = std::move(name);
    return d;
}

double Domain::shape_distance(const Point& p) const {
    return std::visit(
        Overloaded{
            [&](const Ball& b) { return b.radius - distance(p, b.center); },
            [&](const PuncturedBall& b) { return std::min(b.radius - distance(p, b.center), distance(p, b.puncture)); },
            [&](const SlitDisk&) {
                const double circle = 1.0 - p.norm();
                const double slit = distance_to_segment(p, Point(0.0, 0.0), Point(1.0, 0.0));
                return std::min(circle, slit);
            },
            [&](const HalfPlane& h) { return p[h.dim - 1]; },
            [&](const StraightTube& t) {
                return t.radius - distance_to_segment(p, Point::zero(t.dim), Point::unit(t.dim, 0) * t.length);
            },
            [&](const ZigzagTube& z) { return z.radius - polyline_distance(p, z.vertices); },
            [&](const ImageSet& s) {
                if (!s.inside(p)) return -(s.index ? s.index->distance(p) : polygon_distance(p, s.boundary));
                return image_set_distance(s, p);
            },
        },
        *shape_);
}

bool Domain::shape_contains(const Point& p) const {
    if (p.dim() != dim_ || !p.finite()) return false;
    if (const auto* s = std::get_if<ImageSet>(shape_.get())) return s->inside(p);
    return shape_distance(p) > 0.0;
}

bool Domain::contains(const Point& p) const {
    if (p.dim() != dim_ || !p.finite()) return false;
    return shape_contains(to_shape(p));
}

double Domain::dist_to_boundary(const Point& p) const {
    if (!contains(p)) throw DomainMembershipError("point " + p.str() + " is not inside domain '" + name_ + "'");
    const double d = shape_distance(to_shape(p));
    if (!(d > 0.0))
        throw DomainMembershipError("point " + p.str() + " is too close to the boundary of '" + name_ + "'");
    return frame_.scale() * d;
}

bool Domain::shape_segment_inside(const Point& a, const Point& b) const {
    struct Piece {
        Point a, b;
        int depth;
    };
    std::vector<Piece> stack{{a, b, 0}};
    while (!stack.empty()) {
        Piece pc = stack.back();
        stack.pop_back();
        const Point m = lerp(pc.a, pc.b, 0.5);
        const double h = 0.5 * distance(pc.a, pc.b);
        const double dm = shape_distance(m);
        if (dm > h) continue;  // closed piece lies in the open ball B(m, d(m))
        if (!(dm > 0.0) || pc.depth >= kSegmentInsideMaxDepth) return false;
        stack.push_back({pc.a, m, pc.depth + 1});
        stack.push_back({m, pc.b, pc.depth + 1});
    }
    return true;
}

bool Domain::segment_inside(const Point& a, const Point& b) const {
    if (!contains(a) || !contains(b)) return false;
    return shape_segment_inside(to_shape(a), to_shape(b));
}

Box Domain::shape_box() const {
    return std::visit(
        Overloaded{
            [&](const Ball& b) {
                Point e = Point::zero(dim_);
                for (int i = 0; i < dim_; ++i) e[i] = b.radius;
                return Box{b.center - e, b.center + e};
            },
            [&](const PuncturedBall& b) {
                Point e = Point::zero(dim_);
                for (int i = 0; i < dim_; ++i) e[i] = b.radius;
                return Box{b.center - e, b.center + e};
            },
            [&](const SlitDisk&) { return Box{Point(-1.0, -1.0), Point(1.0, 1.0)}; },
            [&](const HalfPlane& h) {
                Point lo = Point::zero(h.dim), hi = Point::zero(h.dim);
                for (int i = 0; i + 1 < h.dim; ++i) {
                    lo[i] = -2.0;
                    hi[i] = 2.0;
                }
                hi[h.dim - 1] = 4.0;
                return Box{lo, hi};
            },
            [&](const StraightTube& t) {
                Point lo = Point::zero(t.dim), hi = Point::zero(t.dim);
                for (int i = 0; i < t.dim; ++i) {
                    lo[i] = -t.radius;
                    hi[i] = t.radius;
                }
                hi[0] = t.length + t.radius;
                return Box{lo, hi};
            },
            [&](const ZigzagTube& z) {
                Point lo = z.vertices.front(), hi = z.vertices.front();
                for (const auto& v : z.vertices)
                    for (int i = 0; i < dim_; ++i) {
                        lo[i] = std::min(lo[i], v[i]);
                        hi[i] = std::max(hi[i], v[i]);
                    }
                for (int i = 0; i < dim_; ++i) {
                    lo[i] -= z.radius;
                    hi[i] += z.radius;
                }
                return Box{lo, hi};
            },
            [&](const ImageSet& s) {
                Point lo = s.boundary.front(), hi = s.boundary.front();
                for (const auto& v : s.boundary)
                    for (int i = 0; i < 2; ++i) {
                        lo[i] = std::min(lo[i], v[i]);
                        hi[i] = std::max(hi[i], v[i]);
                    }
                return Box{lo, hi};
            },
        },
        *shape_);
}

double Domain::shape_scale() const {
    return std::visit(Overloaded{
                          [](const Ball& b) { return b.radius; },
                          [](const PuncturedBall& b) { return b.radius; },
                          [](const SlitDisk&) { return 1.0; },
                          [](const HalfPlane&) { return 1.0; },
                          [](const StraightTube& t) { return 4.0 * t.radius; },
                          [](const ZigzagTube& z) { return 4.0 * z.radius; },
                          [this](const ImageSet&) {
                              const Box b = shape_box();
                              return 0.5 * std::max(b.hi[0] - b.lo[0], b.hi[1] - b.lo[1]);
                          },
                      },
                      *shape_);
}

Point Domain::shape_anchor() const {
    return std::visit(Overloaded{
                          [](const Ball& b) { return b.center; },
                          [](const PuncturedBall& b) { return b.center; },
                          [](const SlitDisk&) { return Point(0.0, 0.0); },
                          [](const HalfPlane& h) { return Point::zero(h.dim); },
                          [](const StraightTube& t) { return Point::zero(t.dim); },
                          [](const ZigzagTube& z) { return z.vertices.front(); },
                          [this](const ImageSet&) {
                              const Box b = shape_box();
                              return lerp(b.lo, b.hi, 0.5);
                          },
                      },
                      *shape_);
}

std::vector<Point> Domain::sample_interior(std::size_t n, double margin, std::uint64_t seed) const {
    if (n < 1) throw ValidationError("/n", "must be at least 1");
    if (!(margin >= 0.0)) throw ValidationError("/margin", "must be non-negative");
    const Box box = shape_box();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(n);
    const std::size_t budget = 20000 * n + 1000;
    for (std::size_t tries = 0; tries < budget && out.size() < n; ++tries) {
        Point p = Point::zero(dim_);
        for (int i = 0; i < dim_; ++i) p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit(rng);
        if (!shape_contains(p)) continue;
        const double d = shape_distance(p) * frame_.scale();
        if (d > 0.0 && d >= margin) out.push_back(to_world(p));
    }
    if (out.size() < n)
        throw SamplingError("rejection budget exhausted sampling " + std::to_string(n) + " points with margin " +
                            std::to_string(margin) + " in '" + name_ + "'");
    return out;
}

}  // namespace qhkit
