#include "qhkit/image_set.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <numbers>

#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

std::atomic<std::uint64_t> next_image_id{1};

}  // namespace

Domain image_of_ball(const MapUnderTest& f, const Point& center, double radius, std::size_t samples) {
    if (center.dim() != 2) throw ValidationError("/center", "image sets are planar only");
    if (!(radius > 0.0)) throw ValidationError("/radius", "must be positive");
    if (samples < 16) throw ValidationError("/samples", "need at least 16 boundary samples");
    if (!f.source.contains(center) || f.source.dist_to_boundary(center) < radius * (1.0 - 1e-12))
        throw DomainMembershipError("ball B(" + center.str() + ", " + std::to_string(radius) +
                                    ") is not inside the source domain");

    auto on_circle = [center, radius](double th) {
        // Stay a hair inside so the boundary sample is a source point.
        return center + Point(std::cos(th), std::sin(th)) * (radius * (1.0 - 1e-12));
    };
    const double step = 2.0 * std::numbers::pi / static_cast<double>(samples);
    ImageSet s;
    s.boundary.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) s.boundary.push_back(f.forward(on_circle(step * static_cast<double>(i))));

    double chord = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Point& a = s.boundary[i];
        const Point& b = s.boundary[(i + 1) % samples];
        for (int k = 1; k <= 7; ++k) {
            const Point q = f.forward(on_circle(step * (static_cast<double>(i) + k / 8.0)));
            chord = std::max(chord, distance_to_segment(q, a, b));
        }
    }
    s.chord_error = 1.5 * chord + 1e-12 * radius;

    auto fwd = f.forward;
    s.curve = [fwd, on_circle](double th) { return fwd(on_circle(th)); };
    const Point c = center;
    const double rho = radius;
    auto inv = f.inverse;
    s.inside = [c, rho, inv](const Point& p) {
        try {
            return distance(inv(p), c) < rho;
        } catch (const Error&) {
            return false;
        }
    };
    s.index = std::make_shared<const SegmentIndex>(s.boundary);
    s.id = next_image_id++;
    return Domain(std::move(s), "image of B(" + center.str() + ", " + std::to_string(radius) + ") under " + f.name);
}

}  // namespace qhkit
