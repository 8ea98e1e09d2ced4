#pragma once
/**
 * @file domain.hpp
 * @brief Concrete planar/spatial domains with closed-form boundary distance.
 *
 * A Domain is a shape given in its own coordinates plus a similarity Frame
 * placing it in world coordinates. Every query below is in world coordinates;
 * the `shape_*` variants work in shape coordinates and are what the graph
 * builder uses, so similar domains produce identical graphs.
 *
 * Distances are exact for every kind except:
 *  - zigzag tubes, where r - dist(axis) underestimates the true distance near
 *    the concave side of a bend (still 1-Lipschitz and vanishing exactly on ∂D);
 *  - image sets, where a polygonal boundary is used with its chordal error
 *    subtracted.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qhkit/frame.hpp"
#include "qhkit/point.hpp"
#include "qhkit/segment_index.hpp"

namespace qhkit {

struct Ball {
    Point center;
    double radius = 1.0;
};

struct PuncturedBall {
    Point center;
    double radius = 1.0;
    Point puncture;
};

/// Unit disk minus the half-open slit [0,1) x {0}.
struct SlitDisk {};

/// {x : x_last > 0}.
struct HalfPlane {
    int dim = 2;
};

/// Union of open balls of radius `radius` centred on [0, length] e_1.
struct StraightTube {
    double length = 1.0;
    double radius = 0.1;
    int dim = 2;
};

/// Union of open balls of radius `radius` centred on the polyline `vertices`.
struct ZigzagTube {
    std::vector<Point> vertices;
    double radius = 0.1;
};

/// Planar open set bounded by a closed curve, sampled as a polygon.
/// Membership is decided exactly by `inside`. With `curve` set (boundary[i] =
/// curve(2πi/n)), distances are to the curve itself, found by minimising over
/// the arcs whose chords are near; otherwise `chord_error` is subtracted from
/// the polygon distance.
struct ImageSet {
    std::vector<Point> boundary;  ///< closed polygon, last vertex joins the first
    std::function<Point(double)> curve;
    double chord_error = 0.0;
    std::function<bool(const Point&)> inside;
    std::uint64_t id = 0;  ///< identity for caching
    std::shared_ptr<const SegmentIndex> index;  ///< optional accelerator over `boundary`
};

using Shape = std::variant<Ball, PuncturedBall, SlitDisk, HalfPlane, StraightTube, ZigzagTube,
                           ImageSet>;

struct Box {
    Point lo;
    Point hi;
};

class Domain {
public:
    Domain(Shape shape, std::string name = {});
    Domain(Shape shape, Frame frame, std::string name);

    const Shape& shape() const { return *shape_; }
    const Frame& frame() const { return frame_; }
    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    /// "ball", "slit_disk", ...
    std::string kind() const;

    /// Same shape placed by `outer ∘ frame()`.
    Domain transformed(const Frame& outer, std::string name = {}) const;

    bool contains(const Point& p) const;
    /// Throws DomainMembershipError when p is not interior.
    double dist_to_boundary(const Point& p) const;
    /// Conservative: true only if the closed segment is certified inside.
    bool segment_inside(const Point& a, const Point& b) const;

    /// Seeded rejection sampling with d(p) >= margin.
    std::vector<Point> sample_interior(std::size_t n, double margin, std::uint64_t seed) const;

    // Shape-coordinate primitives.
    Point to_shape(const Point& world) const { return frame_.apply_inverse(world); }
    Point to_world(const Point& shape) const { return frame_.apply(shape); }
    /// Signed-free distance in shape coordinates; <= 0 means not interior.
    double shape_distance(const Point& p) const;
    bool shape_contains(const Point& p) const;
    bool shape_segment_inside(const Point& a, const Point& b) const;
    Box shape_box() const;
    /// Length unit of the shape used to set grid pitch.
    double shape_scale() const;
    /// Lattice anchor in shape coordinates.
    Point shape_anchor() const;

    /// Key identifying the shape (not the frame); equal keys share graphs.
    const std::string& shape_key() const { return shape_key_; }

private:
    std::shared_ptr<const Shape> shape_;
    Frame frame_;
    std::string name_;
    int dim_ = 2;
    std::string shape_key_;
};

inline constexpr int kSegmentInsideMaxDepth = 40;

}  // namespace qhkit
