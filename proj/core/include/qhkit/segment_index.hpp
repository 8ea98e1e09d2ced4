#pragma once

#include <cstddef>
#include <vector>

#include "qhkit/point.hpp"

namespace qhkit {

/// Nearest-edge distance to a closed planar polygon. A uniform grid over the
/// bounding box stores, per cell, the only edges that can be nearest to a point
/// of that cell.
class SegmentIndex {
public:
    explicit SegmentIndex(std::vector<Point> polygon);

    /// Distance from p to the polygon boundary.
    double distance(const Point& p) const;
    /// Same, also listing every edge within min + slack of p.
    double distance(const Point& p, double slack, std::vector<std::size_t>& near) const;
    std::size_t size() const { return v_.size(); }

private:
    double edge_distance(const Point& p, std::size_t e) const;

    std::vector<Point> v_;
    double x0_ = 0, y0_ = 0, cw_ = 1, ch_ = 1;
    int n_ = 1;
    std::vector<std::size_t> start_;  // CSR offsets per cell
    std::vector<std::size_t> edges_;
};

}  // namespace qhkit
