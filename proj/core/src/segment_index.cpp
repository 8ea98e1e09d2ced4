#include "qhkit/segment_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhkit/errors.hpp"

namespace qhkit {

SegmentIndex::SegmentIndex(std::vector<Point> polygon) : v_(std::move(polygon)) {
    if (v_.size() < 3) throw ValidationError("/boundary", "need at least three vertices");
    double x1 = v_[0][0], y1 = v_[0][1];
    x0_ = x1;
    y0_ = y1;
    for (const Point& p : v_) {
        x0_ = std::min(x0_, p[0]);
        y0_ = std::min(y0_, p[1]);
        x1 = std::max(x1, p[0]);
        y1 = std::max(y1, p[1]);
    }
    n_ = std::clamp(static_cast<int>(12.0 * std::sqrt(static_cast<double>(v_.size()))), 8, 256);
    cw_ = std::max((x1 - x0_) / n_, 1e-300);
    ch_ = std::max((y1 - y0_) / n_, 1e-300);
    const double half_diag = 0.5 * std::hypot(cw_, ch_);

    std::vector<double> de(v_.size());
    start_.assign(static_cast<std::size_t>(n_) * n_ + 1, 0);
    for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i) {
            const Point c(x0_ + (i + 0.5) * cw_, y0_ + (j + 0.5) * ch_);
            double near = std::numeric_limits<double>::infinity();
            for (std::size_t e = 0; e < v_.size(); ++e) {
                de[e] = edge_distance(c, e);
                near = std::min(near, de[e]);
            }
            // Any point of the cell has an edge within near + half_diag; an edge
            // farther than that from the centre plus half_diag cannot win.
            const double cut = near + 2.0 * half_diag;
            for (std::size_t e = 0; e < v_.size(); ++e)
                if (de[e] <= cut) edges_.push_back(e);
            start_[static_cast<std::size_t>(j) * n_ + i + 1] = edges_.size();
        }
}

double SegmentIndex::edge_distance(const Point& p, std::size_t e) const {
    return distance_to_segment(p, v_[e], v_[(e + 1) % v_.size()]);
}

double SegmentIndex::distance(const Point& p, double slack, std::vector<std::size_t>& near) const {
    const double fx = (p[0] - x0_) / cw_, fy = (p[1] - y0_) / ch_;
    std::size_t lo = 0, hi = 0;
    const bool in_grid = fx >= 0.0 && fy >= 0.0 && fx < n_ && fy < n_;
    if (in_grid) {
        const std::size_t c =
            static_cast<std::size_t>(static_cast<int>(fy)) * n_ + static_cast<std::size_t>(static_cast<int>(fx));
        lo = start_[c];
        hi = start_[c + 1];
    }
    auto edge_at = [&](std::size_t q) { return in_grid ? edges_[q] : q; };
    if (!in_grid) hi = v_.size();
    thread_local std::vector<double> dist;
    dist.resize(hi - lo);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = lo; q < hi; ++q) best = std::min(best, dist[q - lo] = edge_distance(p, edge_at(q)));
    near.clear();
    for (std::size_t q = lo; q < hi; ++q)
        if (dist[q - lo] <= best + slack) near.push_back(edge_at(q));
    return best;
}

double SegmentIndex::distance(const Point& p) const {
    const double fx = (p[0] - x0_) / cw_, fy = (p[1] - y0_) / ch_;
    double best = std::numeric_limits<double>::infinity();
    if (!(fx >= 0.0 && fy >= 0.0 && fx < n_ && fy < n_)) {
        for (std::size_t e = 0; e < v_.size(); ++e) best = std::min(best, edge_distance(p, e));
        return best;
    }
    const std::size_t c = static_cast<std::size_t>(static_cast<int>(fy)) * n_ + static_cast<std::size_t>(static_cast<int>(fx));
    for (std::size_t q = start_[c]; q < start_[c + 1]; ++q) best = std::min(best, edge_distance(p, edges_[q]));
    return best;
}

}  // namespace qhkit
