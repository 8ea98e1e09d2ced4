#pragma once

#include <array>

#include "qhkit/point.hpp"

namespace qhkit {

/// Similarity transform w = s R p + b, with R orthogonal.
class Frame {
public:
    using Matrix = std::array<std::array<double, 3>, 3>;

    /// Identity in the given dimension.
    explicit Frame(int dim = 2);
    Frame(double scale, const Matrix& rotation, const Point& translation);

    /// Planar rotation by `angle` radians.
    static Frame planar(double scale, double angle, const Point& translation);

    int dim() const { return dim_; }
    double scale() const { return scale_; }
    const Matrix& rotation() const { return rot_; }
    const Point& translation() const { return trans_; }
    bool is_identity() const { return identity_; }

    Point apply(const Point& p) const;
    Point apply_inverse(const Point& w) const;

    /// (*this) after `inner`.
    Frame compose(const Frame& inner) const;

private:
    int dim_;
    double scale_ = 1.0;
    Matrix rot_{};
    Point trans_;
    bool identity_ = true;
};

/// Validates orthogonality of a dim x dim block to within `tol`.
bool is_orthogonal(const Frame::Matrix& m, int dim, double tol = 1e-9);

}  // namespace qhkit
