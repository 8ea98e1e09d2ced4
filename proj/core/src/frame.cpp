#include "qhkit/frame.hpp"

#include <cmath>
#include "qhkit/errors.hpp"

namespace qhkit {

namespace {

Frame::Matrix identity_matrix() {
    Frame::Matrix m{};
    for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
    return m;
}

}  // namespace

Frame::Frame(int dim) : dim_(dim), rot_(identity_matrix()), trans_(Point::zero(dim)) {}

Frame::Frame(double scale, const Matrix& rotation, const Point& translation)
    : dim_(translation.dim()), scale_(scale), rot_(rotation), trans_(translation) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("/scale", "frame scale must be > 0");
    if (!is_orthogonal(rotation, dim_)) throw ValidationError("/rotation", "frame rotation is not orthogonal");
    identity_ = scale == 1.0 && rotation == identity_matrix() && translation == Point::zero(dim_);
}

Frame Frame::planar(double scale, double angle, const Point& translation) {
    Matrix m = identity_matrix();
    // Exact values for quarter turns keep similar grids bit-identical.
    double c = std::cos(angle), s = std::sin(angle);
    const double quarter = angle / (M_PI / 2.0);
    if (std::abs(quarter - std::round(quarter)) < 1e-15) {
        const int k = ((static_cast<int>(std::round(quarter)) % 4) + 4) % 4;
        const double cs[4] = {1, 0, -1, 0}, sn[4] = {0, 1, 0, -1};
        c = cs[k];
        s = sn[k];
    }
    m[0][0] = c;
    m[0][1] = -s;
    m[1][0] = s;
    m[1][1] = c;
    return Frame(scale, m, translation);
}

Point Frame::apply(const Point& p) const {
    if (identity_) return p;
    Point w = Point::zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += rot_[i][j] * p[j];
        w[i] = scale_ * s + trans_[i];
    }
    return w;
}

Point Frame::apply_inverse(const Point& w) const {
    if (identity_) return w;
    Point p = Point::zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += rot_[j][i] * (w[j] - trans_[j]);
        p[i] = s / scale_;
    }
    return p;
}

Frame Frame::compose(const Frame& inner) const {
    if (inner.dim_ != dim_) throw ValidationError("/frame", "frame dimension mismatch");
    Matrix r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += rot_[i][k] * inner.rot_[k][j];
            r[i][j] = s;
        }
    return Frame(scale_ * inner.scale_, r, apply(inner.trans_));
}

bool is_orthogonal(const Frame::Matrix& m, int dim, double tol) {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += m[k][i] * m[k][j];
            if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) return false;
        }
    return true;
}

}  // namespace qhkit
