#include "qhkit/point.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qhkit {

Point Point::zero(int dim) {
    if (dim == 2) return {0.0, 0.0};
    if (dim == 3) return {0.0, 0.0, 0.0};
    throw std::invalid_argument("dimension must be 2 or 3");
}

Point Point::unit(int dim, int axis) {
    Point p = zero(dim);
    p[axis] = 1.0;
    return p;
}

Point& Point::operator+=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
}

Point& Point::operator-=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
}

Point& Point::operator*=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] *= s;
    return *this;
}

Point& Point::operator/=(double s) {
    for (int i = 0; i < dim_; ++i) c_[i] /= s;
    return *this;
}

double Point::dot(const Point& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
}

bool Point::finite() const {
    for (int i = 0; i < dim_; ++i)
        if (!std::isfinite(c_[i])) return false;
    return true;
}

bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

std::string Point::str() const {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << c_[i];
    os << ')';
    return os.str();
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = ab.norm2();
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

}  // namespace qhkit
