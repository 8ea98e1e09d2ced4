#pragma once
/**
 * @file point.hpp
 * @brief Fixed-capacity Euclidean point/vector for dimensions 2 and 3.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>

namespace qhkit {

/// Point (or displacement) in R^2 or R^3 with the Euclidean norm.
class Point {
public:
    static constexpr int kMaxDim = 3;

    Point() = default;
    Point(double x, double y) : dim_(2), c_{x, y, 0.0} {}
    Point(double x, double y, double z) : dim_(3), c_{x, y, z} {}

    static Point zero(int dim);
    /// Unit vector e_axis in the given dimension.
    static Point unit(int dim, int axis);

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    Point& operator+=(const Point& o);
    Point& operator-=(const Point& o);
    Point& operator*=(double s);
    Point& operator/=(double s);

    double dot(const Point& o) const;
    double norm() const { return std::sqrt(dot(*this)); }
    double norm2() const { return dot(*this); }
    bool finite() const;

    friend bool operator==(const Point& a, const Point& b);

    std::string str() const;

private:
    int dim_ = 2;
    std::array<double, kMaxDim> c_{0.0, 0.0, 0.0};
};

inline Point operator+(Point a, const Point& b) { return a += b; }
inline Point operator-(Point a, const Point& b) { return a -= b; }
inline Point operator-(Point a) { return a *= -1.0; }
inline Point operator*(Point a, double s) { return a *= s; }
inline Point operator*(double s, Point a) { return a *= s; }
inline Point operator/(Point a, double s) { return a /= s; }

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

/// a + t (b - a)
inline Point lerp(const Point& a, const Point& b, double t) { return a + (b - a) * t; }

/// Euclidean distance from p to the closed segment [a, b].
double distance_to_segment(const Point& p, const Point& a, const Point& b);

}  // namespace qhkit
