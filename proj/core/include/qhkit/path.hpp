#pragma once
/**
 * @file path.hpp
 * @brief Polylines in a domain and their quasihyperbolic length.
 *
 * ℓ_k(α) = ∫_α |dz| / d_D(z), evaluated segment by segment with adaptive
 * Gauss–Kronrod quadrature. Every segment is certified inside the domain
 * before it is integrated, so the integrand is finite on it.
 */

#include <cstddef>
#include <vector>

#include "qhkit/domain.hpp"
#include "qhkit/point.hpp"

namespace qhkit {

inline constexpr double kDefaultEdgeTol = 1e-6;

struct Path {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    const Point& front() const { return points.front(); }
    const Point& back() const { return points.back(); }
    double euclidean_length() const;
    /// Vertices [i, j] as a new path.
    Path subpath(std::size_t i, std::size_t j) const;
};

/// Throws PathError unless the path has >= 2 distinct consecutive points and
/// every segment is certified inside `domain`.
void validate_path(const Domain& domain, const Path& path);

enum class EstimateKind { upper, lower, exact };

const char* to_string(EstimateKind k);

struct MetricEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::exact;
    double abs_tol = 0.0;
};

/// Quasihyperbolic length of a validated path with absolute error <= tol.
MetricEstimate qh_length(const Path& path, const Domain& domain, double tol = kDefaultEdgeTol);

/// ∫ |dz| / d over the segment [a, b] given in shape coordinates. The segment
/// must already be certified. `err` receives the quadrature error estimate.
double qh_segment_shape(const Domain& domain, const Point& a, const Point& b, double tol, double* err = nullptr);

}  // namespace qhkit
