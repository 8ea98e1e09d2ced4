#pragma once
/**
 * @file metrics.hpp
 * @brief The j-metric, two-sided estimates of the quasihyperbolic distance k_D,
 *        near-geodesic extraction and the local bound for nearby points.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "qhkit/domain.hpp"
#include "qhkit/path.hpp"

namespace qhkit {

inline constexpr int kDefaultLevel = 4;

/// log(1 + |x - y| / min(d(x), d(y))).
double j_metric(const Domain& domain, const Point& x, const Point& y);

/// Certified lower bound on k_D: the j-metric.
MetricEstimate k_lower(const Domain& domain, const Point& x, const Point& y);

/// Shortest-path value in the level-`level` graph; an upper bound on k_D.
/// Throws ResolutionError when x and y are not connected at this level.
MetricEstimate k_upper(const Domain& domain, const Point& x, const Point& y, int level = kDefaultLevel,
                       double edge_tol = kDefaultEdgeTol);

/// The polyline realising k_upper; endpoints are exactly x and y.
Path extract_neargeodesic(const Domain& domain, const Point& x, const Point& y, int level = kDefaultLevel,
                          double edge_tol = kDefaultEdgeTol);

struct RefineStep {
    int level = 0;
    std::optional<MetricEstimate> estimate;  ///< empty when disconnected at this level
};

/// k_upper at levels first_level, first_level + 1, ... (`levels` of them).
std::vector<RefineStep> refine_k(const Domain& domain, const Point& x, const Point& y, int levels,
                                 int first_level = 2);

struct NeargeodesicConstant {
    double certified = 1.0;  ///< max ℓ_k(subpath) / j: upper bound for the true constant on the sampled pairs
    double estimated = 1.0;  ///< max ℓ_k(subpath) / k_upper at the given level
    std::size_t worst_i = 0, worst_j = 0;
    std::size_t pairs_evaluated = 0;
};

/// Empirical c for which the path is a c-neargeodesic on vertex pairs. When
/// `sample_pairs` is at least the number of vertex pairs, every pair is used.
NeargeodesicConstant neargeodesic_constant(const Path& path, const Domain& domain, std::size_t sample_pairs,
                                           int level = kDefaultLevel, std::uint64_t seed = 0);

/// (1 / (1 - s)) log(1 + |x - y| / d(x)), valid when |x - y| <= s d(x).
double lemma1_bound(const Domain& domain, const Point& x, const Point& y, double s);

}  // namespace qhkit
