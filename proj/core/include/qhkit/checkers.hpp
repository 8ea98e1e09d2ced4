#pragma once
/**
 * @file checkers.hpp
 * @brief Sample-based estimators and predicates for map and domain classes.
 *
 * Verdicts mean "no violation on these samples". Each report also carries a
 * `no_certified_violation` verdict computed with the j-metric on the bounding
 * side, which can only fail when the property genuinely fails.
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "qhkit/domain.hpp"
#include "qhkit/gauge.hpp"
#include "qhkit/maps.hpp"
#include "qhkit/metrics.hpp"
#include "qhkit/report.hpp"
#include "qhkit/sampling.hpp"

namespace qhkit {

/// |a - x| / |b - x|.
double triple_ratio(const Triple& t);

struct QhEstimate {
    double M_hat = 1.0;        ///< max of k_upper' / k_upper and its reciprocal
    double M_certified = 1.0;  ///< same with j on the denominators; bounds the true sampled ratio
    CheckReport report;
};

QhEstimate estimate_qh_constant(const MapUnderTest& f, const std::vector<PointPair>& pairs, int level = kDefaultLevel);

/// (k - C)/M <= k' <= M k + C on every pair.
CheckReport check_cqh(const MapUnderTest& f, const std::vector<PointPair>& pairs, double M, double C,
                      int level = kDefaultLevel);

/// Gauge of |f(x) - f(y)| / d'(f(x)) against |x - y| / d(x), for pairs with |x - y| < t0 d(x).
EmpiricalGauge estimate_relative_theta(const MapUnderTest& f, const std::vector<PointPair>& pairs, double t0);

/// Gauge of ρ(fT) against ρ(T) for triples inside B(center, q d(center)).
EmpiricalGauge estimate_qs_eta(const MapUnderTest& f, const Point& center, double q, const std::vector<Triple>& triples);

using GrowthFunction = std::function<double(double)>;

/// k' <= φ(k) on every pair.
CheckReport check_semisolid(const MapUnderTest& f, const std::vector<PointPair>& pairs, const GrowthFunction& phi,
                            int level = kDefaultLevel);
/// Semisolid in both directions, f^{-1} being checked on the image pairs.
CheckReport check_solid(const MapUnderTest& f, const std::vector<PointPair>& pairs, const GrowthFunction& phi,
                        int level = kDefaultLevel);

struct UniformityResult {
    double c_hat = 1.0;
    CheckReport report;
};

/// Smallest c making the near-geodesic of every pair a c-cigar with ℓ <= c |x - y|.
UniformityResult uniformity_check(const Domain& domain, const std::vector<PointPair>& pairs, int level = kDefaultLevel);

struct TheoremDFit {
    double c_prime = 1.0;  ///< max k_upper / j
    double c1 = 1.0;       ///< slope of the affine bound k <= c1 j + d
    double d = 0.0;
    std::size_t used = 0;
    CheckReport report;
};

TheoremDFit theoremD_fit(const Domain& domain, const std::vector<PointPair>& pairs, int level = kDefaultLevel);

struct LocalGlobalReport {
    double M_local = 1.0;
    double M_global = 1.0;
    double min_slack = 0.0;  ///< min over close pairs of 2 M_local k - k' (+inf when none)
    std::size_t close_pairs = 0;
    CheckReport report;
};

/// Compares the QH constant of f restricted to maximal balls B(c, d(c)) (with
/// the intrinsic metrics of the ball and of its image) against the global one,
/// and checks k' <= 2 M_local k on pairs with |x - y| <= d(x)/2. Planar only.
LocalGlobalReport local_to_global_qh(const MapUnderTest& f, const std::vector<Point>& centers,
                                     const std::vector<PointPair>& pairs, int level = kDefaultLevel,
                                     std::size_t pairs_per_center = 24, std::uint64_t seed = 0);

}  // namespace qhkit
