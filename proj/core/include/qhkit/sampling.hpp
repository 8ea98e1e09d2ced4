#pragma once

#include <cstdint>
#include <vector>

#include "qhkit/domain.hpp"

namespace qhkit {

struct PointPair {
    Point x, y;
};

/// Ordered sequence (x, a, b) of three distinct points.
struct Triple {
    Point x, a, b;
};

/// Independent uniform pairs with d >= margin at both ends.
std::vector<PointPair> sample_pairs(const Domain& domain, std::size_t n, double margin, std::uint64_t seed);

/// Pairs with |x - y| <= max_rel * d(x); x has d >= margin, y is any interior point.
std::vector<PointPair> sample_local_pairs(const Domain& domain, std::size_t n, double margin, double max_rel,
                                          std::uint64_t seed);

/// Triples of distinct points drawn uniformly from the ball B(center, radius).
std::vector<Triple> sample_triples(const Point& center, double radius, std::size_t n, std::uint64_t seed);

}  // namespace qhkit
