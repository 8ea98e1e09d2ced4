#pragma once

#include <cstddef>

#include "qhkit/domain.hpp"
#include "qhkit/maps.hpp"

namespace qhkit {

/// The planar open set f(B(center, radius)), with B inside f.source. Membership
/// is exact (through f.inverse); the boundary is the image of `samples` circle
/// points and its chordal error is estimated from intermediate samples.
Domain image_of_ball(const MapUnderTest& f, const Point& center, double radius, std::size_t samples = 128);

}  // namespace qhkit
