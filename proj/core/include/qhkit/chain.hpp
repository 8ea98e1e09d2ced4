#pragma once

#include <vector>

#include "qhkit/domain.hpp"
#include "qhkit/path.hpp"

namespace qhkit {

/// A chain point and where it sits on the path (segment index, parameter in [0, 1]).
struct ChainPoint {
    Point point;
    std::size_t segment = 0;
    double t = 0.0;
};

/// Sphere-stepping decomposition: z_1 is the start of the path and z_{i+1} is the
/// first point after z_i on the path with |z_{i+1} - z_i| = step_fraction d(z_i).
/// Stops once the rest of the path lies in the closed ball of that radius about z_p.
std::vector<ChainPoint> chain_decompose(const Domain& domain, const Path& path, double step_fraction = 0.5);

}  // namespace qhkit
