#pragma once
/**
 * @file maps.hpp
 * @brief Homeomorphisms between domains used as test specimens.
 */

#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qhkit/domain.hpp"
#include "qhkit/path.hpp"

namespace qhkit {

struct AdvertisedConstants {
    std::optional<double> qh;      ///< M for which the map is M-QH
    std::optional<double> bilip;   ///< (local) bilipschitz constant
    std::optional<double> qc;      ///< quasiconformality K
    std::string note;
};

struct MapUnderTest {
    std::string name;
    Domain source;
    Domain target;
    std::function<Point(const Point&)> forward;
    std::function<Point(const Point&)> inverse;
    AdvertisedConstants advertised;
    nlohmann::json params;  ///< constructor parameters, for manifests

    /// Map with source and target exchanged.
    MapUnderTest inverted() const;
};

MapUnderTest identity_map(const Domain& d);

/// x -> lambda R x + b; the target is the source placed by the same similarity.
MapUnderTest similarity(double lambda, const Frame::Matrix& rotation, const Point& translation, const Domain& source);
/// Planar convenience overload, rotation angle in radians.
MapUnderTest similarity(double lambda, double angle, const Point& translation, const Domain& source);

/// x -> c + (x - c) (|x - c| / R)^(a - 1) on the ball B(c, R), fixing the ball.
MapUnderTest radial_stretch(double a, const Domain& source_ball);

struct ZigzagLayout {
    double segment_length = 1.4142135623730951;  ///< length of one straight piece (sqrt 2)
    int row_pieces = 3;                          ///< collinear pieces per boustrophedon row
};

/// Locally bilipschitz map from a straight tube of length m * segment_length onto a
/// planar boustrophedon zigzag tube with the same axis length.
MapUnderTest zigzag_straightener(int m, double r, double bend_angle, const ZigzagLayout& layout = {});

/// Image of a path, refined until every image segment is certified in the target and
/// the image curve is within `refine_tol` of its chords.
Path push_path(const MapUnderTest& map, const Path& path, double refine_tol = 1e-3);

/// Map spec: {"kind": "identity"|"similarity"|"radial_stretch"|"zigzag_straightener", ...}.
MapUnderTest map_from_json(const nlohmann::json& j, const std::string& path = "");
/// Reads a document whose top-level key "map" holds the map spec.
MapUnderTest load_map(const std::string& file);

}  // namespace qhkit
