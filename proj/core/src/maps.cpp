#include "qhkit/maps.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "qhkit/domain_io.hpp"
#include "qhkit/errors.hpp"

namespace qhkit {

using nlohmann::json;

MapUnderTest MapUnderTest::inverted() const {
    MapUnderTest m{name + "^-1", target, source, inverse, forward, {}, params};
    m.advertised = advertised;
    m.advertised.note = "inverse of " + name;
    return m;
}

MapUnderTest identity_map(const Domain& d) {
    auto id = [](const Point& p) { return p; };
    return {"identity", d, d, id, id, {1.0, 1.0, 1.0, "identity"}, json{{"kind", "identity"}}};
}

MapUnderTest similarity(double lambda, const Frame::Matrix& rotation, const Point& translation, const Domain& source) {
    if (!(lambda > 0.0)) throw ValidationError("/scale", "must be positive");
    if (translation.dim() != source.dim()) throw ValidationError("/translation", "dimension mismatch");
    Frame f = [&] {
        try {
            return Frame(lambda, rotation, translation);
        } catch (const ValidationError& e) {
            throw ValidationError("/rotation", e.message());
        }
    }();
    json rot = json::array();
    for (int i = 0; i < source.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < source.dim(); ++k) row.push_back(rotation[i][k]);
        rot.push_back(row);
    }
    return {"similarity",
            source,
            source.transformed(f, source.name() + "'"),
            [f](const Point& p) { return f.apply(p); },
            [f](const Point& p) { return f.apply_inverse(p); },
            {1.0, std::nullopt, 1.0, "similarities preserve k exactly"},
            json{{"kind", "similarity"}, {"scale", lambda}, {"rotation", rot}, {"translation", point_to_json(translation)}}};
}

MapUnderTest similarity(double lambda, double angle, const Point& translation, const Domain& source) {
    if (source.dim() != 2) throw ValidationError("/rotation_deg", "planar rotation needs a planar domain");
    const Frame f = Frame::planar(1.0, angle, Point::zero(2));
    return similarity(lambda, f.rotation(), translation, source);
}

MapUnderTest radial_stretch(double a, const Domain& source) {
    if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("/a", "must be positive");
    const auto* ball = std::get_if<Ball>(&source.shape());
    if (!ball) throw ValidationError("/source/kind", "radial stretch needs a ball");
    const Point c = source.to_world(ball->center);
    const double R = source.frame().scale() * ball->radius;
    auto power = [c, R](double e) {
        return [c, R, e](const Point& x) {
            const Point v = x - c;
            const double rho = v.norm();
            if (rho == 0.0) return c;
            return c + v * std::pow(rho / R, e - 1.0);
        };
    };
    return {"radial_stretch",
            source,
            source,
            power(a),
            power(1.0 / a),
            {std::nullopt, std::nullopt, std::nullopt, "quasiconformal self-map of the ball; constants measured"},
            json{{"kind", "radial_stretch"}, {"a", a}}};
}

namespace {

Point dir_of(double angle) { return {std::cos(angle), std::sin(angle)}; }
Point rot90(const Point& d) { return {-d[1], d[0]}; }

double wrap(double a) {
    while (a >= M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}

/// Geometry of the boustrophedon tube and of the fan maps at its bends.
class Zigzag {
public:
    Zigzag(int m, double r, double bend, const ZigzagLayout& layout) : r_(r), w_(2.0 * r) {
        const double ell = layout.segment_length;
        const int k = layout.row_pieces;
        if (m < 1) throw ValidationError("/m", "must be at least 1");
        if (!(r > 0.0)) throw ValidationError("/r", "must be positive");
        if (!(ell > 0.0)) throw ValidationError("/segment_length", "must be positive");
        if (k < 1) throw ValidationError("/row_pieces", "must be at least 1");
        if (r > ell / 10.0) throw ValidationError("/r", "must not exceed 1/10 of the segment length");
        if (!(bend > 0.0 && bend <= M_PI / 2.0 + 1e-12)) throw ValidationError("/bend", "must lie in (0, pi/2]");
        const int n = static_cast<int>(std::ceil(M_PI / bend - 1e-9));
        turn_ = M_PI / n;

        std::vector<double> angles;
        bool rightwards = true;
        while (static_cast<int>(angles.size()) < m) {
            for (int i = 0; i < k && static_cast<int>(angles.size()) < m; ++i) angles.push_back(rightwards ? 0.0 : M_PI);
            for (int i = 1; i < n && static_cast<int>(angles.size()) < m; ++i)
                angles.push_back(rightwards ? i * turn_ : M_PI - i * turn_);
            rightwards = !rightwards;
        }
        Point p(0.0, 0.0);
        vertices_.push_back(p);
        arclen_.push_back(0.0);
        double s = 0.0;
        for (std::size_t i = 0; i < angles.size(); ++i) {
            p += dir_of(angles[i]) * ell;
            s += ell;
            if (i + 1 < angles.size() && angles[i + 1] == angles[i]) continue;
            vertices_.push_back(p);
            arclen_.push_back(s);
            seg_angle_.push_back(angles[i]);
        }
        length_ = s;
    }

    double length() const { return length_; }
    double radius() const { return r_; }
    double turn() const { return turn_; }
    const std::vector<Point>& vertices() const { return vertices_; }

    Point forward(const Point& p) const {
        const double u = p[0], v = p[1];
        for (std::size_t k = 1; k + 1 < vertices_.size(); ++k)
            if (std::abs(u - arclen_[k]) < w_) return fan_forward(k, u - arclen_[k], v);
        std::size_t j = 0;
        while (j + 1 < seg_angle_.size() && u >= arclen_[j + 1]) ++j;
        const Point d = dir_of(seg_angle_[j]);
        return vertices_[j] + d * (u - arclen_[j]) + rot90(d) * v;
    }

    Point inverse(const Point& q) const {
        for (std::size_t k = 1; k + 1 < vertices_.size(); ++k) {
            const Point rel = q - vertices_[k];
            const double rho = rel.norm();
            if (rho == 0.0) return {arclen_[k], 0.0};
            if (rho > 3.0 * r_) continue;
            const double psi_t = std::atan2(rel[1], rel[0]);
            if (rho < target_radius(k, psi_t)) return fan_inverse(k, rho, psi_t);
        }
        const std::size_t last = seg_angle_.size() - 1;
        for (std::size_t j = 0; j <= last; ++j) {
            const Point d = dir_of(seg_angle_[j]);
            const Point rel = q - vertices_[j];
            const double a = rel.dot(d), b = rel.dot(rot90(d));
            const double len = arclen_[j + 1] - arclen_[j];
            const double lo = j == 0 ? -r_ : w_;
            const double hi = j == last ? len + r_ : len - w_;
            if (a < lo || a > hi || std::abs(b) >= r_) continue;
            if (j == 0 && a < 0.0 && a * a + b * b >= r_ * r_) continue;
            if (j == last && a > len && (a - len) * (a - len) + b * b >= r_ * r_) continue;
            return {arclen_[j] + a, b};
        }
        throw MapConsistencyError("point " + q.str() + " is not in the zigzag tube");
    }

private:
    double corner() const { return std::atan2(r_, w_); }

    static double rect_radius(const Point& e, const Point& d, double a_lo, double a_hi, double r) {
        const Point n = rot90(d);
        const double ca = e.dot(d), cb = e.dot(n);
        double t = std::numeric_limits<double>::infinity();
        if (ca > 0.0) t = std::min(t, a_hi / ca);
        if (ca < 0.0) t = std::min(t, a_lo / ca);
        if (cb != 0.0) t = std::min(t, r / std::abs(cb));
        return std::max(t, 0.0);
    }

    double source_radius(double psi) const {
        const double c = std::abs(std::cos(psi)), s = std::abs(std::sin(psi));
        double t = std::numeric_limits<double>::infinity();
        if (c > 0.0) t = std::min(t, w_ / c);
        if (s > 0.0) t = std::min(t, r_ / s);
        return t;
    }

    double target_radius(std::size_t k, double psi_t) const {
        const Point e = dir_of(psi_t);
        const double ra = rect_radius(e, dir_of(seg_angle_[k - 1]), -w_, 0.0, r_);
        const double rc = rect_radius(e, dir_of(seg_angle_[k]), 0.0, w_, r_);
        return std::max({ra, rc, r_});
    }

    double beta(std::size_t k) const { return wrap(seg_angle_[k] - seg_angle_[k - 1]); }

    double angle_forward(std::size_t k, double psi) const {
        const double c1 = corner(), phi1 = seg_angle_[k - 1], phi2 = seg_angle_[k], b = beta(k);
        const double span = M_PI - 2.0 * c1;
        if (psi >= -c1 && psi <= c1) return psi + phi2;
        if (psi > c1 && psi < M_PI - c1) return c1 + phi2 + (psi - c1) / span * (span - b);
        if (psi > -M_PI + c1 && psi < -c1) return -M_PI + c1 + phi1 + (psi + M_PI - c1) / span * (span + b);
        return psi + phi1;
    }

    double angle_inverse(std::size_t k, double psi_t) const {
        const double c1 = corner(), phi2 = seg_angle_[k], b = beta(k);
        const double span = M_PI - 2.0 * c1;
        const double top = span - b, bottom = span + b;
        double rel = psi_t - (-c1 + phi2);
        rel -= 2.0 * M_PI * std::floor(rel / (2.0 * M_PI));
        if (rel <= 2.0 * c1) return -c1 + rel;
        if (rel < 2.0 * c1 + top) return c1 + (rel - 2.0 * c1) / top * span;
        if (rel <= 4.0 * c1 + top) return wrap(M_PI - c1 + (rel - 2.0 * c1 - top));
        return -M_PI + c1 + (rel - 4.0 * c1 - top) / bottom * span;
    }

    Point fan_forward(std::size_t k, double x, double y) const {
        const double rho = std::hypot(x, y);
        if (rho == 0.0) return vertices_[k];
        const double psi = std::atan2(y, x);
        const double psi_t = angle_forward(k, psi);
        const double scale = target_radius(k, psi_t) / source_radius(psi);
        return vertices_[k] + dir_of(psi_t) * (rho * scale);
    }

    Point fan_inverse(std::size_t k, double rho_t, double psi_t) const {
        const double psi = angle_inverse(k, psi_t);
        const double rho = rho_t * source_radius(psi) / target_radius(k, psi_t);
        return Point(arclen_[k], 0.0) + dir_of(psi) * rho;
    }

    double r_, w_;
    double turn_ = M_PI / 2.0;
    double length_ = 0.0;
    std::vector<Point> vertices_;
    std::vector<double> arclen_;
    std::vector<double> seg_angle_;
};

}  // namespace

MapUnderTest zigzag_straightener(int m, double r, double bend_angle, const ZigzagLayout& layout) {
    auto z = std::make_shared<const Zigzag>(m, r, bend_angle, layout);
    Domain source(StraightTube{z->length(), r, 2}, "straight_tube");
    Domain target(ZigzagTube{z->vertices(), r}, "zigzag_tube");
    AdvertisedConstants adv;
    adv.note = "locally bilipschitz; constant calibrated empirically (bends of " +
               std::to_string(z->turn() * 180.0 / M_PI) + " degrees)";
    return {"zigzag_straightener",
            std::move(source),
            std::move(target),
            [z](const Point& p) { return z->forward(p); },
            [z](const Point& q) { return z->inverse(q); },
            adv,
            json{{"kind", "zigzag_straightener"},
                 {"m", m},
                 {"r", r},
                 {"bend_deg", bend_angle * 180.0 / M_PI},
                 {"segment_length", layout.segment_length},
                 {"row_pieces", layout.row_pieces}}};
}

Path push_path(const MapUnderTest& map, const Path& path, double refine_tol) {
    if (!(refine_tol > 0.0)) throw ValidationError("/refine_tol", "must be positive");
    validate_path(map.source, path);
    auto image = [&](const Point& p) {
        Point q = map.forward(p);
        if (!map.target.contains(q))
            throw MapConsistencyError("image " + q.str() + " of " + p.str() + " is not inside '" + map.target.name() + "'");
        return q;
    };
    Path out;
    out.points.push_back(image(path.front()));
    struct Piece {
        Point a, b, fa, fb;
        int depth;
    };
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        std::vector<Piece> stack{{path.points[i], path.points[i + 1], out.points.back(), image(path.points[i + 1]), 0}};
        while (!stack.empty()) {
            Piece pc = stack.back();
            stack.pop_back();
            const Point m = lerp(pc.a, pc.b, 0.5);
            const Point fm = image(m);
            const bool flat = distance(fm, lerp(pc.fa, pc.fb, 0.5)) < refine_tol;
            if (flat && map.target.segment_inside(pc.fa, pc.fb)) {
                if (!(pc.fb == out.points.back())) out.points.push_back(pc.fb);
                continue;
            }
            if (pc.depth >= 30) throw MapConsistencyError("image segment could not be certified inside the target");
            stack.push_back({m, pc.b, fm, pc.fb, pc.depth + 1});
            stack.push_back({pc.a, m, pc.fa, fm, pc.depth + 1});
        }
    }
    return out;
}

namespace {

double num(const json& j, const std::string& key, const std::string& path, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError(path + "/" + key, "missing field");
    }
    if (!j.at(key).is_number()) throw ValidationError(path + "/" + key, "expected a number");
    return j.at(key).get<double>();
}

Domain source_of(const json& j, const std::string& path) {
    if (!j.contains("source")) throw ValidationError(path + "/source", "missing domain");
    return domain_from_json(j.at("source"), path + "/source");
}

}  // namespace

MapUnderTest map_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ValidationError(path + "/kind", "missing string field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return identity_map(source_of(j, path));
    if (kind == "similarity") {
        const Domain src = source_of(j, path);
        const double lambda = num(j, "scale", path, 1.0);
        const Point b = j.contains("translation") ? point_from_json(j.at("translation"), path + "/translation")
                                                  : Point::zero(src.dim());
        if (j.contains("rotation_deg")) return similarity(lambda, num(j, "rotation_deg", path) * M_PI / 180.0, b, src);
        Frame::Matrix m{};
        for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
        if (j.contains("rotation")) {
            const json& r = j.at("rotation");
            if (!r.is_array() || static_cast<int>(r.size()) != src.dim())
                throw ValidationError(path + "/rotation", "expected a square matrix of the domain dimension");
            for (int i = 0; i < src.dim(); ++i)
                for (int k = 0; k < src.dim(); ++k) m[i][k] = r.at(i).at(k).get<double>();
        }
        return similarity(lambda, m, b, src);
    }
    if (kind == "radial_stretch") {
        try {
            return radial_stretch(num(j, "a", path), source_of(j, path));
        } catch (const ValidationError& e) {
            if (e.field().rfind(path, 0) == 0 && !path.empty()) throw;
            throw ValidationError(path + e.field(), e.message());
        }
    }
    if (kind == "zigzag_straightener") {
        ZigzagLayout layout;
        layout.segment_length = num(j, "segment_length", path, layout.segment_length);
        if (j.contains("row_pieces")) layout.row_pieces = j.at("row_pieces").get<int>();
        if (!j.contains("m") || !j.at("m").is_number_integer()) throw ValidationError(path + "/m", "expected an integer");
        try {
            return zigzag_straightener(j.at("m").get<int>(), num(j, "r", path),
                                       num(j, "bend_deg", path, 90.0) * M_PI / 180.0, layout);
        } catch (const ValidationError& e) {
            throw ValidationError(path + e.field(), e.message());
        }
    }
    throw ValidationError(path + "/kind", "unknown map kind '" + kind + "'");
}

MapUnderTest load_map(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open map spec '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError("", std::string("malformed document: ") + e.what());
    }
    if (j.contains("map")) return map_from_json(j.at("map"), "/map");
    return map_from_json(j);
}

}  // namespace qhkit
