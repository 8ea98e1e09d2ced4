#include "qhkit/domain_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "qhkit/errors.hpp"

namespace qhkit {

using nlohmann::json;

namespace {

double number(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ValidationError(path + "/" + key, "missing field");
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(path + "/" + key, "expected a number");
    return v.get<double>();
}

int integer_or(const json& j, const std::string& key, int fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ValidationError(path + "/" + key, "expected an integer");
    return j.at(key).get<int>();
}

Frame frame_from_json(const json& j, int dim, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    const double scale = j.contains("scale") ? number(j, "scale", path) : 1.0;
    const Point t = j.contains("translation") ? point_from_json(j.at("translation"), path + "/translation")
                                              : Point::zero(dim);
    if (t.dim() != dim) throw ValidationError(path + "/translation", "dimension mismatch");
    try {
        if (j.contains("rotation_deg")) {
            if (dim != 2) throw ValidationError(path + "/rotation_deg", "only valid in the plane");
            return Frame::planar(scale, number(j, "rotation_deg", path) * M_PI / 180.0, t);
        }
        Frame::Matrix m{};
        for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
        if (j.contains("rotation")) {
            const json& r = j.at("rotation");
            if (!r.is_array() || static_cast<int>(r.size()) != dim)
                throw ValidationError(path + "/rotation", "expected a square matrix of the domain dimension");
            for (int i = 0; i < dim; ++i) {
                if (!r[i].is_array() || static_cast<int>(r[i].size()) != dim)
                    throw ValidationError(path + "/rotation/" + std::to_string(i), "bad row");
                for (int k = 0; k < dim; ++k) m[i][k] = r[i][k].get<double>();
            }
        }
        return Frame(scale, m, t);
    } catch (const ValidationError& e) {
        if (path.empty() || e.field().rfind(path, 0) == 0) throw;
        throw ValidationError(path + e.field(), e.message());
    }
}

json frame_to_json(const Frame& f) {
    json rot = json::array();
    for (int i = 0; i < f.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < f.dim(); ++k) row.push_back(f.rotation()[i][k]);
        rot.push_back(row);
    }
    return {{"scale", f.scale()}, {"rotation", rot}, {"translation", point_to_json(f.translation())}};
}

}  // namespace

Point point_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw ValidationError(path, "expected an array of 2 or 3 numbers");
    for (std::size_t i = 0; i < j.size(); ++i)
        if (!j[i].is_number()) throw ValidationError(path + "/" + std::to_string(i), "expected a number");
    Point p = j.size() == 2 ? Point(j[0].get<double>(), j[1].get<double>())
                            : Point(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
    if (!p.finite()) throw ValidationError(path, "coordinates must be finite");
    return p;
}

json point_to_json(const Point& p) {
    json a = json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    return a;
}

Point parse_point(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("point '" + text + "' is not a comma-separated list of numbers");
        }
    }
    if (v.size() == 2) return {v[0], v[1]};
    if (v.size() == 3) return {v[0], v[1], v[2]};
    throw ValidationError("point '" + text + "' must have 2 or 3 coordinates");
}

Domain domain_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw ValidationError(path, "expected an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ValidationError(path + "/kind", "missing string field");
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : kind;

    auto make = [&](Shape s) -> Domain {
        std::optional<Domain> d;
        try {
            d.emplace(std::move(s), name);
        } catch (const ValidationError& e) {
            throw ValidationError(path + e.field(), e.message());
        }
        if (j.contains("frame")) return Domain(d->shape(), frame_from_json(j.at("frame"), d->dim(), path + "/frame"), name);
        return *d;
    };

    if (kind == "ball") {
        return make(Ball{point_from_json(j.value("center", json()), path + "/center"), number(j, "radius", path)});
    }
    if (kind == "punctured_ball") {
        return make(PuncturedBall{point_from_json(j.value("center", json()), path + "/center"),
                                  number(j, "radius", path),
                                  point_from_json(j.value("puncture", json()), path + "/puncture")});
    }
    if (kind == "slit_disk") return make(SlitDisk{});
    if (kind == "half_plane") return make(HalfPlane{integer_or(j, "dim", 2, path)});
    if (kind == "straight_tube") {
        return make(StraightTube{number(j, "length", path), number(j, "radius", path), integer_or(j, "dim", 2, path)});
    }
    if (kind == "zigzag_tube") {
        if (!j.contains("vertices") || !j.at("vertices").is_array())
            throw ValidationError(path + "/vertices", "expected an array of points");
        ZigzagTube z;
        for (std::size_t i = 0; i < j.at("vertices").size(); ++i)
            z.vertices.push_back(point_from_json(j.at("vertices")[i], path + "/vertices/" + std::to_string(i)));
        z.radius = number(j, "radius", path);
        return make(std::move(z));
    }
    throw ValidationError(path + "/kind", "unknown domain kind '" + kind + "'");
}

Domain domain_from_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("", std::string("malformed document: ") + e.what());
    }
    if (j.contains("domain") && j.at("domain").is_object()) return domain_from_json(j.at("domain"), "/domain");
    return domain_from_json(j);
}

Domain load_domain(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("cannot open domain spec '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return domain_from_spec(ss.str());
}

json domain_to_json(const Domain& d) {
    json j{{"kind", d.kind()}, {"name", d.name()}};
    const Shape& s = d.shape();
    if (const auto* b = std::get_if<Ball>(&s)) {
        j["center"] = point_to_json(b->center);
        j["radius"] = b->radius;
    } else if (const auto* pb = std::get_if<PuncturedBall>(&s)) {
        j["center"] = point_to_json(pb->center);
        j["radius"] = pb->radius;
        j["puncture"] = point_to_json(pb->puncture);
    } else if (const auto* h = std::get_if<HalfPlane>(&s)) {
        j["dim"] = h->dim;
    } else if (const auto* t = std::get_if<StraightTube>(&s)) {
        j["length"] = t->length;
        j["radius"] = t->radius;
        j["dim"] = t->dim;
    } else if (const auto* z = std::get_if<ZigzagTube>(&s)) {
        json v = json::array();
        for (const auto& p : z->vertices) v.push_back(point_to_json(p));
        j["vertices"] = v;
        j["radius"] = z->radius;
    } else if (std::holds_alternative<ImageSet>(s)) {
        throw ValidationError("image sets cannot be serialised");
    }
    if (!d.frame().is_identity()) j["frame"] = frame_to_json(d.frame());
    return j;
}

}  // namespace qhkit
