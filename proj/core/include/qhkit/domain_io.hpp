#pragma once
/**
 * @file domain_io.hpp
 * @brief JSON schema for domains. See docs/schema.md for one example per kind.
 */

#include <string>

#include <nlohmann/json.hpp>

#include "qhkit/domain.hpp"

namespace qhkit {

/// Parses one domain object. Throws ValidationError with a JSON-pointer field path.
Domain domain_from_json(const nlohmann::json& j, const std::string& path = "");
/// Parses the text of a domain spec document.
Domain domain_from_spec(const std::string& text);
/// Loads a domain spec from a file.
Domain load_domain(const std::string& file);

/// Serialises a domain; image sets are not serialisable.
nlohmann::json domain_to_json(const Domain& d);

Point point_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json point_to_json(const Point& p);

/// Parses "x,y" or "x,y,z".
Point parse_point(const std::string& text);

}  // namespace qhkit
