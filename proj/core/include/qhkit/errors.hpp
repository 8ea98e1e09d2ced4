#pragma once

#include <stdexcept>
#include <string>

namespace qhkit {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point was required to lie in the open domain but does not.
class DomainMembershipError : public Error {
public:
    using Error::Error;
};

/// Rejection sampling ran out of budget.
class SamplingError : public Error {
public:
    using Error::Error;
};

/// Malformed input or violated invariant. `field` carries a JSON-pointer style path.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)), message_(what) {}
    explicit ValidationError(const std::string& what) : ValidationError("", what) {}

    const std::string& field() const { return field_; }
    /// The message without the field prefix.
    const std::string& message() const { return message_; }

private:
    std::string field_;
    std::string message_;
};

/// A path leaves its domain or is otherwise malformed.
class PathError : public Error {
public:
    using Error::Error;
};

/// The two query points are not connected in the graph at the requested level.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// A map sends a point outside its advertised target.
class MapConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace qhkit
