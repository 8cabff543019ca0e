#pragma once

#include <stdexcept>
#include <string>

namespace cogsheaf {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix operands with incompatible shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Mixing values from different fields (e.g. F_5 with F_7).
class FieldMismatchError : public Error {
public:
    using Error::Error;
};

/// Inversion of a matrix whose rank is below its size.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// An operation that needs a connected scwol received a disconnected one.
class DisconnectedScwolError : public Error {
public:
    using Error::Error;
};

/// Structurally broken input: dangling ids, wrong table sizes, violated
/// preconditions of a constructive operation.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Unreadable or malformed file content.  Carries the offending path.
class ParseError : public Error {
public:
    ParseError(const std::string& path, const std::string& message)
        : Error(path + ": " + message), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace cogsheaf
