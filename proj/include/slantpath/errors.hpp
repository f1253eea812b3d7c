#pragma once

#include <stdexcept>
#include <string>

namespace slantpath {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid numeric input: negative extinction, non-finite value, zero slab
/// extent, bad sample count.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Link geometry outside the model's validity: zenith angle beyond [0, 85]
/// degrees, platform at or below ground.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A profile invariant does not hold (slab ordering, state normalization, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unknown condition label in the coefficient database.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A profile is not configured for the requested operation, e.g. a state is
/// missing the visibility needed for wavelength scaling.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Clipping a profile to a link geometry left no atmosphere on the path.
class EmptyPathError : public Error {
public:
    using Error::Error;
};

/// Scenario file syntax error; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace slantpath
