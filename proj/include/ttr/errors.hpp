#pragma once

#include <stdexcept>
#include <string>

namespace ttr {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed arguments, broken invariants, failed config validation. Exit code 1.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Input is well-formed but outside the sizes a solver supports. Exit code 1.
class UnsupportedSizeError : public InvalidInputError {
public:
    using InvalidInputError::InvalidInputError;
};

// Work would exceed a configured resource cap (e.g. factorial search). Exit code 2.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

// Filesystem and stream failures. Exit code 3.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed file contents; carries the origin (path) and 1-based line number.
class ParseError : public InvalidInputError {
public:
    ParseError(const std::string& origin, int line, const std::string& message)
        : InvalidInputError(origin + ":" + std::to_string(line) + ": " + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace ttr
