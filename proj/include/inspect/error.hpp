#pragma once

#include <stdexcept>
#include <string>

namespace inspect {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, out-of-range parameter, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed (e.g. SVD non-convergence).
class SolverError : public Error {
public:
    using Error::Error;
};

/// soft(T, lambda) vanished identically, so no projection direction exists.
class ThresholdTooLarge : public Error {
public:
    using Error::Error;
};

/// The combinatorial guard of the brute-force sparse SVD was exceeded.
class TooManySubsets : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
};

/// A cell or token in an input file could not be parsed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace inspect
