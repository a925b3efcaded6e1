#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crossbar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A scalar argument lies outside its admissible range.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The memristor budget cannot host the requested layout.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An underlying decomposition failed to converge.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 means "whole input".
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

}  // namespace detail

}  // namespace crossbar
