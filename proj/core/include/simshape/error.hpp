#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simshape {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on values was violated (bad grid, empty candidate set, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed external input. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// No same-group candidate was found in the local window.
class EmptyCandidateSet : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace simshape
