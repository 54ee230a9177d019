#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace brierdecomp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value outside its domain. `index` is the zero-based record index when the
/// error concerns a record; `line` is set when the record came from a file.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, std::optional<std::size_t> index = std::nullopt,
                         std::optional<std::size_t> line = std::nullopt)
        : Error(what), index_(index), line_(line) {}

    [[nodiscard]] std::optional<std::size_t> index() const noexcept { return index_; }
    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> index_;
    std::optional<std::size_t> line_;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. `line` is one-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what) : Error(what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidTolerance : public Error {
public:
    using Error::Error;
};

class InvalidBinCount : public Error {
public:
    using Error::Error;
};

class UnsupportedSpec : public Error {
public:
    using Error::Error;
};

/// Raised when a computed quantity breaks a mathematical guarantee by more
/// than the tolerance, e.g. a covariance deficit below -tolerance.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace brierdecomp
