#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cardbounds {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters (alphabet size, order, trial count, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input data. `index()` is 0-based; messages report 1-based positions.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t index)
        : Error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Input that is well-formed but unusable for the requested operation.
class InputError : public Error {
public:
    using Error::Error;
};

/// A resource guard was exceeded (sequence length, digit count, enumeration size).
class SizeError : public Error {
public:
    using Error::Error;
};

/// A Markov source could not be built because the string repeats a context.
class ConstructionError : public Error {
public:
    ConstructionError(const std::string& what, std::size_t first, std::size_t second)
        : Error(what), first_(first), second_(second) {}

    /// 0-based start positions of the two colliding k-tuples.
    std::size_t first_index() const noexcept { return first_; }
    std::size_t second_index() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// A source was asked for more symbols than it can define.
class GenerationError : public Error {
public:
    using Error::Error;
};

/// An experiment ran but could not complete (e.g. infeasible rejection sampling).
class ExperimentAborted : public Error {
public:
    using Error::Error;
};

}  // namespace cardbounds
