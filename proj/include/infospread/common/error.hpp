#pragma once

#include <stdexcept>
#include <string>

namespace infospread {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not parse in the declared format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A caller violated an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Singular systems, failed decompositions, undefined statistics.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Cholesky failure; carries the index of the pivot that went non-positive.
class DecompositionError : public NumericalError {
public:
    DecompositionError(const std::string& what, std::size_t pivot)
        : NumericalError(what), pivot_(pivot) {}

    [[nodiscard]] std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

/// Configuration problems; the message lists every problem found.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace infospread
