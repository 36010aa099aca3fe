#ifndef ENTLAB_ERRORS_HPP
#define ENTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace entlab {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct NotPSD : Error {
    explicit NotPSD(const std::string& msg) : Error(msg) {}
};

struct InvalidSpectrum : Error {
    explicit InvalidSpectrum(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A mathematical property the library relies on was observed to fail;
/// signals a bug rather than bad input.
struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

struct NotBracketed : Error {
    explicit NotBracketed(const std::string& msg) : Error(msg) {}
};

} // namespace entlab

#endif
