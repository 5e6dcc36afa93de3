#pragma once

#include <stdexcept>
#include <string>

namespace pdcw {

/// Base class for all pdcw error conditions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physical parameter violates its validity range (non-positive length,
/// malformed config file, bad grid request).
class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

/// |n_si| below the degeneracy cutoff: the first-order walk-off model does
/// not apply and the analytic forms blow up.
class DegenerateGroupVelocity : public Error {
public:
    explicit DegenerateGroupVelocity(const std::string& msg) : Error(msg) {}
};

/// Requested sampling window covers less than two marginal standard
/// deviations of the distribution being sampled.
class WindowTooSmall : public Error {
public:
    explicit WindowTooSmall(const std::string& msg) : Error(msg) {}
};

/// A quadratic-form block is too ill-conditioned to invert meaningfully.
class SingularBlock : public Error {
public:
    explicit SingularBlock(const std::string& msg) : Error(msg) {}
};

/// Node doubling changed the quadrature result by more than the tolerance.
class QuadratureNotConverged : public Error {
public:
    explicit QuadratureNotConverged(const std::string& msg) : Error(msg) {}
};

/// An intensity grid contains values below the numerical negativity floor.
class NegativeIntensity : public Error {
public:
    explicit NegativeIntensity(const std::string& msg) : Error(msg) {}
};

/// Output file or directory could not be written.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace pdcw
