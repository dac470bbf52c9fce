#pragma once

#include <stdexcept>
#include <string>

namespace dephcorr {

/// Shapes that do not fit together (non-square input, truncation too small, ...).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix that should be Hermitian is not, beyond tolerance.
class SymmetryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested operation does not apply to the given scenario or ladder.
class UnsupportedScenario : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad physical or numerical parameter (negative rate, zero spectrum, too few points).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Errors raised while a trajectory is being integrated carry the time they occurred at.
class TimedError : public std::runtime_error {
public:
    TimedError(const std::string& what, double t)
        : std::runtime_error(what + " at t=" + std::to_string(t)), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

/// Step-size underflow or step budget exhausted.
class IntegrationError : public TimedError {
public:
    using TimedError::TimedError;
};

/// Sampled state drifted away from trace one or Hermiticity by more than we silently repair.
class IntegrityError : public TimedError {
public:
    using TimedError::TimedError;
};

}  // namespace dephcorr
