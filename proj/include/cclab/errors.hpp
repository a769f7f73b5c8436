#pragma once

#include <stdexcept>
#include <string>

namespace cclab {

/// Base class for failures raised by the numerical kernels.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Ordering between monotone iterates (or the initial sub/super pair) was
/// genuinely violated. Usually means the mesh is too coarse or omega is wrong.
class MonotonicityBreach : public SolverError {
public:
    explicit MonotonicityBreach(const std::string& msg) : SolverError(msg) {}
};

/// The quadratic form behind a barrier solve failed its coercivity probe.
class BarrierFailure : public SolverError {
public:
    BarrierFailure(const std::string& msg, double rayleigh)
        : SolverError(msg), rayleigh_value(rayleigh) {}
    double rayleigh_value;
};

/// Eigenvalue iteration did not converge; carries the last eigenresidual.
class SpectralFailure : public SolverError {
public:
    SpectralFailure(const std::string& msg, double residual)
        : SolverError(msg), eigen_residual(residual) {}
    double eigen_residual;
};

/// A linear solve produced a sign pattern the discrete maximum principle
/// forbids; flags a discretization fault.
class MaxPrincipleViolation : public SolverError {
public:
    explicit MaxPrincipleViolation(const std::string& msg) : SolverError(msg) {}
};

/// Line search could not find an admissible step (positivity or descent).
class LineSearchFailure : public SolverError {
public:
    explicit LineSearchFailure(const std::string& msg) : SolverError(msg) {}
};

/// Scenario configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace cclab
