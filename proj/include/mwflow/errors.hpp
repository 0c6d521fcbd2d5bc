#pragma once

#include <stdexcept>
#include <string>

namespace mwflow {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid runtime data: mismatched grids, negative densities, non-finite
/// values, mass mismatches, out-of-range evaluation points.
class domain_error : public error {
public:
    using error::error;
};

/// Invalid static configuration: parameters outside their admissible range,
/// malformed config files. CLI exit code 2.
class config_error : public error {
public:
    using error::error;
};

/// A numerical procedure failed: Newton bracket collapse, quadrature
/// non-convergence, NaN detected, CFL refusal.
class numerical_error : public error {
public:
    using error::error;
};

/// An iterative solver ran out of iterations. Carries the last residuals.
/// CLI exit code 3.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, int iterations, double residual, double gap)
        : error(what), iterations(iterations), residual(residual), gap(gap) {}

    int iterations = 0;
    double residual = 0.0;
    double gap = 0.0;
};

/// A guaranteed inequality failed beyond its slack. CLI exit code 4.
class invariant_violation : public error {
public:
    using error::error;
};

} // namespace mwflow
