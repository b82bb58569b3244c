#pragma once

#include <stdexcept>
#include <string>

namespace overlapq {

// Invalid user-supplied parameters (theta range, rates, weights, config).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Model violates the stability condition (utilization >= 1).
class StabilityError : public std::domain_error {
public:
    explicit StabilityError(const std::string& msg) : std::domain_error(msg) {}
};

// Numerical failure in root finding or linear solving.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Root filter and winding-number verification disagree, or the count does
// not match the predicted one.  Carries both counts for diagnostics.
class RootCountMismatch : public NumericalError {
public:
    RootCountMismatch(const std::string& msg, int found_count, int verified_count)
        : NumericalError(msg), found(found_count), verified(verified_count) {}
    int found;
    int verified;
};

// A zero lies too close to the integration contour for a reliable winding
// number; the caller should perturb the radius.
class ContourTooClose : public NumericalError {
public:
    explicit ContourTooClose(const std::string& msg) : NumericalError(msg) {}
};

// The boundary linear system is singular (e.g. vanishing coefficient at
// theta = 0 outside the dedicated branch).
class SingularSystem : public NumericalError {
public:
    explicit SingularSystem(const std::string& msg) : NumericalError(msg) {}
};

// No analytic sign variant of a transform matched the quadrature oracle.
class OracleMismatch : public NumericalError {
public:
    explicit OracleMismatch(const std::string& msg) : NumericalError(msg) {}
};

// Evaluating a transform failed on the inversion contour.
class EvaluationFailure : public NumericalError {
public:
    explicit EvaluationFailure(const std::string& msg) : NumericalError(msg) {}
};

// A probability left [0,1] beyond tolerance.
class RangeViolation : public NumericalError {
public:
    explicit RangeViolation(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace overlapq
