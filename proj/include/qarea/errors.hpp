#pragma once

#include <stdexcept>
#include <string>

namespace qarea {

// Base class of everything thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad parameters, out-of-domain evaluation points, malformed input files.
// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Degenerate geometric input (self-intersecting polygon, too few vertices).
class GeometryError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Numerical failure: divergent integral, unmet tolerance, failed line search.
// The CLI maps these to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

// The requested integral does not converge (non-integrable integrand).
class DivergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

// Tolerance not reached within the subdivision budget; carries the best
// estimate obtained so far.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : NumericError(what), best_estimate_(best_estimate) {}
    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

// A field sample came back non-finite; carries the angle of the failure.
class FieldEvalError : public NumericError {
public:
    FieldEvalError(const std::string& what, double theta)
        : NumericError(what), theta_(theta) {}
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

// Backtracking line search could not find a decrease; carries the energy of
// the last accepted iterate.
class LineSearchError : public NumericError {
public:
    LineSearchError(const std::string& what, double last_energy)
        : NumericError(what), last_energy_(last_energy) {}
    double last_energy() const noexcept { return last_energy_; }

private:
    double last_energy_;
};

} // namespace qarea
