#pragma once

#include "qarea/profiles.hpp"

namespace qarea {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 60;
    // Skip the closed-form fast paths and force the adaptive integrator.
    // Used by the cross-check suites; leave false in normal operation.
    bool force_adaptive = false;

    void validate() const;
};

// The radial integral feeding the area bound:
//
//   I(r) = integral_0^r  t^(-1/(p-1)) * q(t)^(-1/(p-1)) dt,   p > 2.
//
// The integrand has an integrable endpoint singularity at t = 0.  The
// substitution u = t^((p-2)/(p-1)) removes it exactly for constant profiles
// and leaves a bounded-variation integrand otherwise; the smooth remainder is
// integrated by adaptive Gauss-Kronrod bisection.  Constant, PowerLaw and
// Logarithmic profiles have closed forms that bypass quadrature unless
// cfg.force_adaptive is set.
//
// Throws DivergenceError when the integrand is non-integrable (PowerLaw with
// alpha + p - 2 <= 0) and ConvergenceError, carrying the best estimate, when
// the tolerance cannot be met within cfg.max_depth bisection levels.
double bound_integral(const WeightProfile& profile, double p, double r,
                      const QuadratureConfig& cfg = {});

} // namespace qarea
