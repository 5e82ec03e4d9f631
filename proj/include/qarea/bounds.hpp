#pragma once

#include <span>
#include <string>
#include <vector>

#include "qarea/profiles.hpp"
#include "qarea/quadrature.hpp"

namespace qarea {

// Parameters of a single bound evaluation: exponent p > 2, center z0,
// distance d0 from z0 to the domain boundary, and evaluation radius
// 0 < r < d0.
struct BoundParams {
    double p = 0.0;
    Point z0{0.0, 0.0};
    double d0 = 0.0;
    double r = 0.0;

    void validate() const;
};

// A sweep of the lower bound over radii.
struct BoundCurve {
    struct Sample {
        double r;
        double bound;
    };
    std::vector<Sample> samples;
    std::string profile_id;
    double p = 0.0;
};

// Sharp lower bound on the area of the image of the closed disc B(z0, r)
// under any homeomorphism whose circle-averaged distortion is majorized by
// the profile:
//
//   area >= pi * ((p-2)/(p-1))^(2(p-1)/(p-2)) * I(r)^(2(p-1)/(p-2))
//
// with I(r) the radial integral from quadrature.hpp.  The outer powers are
// evaluated in the log domain so exponents blowing up as p -> 2+ do not
// overflow intermediates.
double area_lower_bound(const WeightProfile& profile, const BoundParams& params,
                        const QuadratureConfig& cfg = {});

// Closed form of the bound for power-law majorants q(t) <= q0 * t^(-alpha),
// alpha >= 0:
//
//   pi^(-alpha/(p-2)) * ((p-2)/(alpha+p-2))^(2(p-1)/(p-2))
//     * q0^(2/(2-p)) * (pi r^2)^(1 + alpha/(p-2))
//
// Algebraically identical to area_lower_bound with the PowerLaw profile.
double power_law_bound(double q0, double alpha, double p, double r);

// Closed form for bounded majorants q(t) <= q0: q0^(2/(2-p)) * pi * r^2.
// Equals power_law_bound with alpha = 0.  The same formula serves the
// pointwise hypothesis Q(z) <= q0.
double constant_bound(double q0, double p, double r);

// Closed form for the logarithmic majorant q(t) <= q0 / (t ln^(p-1)(1/t)) on
// the unit disc:
//
//   pi * ((p-2)/(p-1))^(2(p-1)/(p-2)) * q0^(2/(2-p)) * (r ln(e/r))^(2(p-1)/(p-2))
//
// Requires r in (0, 1).
double log_bound(double q0, double p, double r);

// Minimum of the image-area functional over the class of maps of the unit
// disc with circle-averaged distortion bounded by q0:
//
//   min = pi * q0^(2/(2-p)) * r^2,    r in [0, 1],
//
// attained by the extremal linear scaling (see maps.hpp).  Identical to
// constant_bound on the shared domain; r = 0 yields 0.
double extremal_min(double q0, double p, double r);

// Sweeps area_lower_bound over a geometric grid of n >= 2 radii inside
// (0, d0).  The grid spans three decades ending just below d0 (power-law
// bounds plot as straight lines in log-log axes).  Per-sample errors are
// rethrown with the offending radius prepended to the message.
BoundCurve bound_curve(const WeightProfile& profile, double p, double d0, int n,
                       const QuadratureConfig& cfg = {});

// Same sweep over caller-supplied radii (strictly increasing, all < d0).
BoundCurve bound_curve(const WeightProfile& profile, double p,
                       std::span<const double> radii, double d0,
                       const QuadratureConfig& cfg = {});

} // namespace qarea
