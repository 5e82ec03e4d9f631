#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qarea {

using Point = std::complex<double>;

class RadialMap;

struct ProfileKnot {
    double t; // radius, strictly increasing across the table
    double q; // weight value, finite and > 0
};

// Radial majorant q(t) of the circle averages of a planar weight field.
//
// Variants:
//   Constant     q(t) = q0
//   PowerLaw     q(t) = q0 * t^(-alpha)
//   Logarithmic  q(t) = q0 / (t * ln^(p-1)(1/t)) on t in (0,1); the exponent
//                p is supplied at evaluation time so one profile can be
//                reused across p sweeps
//   Table        monotone piecewise log-linear interpolation in (log t, log q)
//
// PowerLaw accepts negative alpha: shrinking power stretches induce exactly
// such profiles, and the general integral bound handles them.  The closed-form
// power-law bound (see bounds.hpp) keeps its alpha >= 0 hypothesis.
class WeightProfile {
public:
    enum class Kind { Constant, PowerLaw, Logarithmic, Table };

    static WeightProfile constant(double q0);
    static WeightProfile power_law(double q0, double alpha);
    static WeightProfile logarithmic(double q0);
    static WeightProfile table(std::vector<ProfileKnot> knots);

    Kind kind() const noexcept { return kind_; }
    double q0() const noexcept { return q0_; }
    double alpha() const noexcept { return alpha_; }
    const std::vector<ProfileKnot>& knots() const noexcept { return knots_; }

    // Evaluate at radius t.  Throws ValidationError outside the domain, and
    // for the Logarithmic variant, which needs the exponent.
    double eval(double t) const;

    // Evaluate at radius t with exponent p (used by Logarithmic only).
    double eval(double t, double p) const;

    // Like eval(t, p) but table lookups clamp to the end knots instead of
    // throwing.  This is the extrapolation rule the integrator relies on:
    // below the first knot the profile is treated as constant.
    double eval_clamped(double t, double p) const;

    // Largest radius the profile is defined up to: +inf for Constant and
    // PowerLaw, 1 (exclusive) for Logarithmic, the last knot for Table.
    double domain_limit() const;

    // Short text id used in reports, e.g. "power(q0=1,alpha=2)".
    std::string id() const;

private:
    WeightProfile(Kind kind, double q0, double alpha, std::vector<ProfileKnot> knots)
        : kind_(kind), q0_(q0), alpha_(alpha), knots_(std::move(knots)) {}

    Kind kind_;
    double q0_ = 0.0;
    double alpha_ = 0.0;
    std::vector<ProfileKnot> knots_;
};

// A planar weight field restricted to a disc of the given radius.  The
// callable must return finite nonnegative values except possibly on sets the
// circle-average quadrature treats as measure zero; non-finite samples are
// reported as FieldEvalError.
struct ScalarField {
    std::function<double(Point)> eval;
    double domain_radius = 0.0;
};

// Mean of the field over the circle of radius t about z0, computed with the
// n-point trapezoid rule on the periodic integrand (spectrally accurate for
// smooth fields).  Requires 0 < t < field.domain_radius and n >= 8.
double circle_average(const ScalarField& field, Point z0, double t, int n);

// Distortion profile of a radial map: t -> inner p-dilatation on the circle
// of radius t (constant on circles for radial maps).  Returns the exact
// closed-form variant for identity, linear scalings and power stretches.
WeightProfile profile_from_map(const RadialMap& map, double p);

} // namespace qarea
