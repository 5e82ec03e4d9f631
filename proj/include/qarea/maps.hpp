#pragma once

#include <string>

namespace qarea {

// Radial test homeomorphisms z -> rho(|z|) * z/|z| with analytic radial
// profiles.  Their dilatations and image areas have closed forms, which makes
// them the verification counterpart of the bound computations: the area of
// the image disc is known exactly and can be compared against the lower
// bound produced from the map's own distortion profile.
class RadialMap {
public:
    enum class Kind {
        Identity,      // rho(t) = t
        LinearScaling, // rho(t) = c * t,   c > 0
        PowerStretch,  // rho(t) = t^s,     s > 0
    };

    static RadialMap identity();
    static RadialMap linear_scaling(double c);
    static RadialMap power_stretch(double s);

    Kind kind() const noexcept { return kind_; }

    // Scaling factor c (LinearScaling) or stretch exponent s (PowerStretch);
    // 1 for the identity.
    double parameter() const noexcept { return param_; }

    double rho(double t) const;
    double drho(double t) const;

    std::string id() const;

private:
    RadialMap(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

// Pointwise distortion data of a radial map at radius t for exponent p:
// smallest and largest stretching, Jacobian, and inner p-dilatation J / l^p.
struct Dilatations {
    double l;
    double L;
    double J;
    double K_Ip;
};

// Closed-form dilatations at radius t > 0 for exponent p > 2.
Dilatations dilatations_at(const RadialMap& map, double t, double p);

// Exact area of the image of the closed disc of radius r centered at the
// origin: radial maps send discs to discs, so this is pi * rho(r)^2.
double image_disc_area(const RadialMap& map, double r);

// The linear scaling z -> q0^(1/(2-p)) * z.  Its inner p-dilatation is the
// constant q0 at every radius, and it attains the minimal image area among
// maps whose circle-averaged dilatation is bounded by q0.
RadialMap extremal_map(double q0, double p);

// Area functional on the unit-disc setting: image_disc_area restricted to
// r in (0, 1].
double area_functional(const RadialMap& map, double r);

} // namespace qarea
