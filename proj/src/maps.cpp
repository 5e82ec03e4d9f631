#include "qarea/maps.hpp"

#include <cmath>
#include <sstream>

#include "qarea/errors.hpp"

namespace qarea {

namespace {

void require_finite_positive(double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(what) + " must be finite and > 0");
}

} // namespace

RadialMap RadialMap::identity() { return RadialMap(Kind::Identity, 1.0); }

RadialMap RadialMap::linear_scaling(double c) {
    require_finite_positive(c, "scaling factor c");
    return RadialMap(Kind::LinearScaling, c);
}

RadialMap RadialMap::power_stretch(double s) {
    require_finite_positive(s, "stretch exponent s");
    return RadialMap(Kind::PowerStretch, s);
}

double RadialMap::rho(double t) const {
    switch (kind_) {
        case Kind::Identity: return t;
        case Kind::LinearScaling: return param_ * t;
        case Kind::PowerStretch: return std::pow(t, param_);
    }
    return 0.0; // unreachable
}

double RadialMap::drho(double t) const {
    switch (kind_) {
        case Kind::Identity: return 1.0;
        case Kind::LinearScaling: return param_;
        case Kind::PowerStretch: return param_ * std::pow(t, param_ - 1.0);
    }
    return 0.0; // unreachable
}

std::string RadialMap::id() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Identity: os << "identity"; break;
        case Kind::LinearScaling: os << "scale(c=" << param_ << ")"; break;
        case Kind::PowerStretch: os << "power(s=" << param_ << ")"; break;
    }
    return os.str();
}

Dilatations dilatations_at(const RadialMap& map, double t, double p) {
    if (!std::isfinite(t) || t <= 0.0)
        throw ValidationError("dilatations_at: radius t must be finite and > 0");
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError("dilatations_at: exponent p must be > 2");

    const double radial = map.drho(t);        // stretching along the radius
    const double tangential = map.rho(t) / t; // stretching along the circle

    Dilatations d;
    d.l = std::min(radial, tangential);
    d.L = std::max(radial, tangential);
    d.J = radial * tangential;
    d.K_Ip = d.J / std::pow(d.l, p);
    return d;
}

double image_disc_area(const RadialMap& map, double r) {
    if (!std::isfinite(r) || r <= 0.0)
        throw ValidationError("image_disc_area: radius r must be finite and > 0");
    const double rr = map.rho(r);
    return M_PI * rr * rr;
}

RadialMap extremal_map(double q0, double p) {
    require_finite_positive(q0, "q0");
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError("extremal_map: exponent p must be > 2");
    return RadialMap::linear_scaling(std::pow(q0, 1.0 / (2.0 - p)));
}

double area_functional(const RadialMap& map, double r) {
    if (!std::isfinite(r) || r <= 0.0 || r > 1.0)
        throw ValidationError("area_functional: radius r must lie in (0, 1]");
    return image_disc_area(map, r);
}

} // namespace qarea
