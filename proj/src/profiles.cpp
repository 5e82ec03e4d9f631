#include "qarea/profiles.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qarea/errors.hpp"
#include "qarea/maps.hpp"
#include "qarea/parallel.hpp"

namespace qarea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_q0(double q0) {
    if (!std::isfinite(q0) || q0 <= 0.0)
        throw ValidationError("profile q0 must be finite and > 0");
}

std::string trim_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

WeightProfile WeightProfile::constant(double q0) {
    require_q0(q0);
    return WeightProfile(Kind::Constant, q0, 0.0, {});
}

WeightProfile WeightProfile::power_law(double q0, double alpha) {
    require_q0(q0);
    if (!std::isfinite(alpha))
        throw ValidationError("power-law profile alpha must be finite");
    return WeightProfile(Kind::PowerLaw, q0, alpha, {});
}

WeightProfile WeightProfile::logarithmic(double q0) {
    require_q0(q0);
    return WeightProfile(Kind::Logarithmic, q0, 0.0, {});
}

WeightProfile WeightProfile::table(std::vector<ProfileKnot> knots) {
    if (knots.size() < 2)
        throw ValidationError("table profile needs at least 2 knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto& k = knots[i];
        if (!std::isfinite(k.t) || k.t <= 0.0 || !std::isfinite(k.q) || k.q <= 0.0)
            throw ValidationError("table knots must have finite positive t and q");
        if (i > 0 && knots[i - 1].t >= k.t)
            throw ValidationError("table knots must be strictly increasing in t");
    }
    const double first_q = knots.front().q;
    return WeightProfile(Kind::Table, first_q, 0.0, std::move(knots));
}

double WeightProfile::eval(double t) const {
    if (kind_ == Kind::Logarithmic)
        throw ValidationError("logarithmic profile needs the exponent p; use eval(t, p)");
    return eval(t, 0.0);
}

double WeightProfile::eval(double t, double p) const {
    if (!std::isfinite(t) || t <= 0.0)
        throw ValidationError("profile evaluation radius must be finite and > 0");
    switch (kind_) {
        case Kind::Constant:
            return q0_;
        case Kind::PowerLaw:
            return q0_ * std::pow(t, -alpha_);
        case Kind::Logarithmic: {
            if (t >= 1.0)
                throw ValidationError("logarithmic profile is only defined on t in (0,1)");
            if (!std::isfinite(p) || p <= 2.0)
                throw ValidationError("logarithmic profile needs exponent p > 2");
            const double lg = std::log(1.0 / t);
            return q0_ / (t * std::pow(lg, p - 1.0));
        }
        case Kind::Table: {
            if (t < knots_.front().t || t > knots_.back().t)
                throw ValidationError("radius outside table knot range");
            return eval_clamped(t, p);
        }
    }
    return 0.0; // unreachable
}

double WeightProfile::eval_clamped(double t, double p) const {
    if (kind_ != Kind::Table) return eval(t, p);
    if (!std::isfinite(t) || t <= 0.0)
        throw ValidationError("profile evaluation radius must be finite and > 0");
    if (t <= knots_.front().t) return knots_.front().q;
    if (t >= knots_.back().t) return knots_.back().q;

    // Piecewise linear in (log t, log q); power-law segments are exact.
    std::size_t hi = 1;
    while (knots_[hi].t < t) ++hi;
    if (knots_[hi].t == t) return knots_[hi].q;
    const auto& a = knots_[hi - 1];
    const auto& b = knots_[hi];
    const double w = (std::log(t) - std::log(a.t)) / (std::log(b.t) - std::log(a.t));
    return std::exp((1.0 - w) * std::log(a.q) + w * std::log(b.q));
}

double WeightProfile::domain_limit() const {
    switch (kind_) {
        case Kind::Constant:
        case Kind::PowerLaw: return kInf;
        case Kind::Logarithmic: return 1.0;
        case Kind::Table: return knots_.back().t;
    }
    return kInf; // unreachable
}

std::string WeightProfile::id() const {
    switch (kind_) {
        case Kind::Constant: return "constant(q0=" + trim_num(q0_) + ")";
        case Kind::PowerLaw:
            return "power(q0=" + trim_num(q0_) + ",alpha=" + trim_num(alpha_) + ")";
        case Kind::Logarithmic: return "log(q0=" + trim_num(q0_) + ")";
        case Kind::Table:
            return "table(" + std::to_string(knots_.size()) + " knots)";
    }
    return {};
}

double circle_average(const ScalarField& field, Point z0, double t, int n) {
    if (!field.eval)
        throw ValidationError("circle_average: field has no evaluator");
    if (!(t > 0.0) || !(t < field.domain_radius))
        throw ValidationError("circle_average: radius must lie in (0, domain_radius)");
    if (n < 8)
        throw ValidationError("circle_average: need at least 8 samples");

    // Trapezoid rule on a periodic integrand: the plain average of n equally
    // spaced samples.  Chunked so the samples may be evaluated concurrently;
    // partial sums are reduced in chunk order to keep runs bit-identical.
    const std::size_t chunk = 1024;
    const std::size_t n_chunks = (std::size_t(n) + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);

    const double step = 2.0 * M_PI / n;
    for_each_chunk(std::size_t(n), chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        for (std::size_t j = lo; j < hi; ++j) {
            const double theta = step * double(j);
            const double v = field.eval(z0 + t * Point(std::cos(theta), std::sin(theta)));
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "circle_average: non-finite field sample at theta=" << theta;
                throw FieldEvalError(os.str(), theta);
            }
            sum += v;
        }
        partial[c] = sum;
    });

    double total = 0.0;
    for (double s : partial) total += s;
    return total / double(n);
}

WeightProfile profile_from_map(const RadialMap& map, double p) {
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError("profile_from_map: exponent p must be > 2");

    switch (map.kind()) {
        case RadialMap::Kind::Identity:
            return WeightProfile::constant(1.0);
        case RadialMap::Kind::LinearScaling:
            // l = L = c, J = c^2, so the inner p-dilatation is c^(2-p).
            return WeightProfile::constant(std::pow(map.parameter(), 2.0 - p));
        case RadialMap::Kind::PowerStretch: {
            // K(t) = s t^((s-1)(2-p)) for s >= 1 and s^(1-p) t^((s-1)(2-p))
            // for s < 1 (the smallest stretching switches branch).  Negative
            // alpha for shrinking stretches is intentional; only the general
            // integral path evaluates those.
            const double s = map.parameter();
            const double alpha = (s - 1.0) * (p - 2.0);
            const double q0 = s >= 1.0 ? s : std::pow(s, 1.0 - p);
            return WeightProfile::power_law(q0, alpha);
        }
    }
    throw ValidationError("profile_from_map: unknown map kind"); // unreachable
}

} // namespace qarea
