#include "qarea/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qarea/errors.hpp"
#include "qarea/parallel.hpp"

namespace qarea {

namespace {

void require_p(double p, const char* where) {
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError(std::string(where) + ": exponent p must be > 2");
}

void require_positive(double v, const char* where, const char* what) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(std::string(where) + ": " + what + " must be finite and > 0");
}

// pi * ((p-2)/(p-1) * I)^(2(p-1)/(p-2)), assembled in the log domain so the
// outer exponent blowing up as p -> 2+ cannot overflow intermediates.
double bound_from_integral(double p, double integral) {
    if (integral <= 0.0) return 0.0;
    const double outer = 2.0 * (p - 1.0) / (p - 2.0);
    return M_PI * std::exp(outer * (std::log((p - 2.0) / (p - 1.0)) + std::log(integral)));
}

// Rethrows the current exception with the offending radius prepended,
// preserving the error category (and payload where there is one).
[[noreturn]] void rethrow_tagged(double r) {
    std::ostringstream tag;
    tag << "r=" << r << ": ";
    try {
        throw;
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(tag.str() + e.what(), e.best_estimate());
    } catch (const DivergenceError& e) {
        throw DivergenceError(tag.str() + e.what());
    } catch (const NumericError& e) {
        throw NumericError(tag.str() + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(tag.str() + e.what());
    }
}

} // namespace

void BoundParams::validate() const {
    require_p(p, "bound parameters");
    if (!std::isfinite(d0) && d0 != std::numeric_limits<double>::infinity())
        throw ValidationError("bound parameters: d0 must be positive (possibly inf)");
    if (!(d0 > 0.0))
        throw ValidationError("bound parameters: d0 must be positive");
    if (!std::isfinite(r) || r <= 0.0 || r >= d0)
        throw ValidationError("bound parameters: need 0 < r < d0");
}

double area_lower_bound(const WeightProfile& profile, const BoundParams& params,
                        const QuadratureConfig& cfg) {
    params.validate();
    return bound_from_integral(params.p, bound_integral(profile, params.p, params.r, cfg));
}

double constant_bound(double q0, double p, double r) {
    require_p(p, "constant_bound");
    require_positive(q0, "constant_bound", "q0");
    require_positive(r, "constant_bound", "r");
    return std::pow(q0, 2.0 / (2.0 - p)) * (M_PI * r * r);
}

double power_law_bound(double q0, double alpha, double p, double r) {
    require_p(p, "power_law_bound");
    require_positive(q0, "power_law_bound", "q0");
    require_positive(r, "power_law_bound", "r");
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ValidationError("power_law_bound: alpha must be >= 0");
    if (alpha == 0.0) return constant_bound(q0, p, r);

    const double outer = 2.0 * (p - 1.0) / (p - 2.0);
    const double log_bound_val = -(alpha / (p - 2.0)) * std::log(M_PI) +
                                 outer * std::log((p - 2.0) / (alpha + p - 2.0)) +
                                 (2.0 / (2.0 - p)) * std::log(q0) +
                                 (1.0 + alpha / (p - 2.0)) * std::log(M_PI * r * r);
    return std::exp(log_bound_val);
}

double log_bound(double q0, double p, double r) {
    require_p(p, "log_bound");
    require_positive(q0, "log_bound", "q0");
    if (!std::isfinite(r) || r <= 0.0 || r >= 1.0)
        throw ValidationError("log_bound: r must lie in (0, 1)");

    const double outer = 2.0 * (p - 1.0) / (p - 2.0);
    return M_PI * std::exp(outer * std::log((p - 2.0) / (p - 1.0)) +
                           (2.0 / (2.0 - p)) * std::log(q0) +
                           outer * std::log(r * (1.0 - std::log(r))));
}

double extremal_min(double q0, double p, double r) {
    require_p(p, "extremal_min");
    require_positive(q0, "extremal_min", "q0");
    if (!std::isfinite(r) || r < 0.0 || r > 1.0)
        throw ValidationError("extremal_min: r must lie in [0, 1]");
    if (r == 0.0) return 0.0;
    return constant_bound(q0, p, r);
}

BoundCurve bound_curve(const WeightProfile& profile, double p,
                       std::span<const double> radii, double d0,
                       const QuadratureConfig& cfg) {
    require_p(p, "bound_curve");
    if (radii.size() < 2)
        throw ValidationError("bound_curve: need at least 2 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!std::isfinite(radii[i]) || radii[i] <= 0.0 || radii[i] >= d0)
            throw ValidationError("bound_curve: radii must lie in (0, d0)");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw ValidationError("bound_curve: radii must be strictly increasing");
    }

    BoundCurve curve;
    curve.profile_id = profile.id();
    curve.p = p;
    curve.samples.resize(radii.size());

    for_each_chunk(radii.size(), 8, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double r = radii[i];
            try {
                BoundParams params{p, Point{0.0, 0.0}, d0, r};
                curve.samples[i] = {r, area_lower_bound(profile, params, cfg)};
            } catch (...) {
                rethrow_tagged(r);
            }
        }
    });
    return curve;
}

BoundCurve bound_curve(const WeightProfile& profile, double p, double d0, int n,
                       const QuadratureConfig& cfg) {
    require_p(p, "bound_curve");
    require_positive(d0, "bound_curve", "d0");
    if (n < 2)
        throw ValidationError("bound_curve: need at least 2 samples");

    // Geometric grid over three decades ending just below d0.
    const double r_hi = d0 * (1.0 - 1e-9);
    const double r_lo = r_hi * 1e-3;
    std::vector<double> radii(n);
    for (int i = 0; i < n; ++i)
        radii[i] = r_lo * std::pow(r_hi / r_lo, double(i) / double(n - 1));
    radii.back() = r_hi;

    return bound_curve(profile, p, radii, d0, cfg);
}

} // namespace qarea
