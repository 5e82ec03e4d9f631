#include "qarea/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "qarea/errors.hpp"

namespace qarea {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Gauss nodes are every second Kronrod node (indices 1, 3, 5, 7).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct GKEstimate {
    double value;
    double error;
};

GKEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {kronrod, std::abs(kronrod - gauss)};
}

struct Interval {
    double a, b;
    double val, err;
    int gen;
};

struct ByError {
    bool operator()(const Interval& x, const Interval& y) const { return x.err < y.err; }
};

// Globally adaptive bisection: always refines the interval with the largest
// error estimate.  Endpoints are never evaluated (all Kronrod nodes are
// interior), so integrable endpoint singularities only cost extra depth.
double adaptive_gk(const std::function<double(double)>& f,
                   const std::vector<double>& breakpoints, const QuadratureConfig& cfg) {
    std::priority_queue<Interval, std::vector<Interval>, ByError> heap;
    double total_val = 0.0;
    double total_err = 0.0;

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        const double a = breakpoints[i];
        const double b = breakpoints[i + 1];
        if (!(b > a)) continue;
        const GKEstimate e = gk15(f, a, b);
        heap.push({a, b, e.value, e.error, 0});
        total_val += e.value;
        total_err += e.error;
    }

    double frozen_err = 0.0; // error locked in by intervals at max depth
    long splits = 0;
    constexpr long kMaxSplits = 200000;

    for (;;) {
        const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_val));
        if (total_err <= tol) return total_val;
        if (heap.empty() || frozen_err > tol || splits > kMaxSplits) {
            std::ostringstream os;
            os << "bound_integral: tolerance not reached (err=" << total_err
               << ", tol=" << tol << "); best estimate " << total_val;
            throw ConvergenceError(os.str(), total_val);
        }

        const Interval top = heap.top();
        heap.pop();
        if (top.gen >= cfg.max_depth) {
            frozen_err += top.err;
            continue;
        }

        const double mid = 0.5 * (top.a + top.b);
        const GKEstimate left = gk15(f, top.a, mid);
        const GKEstimate right = gk15(f, mid, top.b);
        total_val += left.value + right.value - top.val;
        total_err += left.error + right.error - top.err;
        heap.push({top.a, mid, left.value, left.error, top.gen + 1});
        heap.push({mid, top.b, right.value, right.error, top.gen + 1});
        ++splits;
    }
}

double closed_form_integral(const WeightProfile& profile, double p, double r) {
    const double inv = -1.0 / (p - 1.0);
    switch (profile.kind()) {
        case WeightProfile::Kind::Constant:
            return std::pow(profile.q0(), inv) * (p - 1.0) / (p - 2.0) *
                   std::pow(r, (p - 2.0) / (p - 1.0));
        case WeightProfile::Kind::PowerLaw: {
            const double a = profile.alpha();
            return std::pow(profile.q0(), inv) * (p - 1.0) / (a + p - 2.0) *
                   std::pow(r, (a + p - 2.0) / (p - 1.0));
        }
        case WeightProfile::Kind::Logarithmic:
            // integrand reduces to q0^(-1/(p-1)) ln(1/t); antiderivative t(1 - ln t)
            return std::pow(profile.q0(), inv) * r * (1.0 - std::log(r));
        default:
            throw NumericError("closed_form_integral: no closed form for this profile");
    }
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ValidationError("quadrature tolerances must be > 0");
    if (max_depth < 10)
        throw ValidationError("quadrature max_depth must be >= 10");
}

double bound_integral(const WeightProfile& profile, double p, double r,
                      const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(p) || p <= 2.0)
        throw ValidationError("bound_integral: exponent p must be > 2");
    if (!std::isfinite(r) || r <= 0.0)
        throw ValidationError("bound_integral: radius r must be finite and > 0");
    if (profile.kind() == WeightProfile::Kind::Logarithmic && r >= 1.0)
        throw ValidationError("bound_integral: logarithmic profiles require r < 1");
    if (r > profile.domain_limit())
        throw ValidationError("bound_integral: radius exceeds the profile domain");

    // Integrability is decided from the closed-form exponent: the integrand
    // behaves like t^((alpha-1)/(p-1)) near 0 for power-law weights, which is
    // integrable iff alpha + p - 2 > 0.  Table profiles are constant below the
    // first knot and always integrable; so are the other variants.
    if (profile.kind() == WeightProfile::Kind::PowerLaw &&
        profile.alpha() + p - 2.0 <= 0.0) {
        std::ostringstream os;
        os << "bound_integral: integrand t^((alpha-1)/(p-1)) with alpha=" << profile.alpha()
           << ", p=" << p << " is not integrable at 0";
        throw DivergenceError(os.str());
    }

    if (!cfg.force_adaptive && profile.kind() != WeightProfile::Kind::Table)
        return closed_form_integral(profile, p, r);

    // Substitution u = t^beta, beta = (p-2)/(p-1), removes the t^(-1/(p-1))
    // factor exactly:  I = (1/beta) * integral_0^(r^beta) q(u^(1/beta))^(-1/(p-1)) du.
    const double beta = (p - 2.0) / (p - 1.0);
    const double u_max = std::pow(r, beta);
    const double inv = -1.0 / (p - 1.0);

    // The substitution Jacobian 1/beta lives inside the integrand so every
    // estimate (including the one a ConvergenceError carries) is in final
    // units.  t is kept inside [DBL_MIN, r]: rounding can push u^(1/beta)
    // past r at the top, and for p near 2 it can underflow to 0 at the
    // bottom, where the profile is not evaluable.
    auto integrand = [&, inv_beta = 1.0 / beta](double u) {
        const double t = std::clamp(std::pow(u, inv_beta),
                                    std::numeric_limits<double>::min(), r);
        return inv_beta * std::pow(profile.eval_clamped(t, p), inv);
    };

    // Split at the knot images so each piece of a table profile is smooth.
    std::vector<double> breaks{0.0};
    if (profile.kind() == WeightProfile::Kind::Table) {
        for (const auto& k : profile.knots())
            if (k.t > 0.0 && k.t < r) breaks.push_back(std::pow(k.t, beta));
    }
    breaks.push_back(u_max);
    std::sort(breaks.begin(), breaks.end());

    return adaptive_gk(integrand, breaks, cfg);
}

} // namespace qarea
