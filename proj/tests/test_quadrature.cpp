#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qarea/errors.hpp"
#include "qarea/quadrature.hpp"

using namespace qarea;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

QuadratureConfig adaptive_cfg() {
    QuadratureConfig cfg;
    cfg.force_adaptive = true;
    return cfg;
}

// Closed forms of I(r), derived by the power rule on the substituted
// integrand; frozen here as the oracle for both integration paths.
double constant_integral(double q0, double p, double r) {
    return std::pow(q0, -1.0 / (p - 1.0)) * (p - 1.0) / (p - 2.0) *
           std::pow(r, (p - 2.0) / (p - 1.0));
}

double power_integral(double q0, double alpha, double p, double r) {
    return std::pow(q0, -1.0 / (p - 1.0)) * (p - 1.0) / (alpha + p - 2.0) *
           std::pow(r, (alpha + p - 2.0) / (p - 1.0));
}

double log_integral(double q0, double p, double r) {
    return std::pow(q0, -1.0 / (p - 1.0)) * r * (1.0 - std::log(r));
}

// Brute-force midpoint rule on the substituted integrand, independent of the
// Gauss-Kronrod machinery.
double midpoint_oracle(const WeightProfile& prof, double p, double r, long n) {
    const double beta = (p - 2.0) / (p - 1.0);
    const double umax = std::pow(r, beta);
    const double du = umax / double(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double u = (double(i) + 0.5) * du;
        const double t = std::min(std::pow(u, 1.0 / beta), r);
        sum += std::pow(prof.eval_clamped(t, p), -1.0 / (p - 1.0));
    }
    return sum * du / beta;
}

} // namespace

TEST_CASE("bound_integral: frozen closed-form values") {
    // constant 1, p = 4: integral of t^(-1/3) over (0,1) = 3/2
    CHECK(rel_err(bound_integral(WeightProfile::constant(1.0), 4.0, 1.0), 1.5) < 1e-14);
    // power law q0 = 1, alpha = 1, p = 4: integrand identically 1
    CHECK(rel_err(bound_integral(WeightProfile::power_law(1.0, 1.0), 4.0, 0.5), 0.5) < 1e-14);
    // constant 2, p = 3: 2^(-1/2) * 2 = sqrt(2)
    CHECK(rel_err(bound_integral(WeightProfile::constant(2.0), 3.0, 1.0), std::sqrt(2.0)) <
          1e-14);
    // logarithmic q0 = 1, p = 4 at r = 1/e: r ln(e/r) = 2/e
    CHECK(rel_err(bound_integral(WeightProfile::logarithmic(1.0), 4.0, std::exp(-1.0)),
                  2.0 * std::exp(-1.0)) < 1e-14);
}

TEST_CASE("bound_integral: adaptive path reproduces every closed form") {
    const auto cfg = adaptive_cfg();
    for (double p : {2.5, 3.0, 4.0, 8.0})
        for (double q0 : {0.5, 1.0, 4.0}) {
            for (double r : {0.25, 0.8})
                CHECK(rel_err(bound_integral(WeightProfile::constant(q0), p, r, cfg),
                              constant_integral(q0, p, r)) < 1e-9);
            for (double alpha : {0.0, 1.0, 2.0})
                for (double r : {0.25, 0.8})
                    CHECK(rel_err(bound_integral(WeightProfile::power_law(q0, alpha), p, r, cfg),
                                  power_integral(q0, alpha, p, r)) < 1e-9);
            for (double r : {0.25, 0.8})
                CHECK(rel_err(bound_integral(WeightProfile::logarithmic(q0), p, r, cfg),
                              log_integral(q0, p, r)) < 1e-9);
        }
}

TEST_CASE("bound_integral: negative-alpha profiles go through the general path") {
    const auto cfg = adaptive_cfg();
    // induced by a shrinking power stretch: alpha = (s-1)(p-2) < 0
    const double s = 0.5, p = 4.0;
    const auto prof = WeightProfile::power_law(std::pow(s, 1.0 - p), (s - 1.0) * (p - 2.0));
    for (double r : {0.3, 0.9})
        CHECK(rel_err(bound_integral(prof, p, r, cfg),
                      power_integral(prof.q0(), prof.alpha(), p, r)) < 1e-8);
}

TEST_CASE("bound_integral: independent midpoint oracle agrees") {
    const auto prof = WeightProfile::power_law(2.0, 0.7);
    const double p = 3.5, r = 0.8;
    const double oracle = midpoint_oracle(prof, p, r, 2'000'000);
    CHECK(rel_err(bound_integral(prof, p, r), oracle) < 1e-7);
    CHECK(rel_err(bound_integral(prof, p, r, adaptive_cfg()), oracle) < 1e-7);
}

TEST_CASE("bound_integral: table profiles") {
    // table sampled from a constant weight matches the constant closed form;
    // below the first knot the profile is treated as constant
    const auto flat = WeightProfile::table({{1e-4, 2.0}, {0.1, 2.0}, {1.0, 2.0}});
    CHECK(rel_err(bound_integral(flat, 3.0, 1.0), constant_integral(2.0, 3.0, 1.0)) < 1e-9);

    // log-log interpolation reproduces a power law exactly, so the integral
    // matches the power-law closed form (modulo the constant-below-first-knot
    // extrapolation, made negligible by a tiny first knot)
    std::vector<ProfileKnot> knots;
    for (double t : {1e-8, 1e-4, 0.01, 0.1, 0.5, 1.0})
        knots.push_back({t, 3.0 * std::pow(t, -0.5)});
    const auto pw = WeightProfile::table(knots);
    CHECK(rel_err(bound_integral(pw, 4.0, 1.0), power_integral(3.0, 0.5, 4.0, 1.0)) < 1e-6);

    // domain ends at the last knot
    CHECK_THROWS_AS(bound_integral(pw, 4.0, 1.5), ValidationError);
}

TEST_CASE("bound_integral: divergence is classified, not integrated") {
    CHECK_THROWS_AS(bound_integral(WeightProfile::power_law(1.0, -2.0), 3.0, 1.0),
                    DivergenceError);
    // boundary case alpha + p - 2 = 0 diverges too
    CHECK_THROWS_AS(bound_integral(WeightProfile::power_law(1.0, -1.0), 3.0, 1.0),
                    DivergenceError);
    CHECK_THROWS_AS(bound_integral(WeightProfile::power_law(1.0, -2.0), 3.0, 1.0, adaptive_cfg()),
                    DivergenceError);
}

TEST_CASE("bound_integral: unreachable tolerance reports the best estimate") {
    QuadratureConfig cfg;
    cfg.force_adaptive = true;
    cfg.rel_tol = 1e-18;
    cfg.abs_tol = 1e-300;
    cfg.max_depth = 10;
    const auto prof = WeightProfile::logarithmic(1.0);
    try {
        bound_integral(prof, 3.0, 0.5, cfg);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(rel_err(e.best_estimate(), log_integral(1.0, 3.0, 0.5)) < 1e-6);
    }
}

TEST_CASE("bound_integral: domain and parameter validation") {
    const auto prof = WeightProfile::constant(1.0);
    CHECK_THROWS_AS(bound_integral(prof, 2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(bound_integral(prof, 4.0, 0.0), ValidationError);
    CHECK_THROWS_AS(bound_integral(WeightProfile::logarithmic(1.0), 4.0, 1.0), ValidationError);

    QuadratureConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bound_integral(prof, 4.0, 1.0, bad), ValidationError);
    bad = QuadratureConfig{};
    bad.max_depth = 9;
    CHECK_THROWS_AS(bound_integral(prof, 4.0, 1.0, bad), ValidationError);
}

TEST_CASE("bound_integral: monotone in r and antitone in the weight") {
    const auto prof = WeightProfile::power_law(2.0, 0.5);
    double prev = 0.0;
    for (double r : {1e-6, 1e-4, 0.01, 0.1, 0.5, 1.0, 2.0}) {
        const double v = bound_integral(prof, 3.0, r);
        CHECK(v > prev);
        prev = v;
    }
    // I(r) -> 0 as r -> 0+
    CHECK(bound_integral(prof, 3.0, 1e-12) < 1e-6);

    // pointwise q1 <= q2 implies I(q1) >= I(q2)
    for (double p : {2.5, 3.0, 8.0})
        for (double r : {0.3, 0.9}) {
            const double small = bound_integral(WeightProfile::constant(1.0), p, r);
            const double large = bound_integral(WeightProfile::constant(3.0), p, r);
            CHECK(small >= large);
            // on r <= 1, q0 t^(-alpha) >= q0 for alpha >= 0
            const double flat = bound_integral(WeightProfile::constant(2.0), p, r);
            const double steep = bound_integral(WeightProfile::power_law(2.0, 1.5), p, r);
            CHECK(flat >= steep);
        }
}
