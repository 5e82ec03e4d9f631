#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "qarea/bounds.hpp"
#include "qarea/errors.hpp"

using namespace qarea;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

BoundParams params(double p, double r, double d0 = kInf) {
    return BoundParams{p, Point{0.0, 0.0}, d0, r};
}

} // namespace

TEST_CASE("area_lower_bound: frozen values") {
    // identity-sharp case: bound equals the disc area pi r^2
    CHECK(rel_err(area_lower_bound(WeightProfile::constant(1.0), params(4.0, 0.5)),
                  M_PI / 4.0) < 1e-12);
    // constant majorant 2, p = 4: q0^(2/(2-p)) pi r^2 = pi/2
    CHECK(rel_err(area_lower_bound(WeightProfile::constant(2.0), params(4.0, 1.0)),
                  M_PI / 2.0) < 1e-12);
    // power-law majorant q0 = 1, alpha = 1, p = 3: pi/16
    CHECK(rel_err(area_lower_bound(WeightProfile::power_law(1.0, 1.0), params(3.0, 1.0)),
                  M_PI / 16.0) < 1e-12);
}

TEST_CASE("power_law_bound: frozen values and alpha = 0 reduction") {
    CHECK(power_law_bound(1.0, 0.0, 3.7, 1.0) == constant_bound(1.0, 3.7, 1.0));
    CHECK(rel_err(power_law_bound(1.0, 0.0, 3.7, 1.0), M_PI) < 1e-15);
    CHECK(rel_err(power_law_bound(1.0, 1.0, 3.0, 1.0), M_PI / 16.0) < 1e-13);
    CHECK(rel_err(power_law_bound(2.0, 2.0, 4.0, 1.0), M_PI / 16.0) < 1e-13);
    CHECK_THROWS_AS(power_law_bound(1.0, -0.5, 3.0, 1.0), ValidationError);
    CHECK_THROWS_AS(power_law_bound(1.0, 1.0, 2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(power_law_bound(0.0, 1.0, 3.0, 1.0), ValidationError);
}

TEST_CASE("constant_bound: frozen values") {
    CHECK(rel_err(constant_bound(1.0, 5.0, 0.3), M_PI * 0.09) < 1e-15);
    CHECK(rel_err(constant_bound(4.0, 3.0, 1.0), M_PI / 16.0) < 1e-15);
    CHECK(rel_err(constant_bound(2.0, 4.0, 1.0), M_PI / 2.0) < 1e-15);
}

TEST_CASE("log_bound: frozen values") {
    // q0 = 1, p = 4, r = 1/e: ln(e/r) = 2, so pi (2/3)^3 (2/e)^3 = 64 pi/(27 e^3)
    const double want = 64.0 * M_PI / (27.0 * std::exp(3.0));
    CHECK(rel_err(log_bound(1.0, 4.0, std::exp(-1.0)), want) < 1e-13);
    // q0 scaling: q0^(2/(2-p)) = 1/8 at q0 = 8, p = 4
    CHECK(rel_err(log_bound(8.0, 4.0, std::exp(-1.0)), want / 8.0) < 1e-13);
    // continuity toward r = 1: ln(e/r) -> 1, value -> pi/16 at p = 3
    CHECK(rel_err(log_bound(1.0, 3.0, 1.0 - 1e-11), M_PI / 16.0) < 1e-9);
    CHECK_THROWS_AS(log_bound(1.0, 3.0, 1.0), ValidationError);
    CHECK_THROWS_AS(log_bound(1.0, 3.0, 1.5), ValidationError);
}

TEST_CASE("extremal_min: frozen values and domain") {
    CHECK(rel_err(extremal_min(4.0, 3.0, 1.0), M_PI / 16.0) < 1e-15);
    CHECK(rel_err(extremal_min(1.0, 6.3, 1.0), M_PI) < 1e-15);
    CHECK(extremal_min(2.0, 3.0, 0.0) == 0.0);
    CHECK_THROWS_AS(extremal_min(2.0, 3.0, 1.5), ValidationError);
    // identical to constant_bound on the shared domain
    for (double q0 : {0.5, 1.0, 4.0})
        for (double p : {2.5, 3.0, 8.0})
            for (double r : {0.2, 0.7, 1.0})
                CHECK(extremal_min(q0, p, r) == constant_bound(q0, p, r));
}

TEST_CASE("closed forms agree with the general path on the property grid") {
    QuadratureConfig adaptive;
    adaptive.force_adaptive = true;
    for (double p : {2.5, 3.0, 4.0, 8.0})
        for (double q0 : {0.5, 1.0, 4.0}) {
            for (double alpha : {0.0, 1.0, 2.0})
                for (double r : {0.3, 0.9}) {
                    const auto prof = WeightProfile::power_law(q0, alpha);
                    CHECK(rel_err(area_lower_bound(prof, params(p, r), adaptive),
                                  power_law_bound(q0, alpha, p, r)) < 1e-8);
                }
            for (double r : {0.3, 0.9}) {
                CHECK(rel_err(area_lower_bound(WeightProfile::constant(q0), params(p, r),
                                               adaptive),
                              constant_bound(q0, p, r)) < 1e-8);
                CHECK(rel_err(area_lower_bound(WeightProfile::logarithmic(q0), params(p, r),
                                               adaptive),
                              log_bound(q0, p, r)) < 1e-8);
            }
        }
}

TEST_CASE("exact scaling law in q0") {
    for (double q0 : {0.5, 2.0, 4.0, 10.0})
        for (double p : {2.5, 3.0, 4.0, 8.0})
            for (double r : {0.1, 0.5, 1.0, 3.0}) {
                const double factor = std::pow(q0, 2.0 / (2.0 - p));
                CHECK(constant_bound(q0, p, r) == factor * constant_bound(1.0, p, r));
            }
}

TEST_CASE("antitone in the weight") {
    for (double p : {2.5, 3.0, 4.0, 8.0})
        for (double r : {0.3, 0.9}) {
            CHECK(area_lower_bound(WeightProfile::constant(1.0), params(p, r)) >=
                  area_lower_bound(WeightProfile::constant(4.0), params(p, r)));
            // q0 t^(-alpha) >= q0 on r <= 1, so its bound is the smaller one
            CHECK(area_lower_bound(WeightProfile::power_law(2.0, 1.0), params(p, r)) <=
                  area_lower_bound(WeightProfile::constant(2.0), params(p, r)));
        }
}

TEST_CASE("no overflow near p = 2") {
    const double p = 2.05;
    const double direct = constant_bound(4.0, p, 0.5);
    CHECK(std::isfinite(direct));
    CHECK(direct > 0.0);
    CHECK(rel_err(area_lower_bound(WeightProfile::constant(4.0), params(p, 0.5)), direct) <
          1e-10);
}

TEST_CASE("bound parameter validation") {
    CHECK_THROWS_AS(params(2.0, 0.5).validate(), ValidationError);
    CHECK_THROWS_AS(params(4.0, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(params(4.0, 1.0, 1.0).validate(), ValidationError); // r >= d0
    CHECK_THROWS_AS(params(4.0, 2.0, 1.0).validate(), ValidationError);
    CHECK_NOTHROW(params(4.0, 0.999, 1.0).validate());
}

TEST_CASE("bound_curve: grid shape and frozen constant-profile values") {
    const auto curve = bound_curve(WeightProfile::constant(1.0), 4.0, 1.0, 3);
    REQUIRE(curve.samples.size() == 3);
    for (const auto& s : curve.samples)
        CHECK(rel_err(s.bound, M_PI * s.r * s.r) < 1e-12);
    CHECK(curve.samples.front().r < curve.samples.back().r);
    CHECK(curve.samples.back().r < 1.0);

    CHECK_THROWS_AS(bound_curve(WeightProfile::constant(1.0), 4.0, 1.0, 1), ValidationError);
}

TEST_CASE("bound_curve: nondecreasing samples for every variant") {
    const auto check_monotone = [](const BoundCurve& curve) {
        for (std::size_t i = 1; i < curve.samples.size(); ++i)
            CHECK(curve.samples[i].bound >=
                  curve.samples[i - 1].bound * (1.0 - 1e-12));
    };
    check_monotone(bound_curve(WeightProfile::constant(2.0), 3.0, 2.0, 24));
    check_monotone(bound_curve(WeightProfile::power_law(1.0, 1.0), 4.0, 1.5, 24));
    check_monotone(bound_curve(WeightProfile::logarithmic(1.0), 3.0, 1.0, 24));
    check_monotone(bound_curve(
        WeightProfile::table({{1e-4, 3.0}, {0.05, 2.0}, {0.4, 1.5}, {1.0, 1.0}}), 4.0, 1.0, 24));
}

TEST_CASE("bound_curve: bit-identical across worker counts") {
    const auto table =
        WeightProfile::table({{1e-4, 3.0}, {0.05, 2.0}, {0.4, 1.5}, {1.0, 1.0}});
    setenv("QAREA_THREADS", "1", 1);
    const auto serial = bound_curve(table, 3.0, 1.0, 24);
    setenv("QAREA_THREADS", "4", 1);
    const auto threaded = bound_curve(table, 3.0, 1.0, 24);
    unsetenv("QAREA_THREADS");
    REQUIRE(serial.samples.size() == threaded.samples.size());
    for (std::size_t i = 0; i < serial.samples.size(); ++i) {
        CHECK(serial.samples[i].r == threaded.samples[i].r);
        CHECK(serial.samples[i].bound == threaded.samples[i].bound);
    }
}

TEST_CASE("bound_curve: per-sample errors carry the offending radius") {
    // last knot at 0.5 < grid top, so the largest radii cannot be evaluated
    const auto table = WeightProfile::table({{1e-3, 2.0}, {0.5, 1.0}});
    try {
        bound_curve(table, 4.0, 1.0, 8);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("r=") == 0);
    }
}
