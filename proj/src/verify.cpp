#include "qarea/verify.hpp"

#include <cmath>

#include "qarea/bounds.hpp"
#include "qarea/errors.hpp"
#include "qarea/profiles.hpp"

namespace qarea {

namespace {

// Known bound/actual ratio: 1 for scalings and shrinking stretches (the
// bound is sharp there), s^(-2p/(p-2)) for expanding stretches.
double expected_ratio(const RadialMap& map, double p) {
    if (map.kind() == RadialMap::Kind::PowerStretch && map.parameter() > 1.0)
        return std::pow(map.parameter(), -2.0 * p / (p - 2.0));
    return 1.0;
}

} // namespace

std::vector<VerifyRow> verification_suite(const VerifyOptions& opts) {
    if (opts.radii < 1) throw ValidationError("verification_suite: need at least 1 radius");
    if (opts.p_values.empty())
        throw ValidationError("verification_suite: need at least one exponent");

    std::vector<RadialMap> maps;
    if (opts.single_map) {
        maps.push_back(*opts.single_map);
    } else {
        maps.push_back(RadialMap::identity());
        for (double c : {0.25, 0.5, 2.0}) maps.push_back(RadialMap::linear_scaling(c));
        for (double s : {0.5, 1.5, 2.0, 3.0}) maps.push_back(RadialMap::power_stretch(s));
    }

    std::vector<VerifyRow> rows;
    for (double p : opts.p_values) {
        std::vector<RadialMap> cases = maps;
        if (!opts.single_map)
            for (double q0 : {0.5, 1.0, 4.0}) cases.push_back(extremal_map(q0, p));

        for (const auto& map : cases) {
            const WeightProfile profile = profile_from_map(map, p);
            const double want = expected_ratio(map, p);
            const bool sharp_case = map.kind() != RadialMap::Kind::PowerStretch ||
                                    map.parameter() <= 1.0;
            for (int k = 1; k <= opts.radii; ++k) {
                const double r = double(k) / double(opts.radii + 1);
                const BoundParams params{p, Point{0.0, 0.0}, 1.0, r};
                VerifyRow row;
                row.map_id = map.id();
                row.p = p;
                row.r = r;
                row.bound = area_lower_bound(profile, params) * opts.corrupt_bound_factor;
                row.actual = image_disc_area(map, r);
                row.ratio = row.bound / row.actual;

                const bool not_above = row.ratio <= 1.0 + opts.tol_bound;
                const double tol = sharp_case ? opts.tol_sharp : opts.tol_ratio;
                const bool ratio_ok = std::abs(row.ratio - want) <= tol * want;
                row.pass = not_above && ratio_ok;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

bool all_pass(std::span<const VerifyRow> rows) {
    for (const auto& row : rows)
        if (!row.pass) return false;
    return true;
}

std::vector<SandwichRow> capacity_sandwich(int n_1d) {
    if (n_1d < 16) throw ValidationError("capacity_sandwich: need n_1d >= 16");

    std::vector<SandwichRow> rows;
    for (double r : {0.5, 1.0})
        for (double R : {2.0, 4.0, 8.0})
            for (double p : {3.0, 4.0, 8.0}) {
                const RingCondenser cond(r, R);
                SandwichRow row;
                row.inner = r;
                row.outer = R;
                row.p = p;
                row.kruzhkov = kruzhkov_bound(2.0 * M_PI * r, M_PI * (R * R - r * r), p);
                row.closed = ring_capacity_closed(cond, p);
                row.one_d = radial_capacity_1d(cond, p, n_1d);

                const double beta = (p - 2.0) / (p - 1.0);
                const double rb = std::pow(r, beta);
                const double Rb = std::pow(R, beta);
                std::vector<double> u;
                for (double t : radial_grid(cond, n_1d))
                    u.push_back((Rb - std::pow(t, beta)) / (Rb - rb));
                row.sampled_energy = radial_profile_energy(cond, p, u);

                const double slack = 1.0 + 1e-12;
                row.pass = row.kruzhkov <= row.closed * slack &&
                           row.closed <= row.one_d * slack &&
                           row.one_d <= row.sampled_energy * slack;
                rows.push_back(row);
            }
    return rows;
}

bool all_pass(std::span<const SandwichRow> rows) {
    for (const auto& row : rows)
        if (!row.pass) return false;
    return true;
}

} // namespace qarea
