#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qarea/capacity.hpp"
#include "qarea/maps.hpp"
#include "qarea/serialize.hpp"

namespace qarea {

struct VerifyOptions {
    std::vector<double> p_values = {3.0, 4.0, 8.0};
    int radii = 20;            // radii sampled in (0, 1)
    double tol_bound = 1e-9;   // slack for bound <= actual
    double tol_ratio = 1e-7;   // relative slack for the expected ratio
    double tol_sharp = 1e-10;  // relative slack for extremal sharpness rows
    // Test hook: multiplies every computed bound.  Values > 1 must make the
    // suite fail; used to prove the harness can fail.
    double corrupt_bound_factor = 1.0;
    // When set, verify just this map over the p grid instead of the built-in
    // family.
    std::optional<RadialMap> single_map;
};

// Runs the map verification suite: for each radial test map, pairs it with
// its own induced distortion profile, computes the area lower bound and the
// exact image area at each radius, and checks bound <= actual plus the
// closed-form bound/actual ratio where one exists (1 for scalings and
// shrinking stretches, s^(-2p/(p-2)) for expanding stretches).  Extremal
// scalings must be sharp to tol_sharp.
std::vector<VerifyRow> verification_suite(const VerifyOptions& opts = {});

bool all_pass(std::span<const VerifyRow> rows);

struct SandwichRow {
    double inner = 0.0;
    double outer = 0.0;
    double p = 0.0;
    double kruzhkov = 0.0;
    double closed = 0.0;
    double one_d = 0.0;
    double sampled_energy = 0.0; // 1D energy of the sampled continuum minimizer
    bool pass = false;
};

// Checks kruzhkov <= closed <= one_d <= sampled_energy over the parameter
// grid r in {0.5, 1}, R in {2, 4, 8}, p in {3, 4, 8}.
std::vector<SandwichRow> capacity_sandwich(int n_1d = 1024);

bool all_pass(std::span<const SandwichRow> rows);

} // namespace qarea
