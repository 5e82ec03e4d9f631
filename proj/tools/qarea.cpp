// qarea: area-distortion bound toolkit for planar homeomorphisms with
// integrally bounded p-dilatation, p > 2.
//
// Subcommands:
//   bound     lower bound on the image-disc area for one (profile, p, r)
//   curve     bound sweep over a geometric radius grid
//   verify    radial-map verification suite (bound vs exact image area)
//   capacity  ring-condenser capacity refinement study + sandwich checks
//   report    combined machine-readable health report
//
// Exit codes: 0 success, 2 validation error, 3 numerical error,
// 4 verification failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qarea/bounds.hpp"
#include "qarea/capacity.hpp"
#include "qarea/errors.hpp"
#include "qarea/maps.hpp"
#include "qarea/profiles.hpp"
#include "qarea/quadrature.hpp"
#include "qarea/serialize.hpp"
#include "qarea/verify.hpp"

namespace {

using nlohmann::json;
using namespace qarea;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerifyFail = 4;

struct Output {
    std::string path = "-";
    std::string format = "csv";

    void emit(const std::string& content) const {
        if (path == "-") {
            std::fwrite(content.data(), 1, content.size(), stdout);
        } else {
            write_file_atomic(path, content);
        }
    }
};

// a:b:n -> n-point geometric grid from a to b inclusive.
std::vector<double> parse_r_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw ValidationError("--r-grid expects a:b:n");
    const double a = parse_double(text.substr(0, first));
    const double b = parse_double(text.substr(first + 1, second - first - 1));
    const long n = std::strtol(text.c_str() + second + 1, nullptr, 10);
    if (!(a > 0.0) || !(b > a) || n < 2)
        throw ValidationError("--r-grid expects 0 < a < b and n >= 2");
    std::vector<double> radii(n);
    for (long i = 0; i < n; ++i)
        radii[i] = a * std::pow(b / a, double(i) / double(n - 1));
    radii.back() = b;
    return radii;
}

// Closed-form counterpart of the general bound, when the variant has one.
std::optional<double> closed_form_bound(const WeightProfile& profile, double p, double r) {
    switch (profile.kind()) {
        case WeightProfile::Kind::Constant:
            return constant_bound(profile.q0(), p, r);
        case WeightProfile::Kind::PowerLaw:
            if (profile.alpha() >= 0.0)
                return power_law_bound(profile.q0(), profile.alpha(), p, r);
            return std::nullopt;
        case WeightProfile::Kind::Logarithmic:
            return log_bound(profile.q0(), p, r);
        case WeightProfile::Kind::Table:
            return std::nullopt;
    }
    return std::nullopt;
}

int run_bound(const std::string& profile_file, double p, double r, double d0,
              bool force_adaptive, const Output& out) {
    const WeightProfile profile = profile_from_json(load_json_file(profile_file));
    BoundParams params{p, Point{0.0, 0.0}, d0, r};
    QuadratureConfig cfg;
    cfg.force_adaptive = force_adaptive;

    const double bound = area_lower_bound(profile, params, cfg);
    const auto closed = closed_form_bound(profile, p, r);
    const double rel_diff = closed ? std::abs(bound - *closed) / *closed : 0.0;
    const bool match = closed && rel_diff <= 1e-8;

    if (out.format == "json") {
        json j{{"profile", profile.id()}, {"p", p}, {"r", r}, {"bound", bound}};
        j["closed_form"] = closed ? json(*closed) : json(nullptr);
        j["rel_diff"] = closed ? json(rel_diff) : json(nullptr);
        j["match"] = closed ? json(match) : json(nullptr);
        out.emit(j.dump(2) + "\n");
    } else {
        std::string csv = "profile,p,r,bound,closed_form,rel_diff,match\n";
        csv += profile.id() + "," + format_double(p) + "," + format_double(r) + "," +
               format_double(bound) + ",";
        csv += closed ? format_double(*closed) : "";
        csv += ",";
        csv += closed ? format_double(rel_diff) : "";
        csv += ",";
        csv += closed ? (match ? "1" : "0") : "";
        csv += "\n";
        out.emit(csv);
    }
    return kExitOk;
}

int run_curve(const std::string& profile_file, double p, double d0, int n,
              const std::string& r_grid, bool force_adaptive, const Output& out) {
    const WeightProfile profile = profile_from_json(load_json_file(profile_file));
    QuadratureConfig cfg;
    cfg.force_adaptive = force_adaptive;

    BoundCurve curve;
    if (!r_grid.empty()) {
        const auto radii = parse_r_grid(r_grid);
        const double limit = std::isfinite(d0) ? d0 : radii.back() * (1.0 + 1e-9);
        curve = bound_curve(profile, p, radii, limit, cfg);
    } else {
        if (!std::isfinite(d0))
            throw ValidationError("curve: need --d0 (or an explicit --r-grid)");
        curve = bound_curve(profile, p, d0, n, cfg);
    }

    out.emit(out.format == "json" ? curve_to_json(curve).dump(2) + "\n" : curve_to_csv(curve));
    return kExitOk;
}

int run_verify(const std::string& map_file, const std::vector<double>& p_list, int radii,
               double corrupt, const Output& out) {
    VerifyOptions opts;
    if (!p_list.empty()) opts.p_values = p_list;
    opts.radii = radii;
    opts.corrupt_bound_factor = corrupt;
    if (!map_file.empty()) opts.single_map = map_from_json(load_json_file(map_file));

    const auto rows = verification_suite(opts);
    out.emit(out.format == "json" ? verify_rows_to_json(rows).dump(2) + "\n"
                                  : verify_rows_to_csv(rows));

    std::size_t failures = 0;
    for (const auto& row : rows)
        if (!row.pass) ++failures;
    std::fprintf(stderr, "verify: %zu cases, %zu failures\n", rows.size(), failures);
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

int run_capacity(double inner, double outer, double p, const std::vector<int>& grid,
                 const std::string& optimizer_file, int n_1d, bool skip_sandwich,
                 const Output& out) {
    const RingCondenser cond(inner, outer);
    GridOptimConfig cfg;
    if (!optimizer_file.empty()) cfg = optim_config_from_json(load_json_file(optimizer_file));

    const auto study = grid_refinement_study(cond, p, grid, cfg);
    std::vector<SandwichRow> sandwich;
    if (!skip_sandwich) sandwich = capacity_sandwich(n_1d);

    if (out.format == "json") {
        json jstudy = json::array();
        for (const auto& row : study)
            jstudy.push_back({{"N", row.N},
                              {"energy", row.energy},
                              {"closed_form", row.closed_form},
                              {"rel_err", row.rel_err}});
        json jsand = json::array();
        for (const auto& row : sandwich)
            jsand.push_back({{"inner", row.inner},
                             {"outer", row.outer},
                             {"p", row.p},
                             {"kruzhkov", row.kruzhkov},
                             {"closed", row.closed},
                             {"one_d", row.one_d},
                             {"sampled_energy", row.sampled_energy},
                             {"pass", row.pass}});
        out.emit(json{{"study", jstudy}, {"sandwich", jsand}}.dump(2) + "\n");
    } else {
        out.emit(capacity_study_to_csv(study));
        for (const auto& row : sandwich)
            std::fprintf(stderr, "sandwich inner=%g outer=%g p=%g %s\n", row.inner, row.outer,
                         row.p, row.pass ? "PASS" : "FAIL");
    }
    return all_pass(std::span<const SandwichRow>(sandwich)) ? kExitOk : kExitVerifyFail;
}

int run_report(const Output& out) {
    json report;

    // Spot cross-checks: adaptive integration against every closed form.
    QuadratureConfig adaptive;
    adaptive.force_adaptive = true;
    json checks = json::array();
    bool checks_pass = true;
    const auto add_check = [&](const WeightProfile& profile, double p, double r,
                               double closed) {
        const double general =
            area_lower_bound(profile, BoundParams{p, Point{0.0, 0.0},
                                                  std::numeric_limits<double>::infinity(), r},
                             adaptive);
        const double rel = std::abs(general - closed) / closed;
        const bool ok = rel <= 1e-8;
        checks_pass = checks_pass && ok;
        checks.push_back({{"profile", profile.id()},
                          {"p", p},
                          {"r", r},
                          {"general", general},
                          {"closed_form", closed},
                          {"rel_diff", rel},
                          {"pass", ok}});
    };
    add_check(WeightProfile::constant(2.0), 4.0, 1.0, constant_bound(2.0, 4.0, 1.0));
    add_check(WeightProfile::power_law(1.0, 1.0), 3.0, 1.0, power_law_bound(1.0, 1.0, 3.0, 1.0));
    add_check(WeightProfile::logarithmic(1.0), 4.0, std::exp(-1.0),
              log_bound(1.0, 4.0, std::exp(-1.0)));
    report["bound_checks"] = checks;

    const auto rows = verification_suite({});
    std::size_t failures = 0;
    for (const auto& row : rows)
        if (!row.pass) ++failures;
    report["verify"] = {{"cases", rows.size()}, {"failures", failures}};

    const auto sandwich = capacity_sandwich(1024);
    const bool sandwich_ok = all_pass(std::span<const SandwichRow>(sandwich));
    const RingCondenser cond(1.0, 8.0);
    const std::vector<int> grid{32, 64};
    const auto study = grid_refinement_study(cond, 4.0, grid, {});
    json jstudy = json::array();
    for (const auto& row : study)
        jstudy.push_back({{"N", row.N}, {"energy", row.energy}, {"rel_err", row.rel_err}});
    report["capacity"] = {{"sandwich_pass", sandwich_ok},
                          {"closed_form", ring_capacity_closed(cond, 4.0)},
                          {"study", jstudy}};

    const bool ok = checks_pass && failures == 0 && sandwich_ok;
    report["pass"] = ok;
    out.emit(report.dump(2) + "\n");
    return ok ? kExitOk : kExitVerifyFail;
}

int error_exit(bool json_errors, const char* type, const std::string& message, int code) {
    if (json_errors) {
        json j{{"error", {{"type", type}, {"message", message}, {"exit_code", code}}}};
        std::fputs((j.dump() + "\n").c_str(), stdout);
    } else {
        std::fprintf(stderr, "qarea: error: %s\n", message.c_str());
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"area-distortion bounds and p-capacity checks for planar mappings"};
    app.require_subcommand(1);

    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "report errors as machine-readable JSON on stdout");

    std::string profile_file, map_file, optimizer_file, r_grid;
    std::string out_path = "-";
    std::string format = "csv";
    double p = 4.0, r = 0.5;
    double d0 = std::numeric_limits<double>::infinity();
    double inner = 1.0, outer = 8.0;
    double corrupt = 1.0;
    int n = 64, radii = 20, n_1d = 1024;
    bool force_adaptive = false, skip_sandwich = false;
    std::vector<double> p_list;
    std::vector<int> grid{32, 64, 128, 256};

    const auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path ('-' for stdout)");
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* cmd_bound = app.add_subcommand("bound", "lower bound for one (profile, p, r)");
    cmd_bound->add_option("--profile", profile_file, "profile JSON file")->required();
    cmd_bound->add_option("--p", p, "exponent p > 2")->required();
    cmd_bound->add_option("--r", r, "evaluation radius")->required();
    cmd_bound->add_option("--d0", d0, "distance to the domain boundary (default inf)");
    cmd_bound->add_flag("--force-adaptive", force_adaptive,
                        "disable closed-form fast paths");
    add_output(cmd_bound);

    auto* cmd_curve = app.add_subcommand("curve", "bound sweep over a radius grid");
    cmd_curve->add_option("--profile", profile_file, "profile JSON file")->required();
    cmd_curve->add_option("--p", p, "exponent p > 2")->required();
    cmd_curve->add_option("--d0", d0, "distance to the domain boundary");
    cmd_curve->add_option("--n", n, "sample count for the default grid");
    cmd_curve->add_option("--r-grid", r_grid, "explicit geometric grid a:b:n");
    cmd_curve->add_flag("--force-adaptive", force_adaptive,
                        "disable closed-form fast paths");
    add_output(cmd_curve);

    auto* cmd_verify = app.add_subcommand("verify", "radial-map verification suite");
    cmd_verify->add_option("--map", map_file, "verify a single map JSON file");
    cmd_verify->add_option("--p-list", p_list, "exponents to sweep (default 3 4 8)");
    cmd_verify->add_option("--radii", radii, "radii per case (default 20)");
    cmd_verify->add_option("--test-corrupt-bound", corrupt,
                           "multiply bounds by this factor (harness self-test)")
        ->group(""); // hidden
    add_output(cmd_verify);

    auto* cmd_capacity = app.add_subcommand("capacity", "capacity refinement study");
    cmd_capacity->add_option("--inner", inner, "inner radius")->required();
    cmd_capacity->add_option("--outer", outer, "outer radius")->required();
    cmd_capacity->add_option("--p", p, "exponent p > 2")->required();
    cmd_capacity->add_option("--grid", grid, "grid resolutions (default 32 64 128 256)");
    cmd_capacity->add_option("--optimizer", optimizer_file, "optimizer config JSON file");
    cmd_capacity->add_option("--n1d", n_1d, "1D oracle resolution for sandwich checks");
    cmd_capacity->add_flag("--skip-sandwich", skip_sandwich, "study only, no sandwich checks");
    add_output(cmd_capacity);

    auto* cmd_report = app.add_subcommand("report", "combined JSON health report");
    cmd_report->add_option("--out", out_path, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        if (json_errors)
            return error_exit(true, "validation", e.what(), kExitValidation);
        app.exit(e);
        return kExitValidation;
    }

    Output out{out_path, format};
    try {
        if (cmd_bound->parsed()) return run_bound(profile_file, p, r, d0, force_adaptive, out);
        if (cmd_curve->parsed())
            return run_curve(profile_file, p, d0, n, r_grid, force_adaptive, out);
        if (cmd_verify->parsed()) return run_verify(map_file, p_list, radii, corrupt, out);
        if (cmd_capacity->parsed())
            return run_capacity(inner, outer, p, grid, optimizer_file, n_1d, skip_sandwich, out);
        if (cmd_report->parsed()) return run_report(Output{out_path, "json"});
    } catch (const ValidationError& e) {
        return error_exit(json_errors, "validation", e.what(), kExitValidation);
    } catch (const NumericError& e) {
        return error_exit(json_errors, "numeric", e.what(), kExitNumeric);
    } catch (const std::exception& e) {
        return error_exit(json_errors, "internal", e.what(), kExitNumeric);
    }
    return kExitOk;
}
