#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qarea/bounds.hpp"
#include "qarea/capacity.hpp"
#include "qarea/maps.hpp"
#include "qarea/profiles.hpp"

namespace qarea {

// Doubles are printed with 17 significant digits everywhere so every CSV and
// JSON report re-parses to the exact in-memory value.
std::string format_double(double x);
double parse_double(const std::string& s);

// --- JSON encodings ---------------------------------------------------------
// {"type":"constant","q0":2.0} | {"type":"power","q0":1.0,"alpha":1.0}
// {"type":"log","q0":1.0}      | {"type":"table","knots":[[0.01,3.0],[1.0,1.0]]}
nlohmann::json profile_to_json(const WeightProfile& profile);
WeightProfile profile_from_json(const nlohmann::json& j);

// {"type":"identity"} | {"type":"scale","c":0.25} | {"type":"power","s":2.0}
nlohmann::json map_to_json(const RadialMap& map);
RadialMap map_from_json(const nlohmann::json& j);

// {"max_iters":20000,"tol":1e-10,"ls_backtrack":0.5,"ls_c":1e-4}
nlohmann::json optim_config_to_json(const GridOptimConfig& cfg);
GridOptimConfig optim_config_from_json(const nlohmann::json& j);

// Reads and decodes a JSON file; ValidationError on I/O or schema problems.
nlohmann::json load_json_file(const std::string& path);

// --- report records ----------------------------------------------------------
// CSV header: r,bound
std::string curve_to_csv(const BoundCurve& curve);
BoundCurve curve_from_csv(const std::string& csv);
nlohmann::json curve_to_json(const BoundCurve& curve);

// CSV header: N,energy,closed_form,rel_err
std::string capacity_study_to_csv(const std::vector<CapacityStudyRow>& rows);
std::vector<CapacityStudyRow> capacity_study_from_csv(const std::string& csv);

struct VerifyRow {
    std::string map_id;
    double p = 0.0;
    double r = 0.0;
    double bound = 0.0;
    double actual = 0.0;
    double ratio = 0.0;
    bool pass = false;
};

// CSV header: map,p,r,bound,actual,ratio,pass
std::string verify_rows_to_csv(const std::vector<VerifyRow>& rows);
std::vector<VerifyRow> verify_rows_from_csv(const std::string& csv);
nlohmann::json verify_rows_to_json(const std::vector<VerifyRow>& rows);

// Writes via a temporary file in the same directory plus rename, so readers
// never observe a half-written report.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace qarea
