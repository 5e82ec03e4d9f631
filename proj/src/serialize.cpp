#include "qarea/serialize.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qarea/errors.hpp"

namespace qarea {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> csv_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream is(csv);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

void expect_header(const std::vector<std::string>& lines, const std::string& header) {
    if (lines.empty() || lines.front() != header)
        throw ValidationError("CSV: expected header '" + header + "'");
}

double field_double(const std::vector<std::string>& fields, std::size_t i) {
    if (i >= fields.size()) throw ValidationError("CSV: missing field");
    return parse_double(fields[i]);
}

double json_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(std::string("JSON: missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    if (s.empty()) throw ValidationError("empty numeric field");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE)
        throw ValidationError("bad numeric field '" + s + "'");
    return v;
}

json profile_to_json(const WeightProfile& profile) {
    json j;
    switch (profile.kind()) {
        case WeightProfile::Kind::Constant:
            j["type"] = "constant";
            j["q0"] = profile.q0();
            break;
        case WeightProfile::Kind::PowerLaw:
            j["type"] = "power";
            j["q0"] = profile.q0();
            j["alpha"] = profile.alpha();
            break;
        case WeightProfile::Kind::Logarithmic:
            j["type"] = "log";
            j["q0"] = profile.q0();
            break;
        case WeightProfile::Kind::Table: {
            j["type"] = "table";
            json knots = json::array();
            for (const auto& k : profile.knots()) knots.push_back({k.t, k.q});
            j["knots"] = std::move(knots);
            break;
        }
    }
    return j;
}

WeightProfile profile_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ValidationError("profile JSON: expected an object with a 'type' string");
    const std::string type = j["type"].get<std::string>();
    if (type == "constant") return WeightProfile::constant(json_number(j, "q0"));
    if (type == "power")
        return WeightProfile::power_law(json_number(j, "q0"), json_number(j, "alpha"));
    if (type == "log") return WeightProfile::logarithmic(json_number(j, "q0"));
    if (type == "table") {
        if (!j.contains("knots") || !j["knots"].is_array())
            throw ValidationError("profile JSON: table needs a 'knots' array");
        std::vector<ProfileKnot> knots;
        for (const auto& pair : j["knots"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number())
                throw ValidationError("profile JSON: each knot must be [t, q]");
            knots.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
        return WeightProfile::table(std::move(knots));
    }
    throw ValidationError("profile JSON: unknown type '" + type + "'");
}

json map_to_json(const RadialMap& map) {
    json j;
    switch (map.kind()) {
        case RadialMap::Kind::Identity:
            j["type"] = "identity";
            break;
        case RadialMap::Kind::LinearScaling:
            j["type"] = "scale";
            j["c"] = map.parameter();
            break;
        case RadialMap::Kind::PowerStretch:
            j["type"] = "power";
            j["s"] = map.parameter();
            break;
    }
    return j;
}

RadialMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ValidationError("map JSON: expected an object with a 'type' string");
    const std::string type = j["type"].get<std::string>();
    if (type == "identity") return RadialMap::identity();
    if (type == "scale") return RadialMap::linear_scaling(json_number(j, "c"));
    if (type == "power") return RadialMap::power_stretch(json_number(j, "s"));
    throw ValidationError("map JSON: unknown type '" + type + "'");
}

json optim_config_to_json(const GridOptimConfig& cfg) {
    return json{{"max_iters", cfg.max_iters},
                {"tol", cfg.tol},
                {"ls_backtrack", cfg.ls_backtrack},
                {"ls_c", cfg.ls_c}};
}

GridOptimConfig optim_config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("optimizer JSON: expected an object");
    GridOptimConfig cfg;
    if (j.contains("max_iters")) {
        if (!j["max_iters"].is_number_integer())
            throw ValidationError("optimizer JSON: max_iters must be an integer");
        cfg.max_iters = j["max_iters"].get<int>();
    }
    if (j.contains("tol")) cfg.tol = json_number(j, "tol");
    if (j.contains("ls_backtrack")) cfg.ls_backtrack = json_number(j, "ls_backtrack");
    if (j.contains("ls_c")) cfg.ls_c = json_number(j, "ls_c");
    cfg.validate();
    return cfg;
}

json load_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(path + ": JSON parse error: " + e.what());
    }
}

std::string curve_to_csv(const BoundCurve& curve) {
    std::string out = "r,bound\n";
    for (const auto& s : curve.samples)
        out += format_double(s.r) + "," + format_double(s.bound) + "\n";
    return out;
}

BoundCurve curve_from_csv(const std::string& csv) {
    const auto lines = csv_lines(csv);
    expect_header(lines, "r,bound");
    BoundCurve curve;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 2) throw ValidationError("curve CSV: expected 2 fields per row");
        curve.samples.push_back({field_double(fields, 0), field_double(fields, 1)});
    }
    return curve;
}

json curve_to_json(const BoundCurve& curve) {
    json samples = json::array();
    for (const auto& s : curve.samples) samples.push_back({{"r", s.r}, {"bound", s.bound}});
    return json{{"profile_id", curve.profile_id}, {"p", curve.p}, {"samples", samples}};
}

std::string capacity_study_to_csv(const std::vector<CapacityStudyRow>& rows) {
    std::string out = "N,energy,closed_form,rel_err\n";
    for (const auto& row : rows)
        out += std::to_string(row.N) + "," + format_double(row.energy) + "," +
               format_double(row.closed_form) + "," + format_double(row.rel_err) + "\n";
    return out;
}

std::vector<CapacityStudyRow> capacity_study_from_csv(const std::string& csv) {
    const auto lines = csv_lines(csv);
    expect_header(lines, "N,energy,closed_form,rel_err");
    std::vector<CapacityStudyRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 4)
            throw ValidationError("capacity CSV: expected 4 fields per row");
        CapacityStudyRow row;
        row.N = static_cast<int>(std::strtol(fields[0].c_str(), nullptr, 10));
        row.energy = field_double(fields, 1);
        row.closed_form = field_double(fields, 2);
        row.rel_err = field_double(fields, 3);
        rows.push_back(row);
    }
    return rows;
}

std::string verify_rows_to_csv(const std::vector<VerifyRow>& rows) {
    std::string out = "map,p,r,bound,actual,ratio,pass\n";
    for (const auto& row : rows)
        out += row.map_id + "," + format_double(row.p) + "," + format_double(row.r) + "," +
               format_double(row.bound) + "," + format_double(row.actual) + "," +
               format_double(row.ratio) + "," + (row.pass ? "1" : "0") + "\n";
    return out;
}

std::vector<VerifyRow> verify_rows_from_csv(const std::string& csv) {
    const auto lines = csv_lines(csv);
    expect_header(lines, "map,p,r,bound,actual,ratio,pass");
    std::vector<VerifyRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split(lines[i], ',');
        if (fields.size() != 7) throw ValidationError("verify CSV: expected 7 fields per row");
        VerifyRow row;
        row.map_id = fields[0];
        row.p = field_double(fields, 1);
        row.r = field_double(fields, 2);
        row.bound = field_double(fields, 3);
        row.actual = field_double(fields, 4);
        row.ratio = field_double(fields, 5);
        if (fields[6] != "0" && fields[6] != "1")
            throw ValidationError("verify CSV: pass field must be 0 or 1");
        row.pass = fields[6] == "1";
        rows.push_back(row);
    }
    return rows;
}

json verify_rows_to_json(const std::vector<VerifyRow>& rows) {
    json out = json::array();
    for (const auto& row : rows)
        out.push_back({{"map", row.map_id},
                       {"p", row.p},
                       {"r", row.r},
                       {"bound", row.bound},
                       {"actual", row.actual},
                       {"ratio", row.ratio},
                       {"pass", row.pass}});
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw ValidationError("cannot open '" + tmp + "' for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw ValidationError("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ValidationError("cannot rename '" + tmp + "' to '" + path + "': " +
                              std::strerror(errno));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace qarea
