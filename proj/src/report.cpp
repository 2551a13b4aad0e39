#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "scenario_resolve.hpp"

namespace slicelab {

using detail::config_error;

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

Json encode(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json encode(std::complex<double> z) {
    if (z.imag() == 0.0) return encode(z.real());
    return Json::array({encode(z.real()), encode(z.imag())});
}

Json encode(const std::vector<std::complex<double>>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(encode(z));
    return out;
}

double decode_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j == "inf") return std::numeric_limits<double>::infinity();
    if (j == "-inf") return -std::numeric_limits<double>::infinity();
    if (j == "nan") return std::numeric_limits<double>::quiet_NaN();
    config_error("expected a number, got " + j.dump());
}

// ---- scenarios ------------------------------------------------------------------------

Json scenario_to_json(const Scenario& s) {
    return {{"name", s.name},
            {"aliases", s.aliases},
            {"anchor", s.anchor},
            {"summary", s.summary},
            {"construction", s.construction},
            {"expected", s.expected}};
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) config_error("scenario must be an object");
    Scenario s;
    s.name = detail::text(j, "name", "");
    if (s.name.empty()) config_error("scenario needs a name");
    if (j.contains("aliases")) {
        if (!j.at("aliases").is_array()) config_error("aliases must be an array of strings");
        for (const auto& a : j.at("aliases")) {
            if (!a.is_string()) config_error("aliases must be an array of strings");
            s.aliases.push_back(a.get<std::string>());
        }
    }
    s.anchor = detail::text(j, "anchor", "");
    s.summary = detail::text(j, "summary", "");
    s.construction = detail::require(j, "construction");
    if (!s.construction.is_object()) config_error("construction must be an object");
    s.expected = j.value("expected", Json::object());
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read scenario file '" + path + "'");
    try {
        return scenario_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        config_error("malformed scenario file '" + path + "': " + e.what());
    }
}

// ---- reports ----------------------------------------------------------------------------

Json report_to_json(const Report& r) {
    Json ops = Json::array();
    for (const auto& o : r.ops) {
        Json checks = Json::array();
        for (const auto& c : o.checks)
            checks.push_back({{"path", c.path}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        ops.push_back({{"id", o.id},
                       {"op", o.op},
                       {"seed", o.seed},
                       {"budget", o.budget},
                       {"result", o.result},
                       {"checks", checks},
                       {"verdict", to_string(o.verdict)}});
    }
    return {{"scenario", r.scenario},
            {"anchor", r.anchor},
            {"seed", r.seed},
            {"budget", r.budget},
            {"ops", ops},
            {"verdict", to_string(r.verdict)}};
}

std::string report_to_table(const Report& r) {
    std::ostringstream os;
    os << "scenario " << r.scenario << "  [" << r.anchor << "]\n";
    os << "  verdict " << to_string(r.verdict) << "  seed " << r.seed << "  budget " << r.budget << "  wall "
       << std::fixed << std::setprecision(3) << r.wall_seconds << "s\n";
    os.unsetf(std::ios::floatfield);
    for (const auto& o : r.ops) {
        os << "  " << std::left << std::setw(13) << to_string(o.verdict) << std::setw(24) << o.id << o.op << "\n";
        for (const auto& c : o.checks) {
            os << "      " << (c.pass ? "ok   " : "MISS ") << c.path << " = " << c.actual.dump()
               << "  (expected " << c.expected.dump() << ")\n";
        }
        if (o.result.contains("error")) os << "      error: " << o.result.value("message", "") << "\n";
    }
    return os.str();
}

std::string render_reports(const std::vector<Report>& reports, ReportFormat format) {
    if (format == ReportFormat::Table) {
        std::string out;
        for (const auto& r : reports) out += report_to_table(r);
        return out;
    }
    if (reports.size() == 1) return report_to_json(reports.front()).dump(2) + "\n";
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(report_to_json(r));
    return all.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) config_error("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out) config_error("failed writing '" + path + "'");
}

int exit_code(const std::vector<Report>& reports) noexcept {
    bool inconclusive = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Fail) return 1;
        inconclusive = inconclusive || r.verdict == Verdict::Inconclusive;
    }
    return inconclusive ? 2 : 0;
}

}  // namespace slicelab
