#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace slicelab {

using Json = nlohmann::json;

/// A named, fully declarative experiment. `construction` holds the named
/// objects (spaces, vectors, duals, functionals, maps, restrictions, families,
/// contexts, problems), the op list and the default seed and budget;
/// `expected` maps op ids to {path: expectation} records.
struct Scenario {
    std::string name;
    std::vector<std::string> aliases;
    std::string anchor;
    std::string summary;
    Json construction = Json::object();
    Json expected = Json::object();
};

[[nodiscard]] Json scenario_to_json(const Scenario& s);
// Throws LabError(Config) on malformed input.
[[nodiscard]] Scenario scenario_from_json(const Json& j);
[[nodiscard]] Scenario load_scenario_file(const std::string& path);

[[nodiscard]] const std::vector<Scenario>& builtin_scenarios();
// Looks up names and aliases.
[[nodiscard]] const Scenario* find_scenario(const std::string& name);

enum class Verdict { Pass, Fail, Inconclusive };

[[nodiscard]] const char* to_string(Verdict v) noexcept;

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<double> tol;
};

struct CheckResult {
    std::string path;
    Json expected;
    Json actual;
    bool pass = false;
};

struct OpReport {
    std::string id;
    std::string op;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    Json result;
    std::vector<CheckResult> checks;
    Verdict verdict = Verdict::Pass;
};

struct Report {
    std::string scenario;
    std::string anchor;
    std::uint64_t seed = 0;
    std::size_t budget = 0;
    std::vector<OpReport> ops;
    Verdict verdict = Verdict::Pass;
    // Reported in tables only, so that JSON reports stay byte-identical across runs.
    double wall_seconds = 0.0;
};

// Throws LabError(Config) when the construction cannot be resolved.
[[nodiscard]] Report run_scenario(const Scenario& s, const RunOverrides& overrides = {});

// Runs one op against a construction; the op's result record.
[[nodiscard]] Json run_op(const Json& construction, const Json& op, std::uint64_t seed, std::size_t budget,
                          std::optional<double> tol = std::nullopt);

// Checks `result` against {path: expectation}. Paths are dot separated, `*` ranges over arrays.
[[nodiscard]] std::vector<CheckResult> check_expectations(const Json& result, const Json& expected);

// ---- reports ------------------------------------------------------------------

enum class ReportFormat { Json, Table };

// Canonical form: sorted keys, shortest round-trip decimals, no timing.
[[nodiscard]] Json report_to_json(const Report& r);
[[nodiscard]] std::string report_to_table(const Report& r);
[[nodiscard]] std::string render_reports(const std::vector<Report>& reports, ReportFormat format);
// Throws LabError(Config) when the path cannot be written.
void write_text_file(const std::string& path, const std::string& text);

// 0 all pass, 1 any failure, 2 inconclusive without failures.
[[nodiscard]] int exit_code(const std::vector<Report>& reports) noexcept;

// ---- JSON encoding of numeric values -----------------------------------------------

// Non-finite doubles become the strings "inf", "-inf" and "nan".
[[nodiscard]] Json encode(double v);
[[nodiscard]] Json encode(std::complex<double> z);
[[nodiscard]] Json encode(const std::vector<std::complex<double>>& v);
[[nodiscard]] double decode_double(const Json& j);

}  // namespace slicelab
