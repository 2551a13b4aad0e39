// slicelab command-line driver.
//
//   slicelab scenario list
//   slicelab scenario run <name>... | --all | --file scenario.json
//   slicelab norm|defect|alt-defect|slice-check|kyfan [--config c.json | --scenario name | --space sup:4] ...
//
// Exit codes: 0 all PASS, 1 any FAIL, 2 INCONCLUSIVE without FAIL, 3 configuration error.

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "slicelab/core.hpp"
#include "slicelab/random.hpp"
#include "slicelab/scenario.hpp"

namespace {

using slicelab::Json;

constexpr int kConfigError = 3;

struct Common {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<double> tol;
    std::string report_path;
    std::string format = "table";
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Master seed");
    cmd->add_option("--budget", c.budget, "Evaluation budget per search");
    cmd->add_option("--tol", c.tol, "Verdict tolerance");
    cmd->add_option("--report", c.report_path, "Write the report to this path");
    cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "table"}));
}

int emit(const std::vector<slicelab::Report>& reports, const Common& c) {
    const auto fmt = c.format == "json" ? slicelab::ReportFormat::Json : slicelab::ReportFormat::Table;
    const std::string text = slicelab::render_reports(reports, fmt);
    if (c.report_path.empty()) std::cout << text;
    else slicelab::write_text_file(c.report_path, text);
    return slicelab::exit_code(reports);
}

// "sup:4", "lp:4:2", "l1:16" or a JSON space record.
Json parse_space_spec(const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') return Json::parse(spec);
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    const auto n = [&] { return parts.size() > 1 ? std::stoul(parts[1]) : 0UL; };
    if (parts[0] == "sup" && parts.size() == 2) return {{"type", "sup"}, {"n", n()}};
    if (parts[0] == "lp" && parts.size() == 3) return {{"type", "lp"}, {"n", n()}, {"p", std::stod(parts[2])}};
    if (parts[0] == "l1" && parts.size() == 2) return {{"type", "uniform_l1"}, {"n", n()}};
    throw slicelab::LabError(slicelab::ErrorCode::Config, "unrecognized space spec '" + spec + "'");
}

struct Source {
    std::string config_path;
    std::string scenario;
    std::string space;
};

void add_source(CLI::App* cmd, Source& s) {
    cmd->add_option("--config", s.config_path, "Scenario or construction JSON file");
    cmd->add_option("--scenario", s.scenario, "Borrow the construction of a registered scenario");
    cmd->add_option("--space", s.space, "Ad-hoc domain X: sup:N, lp:N:P or l1:N");
}

Json load_construction(const Source& s) {
    Json c = Json::object();
    if (!s.config_path.empty()) {
        std::ifstream in(s.config_path);
        if (!in) throw slicelab::LabError(slicelab::ErrorCode::Config, "cannot read '" + s.config_path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::exception& e) {
            throw slicelab::LabError(slicelab::ErrorCode::Config, std::string("malformed config: ") + e.what());
        }
        c = j.contains("construction") ? j.at("construction") : j;
    } else if (!s.scenario.empty()) {
        const auto* sc = slicelab::find_scenario(s.scenario);
        if (!sc) throw slicelab::LabError(slicelab::ErrorCode::Config, "unknown scenario '" + s.scenario + "'");
        c = sc->construction;
    }
    if (!s.space.empty()) c["spaces"]["X"] = parse_space_spec(s.space);
    return c;
}

// A reference is a construction name, inline JSON, or a registered map constructor applied to X.
Json map_ref(const Json& construction, const std::string& ref) {
    if (!ref.empty() && (ref.front() == '{' || ref.front() == '[')) return Json::parse(ref);
    if (construction.contains("maps") && construction.at("maps").contains(ref)) return ref;
    return {{"kind", ref}, {"domain", "X"}};
}

Json plain_ref(const std::string& ref) {
    if (!ref.empty() && (ref.front() == '{' || ref.front() == '[')) return Json::parse(ref);
    return ref;
}

int run_single(const std::string& command, const Json& construction, const Json& op, const Common& c) {
    slicelab::Report rep;
    rep.scenario = command;
    rep.anchor = "ad hoc";
    rep.seed = c.seed.value_or(construction.value("seed", std::uint64_t{0}));
    rep.budget = c.budget.value_or(construction.value("budget", std::size_t{100000}));
    slicelab::OpReport o;
    o.id = command;
    o.op = op.at("op").get<std::string>();
    o.seed = slicelab::derive_seed(rep.seed, 1);
    o.budget = rep.budget;
    o.result = slicelab::run_op(construction, op, o.seed, o.budget, c.tol);
    if (o.result.contains("error")) {
        o.checks.push_back({"error", nullptr, o.result.at("error"), false});
        o.verdict = slicelab::Verdict::Fail;
    }
    rep.verdict = o.verdict;
    rep.ops.push_back(std::move(o));
    return emit({rep}, c);
}

std::vector<slicelab::Report> run_parallel(const std::vector<slicelab::Scenario>& scenarios,
                                           const slicelab::RunOverrides& ov, unsigned jobs) {
    std::vector<std::optional<slicelab::Report>> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) {
            try {
                out[i] = slicelab::run_scenario(scenarios[i], ov);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < std::max(1U, jobs); ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<slicelab::Report> reports;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        reports.push_back(std::move(*out[i]));
    }
    return reports;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slicelab: numerical experiments on slices and the Daugavet equation"};
    app.require_subcommand(1);
    Common common;
    Source source;

    auto* scenario = app.add_subcommand("scenario", "List or run registered scenarios");
    scenario->require_subcommand(1);
    auto* list = scenario->add_subcommand("list", "List scenario names and anchors");
    auto* run = scenario->add_subcommand("run", "Run scenarios");
    std::vector<std::string> names;
    std::string scenario_file;
    bool all = false;
    run->add_option("names", names, "Scenario names or aliases");
    run->add_flag("--all", all, "Run every registered scenario");
    run->add_option("--file", scenario_file, "Run a scenario loaded from a JSON file");
    run->add_option("--jobs", common.jobs, "Scenarios run in parallel")->check(CLI::PositiveNumber);
    add_common(run, common);

    std::string map, phi, psi, grid, gamma, targets, candidates, problem;
    bool weak = false;
    std::size_t combinations = 1000;

    auto* norm = app.add_subcommand("norm", "Estimate sup_{x in B_X} ||map(x)||");
    norm->add_option("--map", map, "Map reference")->required();
    norm->add_option("--gamma", gamma, "Restriction reference");
    auto* def = app.add_subcommand("defect", "Daugavet defect of (phi, psi)");
    auto* alt = app.add_subcommand("alt-defect", "Alternative Daugavet defect over a unit-scalar grid");
    for (auto* cmd : {def, alt}) {
        cmd->add_option("--phi", phi, "Map reference")->required();
        cmd->add_option("--psi", psi, "Map reference")->required();
        cmd->add_option("--gamma", gamma, "Restriction reference");
    }
    alt->add_option("--grid", grid, "real, complex or {\"complex\": k}");
    auto* slice = app.add_subcommand("slice-check", "Slice-continuity table of a family");
    slice->add_option("--targets", targets, "Family reference")->required();
    slice->add_option("--candidates", candidates, "Family reference (defaults to the targets)");
    slice->add_flag("--weak", weak, "Use weak slices");
    auto* kyfan = app.add_subcommand("kyfan", "Ky Fan inequality sample and certificate search");
    kyfan->add_option("--problem", problem, "Certificate problem reference")->required();
    kyfan->add_option("--combinations", combinations, "Sampled convex combinations");
    for (auto* cmd : {norm, def, alt, slice, kyfan}) {
        add_common(cmd, common);
        add_source(cmd, source);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*list) {
            for (const auto& s : slicelab::builtin_scenarios()) std::cout << s.name << "\t" << s.anchor << "\n";
            return 0;
        }
        if (*run) {
            std::vector<slicelab::Scenario> chosen;
            if (all)
                chosen = slicelab::builtin_scenarios();
            for (const auto& n : names) {
                const auto* s = slicelab::find_scenario(n);
                if (!s) throw slicelab::LabError(slicelab::ErrorCode::Config, "unknown scenario '" + n + "'");
                chosen.push_back(*s);
            }
            if (!scenario_file.empty()) chosen.push_back(slicelab::load_scenario_file(scenario_file));
            if (chosen.empty()) throw slicelab::LabError(slicelab::ErrorCode::Config, "no scenario selected");
            const slicelab::RunOverrides ov{common.seed, common.budget, common.tol};
            return emit(run_parallel(chosen, ov, common.jobs), common);
        }

        const Json c = load_construction(source);
        Json op;
        std::string command;
        if (*norm) {
            command = "norm";
            op = {{"op", "norm"}, {"map", map_ref(c, map)}};
        } else if (*def || *alt) {
            command = *def ? "defect" : "alt-defect";
            op = {{"op", *def ? "defect" : "alt_defect"}, {"phi", map_ref(c, phi)}, {"psi", map_ref(c, psi)}};
            if (!grid.empty()) op["grid"] = grid.front() == '{' ? Json::parse(grid) : Json(grid);
        } else if (*slice) {
            command = "slice-check";
            op = {{"op", weak ? "weak_continuity" : "strong_continuity"}, {"targets", plain_ref(targets)}};
            if (!candidates.empty()) op["candidates"] = plain_ref(candidates);
        } else {
            command = "kyfan";
            // The certificate search runs after the inequality sample, in one combined report.
            const Json sample{{"id", "sample"},
                              {"op", "kyfan_sample"},
                              {"problem", plain_ref(problem)},
                              {"combinations", combinations}};
            const Json cert{{"id", "certificate"}, {"op", "kyfan_certificate"}, {"problem", plain_ref(problem)}};
            slicelab::Scenario s{"kyfan", {}, "ad hoc", "", c, Json::object()};
            s.construction["ops"] = Json::array({sample, cert});
            return emit({slicelab::run_scenario(s, {common.seed, common.budget, common.tol})}, common);
        }
        if (!gamma.empty()) op["gamma"] = plain_ref(gamma);
        return run_single(command, c, op, common);
    } catch (const slicelab::LabError& e) {
        std::cerr << "slicelab: " << to_string(e.code()) << ": " << e.what() << "\n";
        return e.code() == slicelab::ErrorCode::Config ? kConfigError : 1;
    } catch (const Json::exception& e) {
        std::cerr << "slicelab: malformed JSON argument: " << e.what() << "\n";
        return kConfigError;
    }
}
