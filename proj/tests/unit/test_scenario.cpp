#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <set>

#include "slicelab/core.hpp"
#include "slicelab/scenario.hpp"

using namespace slicelab;

namespace {

Scenario minimal(const Json& ops, const Json& expected = Json::object()) {
    Scenario s;
    s.name = "minimal";
    s.anchor = "unit test";
    s.construction = Json::parse(R"({"seed": 7, "budget": 500, "spaces": {"X": {"type": "sup", "n": 3}}})");
    s.construction["ops"] = ops;
    s.expected = expected;
    return s;
}

std::uint64_t bits(double d) {
    std::uint64_t u;
    std::memcpy(&u, &d, sizeof u);
    return u;
}

// Walks two JSON trees in lockstep; floating leaves must agree bit for bit.
void expect_bit_equal(const Json& a, const Json& b, const std::string& path = "") {
    ASSERT_EQ(a.type(), b.type()) << path;
    if (a.is_number_float()) {
        EXPECT_EQ(bits(a.get<double>()), bits(b.get<double>())) << path;
    } else if (a.is_object()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (const auto& [k, v] : a.items()) expect_bit_equal(v, b.at(k), path + "." + k);
    } else if (a.is_array()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (std::size_t i = 0; i < a.size(); ++i) expect_bit_equal(a[i], b[i], path + "." + std::to_string(i));
    } else {
        EXPECT_EQ(a, b) << path;
    }
}

}  // namespace

TEST(Registry, ContainsRequiredScenarios) {
    const auto& all = builtin_scenarios();
    EXPECT_GE(all.size(), 15u);
    for (const char* name :
         {"example-3.6", "remark-3.9", "remark-3.14", "example-4.7", "remark-2.7-ade", "example-5.4",
          "remark-5.7-cube-slices", "remark-5.7-fourth-root", "example-5.11-kyfan", "example-5.13-positive",
          "example-5.13-negative", "lemma-5.14-l1", "admissibility-phi-star", "thm-3.11-pipeline",
          "thm-4.11-pipeline", "remark-3.9-counterexample", "example-4.7-weak-not-strong"}) {
        EXPECT_NE(find_scenario(name), nullptr) << name;
    }
    std::set<std::string> names;
    for (const auto& s : all) {
        EXPECT_FALSE(s.anchor.empty()) << s.name;
        EXPECT_TRUE(names.insert(s.name).second) << "duplicate " << s.name;
    }
    EXPECT_EQ(find_scenario("no-such-scenario"), nullptr);
}

TEST(Registry, SerializationRoundTripIsIdentity) {
    for (const auto& s : builtin_scenarios()) {
        const Json j = scenario_to_json(s);
        const Scenario back = scenario_from_json(Json::parse(j.dump()));
        EXPECT_EQ(scenario_to_json(back), j) << s.name;
        EXPECT_EQ(back.aliases, s.aliases);
    }
}

TEST(Registry, ExpectationsReferenceDefinedOps) {
    for (const auto& s : builtin_scenarios()) {
        std::set<std::string> ids;
        for (const auto& op : s.construction.at("ops")) ids.insert(op.at("id").get<std::string>());
        for (const auto& [id, _] : s.expected.items()) EXPECT_TRUE(ids.count(id)) << s.name << ": " << id;
    }
}

TEST(Report, JsonReparseIsBitExact) {
    const Report r = run_scenario(*find_scenario("remark-3.9"));
    const Json j = report_to_json(r);
    const Json back = Json::parse(j.dump(2));
    expect_bit_equal(j, back);
    EXPECT_EQ(back.dump(2), j.dump(2));
}

TEST(Report, SameSeedIsByteIdentical) {
    const Scenario& s = *find_scenario("thm-3.11-pipeline");
    const std::string a = render_reports({run_scenario(s)}, ReportFormat::Json);
    const std::string b = render_reports({run_scenario(s)}, ReportFormat::Json);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("wall"), std::string::npos);
}

TEST(Report, FailCarriesWitnessOfDomainDimension) {
    Scenario s = *find_scenario("example-5.13-negative");
    s.expected = {{"defect", {{"verdict", "DaugavetHolds"}}}};
    const Report r = run_scenario(s);
    EXPECT_EQ(r.verdict, Verdict::Fail);
    const Json j = report_to_json(r);
    EXPECT_EQ(j.at("verdict"), "FAIL");
    const Json& res = j.at("ops").at(0).at("result");
    EXPECT_EQ(res.at("witness").size(), 8u);
    EXPECT_EQ(res.at("norm_sum").at("witness").size(), 8u);
    EXPECT_EQ(exit_code({r}), 1);
}

TEST(Report, TableContainsAnchor) {
    const Scenario& s = *find_scenario("example-4.7");
    const Report r = run_scenario(s);
    const std::string t = report_to_table(r);
    EXPECT_NE(t.find(s.anchor), std::string::npos);
    EXPECT_NE(t.find("example-4.7"), std::string::npos);
    EXPECT_NE(t.find("PASS"), std::string::npos);
}

TEST(Report, ExitCodes) {
    Report pass, fail, inc;
    fail.verdict = Verdict::Fail;
    inc.verdict = Verdict::Inconclusive;
    EXPECT_EQ(exit_code({pass}), 0);
    EXPECT_EQ(exit_code({pass, inc}), 2);
    EXPECT_EQ(exit_code({inc, fail}), 1);
    EXPECT_EQ(exit_code({}), 0);
}

TEST(Report, UnwritablePathIsConfigError) {
    try {
        write_text_file("/nonexistent-dir/report.json", "{}");
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::Config);
    }
}

TEST(Encoding, NonFiniteValuesRoundTrip) {
    EXPECT_EQ(encode(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(encode(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_TRUE(std::isnan(decode_double(encode(std::nan("")))));
    EXPECT_EQ(decode_double(encode(0.1)), 0.1);
    EXPECT_EQ(encode(std::complex<double>(1.0, 0.0)), 1.0);
    EXPECT_EQ(encode(std::complex<double>(0.0, -2.0)), Json::array({0.0, -2.0}));
}

TEST(Checks, Matchers) {
    const Json result = {{"a", 1.5}, {"s", "Holds"}, {"v", {1, 2, 3}}, {"rows", {{{"ok", true}}, {{"ok", false}}}},
                         {"inf", "inf"}};
    const auto run = [&](const Json& expected) {
        const auto checks = check_expectations(result, expected);
        return checks.size() == 1 && checks[0].pass;
    };
    EXPECT_TRUE(run({{"a", {{"min", 1}, {"max", 2}}}}));
    EXPECT_FALSE(run({{"a", {{"max", 1}}}}));
    EXPECT_TRUE(run({{"a", {{"approx", 1.5000001}, {"tol", 1e-6}}}}));
    EXPECT_FALSE(run({{"a", {{"approx", 1.6}}}}));
    EXPECT_TRUE(run({{"s", "Holds"}}));
    EXPECT_TRUE(run({{"s", {{"one_of", {"Fails", "Holds"}}}}}));
    EXPECT_TRUE(run({{"v", {{"size", 3}}}}));
    EXPECT_TRUE(run({{"v.1", 2}}));
    EXPECT_FALSE(run({{"rows.*.ok", true}}));
    EXPECT_TRUE(run({{"rows.0.ok", true}}));
    EXPECT_FALSE(run({{"missing.path", {{"min", 0}}}}));
    EXPECT_TRUE(run({{"missing.path", nullptr}}));
    EXPECT_TRUE(run({{"inf", {{"min", 1e300}}}}));
    EXPECT_FALSE(run({{"v.*", {{"max", 2}}}}));
}

TEST(RunScenario, InconclusiveActualGivesInconclusiveVerdict) {
    // A zero map gives degenerate slices, which the continuity check reports as Inconclusive.
    const Json ops = Json::parse(R"([{
        "id": "zero", "op": "strong_continuity",
        "targets": {"base": {"kind": "constant", "domain": "X", "codomain": "X", "value": [0, 0, 0]},
                    "functionals": [{"kind": "coordinate", "space": "X", "index": 0}],
                    "epsilons": [0.2]},
        "candidates": {"base": {"kind": "identity", "domain": "X"}, "functionals": [], "epsilons": []}}])");
    const Report r = run_scenario(minimal(ops, {{"zero", {{"overall", "HoldsOnGrid"}}}}));
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
    EXPECT_EQ(exit_code({r}), 2);
}

TEST(RunScenario, LibraryErrorsAreReportedPerOp) {
    const Json ops = Json::array({{{"id", "l1"},
                                   {"op", "l1_witness"},
                                   {"phi", {{"kind", "identity"}, {"domain", "X"}}},
                                   {"functional", {{"kind", "constant"}, {"space", "X"}, {"value", 1}}},
                                   {"y", {1, 1, 1}}}});
    const Report unexpected = run_scenario(minimal(ops));
    EXPECT_EQ(unexpected.verdict, Verdict::Fail);
    EXPECT_EQ(unexpected.ops[0].result.at("error"), "UnsupportedSpace");
    const Report expected = run_scenario(minimal(ops, {{"l1", {{"error", "UnsupportedSpace"}}}}));
    EXPECT_EQ(expected.verdict, Verdict::Pass);
}

TEST(RunScenario, ConfigErrors) {
    const auto config_code = [](const Scenario& s) {
        try {
            (void)run_scenario(s);
        } catch (const LabError& e) {
            return e.code() == ErrorCode::Config;
        }
        return false;
    };
    EXPECT_TRUE(config_code(minimal(Json::array({{{"id", "a"}, {"op", "frobnicate"}}}))));
    EXPECT_TRUE(config_code(minimal(Json::array({{{"id", "a"}, {"op", "norm"}, {"map", "undefined"}}}))));
    EXPECT_TRUE(config_code(minimal(Json::array({{{"id", "a"}, {"op", "norm"}, {"map", {{"kind", "cube"}}}}}),
                                    {{"b", {{"x", 1}}}})));
    Scenario cyc = minimal(Json::array({{{"id", "a"}, {"op", "norm"}, {"map", "m1"}}}));
    cyc.construction["maps"] = {{"m1", {{"kind", "sum"}, {"terms", {"m2", "m2"}}}},
                                {"m2", {{"kind", "scaled"}, {"by", 2}, {"map", "m1"}}}};
    EXPECT_TRUE(config_code(cyc));
    Scenario dup = minimal(Json::array({{{"id", "a"}, {"op", "cube_slice"}}, {{"id", "a"}, {"op", "cube_slice"}}}));
    EXPECT_TRUE(config_code(dup));
    EXPECT_THROW((void)scenario_from_json(Json::parse(R"({"name": "x"})")), LabError);
    EXPECT_THROW((void)load_scenario_file("/nonexistent/scenario.json"), LabError);
}

TEST(RunScenario, OverridesReplaceSeedAndBudget) {
    const Scenario s = minimal(Json::parse(R"([
        {"id": "n", "op": "norm", "map": {"kind": "cube", "domain": "X"}},
        {"id": "m", "op": "modulus_bound", "count": 100, "seed": 99}])"));
    const Report base = run_scenario(s);
    EXPECT_EQ(base.seed, 7u);
    EXPECT_EQ(base.ops[0].budget, 500u);
    EXPECT_EQ(base.ops[1].seed, 99u);
    const Report over = run_scenario(s, {123, 700, std::nullopt});
    EXPECT_EQ(over.seed, 123u);
    EXPECT_EQ(over.ops[0].budget, 700u);
    EXPECT_NE(over.ops[0].seed, base.ops[0].seed);
    EXPECT_NE(over.ops[1].seed, 99u);
}

TEST(RunScenario, NamedObjectsAreSharedAcrossOps) {
    Scenario s = minimal(Json::array({{{"id", "a"}, {"op", "norm"}, {"map", "cube"}},
                                      {{"id", "b"}, {"op", "evaluate"}, {"map", "cube"}, {"x", "half"}}}),
                         {{"a", {{"lower_bound", 1}}}, {"b", {{"value", 0.125}, {"image", {0.125, 0.125, 0.125}}}}});
    s.construction["maps"] = {{"cube", {{"kind", "cube"}, {"domain", "X"}}}};
    s.construction["vectors"] = {{"half", {{"kind", "constant"}, {"space", "X"}, {"value", 0.5}}}};
    const Report r = run_scenario(s);
    EXPECT_EQ(r.verdict, Verdict::Pass) << report_to_table(r);
}
