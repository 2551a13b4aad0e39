// Op runners: each takes an op record, resolves its arguments and returns a JSON
// result whose field names are the ones scenario expectations refer to.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "scenario_resolve.hpp"
#include "slicelab/random.hpp"

namespace slicelab {

using namespace detail;

namespace {

Json encode_opt(const std::optional<double>& v) { return v ? encode(*v) : Json(nullptr); }

Json encode_dual(const DualFunctional& f) { return encode(f.coords); }

Json to_json(const NormEstimate& e) {
    return {{"lower_bound", encode(e.lower_bound)},
            {"upper_bound", encode_opt(e.upper_bound)},
            {"upper_source", e.upper_source},
            {"attained", e.attained()},
            {"witness", encode(e.witness)},
            {"evaluations", e.evaluations},
            {"method", to_string(e.method)},
            {"seed", e.seed}};
}

Json to_json(const DefectReport& d) {
    return {{"norm_phi", to_json(d.norm_phi)},
            {"norm_psi", to_json(d.norm_psi)},
            {"norm_sum", to_json(d.norm_sum)},
            {"defect", encode(d.defect)},
            {"defect_lo", encode_opt(d.defect_lo)},
            {"defect_hi", encode_opt(d.defect_hi)},
            {"witness", encode(d.witness)},
            {"verdict", to_string(d.verdict)},
            {"tol", encode(d.tol)},
            {"gap", encode(d.gap)}};
}

Json to_json(const InclusionVerdict& v) {
    return {{"status", to_string(v.status)},    {"witness", encode(v.witness)},
            {"omega", encode(v.omega)},         {"max_violation", encode(v.max_violation)},
            {"evaluations", v.evaluations},     {"inner_empty", v.inner_empty}};
}

Json to_json(const ContinuityTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"target_index", r.target_index},
                        {"epsilon", encode(r.epsilon)},
                        {"status", to_string(r.status)},
                        {"candidate", r.candidate},
                        {"candidate_functional",
                         r.candidate_functional ? encode_dual(*r.candidate_functional) : Json(nullptr)},
                        {"mu", encode(r.mu)},
                        {"witness", encode(r.witness)},
                        {"omega", encode(r.omega)},
                        {"max_violation", encode(r.max_violation)},
                        {"notes", r.notes}});
    }
    return {{"kind", to_string(t.kind)}, {"rows", rows}, {"overall", to_string(t.overall)}, {"evaluations", t.evaluations}};
}

Json to_json(const CharacterizationWitness& w) {
    return {{"x", encode(w.x)},
            {"omega", encode(w.omega)},
            {"slice_value", encode(w.slice_value)},
            {"attained", encode(w.attained)},
            {"epsilon", encode(w.epsilon)},
            {"phi_norm", encode(w.phi_norm)}};
}

Json to_json(const WitnessSearch& s) {
    return {{"found", s.witness.has_value()},
            {"witness", s.witness ? to_json(*s.witness) : Json(nullptr)},
            {"phi_norm", encode(s.phi_norm)},
            {"best", encode(s.best)},
            {"target", encode(s.target)},
            {"best_x", encode(s.best_x)},
            {"evaluations", s.evaluations}};
}

Json to_json(const LocalTable& t) {
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"w_index", r.w_index},
                        {"delta_index", r.delta_index},
                        {"estimate", encode(r.estimate)},
                        {"upper_bound", encode_opt(r.upper_bound)},
                        {"status", to_string(r.status)},
                        {"witness", encode(r.witness)},
                        {"omega", encode(r.omega)},
                        {"slice_value", encode(r.slice_value)},
                        {"attained", encode(r.attained)},
                        {"slice_form_ok", r.slice_form_ok}});
    }
    return {{"phi_norm_gamma", encode(t.phi_norm_gamma)},
            {"phi_norm_ball", encode(t.phi_norm_ball)},
            {"norm_determining", t.norm_determining},
            {"rows", rows},
            {"overall", to_string(t.overall)},
            {"epsilon", encode(t.epsilon)}};
}

Json to_json(const SmallImageVerdict& v) {
    Json cells = Json::array();
    for (const auto& c : v.cells)
        cells.push_back({{"omega", encode(c.omega)},
                         {"feasible", c.feasible},
                         {"max_distance", encode(c.max_distance)},
                         {"witness", encode(c.witness)}});
    return {{"status", to_string(v.status)}, {"vacuous", v.vacuous},          {"cells", cells},
            {"witness", encode(v.witness)},  {"omega", encode(v.omega)},       {"max_distance", encode(v.max_distance)}};
}

Json to_json(const ExposedSlice& e) {
    return {{"y0", encode(e.y0)},
            {"y0_norm", encode(e.y0_norm)},
            {"y0_star", encode_dual(e.y0_star)},
            {"z_star", encode_dual(e.z_star)},
            {"eta", encode(e.eta)},
            {"delta", encode(e.delta)},
            {"radius_bound", encode(e.radius_bound)},
            {"diameter_bound", encode(e.diameter_bound)}};
}

Json to_json(const KyFanSample& s) {
    Json weights = Json::array();
    for (double w : s.worst_weights) weights.push_back(encode(w));
    return {{"combinations", s.combinations},
            {"max_residual", encode(s.max_residual)},
            {"worst_points", s.worst_points},
            {"worst_weights", weights}};
}

Json to_json(const KyFanCertificate& c) {
    Json weights = Json::array();
    for (double w : c.weights) weights.push_back(encode(w));
    Json cons = Json::array();
    for (const auto& k : c.consequences)
        cons.push_back({{"epsilon", encode(k.epsilon)},
                        {"slice_points", k.slice_points},
                        {"max_distance", encode(k.max_distance)},
                        {"holds", k.holds}});
    return {{"found", c.found},
            {"x0_star", encode_dual(c.x0_star)},
            {"weights", weights},
            {"value", encode(c.value)},
            {"upper_value", encode(c.upper_value)},
            {"iterations", c.iterations},
            {"consequences", cons}};
}

struct OpContext {
    Resolver& r;
    const Json& op;
    SearchOptions search;
    std::optional<double> tol;
};

const Json& arg(const OpContext& c, const char* key) { return require(c.op, key); }

std::optional<Restriction> gamma_of(const OpContext& c) { return c.r.restriction(c.op.value("gamma", Json())); }

SliceSpec slice_of(Resolver& r, const Json& def) {
    SliceKind kind = SliceKind::Strong;
    const std::string k = text(def, "kind", "strong");
    if (k == "weak") kind = SliceKind::Weak;
    else if (k != "strong") config_error("unknown slice kind '" + k + "'");
    return make_slice(r.functional(require(def, "functional")), number(def, "epsilon", 0.1),
                      parse_scalar(def.value("omega", Json(1.0))), kind);
}

DefectOptions defect_options(const OpContext& c) {
    DefectOptions o{c.search, std::nullopt};
    if (c.op.contains("tol")) o.tol = number(c.op, "tol", 0.0);
    if (c.tol) o.tol = c.tol;
    return o;
}

Json op_norm(const OpContext& c) {
    const auto g = gamma_of(c);
    const Restriction* gp = g ? &*g : nullptr;
    if (c.op.contains("functional")) return to_json(sup_norm(c.r.functional(c.op.at("functional")), c.search, gp));
    return to_json(sup_norm(c.r.map(arg(c, "map")), c.search, gp));
}

Json op_evaluate(const OpContext& c) {
    const BoundedMap m = c.r.map(arg(c, "map"));
    const Vector x = c.r.vector(arg(c, "x"));
    const Vector image = m(x);
    return {{"value", encode(norm(m.codomain(), image))},
            {"image", encode(image)},
            {"in_ball", in_ball(m.domain(), x)}};
}

Json op_upper_bound(const OpContext& c) {
    const UpperBound u = analytic_upper_bound(c.r.map(arg(c, "map")));
    return {{"value", encode_opt(u.value)},
            {"source", u.source},
            {"witness", u.witness ? encode(*u.witness) : Json(nullptr)}};
}

Json op_defect(const OpContext& c) {
    const auto g = gamma_of(c);
    return to_json(defect(c.r.map(arg(c, "phi")), c.r.map(arg(c, "psi")), defect_options(c), g ? &*g : nullptr));
}

Json op_alt_defect(const OpContext& c) {
    const auto g = gamma_of(c);
    const auto rep = alt_defect(c.r.map(arg(c, "phi")), c.r.map(arg(c, "psi")), c.r.grid(c.op.value("grid", Json())),
                                defect_options(c), g ? &*g : nullptr);
    Json by = Json::array();
    for (const auto& [w, d] : rep.defect_by_omega) by.push_back({{"omega", encode(w)}, {"defect", encode(d)}});
    return {{"best_omega", encode(rep.best_omega)}, {"best", to_json(rep.best)}, {"defect_by_omega", by}};
}

Json op_inclusion(const OpContext& c) {
    const auto g = gamma_of(c);
    return to_json(check_inclusion(slice_of(c.r, arg(c, "inner")), slice_of(c.r, arg(c, "outer")), g ? &*g : nullptr,
                                   c.search, number(c.op, "tol", 1e-9)));
}

Json op_continuity(const OpContext& c, bool weak) {
    const auto g = gamma_of(c);
    const SliceFamily targets = c.r.family(arg(c, "targets"));
    const SliceFamily candidates = c.r.family(c.op.value("candidates", arg(c, "targets")));
    return to_json(weak ? check_weak_slice_continuity(targets, candidates, c.search, g ? &*g : nullptr)
                        : check_strong_slice_continuity(targets, candidates, c.search, g ? &*g : nullptr));
}

Json op_rotation(const OpContext& c) {
    const auto v = multilinear_rotation_check(c.r.map(arg(c, "map")), c.r.duals(arg(c, "functionals")),
                                              parse_doubles(arg(c, "epsilons")), c.r.grid(c.op.value("grid", Json())),
                                              c.search);
    return {{"status", to_string(v.status)},         {"checks", v.checks},
            {"mismatches", v.mismatches},            {"max_value_gap", encode(v.max_value_gap)},
            {"witness", encode(v.witness)},          {"omega", encode(v.omega)}};
}

Json op_modulus_bound(const OpContext& c) {
    const double eps = number(c.op, "epsilon", 0.1);
    const auto s = modulus_bound_sample(eps, count(c.op, "count", 10000), c.search.seed);
    return {{"epsilon", encode(eps)},
            {"samples", s.samples},
            {"max_excess", encode(s.max_excess)},
            {"boundary_gap", encode(s.boundary_gap)}};
}

Json op_cube_slice(const OpContext& c) {
    const double eps = number(c.op, "epsilon", 0.1);
    const auto s = cube_slice_sample(count(c.op, "n", 8), eps, count(c.op, "count", 10000), c.search.seed);
    return {{"epsilon", encode(eps)},
            {"accepted", s.accepted},
            {"proposals", s.proposals},
            {"max_violation", encode(s.max_violation)}};
}

Json op_extract_witness(const OpContext& c) {
    return to_json(extract_witness(c.r.map(arg(c, "phi")), c.r.functional(arg(c, "functional")),
                                   c.r.vector(arg(c, "y")), number(c.op, "epsilon", 0.05), c.search));
}

Json op_certify(const OpContext& c) {
    const BoundedMap phi = c.r.map(arg(c, "phi"));
    const ScalarMap xp = c.r.functional(arg(c, "functional"));
    const Vector y = c.r.vector(arg(c, "y"));
    const double eps = number(c.op, "epsilon", 0.05);
    const WitnessSearch s = extract_witness(phi, xp, y, eps, c.search);
    Json out{{"search", to_json(s)}, {"certified", nullptr}};
    if (s.witness) {
        const CertifiedBound b = certify_from_witness(phi, xp, y, *s.witness);
        out["certified"] = {{"value", encode(b.value)},
                            {"chain_floor", encode(b.chain_floor)},
                            {"rotation_gap", encode(b.rotation_gap)},
                            {"rotation_bound", encode(b.rotation_bound)},
                            {"claimed_floor", encode(2.0 - (2.0 + std::sqrt(2.0)) * eps)}};
    }
    return out;
}

Json op_extract_alt_witness(const OpContext& c) {
    const auto s = extract_alt_witness(c.r.map(arg(c, "phi")), c.r.functional(arg(c, "functional")),
                                       c.r.vector(arg(c, "y")), number(c.op, "epsilon", 0.05),
                                       c.r.grid(c.op.value("grid", Json())), c.search);
    Json w = nullptr;
    if (s.witness) {
        const AltWitness& a = *s.witness;
        w = {{"x", encode(a.x)},
             {"omega1", encode(a.omega1)},
             {"omega2", encode(a.omega2)},
             {"grid_omega", encode(a.grid_omega)},
             {"slice_value", encode(a.slice_value)},
             {"modulus", encode(a.modulus)},
             {"attained", encode(a.attained)},
             {"epsilon", encode(a.epsilon)},
             {"phi_norm", encode(a.phi_norm)}};
    }
    return {{"found", s.witness.has_value()}, {"witness", w},          {"phi_norm", encode(s.phi_norm)},
            {"best", encode(s.best)},         {"target", encode(s.target)}, {"evaluations", s.evaluations}};
}

Json op_quotient(const OpContext& c) {
    const auto q = quotient_check(c.r.map(arg(c, "map")), c.search);
    return {{"status", to_string(q.status)},
            {"method", q.method},
            {"witness", encode(q.witness)},
            {"witness_gap", encode(q.witness_gap)},
            {"samples", q.samples},
            {"max_roundtrip_error", encode(q.max_roundtrip_error)},
            {"max_inverse_excess", encode(q.max_inverse_excess)},
            {"covering_radius", encode(q.covering_radius)}};
}

Json op_local(const OpContext& c) {
    LocalOptions o{c.search, number(c.op, "epsilon", 0.05), number(c.op, "tol", 1e-6)};
    if (c.tol) o.tol = *c.tol;
    return to_json(local_daugavet_check(c.r.map(arg(c, "map")), c.r.context(arg(c, "context")), o));
}

Json op_small_image(const OpContext& c) {
    const auto g = gamma_of(c);
    return to_json(small_image_check(c.r.map(arg(c, "psi")), c.r.functional(arg(c, "functional")),
                                     number(c.op, "delta", 0.1), c.r.vector(arg(c, "y")),
                                     number(c.op, "epsilon", 0.05), g ? &*g : nullptr,
                                     c.r.grid(c.op.value("grid", Json())), c.search));
}

Json op_t1_pipeline(const OpContext& c) {
    PipelineParams p{number(c.op, "epsilon", 0.05), c.r.grid(c.op.value("grid", Json())), {}};
    if (c.op.contains("deltas")) p.deltas = parse_doubles(c.op.at("deltas"));
    const T1Report t = theorem_T1_pipeline(c.r.map(arg(c, "phi")), c.r.map(arg(c, "psi")),
                                           c.r.context(arg(c, "context")), p, c.search);
    return {{"certified", t.certified},
            {"verdict", t.certified ? "Certified" : "Inconclusive"},
            {"failed_stage", t.failed_stage},
            {"epsilon", encode(t.epsilon)},
            {"lower_bound", encode(t.lower_bound)},
            {"chain_floor", encode(t.chain_floor)},
            {"target_floor", encode(2.0 - 3.0 * t.epsilon)},
            {"witness", encode(t.witness)},
            {"omega", encode(t.omega)},
            {"w_index", t.w_index},
            {"delta_index", t.delta_index},
            {"delta", encode(t.delta)},
            {"local", to_json(t.local)},
            {"small_image", t.small_image ? to_json(*t.small_image) : Json(nullptr)},
            {"defect", t.defect ? to_json(*t.defect) : Json(nullptr)},
            {"notes", t.notes}};
}

Json op_weakly_compact(const OpContext& c) {
    WeaklyCompactParams p{number(c.op, "epsilon", 0.05), c.r.grid(c.op.value("grid", Json())),
                          c.op.value("alternative", false)};
    const WCReport w = weakly_compact_pipeline(c.r.map(arg(c, "phi")), c.r.family(arg(c, "upsilon")),
                                               c.r.map(arg(c, "psi")), p, c.search);
    return {{"certified", w.certified},
            {"verdict", w.certified ? "Certified" : "Inconclusive"},
            {"failed_stage", w.failed_stage},
            {"epsilon", encode(w.epsilon)},
            {"lower_bound", encode(w.lower_bound)},
            {"target_floor", encode(2.0 - 3.0 * w.epsilon)},
            {"exposed", w.exposed ? to_json(*w.exposed) : Json(nullptr)},
            {"continuity", w.continuity ? to_json(*w.continuity) : Json(nullptr)},
            {"hypothesis", w.hypothesis ? to_json(*w.hypothesis) : Json(nullptr)},
            {"witness", encode(w.witness)},
            {"omega1", encode(w.omega1)},
            {"omega2", encode(w.omega2)},
            {"sum_omega", encode(w.sum_omega)},
            {"mu", encode(w.mu)},
            {"attained", encode(w.attained)},
            {"image_distance", encode(w.image_distance)},
            {"notes", w.notes}};
}

Json op_exposed_slice(const OpContext& c) {
    return to_json(exposed_slice(c.r.space(arg(c, "space")), c.r.vectors(arg(c, "points")),
                                 number(c.op, "epsilon", 0.1), c.search.budget));
}

KyFanOptions kyfan_options(const OpContext& c) {
    KyFanOptions o{c.search, number(c.op, "tol", 1e-9), {0.1, 0.05}};
    if (c.op.contains("epsilons")) o.epsilons = parse_doubles(c.op.at("epsilons"));
    return o;
}

Json op_kyfan_sample(const OpContext& c) {
    return to_json(kyfan_inequality_sample(c.r.problem(arg(c, "problem")), count(c.op, "combinations", 1000),
                                           c.search.seed));
}

Json op_kyfan_certificate(const OpContext& c) {
    return to_json(kyfan_certificate_search(c.r.problem(arg(c, "problem")), kyfan_options(c)));
}

Json op_hull_distance(const OpContext& c) {
    std::vector<Vector> hints;
    if (c.op.contains("hints")) hints = c.r.vectors(c.op.at("hints"));
    const auto h = hull_distance_test(c.r.map(arg(c, "phi")), c.r.map(arg(c, "psi")), c.r.vector(arg(c, "z")),
                                      number(c.op, "K", 1.0), count(c.op, "combinations", 1000), hints,
                                      kyfan_options(c));
    return {{"combinations", h.combinations},
            {"holds", h.holds},
            {"max_residual", encode(h.max_residual)},
            {"witness", encode(h.witness)},
            {"settled_by_hint", h.settled_by_hint},
            {"certificate", to_json(h.certificate)}};
}

Json op_l1_witness(const OpContext& c) {
    const BoundedMap phi = c.r.map(arg(c, "phi"));
    const Vector y = c.r.vector(arg(c, "y"));
    const double eps = number(c.op, "epsilon", 0.05);
    const auto s = l1_small_support_witness(phi, c.r.functional(arg(c, "functional")), y, eps, c.search);
    Json w = nullptr;
    if (s.witness) {
        const L1Witness& l = *s.witness;
        // Closed-form recheck: ||y + omega Phi(z)|| against 2 - 2 eps.
        const double exact = norm(phi.codomain(), y + l.omega * phi(l.z));
        w = {{"z", encode(l.z)},
             {"omega", encode(l.omega)},
             {"value", encode(l.value)},
             {"recomputed_value", encode(exact)},
             {"floor", encode(2.0 - 2.0 * eps)},
             {"meets_floor", exact >= 2.0 - 2.0 * eps},
             {"chain_floor", encode(l.chain_floor)},
             {"delta", encode(l.delta)},
             {"support_mass", encode(l.support_mass)},
             {"tail_integral", encode(l.tail_integral)},
             {"image_value", encode(l.image_value)},
             {"slice_value", encode(l.slice_value)},
             {"epsilon", encode(l.epsilon)}};
    }
    return {{"found", s.witness.has_value()},
            {"witness", w},
            {"delta", encode(s.delta)},
            {"candidates", s.candidates},
            {"best_image_value", encode(s.best_image_value)}};
}

Json op_admissibility(const OpContext& c) {
    const std::string shape = text(c.op, "shape", "arc");
    if (shape != "arc" && shape != "scattered") config_error("unknown support shape '" + shape + "'");
    const auto v = admissibility_check(c.r.map(arg(c, "map")), parse_doubles(arg(c, "deltas")), c.search,
                                       shape == "arc" ? SupportShape::Arc : SupportShape::Scattered);
    Json rows = Json::array();
    for (const auto& r : v.rows)
        rows.push_back({{"delta_prime", encode(r.delta_prime)},
                        {"samples", r.samples},
                        {"max_image_support", encode(r.max_image_support)},
                        {"declared", encode_opt(r.declared)},
                        {"max_norm_defect", encode(r.max_norm_defect)},
                        {"ok", r.ok}});
    return {{"status", to_string(v.status)}, {"rows", rows}, {"witness", encode(v.witness)}, {"reason", v.reason}};
}

using Runner = std::function<Json(const OpContext&)>;

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> table{
        {"norm", op_norm},
        {"evaluate", op_evaluate},
        {"upper_bound", op_upper_bound},
        {"defect", op_defect},
        {"alt_defect", op_alt_defect},
        {"inclusion", op_inclusion},
        {"strong_continuity", [](const OpContext& c) { return op_continuity(c, false); }},
        {"weak_continuity", [](const OpContext& c) { return op_continuity(c, true); }},
        {"rotation", op_rotation},
        {"modulus_bound", op_modulus_bound},
        {"cube_slice", op_cube_slice},
        {"extract_witness", op_extract_witness},
        {"certify", op_certify},
        {"extract_alt_witness", op_extract_alt_witness},
        {"quotient", op_quotient},
        {"local", op_local},
        {"small_image", op_small_image},
        {"t1_pipeline", op_t1_pipeline},
        {"weakly_compact", op_weakly_compact},
        {"exposed_slice", op_exposed_slice},
        {"kyfan_sample", op_kyfan_sample},
        {"kyfan_certificate", op_kyfan_certificate},
        {"hull_distance", op_hull_distance},
        {"l1_witness", op_l1_witness},
        {"admissibility", op_admissibility},
    };
    return table;
}

Json run_with(Resolver& r, const Json& op, const SearchOptions& search, std::optional<double> tol) {
    const std::string name = text(op, "op", "");
    const auto it = runners().find(name);
    if (it == runners().end()) config_error("unknown op '" + name + "'");
    try {
        return it->second(OpContext{r, op, search, tol});
    } catch (const LabError& e) {
        if (e.code() == ErrorCode::Config) throw;
        return Json{{"error", to_string(e.code())}, {"message", e.what()}};
    }
}

// ---- expectation checking ---------------------------------------------------------------

void collect(const Json& node, const std::vector<std::string>& parts, std::size_t at, std::vector<Json>& out) {
    if (at == parts.size()) {
        out.push_back(node);
        return;
    }
    const std::string& p = parts[at];
    if (p == "*") {
        if (node.is_array())
            for (const auto& e : node) collect(e, parts, at + 1, out);
        return;
    }
    if (node.is_object()) {
        collect(node.contains(p) ? node.at(p) : Json(nullptr), parts, at + 1, out);
    } else if (node.is_array() && !p.empty() && p.find_first_not_of("0123456789") == std::string::npos) {
        const std::size_t i = std::stoul(p);
        collect(i < node.size() ? node.at(i) : Json(nullptr), parts, at + 1, out);
    } else {
        collect(Json(nullptr), parts, at + 1, out);
    }
}

bool numeric(const Json& j) {
    return j.is_number() || (j.is_string() && (j == "inf" || j == "-inf" || j == "nan"));
}

bool literal_equal(const Json& actual, const Json& expected) {
    if (numeric(actual) && numeric(expected)) return decode_double(actual) == decode_double(expected);
    return actual == expected;
}

bool is_matcher(const Json& spec) {
    if (!spec.is_object() || spec.empty()) return false;
    for (const auto& [k, v] : spec.items())
        if (k != "min" && k != "max" && k != "approx" && k != "tol" && k != "one_of" && k != "size" && k != "not")
            return false;
    return true;
}

bool matches(const Json& actual, const Json& spec) {
    if (!is_matcher(spec)) return literal_equal(actual, spec);
    if (spec.contains("size")) {
        if (!actual.is_array() || actual.size() != spec.at("size").get<std::size_t>()) return false;
    }
    if (spec.contains("one_of")) {
        bool any = false;
        for (const auto& option : spec.at("one_of")) any = any || literal_equal(actual, option);
        if (!any) return false;
    }
    if (spec.contains("not") && literal_equal(actual, spec.at("not"))) return false;
    if (spec.contains("min") || spec.contains("max") || spec.contains("approx")) {
        if (!numeric(actual)) return false;
        const double a = decode_double(actual);
        if (std::isnan(a)) return false;
        if (spec.contains("min") && a < decode_double(spec.at("min"))) return false;
        if (spec.contains("max") && a > decode_double(spec.at("max"))) return false;
        if (spec.contains("approx") &&
            !(std::abs(a - decode_double(spec.at("approx"))) <= decode_double(spec.value("tol", Json(1e-9)))))
            return false;
    }
    return true;
}

}  // namespace

std::vector<CheckResult> check_expectations(const Json& result, const Json& expected) {
    std::vector<CheckResult> out;
    if (expected.is_null()) return out;
    if (!expected.is_object()) config_error("expectations must be an object of {path: expectation}");
    for (const auto& [path, spec] : expected.items()) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t dot = path.find('.', start);
            parts.push_back(path.substr(start, dot - start));
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
        std::vector<Json> leaves;
        collect(result, parts, 0, leaves);
        CheckResult c{path, spec, leaves.size() == 1 ? leaves.front() : Json(leaves), !leaves.empty()};
        for (const auto& leaf : leaves) c.pass = c.pass && matches(leaf, spec);
        out.push_back(std::move(c));
    }
    return out;
}

Json run_op(const Json& construction, const Json& op, std::uint64_t seed, std::size_t budget,
            std::optional<double> tol) {
    Resolver r(construction, SearchOptions{budget, seed});
    return run_with(r, op, SearchOptions{budget, seed}, tol);
}

Report run_scenario(const Scenario& s, const RunOverrides& overrides) {
    const auto start = std::chrono::steady_clock::now();
    const Json& c = s.construction;
    Report rep;
    rep.scenario = s.name;
    rep.anchor = s.anchor;
    rep.seed = overrides.seed.value_or(c.value("seed", std::uint64_t{0}));
    rep.budget = overrides.budget.value_or(c.value("budget", std::size_t{100000}));
    if (!c.contains("ops") || !c.at("ops").is_array()) config_error("scenario '" + s.name + "' has no 'ops' array");
    const Json& ops = c.at("ops");

    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string id = text(ops[i], "id", "op" + std::to_string(i));
        if (!ids.emplace(id, i).second) config_error("duplicate op id '" + id + "'");
    }
    if (!s.expected.is_object()) config_error("expected must be an object");
    for (const auto& [id, _] : s.expected.items())
        if (!ids.count(id)) config_error("expectation refers to unknown op '" + id + "'");

    Resolver resolver(c, SearchOptions{rep.budget, rep.seed});
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Json& op = ops[i];
        OpReport o;
        o.id = text(op, "id", "op" + std::to_string(i));
        o.op = text(op, "op", "");
        o.seed = op.contains("seed") && !overrides.seed ? op.at("seed").get<std::uint64_t>()
                                                        : derive_seed(rep.seed, i + 1);
        o.budget = op.contains("budget") && !overrides.budget ? op.at("budget").get<std::size_t>() : rep.budget;
        o.result = run_with(resolver, op, SearchOptions{o.budget, o.seed}, overrides.tol);
        o.checks = check_expectations(o.result, s.expected.value(o.id, Json::object()));
        if (o.result.contains("error") &&
            std::none_of(o.checks.begin(), o.checks.end(), [](const CheckResult& k) { return k.path == "error"; }))
            o.checks.push_back({"error", nullptr, o.result.at("error"), false});
        bool fail = false, inconclusive = false;
        for (const auto& k : o.checks) {
            if (k.pass) continue;
            if (k.actual == "Inconclusive") inconclusive = true;
            else fail = true;
        }
        o.verdict = fail ? Verdict::Fail : inconclusive ? Verdict::Inconclusive : Verdict::Pass;
        rep.ops.push_back(std::move(o));
    }
    rep.verdict = Verdict::Pass;
    for (const auto& o : rep.ops) {
        if (o.verdict == Verdict::Fail) rep.verdict = Verdict::Fail;
        else if (o.verdict == Verdict::Inconclusive && rep.verdict == Verdict::Pass) rep.verdict = Verdict::Inconclusive;
    }
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace slicelab
