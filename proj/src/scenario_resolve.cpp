#include "scenario_resolve.hpp"

#include <cmath>

#include "slicelab/random.hpp"

namespace slicelab::detail {

void config_error(const std::string& what) { throw LabError(ErrorCode::Config, what); }

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) config_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return decode_double(v);
    config_error(std::string("field '") + key + "' is not a number");
}

std::size_t count(const Json& j, const char* key, std::size_t fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const Json& v = j.at(key);
    if (!v.is_number_unsigned()) config_error(std::string("field '") + key + "' is not a non-negative integer");
    return v.get<std::size_t>();
}

std::string text(const Json& j, const char* key, const std::string& fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_string()) config_error(std::string("field '") + key + "' is not a string");
    return j.at(key).get<std::string>();
}

Scalar parse_scalar(const Json& j) {
    if (j.is_number() || j.is_string()) return decode_double(j);
    if (j.is_array() && j.size() == 2) return {decode_double(j[0]), decode_double(j[1])};
    config_error("expected a scalar (number or [re, im]), got " + j.dump());
}

std::vector<double> parse_doubles(const Json& j) {
    if (!j.is_array()) config_error("expected an array of numbers, got " + j.dump());
    std::vector<double> out;
    for (const auto& e : j) out.push_back(decode_double(e));
    return out;
}

namespace {

Field parse_field(const Json& def) {
    const std::string f = text(def, "field", "real");
    if (f == "real") return Field::Real;
    if (f == "complex") return Field::Complex;
    config_error("unknown field '" + f + "'");
}

Vector parse_values(const Json& j) {
    if (!j.is_array()) config_error("expected an array of scalars, got " + j.dump());
    Vector v;
    for (const auto& e : j) v.push_back(parse_scalar(e));
    return v;
}

Matrix parse_matrix(const Json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) config_error("matrix must be a non-empty array of rows");
    Matrix m(j.size(), j[0].size());
    for (std::size_t r = 0; r < m.rows; ++r) {
        const Vector row = parse_values(j[r]);
        if (row.size() != m.cols) config_error("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols; ++c) m(r, c) = row[c];
    }
    return m;
}

const std::string& kind_of(const Json& def) {
    const Json& k = require(def, "kind");
    if (!k.is_string()) config_error("'kind' must be a string");
    return k.get_ref<const std::string&>();
}

}  // namespace

Resolver::Resolver(const Json& construction, SearchOptions search) : construction_(construction), search_(search) {
    if (!construction_.is_object()) config_error("construction must be an object");
}

template <class T, class Build>
T Resolver::named(std::map<std::string, T>& cache, const char* section, const std::string& name, Build build) {
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    if (!construction_.contains(section) || !construction_.at(section).contains(name))
        config_error(std::string("unknown ") + section + " entry '" + name + "'");
    const std::string key = std::string(section) + "/" + name;
    if (!in_progress_.insert(key).second) config_error("reference cycle through '" + key + "'");
    T value = build(construction_.at(section).at(name));
    in_progress_.erase(key);
    return cache.emplace(name, std::move(value)).first->second;
}

// ---- spaces ----------------------------------------------------------------------

Space Resolver::space(const Json& ref) {
    if (ref.is_string())
        return named(spaces_, "spaces", ref.get<std::string>(), [this](const Json& d) { return build_space(d); });
    return build_space(ref);
}

Space Resolver::build_space(const Json& def) {
    const std::string type = text(def, "type", "");
    const Field f = parse_field(def);
    try {
        if (type == "sup") return Space::sup(count(def, "n", 0), f);
        if (type == "lp") return Space::lp(count(def, "n", 0), number(def, "p", 2.0), f);
        if (type == "weighted_l1") return Space::weighted_l1(parse_doubles(require(def, "weights")), f);
        if (type == "uniform_l1") return Space::uniform_l1(count(def, "n", 0), number(def, "mass", 1.0), f);
        if (type == "direct_sum") return Space::direct_sum(space(require(def, "left")), space(require(def, "right")));
    } catch (const LabError& e) {
        if (e.code() == ErrorCode::Config) throw;
        config_error(std::string("invalid space: ") + e.what());
    }
    config_error("unknown space type '" + type + "'");
}

// ---- vectors -----------------------------------------------------------------------

Vector Resolver::vector(const Json& ref) {
    if (ref.is_string())
        return named(vectors_, "vectors", ref.get<std::string>(), [this](const Json& d) { return build_vector(d); });
    return build_vector(ref);
}

Vector Resolver::build_vector(const Json& def) {
    if (def.is_array()) return parse_values(def);
    if (def.is_string()) return vector(def);
    const std::string& kind = kind_of(def);
    const auto dim = [&] { return def.contains("space") ? space(def.at("space")).dimension() : count(def, "n", 0); };
    if (kind == "values") return parse_values(require(def, "values"));
    if (kind == "constant") return constant_vector(dim(), parse_scalar(def.value("value", Json(1.0))));
    if (kind == "basis") {
        const std::size_t n = dim(), i = count(def, "index", 0);
        if (i >= n) config_error("basis index out of range");
        return basis_vector(n, i, parse_scalar(def.value("value", Json(1.0))));
    }
    if (kind == "embed_left") return embed_left(space(require(def, "space")), vector(require(def, "vector")));
    if (kind == "embed_right") return embed_right(space(require(def, "space")), vector(require(def, "vector")));
    if (kind == "scaled") return parse_scalar(require(def, "by")) * vector(require(def, "vector"));
    if (kind == "sum") return vector(require(def, "a")) + vector(require(def, "b"));
    if (kind == "image") return map(require(def, "map"))(vector(require(def, "vector")));
    if (kind == "norming") return norming_vector(space(require(def, "space")), dual(require(def, "dual")));
    config_error("unknown vector kind '" + kind + "'");
}

std::vector<Vector> Resolver::vectors(const Json& ref) {
    if (ref.is_string()) {
        const std::string name = ref.get<std::string>();
        if (!construction_.contains("vector_sets") || !construction_.at("vector_sets").contains(name))
            config_error("unknown vector_sets entry '" + name + "'");
        const std::string key = "vector_sets/" + name;
        if (!in_progress_.insert(key).second) config_error("reference cycle through '" + key + "'");
        auto out = vectors(construction_.at("vector_sets").at(name));
        in_progress_.erase(key);
        return out;
    }
    if (ref.is_array()) {
        std::vector<Vector> out;
        for (const auto& e : ref) out.push_back(vector(e));
        return out;
    }
    const std::string& kind = kind_of(ref);
    const std::uint64_t seed = derive_seed(search_.seed, count(ref, "stream", 0));
    if (kind == "sign_vectors") {
        const Space s = space(require(ref, "space"));
        const std::size_t n = s.dimension();
        if (n > 16) config_error("sign_vectors limited to dimension 16");
        std::vector<Vector> out;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            Vector v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1U ? -1.0 : 1.0;
            out.push_back(std::move(v));
        }
        return out;
    }
    if (kind == "ball_samples") return sample_ball(space(require(ref, "space")), seed, count(ref, "count", 100));
    if (kind == "sphere_samples") return sample_sphere(space(require(ref, "space")), seed, count(ref, "count", 100));
    if (kind == "extreme_points") return extreme_points(space(require(ref, "space")), count(ref, "count", 1000), seed);
    if (kind == "square_root_band") {
        // Points g with g^2 <= f <= |g| coordinatewise: |g_i| uniform in [f_i, sqrt(f_i)], random sign.
        const Vector f = vector(require(ref, "f"));
        for (const auto& c : f)
            if (c.imag() != 0.0 || c.real() < 0.0 || c.real() > 1.0) config_error("square_root_band needs 0 <= f <= 1");
        Rng rng(seed);
        std::vector<Vector> out;
        for (std::size_t k = 0, m = count(ref, "count", 100); k < m; ++k) {
            Vector g(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) {
                const double lo = f[i].real();
                g[i] = (rng.uniform() < 0.5 ? 1.0 : -1.0) * rng.uniform(lo, std::sqrt(lo));
            }
            out.push_back(std::move(g));
        }
        return out;
    }
    if (kind == "union") {
        std::vector<Vector> out;
        for (const auto& part : require(ref, "parts")) {
            auto more = vectors(part);
            out.insert(out.end(), more.begin(), more.end());
        }
        return out;
    }
    if (kind == "images") {
        const BoundedMap m = map(require(ref, "map"));
        auto out = vectors(require(ref, "of"));
        for (auto& v : out) v = m(v);
        return out;
    }
    config_error("unknown vector set kind '" + kind + "'");
}

// ---- dual functionals ----------------------------------------------------------------

DualFunctional Resolver::dual(const Json& ref) {
    if (ref.is_string())
        return named(duals_, "duals", ref.get<std::string>(), [this](const Json& d) { return build_dual(d); });
    return build_dual(ref);
}

DualFunctional Resolver::build_dual(const Json& def) {
    if (def.is_array()) return {parse_values(def)};
    if (def.is_string()) return dual(def);
    const std::string& kind = kind_of(def);
    if (kind == "values") return {parse_values(require(def, "values"))};
    const Space s = space(require(def, "space"));
    if (kind == "coordinate") {
        if (count(def, "index", 0) >= s.dimension()) config_error("coordinate index out of range");
        return coordinate_functional(s, count(def, "index", 0), parse_scalar(def.value("scale", Json(1.0))));
    }
    if (kind == "uniform_probability") return uniform_probability(s);
    if (kind == "integration") return integration_functional(s);
    if (kind == "norming") return norming_functional(s, vector(require(def, "vector")));
    config_error("unknown dual kind '" + kind + "'");
}

std::vector<DualFunctional> Resolver::duals(const Json& ref) {
    if (ref.is_array()) {
        std::vector<DualFunctional> out;
        for (const auto& e : ref) out.push_back(dual(e));
        return out;
    }
    if (ref.is_string()) {
        const std::string name = ref.get<std::string>();
        if (!construction_.contains("dual_sets") || !construction_.at("dual_sets").contains(name))
            config_error("unknown dual_sets entry '" + name + "'");
        return duals(construction_.at("dual_sets").at(name));
    }
    const std::string& kind = kind_of(ref);
    const Space s = space(require(ref, "space"));
    if (kind == "point_masses") {
        std::vector<DualFunctional> out;
        for (std::size_t i = 0; i < s.dimension(); ++i) out.push_back(coordinate_functional(s, i));
        return out;
    }
    if (kind == "dual_extreme_points") {
        auto pts = dual_extreme_points(s, count(ref, "budget", 4096));
        if (!pts) config_error("dual extreme points are not enumerable for " + s.describe());
        return *pts;
    }
    config_error("unknown dual set kind '" + kind + "'");
}

// ---- maps and functionals -------------------------------------------------------------

BoundedMap Resolver::map(const Json& ref) {
    if (ref.is_string())
        return named(maps_, "maps", ref.get<std::string>(), [this](const Json& d) { return build_map(d); });
    return build_map(ref);
}

BoundedMap Resolver::build_map(const Json& def) {
    const std::string& kind = kind_of(def);
    if (const auto mk = map_kind_from_string(kind)) {
        MapParams p;
        if (def.contains("domain")) p.domain = space(def.at("domain"));
        if (def.contains("codomain")) p.codomain = space(def.at("codomain"));
        if (def.contains("matrix")) p.matrix = parse_matrix(def.at("matrix"));
        if (def.contains("tensor")) p.tensor = parse_values(def.at("tensor"));
        if (def.contains("shape")) {
            const auto& sh = def.at("shape");
            if (!sh.is_array() || sh.size() != 2) config_error("shape must be [left_dim, right_dim]");
            p.shape = BilinearShape{sh[0].get<std::size_t>(), sh[1].get<std::size_t>()};
        }
        p.out_dim = count(def, "out_dim", 0);
        if (def.contains("value")) p.value = vector(def.at("value"));
        if (*mk == MapKind::Bilinear) {
            if (!p.shape) config_error("bilinear map needs a shape");
            return bilinear_map(*p.shape, p.out_dim, p.tensor, parse_field(def));
        }
        return make_map(*mk, p);
    }
    if (kind == "sum") {
        const Json& terms = require(def, "terms");
        if (!terms.is_array() || terms.empty()) config_error("sum needs a non-empty 'terms' array");
        BoundedMap acc = map(terms[0]);
        for (std::size_t i = 1; i < terms.size(); ++i) acc = sum(acc, map(terms[i]));
        return acc;
    }
    if (kind == "scaled") return scaled(map(require(def, "map")), parse_scalar(require(def, "by")));
    if (kind == "rank_one") {
        const ScalarMap xp = functional(require(def, "functional"));
        return rank_one(xp, vector(require(def, "vector")), space(require(def, "codomain")));
    }
    if (kind == "compose_linear") return compose_linear(map(require(def, "outer")), map(require(def, "inner")));
    if (kind == "as_map") return as_map(functional(require(def, "functional")));
    config_error("unknown map kind '" + kind + "'");
}

ScalarMap Resolver::functional(const Json& ref) {
    if (ref.is_string())
        return named(functionals_, "functionals", ref.get<std::string>(),
                     [this](const Json& d) { return build_functional(d); });
    return build_functional(ref);
}

ScalarMap Resolver::build_functional(const Json& def) {
    const std::string& kind = kind_of(def);
    if (kind == "linear") return linear_functional(space(require(def, "space")), dual(require(def, "dual")));
    if (kind == "constant") return constant_scalar(space(require(def, "space")), parse_scalar(require(def, "value")));
    if (kind == "product_sign")
        return product_sign(space(require(def, "space")), count(def, "i", 0), count(def, "j", 1));
    if (kind == "pullback") return pullback(map(require(def, "map")), dual(require(def, "dual")));
    if (kind == "scaled") return scaled(functional(require(def, "functional")), parse_scalar(require(def, "by")));
    if (kind == "normalized")
        return normalized_functional(map(require(def, "map")), dual(require(def, "dual")), make_norm_engine(search_));
    config_error("unknown functional kind '" + kind + "'");
}

// ---- composite records ------------------------------------------------------------------

std::optional<Restriction> Resolver::restriction(const Json& ref) {
    if (ref.is_null()) return std::nullopt;
    const Json* def = &ref;
    if (ref.is_string()) {
        if (!construction_.contains("restrictions") || !construction_.at("restrictions").contains(ref.get<std::string>()))
            config_error("unknown restrictions entry '" + ref.get<std::string>() + "'");
        def = &construction_.at("restrictions").at(ref.get<std::string>());
    }
    const std::string& kind = kind_of(*def);
    if (kind == "positive_orthant") return positive_orthant(space(require(*def, "space")));
    config_error("unknown restriction kind '" + kind + "'");
}

UnitScalarGrid Resolver::grid(const Json& ref) {
    if (ref.is_null() || ref == "real") return UnitScalarGrid::real();
    if (ref == "complex") return UnitScalarGrid::complex(16);
    if (ref.is_object() && ref.contains("complex")) {
        const std::size_t k = count(ref, "complex", 16);
        if (k < 2) config_error("complex grid needs at least 2 points");
        return UnitScalarGrid::complex(k);
    }
    config_error("unknown grid " + ref.dump());
}

SliceFamily Resolver::family(const Json& ref) {
    const Json* def = &ref;
    if (ref.is_string()) {
        if (!construction_.contains("families") || !construction_.at("families").contains(ref.get<std::string>()))
            config_error("unknown families entry '" + ref.get<std::string>() + "'");
        def = &construction_.at("families").at(ref.get<std::string>());
    }
    SliceFamily f{map(require(*def, "base")), duals(require(*def, "functionals")),
                  parse_doubles(require(*def, "epsilons")), grid(def->value("grid", Json())), SliceKind::Strong};
    const std::string kind = text(*def, "kind", "strong");
    if (kind == "weak") f.kind = SliceKind::Weak;
    else if (kind != "strong") config_error("unknown slice kind '" + kind + "'");
    return f;
}

LocalContext Resolver::context(const Json& ref) {
    const Json* def = &ref;
    if (ref.is_string()) {
        if (!construction_.contains("contexts") || !construction_.at("contexts").contains(ref.get<std::string>()))
            config_error("unknown contexts entry '" + ref.get<std::string>() + "'");
        def = &construction_.at("contexts").at(ref.get<std::string>());
    }
    LocalContext ctx;
    ctx.gamma = restriction(def->value("gamma", Json()));
    const Json& w = require(*def, "W");
    if (!w.is_array()) config_error("context W must be an array");
    for (const auto& e : w) ctx.W.push_back(functional(e));
    ctx.Delta = vectors(require(*def, "Delta"));
    return ctx;
}

CertificateProblem Resolver::problem(const Json& ref) {
    const Json* def = &ref;
    if (ref.is_string()) {
        if (!construction_.contains("problems") || !construction_.at("problems").contains(ref.get<std::string>()))
            config_error("unknown problems entry '" + ref.get<std::string>() + "'");
        def = &construction_.at("problems").at(ref.get<std::string>());
    }
    return CertificateProblem{duals(require(*def, "V")),       vectors(require(*def, "B")), map(require(*def, "Psi")),
                              map(require(*def, "Phi")),        vector(require(*def, "z")),  number(*def, "K", 1.0)};
}

}  // namespace slicelab::detail
