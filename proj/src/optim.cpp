#include "slicelab/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicelab/random.hpp"

namespace slicelab {

const char* to_string(SearchMethod m) noexcept {
    switch (m) {
    case SearchMethod::ExtremePoints: return "ExtremePoints";
    case SearchMethod::Multistart: return "Multistart";
    case SearchMethod::Hybrid: return "Hybrid";
    }
    return "?";
}

const char* to_string(SliceSearchStatus s) noexcept {
    return s == SliceSearchStatus::Feasible ? "Feasible" : "InfeasibleOnBudget";
}

const char* to_string(DefectVerdict v) noexcept {
    switch (v) {
    case DefectVerdict::DaugavetHolds: return "DaugavetHolds";
    case DefectVerdict::DaugavetFails: return "DaugavetFails";
    case DefectVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Restriction positive_orthant(const Space& space) {
    Restriction r;
    r.name = "positive_orthant";
    r.contains = [](const Vector& x) {
        return std::all_of(x.begin(), x.end(), [](const Scalar& z) { return z.real() >= 0.0 && z.imag() == 0.0; });
    };
    r.sampler = [space](std::uint64_t seed, std::size_t count) {
        auto pts = sample_sphere(space, seed, count);
        for (auto& v : pts) {
            for (auto& z : v) z = std::abs(z);
        }
        return pts;
    };
    return r;
}

namespace {

constexpr int kLevels = 20;

struct Tracker {
    Tracker(const Objective& fn, const Restriction* g) : f(fn), gamma(g) {}
    const Objective& f;
    const Restriction* gamma;
    std::size_t evaluations = 0;
    bool found = false;
    double best = -std::numeric_limits<double>::infinity();
    Vector best_x;
    SearchMethod method = SearchMethod::ExtremePoints;

    // Evaluates x if it lies in Gamma; returns the value or nullopt.
    std::optional<double> eval(const Vector& x, SearchMethod origin) {
        if (gamma && !gamma->contains(x)) return std::nullopt;
        const double v = f(x);
        ++evaluations;
        if (std::isnan(v)) return std::nullopt;
        if (!found || v > best || (v == best && lex_less(x, best_x))) {
            found = true;
            best = v;
            best_x = x;
            method = origin;
        }
        return v;
    }
};

void pattern_search(const Space& domain, Tracker& t, Vector x, double fx, std::size_t budget, SearchMethod origin) {
    const std::size_t n = domain.dimension();
    const auto hull = domain.box_hull();
    std::vector<Scalar> dirs{1.0, -1.0};
    if (domain.field() == Field::Complex) {
        dirs.emplace_back(0.0, 1.0);
        dirs.emplace_back(0.0, -1.0);
    }
    std::size_t used = 0;
    double scale = 0.5;
    for (int level = 0; level < kLevels && used < budget; ++level, scale *= 0.5) {
        bool improved = true;
        while (improved && used < budget) {
            improved = false;
            for (std::size_t i = 0; i < n && used < budget; ++i) {
                for (const auto& d : dirs) {
                    if (used >= budget) break;
                    Vector y = x;
                    y[i] += d * (scale * hull[i]);
                    y = project_to_ball(domain, std::move(y));
                    const auto fy = t.eval(y, origin);
                    ++used;
                    if (fy && *fy > fx) {
                        x = std::move(y);
                        fx = *fy;
                        improved = true;
                    }
                }
            }
        }
    }
}

}  // namespace

MaximizeResult maximize_on_ball(const Space& domain, const Objective& f, const Restriction* gamma,
                                const SearchOptions& opts, const std::vector<Vector>& candidates) {
    const std::size_t budget = std::max<std::size_t>(opts.budget, 1);
    Tracker t{f, gamma};
    const std::size_t n = domain.dimension();

    // Phase 1: caller candidates, then extreme points (up to half the budget).
    std::vector<std::pair<double, const Vector*>> seeded;
    for (const auto& c : candidates) {
        require_member(domain, c);
        if (const auto v = t.eval(c, SearchMethod::Hybrid)) seeded.emplace_back(*v, &c);
    }
    const auto ext = extreme_points(domain, std::max<std::size_t>(budget / 2, 1), derive_seed(opts.seed, 1));
    for (const auto& e : ext) (void)t.eval(e, SearchMethod::ExtremePoints);

    // Phase 2: pattern search from caller candidates, Gamma samples and sphere samples.
    const std::size_t per_start = (domain.field() == Field::Complex ? 4 : 2) * n * kLevels;
    for (const auto& [v, c] : seeded) {
        if (t.evaluations >= budget) break;
        pattern_search(domain, t, *c, v, std::min(per_start, budget - t.evaluations), SearchMethod::Hybrid);
    }
    if (t.evaluations < budget) {
        const std::size_t remaining = budget - t.evaluations;
        const std::size_t starts = std::max<std::size_t>(remaining / per_start, 1);
        std::vector<Vector> pts;
        if (gamma && gamma->sampler) {
            pts = gamma->sampler(derive_seed(opts.seed, 2), starts);
        } else {
            pts = sample_sphere(domain, derive_seed(opts.seed, 2), gamma ? 4 * starts : starts);
        }
        std::size_t launched = 0;
        for (auto& p : pts) {
            if (launched >= starts || t.evaluations >= budget) break;
            p = project_to_ball(domain, std::move(p));
            const auto v = t.eval(p, SearchMethod::Multistart);
            if (!v) continue;
            ++launched;
            pattern_search(domain, t, p, *v, std::min(per_start, budget - std::min(budget, t.evaluations)),
                           SearchMethod::Multistart);
        }
    }
    MaximizeResult r;
    r.found = t.found;
    r.value = t.found ? t.best : 0.0;
    r.witness = t.found ? t.best_x : Vector(n, 0.0);
    r.evaluations = t.evaluations;
    r.method = t.method;
    return r;
}

namespace {

constexpr std::size_t kEnumerationCap = std::size_t{1} << 18;

Matrix column_block(const Matrix& T, std::size_t from, std::size_t count) {
    Matrix B(T.rows, count);
    for (std::size_t r = 0; r < T.rows; ++r) {
        for (std::size_t c = 0; c < count; ++c) B(r, c) = T(r, from + c);
    }
    return B;
}

// Functional x -> <y*, T x> as a dual vector on the domain.
DualFunctional adjoint(const Matrix& T, const Vector& ystar) {
    Vector g(T.cols, 0.0);
    for (std::size_t j = 0; j < T.cols; ++j) {
        for (std::size_t i = 0; i < T.rows; ++i) g[j] += ystar[i] * std::conj(T(i, j));
    }
    return DualFunctional{g};
}

}  // namespace

std::optional<OperatorNorm> linear_operator_norm(const Matrix& T, const Space& domain, const Space& codomain) {
    if (domain.is_direct_sum()) {
        const std::size_t nl = domain.left().dimension();
        const auto a = linear_operator_norm(column_block(T, 0, nl), domain.left(), codomain);
        const auto b = linear_operator_norm(column_block(T, nl, T.cols - nl), domain.right(), codomain);
        if (!a || !b) return std::nullopt;
        if (a->value >= b->value) return OperatorNorm{a->value, embed_left(domain, a->witness)};
        return OperatorNorm{b->value, embed_right(domain, b->witness)};
    }
    if (const auto count = domain.extreme_point_count(); count && *count <= kEnumerationCap) {
        OperatorNorm best{-1.0, {}};
        for (const auto& e : extreme_points(domain, *count)) {
            const double v = codomain.norm(T.apply(e));
            if (v > best.value || (v == best.value && lex_less(e, best.witness))) best = {v, e};
        }
        return best;
    }
    auto dual_route = [&](const std::vector<DualFunctional>& ystars) {
        OperatorNorm best{-1.0, {}};
        DualFunctional best_g;
        for (const auto& y : ystars) {
            const DualFunctional g = adjoint(T, y.coords);
            const double v = domain.dual_norm(g.coords);
            if (v > best.value) {
                best.value = v;
                best_g = g;
            }
        }
        best.witness = norming_vector(domain, best_g);
        return best;
    };
    if (codomain.is_sup()) {
        std::vector<DualFunctional> rows;
        for (std::size_t i = 0; i < codomain.dimension(); ++i) rows.push_back(coordinate_functional(codomain, i));
        return dual_route(rows);
    }
    if (const auto ystars = dual_extreme_points(codomain, kEnumerationCap)) return dual_route(*ystars);
    return std::nullopt;
}

UpperBound analytic_upper_bound(const BoundedMap& map) {
    UpperBound best;
    auto offer = [&](double v, const char* source, std::optional<Vector> w = std::nullopt) {
        if (!best.value || v < *best.value) {
            best.value = v;
            best.source = source;
            best.witness = std::move(w);
        }
    };
    if (map.traits().is_linear) {
        const Matrix T = linear_matrix(map);
        if (const auto op = linear_operator_norm(T, map.domain(), map.codomain())) {
            offer(op->value, "linear", op->witness);
        } else {
            // x = sum x_j e_j with |x_j| <= box_j, so ||T|| <= sum box_j ||T e_j||.
            const auto box = map.domain().box_hull();
            double cols = 0.0;
            for (std::size_t j = 0; j < T.cols; ++j) cols += box[j] * map.codomain().norm(T.apply(basis_vector(T.cols, j)));
            offer(cols, "columns");
            const auto is_l2 = [](const Space& s) {
                const auto* lp = std::get_if<LpNorm>(&s.kind());
                return lp && lp->p == 2.0;
            };
            if (is_l2(map.domain()) && is_l2(map.codomain())) {
                // Hilbert-Schmidt norm; exact for rank one.
                double fro = 0.0;
                for (const auto& v : T.data) fro += std::norm(v);
                offer(std::sqrt(fro), "frobenius");
            }
        }
    }
    if (map.traits().interval_eval && map.domain().field() == Field::Real) {
        const Box img = map.traits().interval_eval(symmetric_box(map.domain().box_hull()));
        Vector m(img.size());
        for (std::size_t i = 0; i < img.size(); ++i) m[i] = img[i].magnitude();
        // All supported norms are monotone in the moduli of the coordinates.
        offer(map.codomain().norm(m), "interval");
    }
    if (map.traits().norm_bound) offer(*map.traits().norm_bound, "declared");
    return best;
}

NormEstimate sup_norm(const BoundedMap& map, const SearchOptions& opts, const Restriction* gamma) {
    if (opts.budget < map.domain().dimension()) {
        throw LabError(ErrorCode::InvalidParams, "budget below the domain dimension");
    }
    const UpperBound ub = analytic_upper_bound(map);
    std::vector<Vector> candidates;
    if (ub.witness) candidates.push_back(*ub.witness);
    const Space& cod = map.codomain();
    const auto r = maximize_on_ball(map.domain(), [&](const Vector& x) { return cod.norm(map(x)); }, gamma, opts,
                                    candidates);
    if (!r.found) throw LabError(ErrorCode::EmptyRestriction, "no point of " + (gamma ? gamma->name : "the ball"));
    NormEstimate est;
    est.lower_bound = r.value;
    est.witness = r.witness;
    est.evaluations = r.evaluations;
    est.method = r.method;
    est.seed = opts.seed;
    if (ub.value) {
        // Rounding in different summation orders can put an exact bound a few ulps low.
        est.upper_bound = std::max(*ub.value, r.value);
        est.upper_source = ub.source;
    }
    return est;
}

NormEstimate sup_norm(const ScalarMap& p, const SearchOptions& opts, const Restriction* gamma) {
    return sup_norm(as_map(p), opts, gamma);
}

ScalarNormEngine make_norm_engine(const SearchOptions& opts) {
    return [opts](const ScalarMap& p) {
        const NormEstimate e = sup_norm(p, opts);
        return NormBound{e.lower_bound, e.upper_bound};
    };
}

SliceSearchResult sup_on_slice(const Objective& objective, const SliceSpec& slice, const Restriction* gamma,
                               const SearchOptions& opts, const std::vector<Vector>& hints) {
    const Space& domain = slice.functional.domain();
    SliceSearchResult out;
    out.seed = opts.seed;
    bool have = false;
    auto consider = [&](const Vector& x, double v) {
        if (!have || v > out.value || (v == out.value && lex_less(x, out.witness))) {
            have = true;
            out.value = v;
            out.witness = x;
        }
    };

    std::vector<Vector> candidates = hints;
    // For linear functionals the norming point of omega p lies in every nonempty slice.
    if (const auto& lin = slice.functional.traits().linear) {
        DualFunctional g = *lin;
        if (slice.kind == SliceKind::Strong) {
            for (auto& c : g.coords) c *= std::conj(slice.omega);
        }
        candidates.push_back(norming_vector(domain, g));
    }

    static constexpr double kPenalties[] = {1.0, 10.0, 100.0, 1000.0};
    const std::size_t stage_budget = std::max<std::size_t>(opts.budget / std::size(kPenalties), domain.dimension());
    std::size_t stage = 0;
    for (double lambda : kPenalties) {
        const auto penalized = [&](const Vector& x) {
            const double v = objective(x);
            const double d = slice.vacuous() ? 0.0 : slice_deficiency(slice, x);
            if (d <= 0.0) consider(x, v);
            return v - lambda * std::max(0.0, d);
        };
        const auto r = maximize_on_ball(domain, penalized, gamma, {stage_budget, derive_seed(opts.seed, 10 + stage)},
                                        candidates);
        out.evaluations += r.evaluations;
        ++stage;
    }
    out.status = have ? SliceSearchStatus::Feasible : SliceSearchStatus::InfeasibleOnBudget;
    if (!have) out.witness = Vector(domain.dimension(), 0.0);
    return out;
}

namespace {

DefectReport assemble(NormEstimate np, NormEstimate nq, NormEstimate ns, std::optional<double> tol_override) {
    DefectReport r;
    const bool exact = np.attained() && nq.attained() && ns.attained();
    r.tol = tol_override.value_or(exact ? 1e-6 : 1e-3);
    const double target = np.lower_bound + nq.lower_bound;
    r.defect = target - ns.lower_bound;
    if (ns.upper_bound) r.defect_lo = std::max(0.0, target - *ns.upper_bound);
    if (np.upper_bound && nq.upper_bound) r.defect_hi = *np.upper_bound + *nq.upper_bound - ns.lower_bound;
    r.witness = ns.witness;
    if (ns.lower_bound >= target - r.tol) {
        r.verdict = DefectVerdict::DaugavetHolds;
    } else if (ns.upper_bound && *ns.upper_bound < target - r.tol) {
        r.verdict = DefectVerdict::DaugavetFails;
        r.gap = target - *ns.upper_bound;
    } else {
        r.verdict = DefectVerdict::Inconclusive;
    }
    r.norm_phi = std::move(np);
    r.norm_psi = std::move(nq);
    r.norm_sum = std::move(ns);
    return r;
}

void require_compatible(const BoundedMap& phi, const BoundedMap& psi) {
    if (!(phi.domain() == psi.domain()) || !(phi.codomain() == psi.codomain())) {
        throw LabError(ErrorCode::DimensionMismatch, phi.name() + " and " + psi.name() + " act between different spaces");
    }
}

}  // namespace

DefectReport defect(const BoundedMap& phi, const BoundedMap& psi, const DefectOptions& opts, const Restriction* gamma) {
    require_compatible(phi, psi);
    NormEstimate np = sup_norm(phi, opts.search, gamma);
    NormEstimate nq = sup_norm(psi, opts.search, gamma);
    NormEstimate ns = sup_norm(sum(phi, psi), opts.search, gamma);
    return assemble(std::move(np), std::move(nq), std::move(ns), opts.tol);
}

AltDefectReport alt_defect(const BoundedMap& phi, const BoundedMap& psi, const UnitScalarGrid& grid,
                           const DefectOptions& opts, const Restriction* gamma) {
    require_compatible(phi, psi);
    const NormEstimate np = sup_norm(phi, opts.search, gamma);
    const NormEstimate nq = sup_norm(psi, opts.search, gamma);
    AltDefectReport out;
    bool have = false;
    for (const Scalar& w : grid.points()) {
        // ||omega Psi|| = ||Psi||, so only the sum needs a fresh search.
        NormEstimate ns = sup_norm(sum(phi, scaled(psi, w)), opts.search, gamma);
        DefectReport r = assemble(np, nq, std::move(ns), opts.tol);
        out.defect_by_omega.emplace_back(w, r.defect);
        if (!have || r.defect < out.best.defect) {
            have = true;
            out.best_omega = w;
            out.best = std::move(r);
        }
    }
    return out;
}

}  // namespace slicelab
