#include "slicelab/daugavet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slicelab/random.hpp"

namespace slicelab {

const char* to_string(QuotientStatus s) noexcept {
    switch (s) {
    case QuotientStatus::Surjective: return "Surjective";
    case QuotientStatus::NotSurjective: return "NotSurjective";
    case QuotientStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(LocalStatus s) noexcept {
    switch (s) {
    case LocalStatus::Holds: return "Holds";
    case LocalStatus::Fails: return "Fails";
    case LocalStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(AdmissibilityStatus s) noexcept {
    switch (s) {
    case AdmissibilityStatus::Admissible: return "Admissible";
    case AdmissibilityStatus::NotAdmissible: return "NotAdmissible";
    case AdmissibilityStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

constexpr double kExact = 1e-12;

double unit_norm_or_throw(const Space& space, const Vector& y) {
    require_member(space, y);
    const double ny = norm(space, y);
    if (ny == 0.0) throw LabError(ErrorCode::ZeroVector, "y must be nonzero");
    return ny;
}

// Rotates x so that p(x) becomes real and nonnegative, if that does not lower f.
// Resolves the x / -x ambiguity of odd problems in favour of omega = 1.
Vector prefer_positive(const Vector& x, const ScalarMap& p, const Objective& f, double fx) {
    const Scalar v = p(x);
    if (v.real() >= 0.0 && v.imag() == 0.0) return x;
    const Vector r = std::conj(phase(v)) * x;
    const Scalar rv = p(r);
    if (rv.real() > v.real() && f(r) >= fx) return r;
    return x;
}

// Among maximizers, structured candidates (in order) win over the search's lexicographic tie-break.
Vector prefer_candidate(const Vector& x, double fx, const std::vector<Vector>& structured, const Objective& f) {
    for (const auto& c : structured) {
        if (f(c) >= fx) return c;
    }
    return x;
}

std::vector<Vector> with_negations(const std::vector<Vector>& pts) {
    std::vector<Vector> out;
    for (const auto& p : pts) {
        out.push_back(p);
        out.push_back(-p);
    }
    return out;
}

}  // namespace

// ---- rank-one characterizations ---------------------------------------------

WitnessSearch extract_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y, double eps,
                              const SearchOptions& opts) {
    const Space& cod = phi.codomain();
    const double ny = unit_norm_or_throw(cod, y);
    if (!(xp.domain() == phi.domain())) throw LabError(ErrorCode::DimensionMismatch, "x' and Phi differ in domain");
    if (!(eps >= 0.0)) throw LabError(ErrorCode::InvalidParams, "eps must be nonnegative");
    const Vector yhat = (1.0 / ny) * y;

    WitnessSearch out;
    const NormEstimate np = sup_norm(phi, opts);
    out.phi_norm = np.lower_bound;
    out.target = np.lower_bound + 1.0 - eps / 2.0;

    const Objective f = [&](const Vector& x) { return cod.norm(phi(x) + xp(x) * yhat); };
    std::vector<Vector> structured;
    if (const auto& inv = phi.traits().inverse_oracle) {
        Vector x = inv(yhat);
        if (in_ball(phi.domain(), x)) structured.push_back(std::move(x));
    }
    std::vector<Vector> candidates = structured;
    candidates.push_back(np.witness);
    if (const auto& lin = xp.traits().linear) candidates.push_back(norming_vector(phi.domain(), *lin));
    const auto r = maximize_on_ball(phi.domain(), f, nullptr, {opts.budget, derive_seed(opts.seed, 20)}, candidates);
    out.evaluations = np.evaluations + r.evaluations;
    out.best = r.value;
    out.best_x = prefer_positive(prefer_candidate(r.witness, r.value, structured, f), xp, f, r.value);
    if (r.value < out.target) return out;

    CharacterizationWitness w;
    w.x = out.best_x;
    const Scalar v = xp(w.x);
    w.omega = std::conj(phase(v));
    w.slice_value = (w.omega * v).real();
    w.attained = cod.norm(w.omega * phi(w.x) + yhat);
    w.epsilon = eps;
    w.phi_norm = np.lower_bound;
    if (w.slice_value >= 1.0 - eps && w.attained >= w.phi_norm + 1.0 - eps) out.witness = std::move(w);
    return out;
}

CertifiedBound certify_from_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y,
                                    const CharacterizationWitness& w) {
    const Space& cod = phi.codomain();
    const double ny = unit_norm_or_throw(cod, y);
    require_member(phi.domain(), w.x);
    if (!in_ball(phi.domain(), w.x)) throw LabError(ErrorCode::StaleWitness, "witness point left the unit ball");
    if (std::abs(std::abs(w.omega) - 1.0) > kExact) throw LabError(ErrorCode::StaleWitness, "omega is not unimodular");
    const Vector yhat = (1.0 / ny) * y;
    const Scalar v = xp(w.x);
    const Vector px = phi(w.x);
    const double slice_value = (w.omega * v).real();
    const double attained = cod.norm(w.omega * px + yhat);
    if (slice_value < 1.0 - w.epsilon - kExact || attained < w.phi_norm + 1.0 - w.epsilon - kExact) {
        throw LabError(ErrorCode::StaleWitness, "witness fails its slice or norm inequality");
    }
    CertifiedBound b;
    b.value = cod.norm(px + v * y);
    b.rotation_gap = std::abs(1.0 - w.omega * v);
    b.rotation_bound = std::sqrt(2.0 * w.epsilon);
    // ||Phi(x) + x'(x) y|| >= ||omega Phi(x) + y|| - |1 - omega x'(x)| ||y||, and
    // ||omega Phi(x) + y|| >= ||omega Phi(x) + y/||y|| || - | ||y|| - 1 |.
    b.chain_floor = attained - std::abs(ny - 1.0) - b.rotation_bound * ny;
    return b;
}

AltWitnessSearch extract_alt_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y, double eps,
                                     const UnitScalarGrid& grid, const SearchOptions& opts) {
    const Space& cod = phi.codomain();
    const double ny = unit_norm_or_throw(cod, y);
    if (!(xp.domain() == phi.domain())) throw LabError(ErrorCode::DimensionMismatch, "x' and Phi differ in domain");
    if (!(eps >= 0.0)) throw LabError(ErrorCode::InvalidParams, "eps must be nonnegative");
    const Vector yhat = (1.0 / ny) * y;

    AltWitnessSearch out;
    const NormEstimate np = sup_norm(phi, opts);
    out.phi_norm = np.lower_bound;
    out.target = np.lower_bound + 1.0 - eps / 2.0;
    out.evaluations = np.evaluations;

    bool have = false;
    Vector best_x;
    Scalar best_w = 1.0;
    std::uint64_t stream = 30;
    for (const Scalar& w : grid.points()) {
        const ScalarMap rotated = scaled(xp, w);
        const Objective f = [&](const Vector& x) { return cod.norm(phi(x) + rotated(x) * yhat); };
        std::vector<Vector> candidates{np.witness};
        if (const auto& lin = rotated.traits().linear) candidates.push_back(norming_vector(phi.domain(), *lin));
        const auto r = maximize_on_ball(phi.domain(), f, nullptr, {opts.budget, derive_seed(opts.seed, stream++)},
                                        candidates);
        out.evaluations += r.evaluations;
        if (!have || r.value > out.best) {
            have = true;
            out.best = r.value;
            best_x = prefer_positive(r.witness, rotated, f, r.value);
            best_w = w;
        }
    }
    if (out.best < out.target) return out;

    AltWitness a;
    a.x = best_x;
    a.grid_omega = best_w;
    const Scalar v = xp(a.x);
    // The one-map construction applied to omega x' gives omega2; omega1 = omega2 omega.
    a.omega2 = std::conj(phase(best_w * v));
    a.omega1 = a.omega2 * best_w;
    a.slice_value = (a.omega1 * v).real();
    a.modulus = std::abs(v);
    a.attained = cod.norm(a.omega2 * phi(a.x) + yhat);
    a.epsilon = eps;
    a.phi_norm = np.lower_bound;
    if (a.slice_value >= 1.0 - eps && a.attained >= a.phi_norm + 1.0 - eps) out.witness = std::move(a);
    return out;
}

// ---- quotient maps ----------------------------------------------------------

QuotientVerdict quotient_check(const BoundedMap& phi, const SearchOptions& opts) {
    const Space& dom = phi.domain();
    const Space& cod = phi.codomain();
    const auto& t = phi.traits();
    const std::size_t count = std::clamp<std::size_t>(opts.budget / 8, 64, 4096);
    QuotientVerdict v;

    if (t.inverse_oracle) {
        v.method = "inverse_oracle";
        auto pts = extreme_points(cod, count, derive_seed(opts.seed, 40));
        const auto inner = sample_ball(cod, derive_seed(opts.seed, 41), count);
        pts.insert(pts.end(), inner.begin(), inner.end());
        v.max_inverse_excess = -std::numeric_limits<double>::infinity();
        for (const auto& y : pts) {
            const Vector x = t.inverse_oracle(y);
            const double ny = cod.norm(y);
            const double nx = dom.norm(x);
            const double err = cod.norm(phi(x) - y);
            ++v.samples;
            v.max_roundtrip_error = std::max(v.max_roundtrip_error, err);
            v.max_inverse_excess = std::max(v.max_inverse_excess, nx - ny);
            const bool ball_ok = nx <= 1.0 + kExact && (ny >= 1.0 - kExact || nx < 1.0);
            if (err > 1e-9 || !ball_ok) {
                // The oracle itself is wrong; nothing is certified either way.
                v.status = QuotientStatus::Inconclusive;
                v.witness = y;
                return v;
            }
        }
        v.status = QuotientStatus::Surjective;
        return v;
    }

    if (const UpperBound ub = analytic_upper_bound(phi); ub.value && *ub.value < 1.0 - 1e-9) {
        v.method = "norm_bound";
        v.status = QuotientStatus::NotSurjective;
        const auto e = extreme_points(cod, 1);
        v.witness = (1.0 / cod.norm(e.front())) * e.front();
        v.witness_gap = 1.0 - *ub.value;
        return v;
    }

    if (t.interval_eval && dom.field() == Field::Real && cod.field() == Field::Real) {
        const Box img = t.interval_eval(symmetric_box(dom.box_hull()));
        double best_gap = 0.0;
        for (const auto& e : extreme_points(cod, count, derive_seed(opts.seed, 42))) {
            const Vector y = (1.0 / cod.norm(e)) * e;
            Vector d(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                d[i] = std::max({0.0, img[i].lo - y[i].real(), y[i].real() - img[i].hi});
            }
            ++v.samples;
            // Every supported norm is monotone in coordinate moduli, so this bounds the distance to the box.
            const double gap = cod.norm(d);
            if (gap > best_gap) {
                best_gap = gap;
                v.witness = y;
            }
        }
        if (best_gap > 1e-9) {
            v.method = "interval_image";
            v.status = QuotientStatus::NotSurjective;
            v.witness_gap = best_gap;
            return v;
        }
    }

    v.method = "covering";
    std::vector<Vector> image;
    const std::size_t m = std::min<std::size_t>(count, 512);
    for (const auto& x : extreme_points(dom, m, derive_seed(opts.seed, 43))) image.push_back(phi(x));
    for (const auto& x : sample_ball(dom, derive_seed(opts.seed, 44), m)) image.push_back(phi(x));
    for (const auto& y : sample_sphere(cod, derive_seed(opts.seed, 45), m)) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& z : image) nearest = std::min(nearest, cod.norm(y - z));
        if (nearest > v.covering_radius) {
            v.covering_radius = nearest;
            v.witness = y;
        }
        ++v.samples;
    }
    v.status = QuotientStatus::Inconclusive;
    return v;
}

// ---- local properties --------------------------------------------------------

LocalTable local_daugavet_check(const BoundedMap& phi, const LocalContext& ctx, const LocalOptions& opts) {
    const Restriction* gamma = ctx.restriction();
    const Space& dom = phi.domain();
    const Space& cod = phi.codomain();
    LocalTable table;
    table.epsilon = opts.epsilon;
    const NormEstimate ng = sup_norm(phi, opts.search, gamma);
    const NormEstimate nb = gamma ? sup_norm(phi, opts.search) : ng;
    table.phi_norm_gamma = ng.lower_bound;
    table.phi_norm_ball = nb.lower_bound;
    table.norm_determining = std::abs(ng.lower_bound - nb.lower_bound) <= opts.tol;
    if (std::abs(ng.lower_bound - 1.0) > opts.tol) {
        throw LabError(ErrorCode::InvalidParams, phi.name() + " does not have norm one on Gamma");
    }

    std::uint64_t stream = 100;
    for (std::size_t d = 0; d < ctx.Delta.size(); ++d) {
        const Vector& y = ctx.Delta[d];
        require_member(cod, y);
        if (std::abs(cod.norm(y) - 1.0) > 1e-9) throw LabError(ErrorCode::InvalidParams, "Delta must lie on the sphere");
    }
    for (std::size_t w = 0; w < ctx.W.size(); ++w) {
        const ScalarMap& xp = ctx.W[w];
        for (std::size_t d = 0; d < ctx.Delta.size(); ++d) {
            const Vector& y = ctx.Delta[d];
            LocalRow row;
            row.w_index = w;
            row.delta_index = d;
            const Objective f = [&](const Vector& x) { return cod.norm(phi(x) + xp(x) * y); };
            std::vector<Vector> structured;
            if (phi.traits().inverse_oracle) {
                for (const Vector& t : {y, Vector(-y)}) {
                    Vector x = phi.traits().inverse_oracle(t);
                    if (in_ball(dom, x) && (!gamma || gamma->contains(x))) structured.push_back(std::move(x));
                }
            }
            if (dom.is_sup() && dom.dimension() == y.size()) {
                // The sign pattern of y: the natural guess when Phi acts coordinatewise.
                Vector x(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] == Scalar(0.0) ? Scalar(1.0) : phase(y[i]);
                if (dom.field() == Field::Complex || std::all_of(x.begin(), x.end(), [](const Scalar& c) { return c.imag() == 0.0; })) {
                    if (!gamma || gamma->contains(x)) structured.push_back(std::move(x));
                }
            }
            std::vector<Vector> candidates = structured;
            candidates.push_back(ng.witness);
            const auto r = maximize_on_ball(dom, f, gamma, {opts.search.budget, derive_seed(opts.search.seed, stream++)},
                                            candidates);
            if (!r.found) throw LabError(ErrorCode::EmptyRestriction, "no point of Gamma");
            row.estimate = r.value;
            row.witness = prefer_candidate(r.witness, r.value, structured, f);
            row.upper_bound = analytic_upper_bound(sum(phi, rank_one(xp, y, cod))).value;
            if (row.estimate >= 2.0 - opts.tol) {
                row.status = LocalStatus::Holds;
            } else if (row.upper_bound && *row.upper_bound < 2.0 - opts.tol) {
                row.status = LocalStatus::Fails;
            }
            const Scalar v = xp(row.witness);
            row.omega = std::conj(phase(v));
            row.slice_value = (row.omega * v).real();
            row.attained = cod.norm(row.omega * phi(row.witness) + y);
            row.slice_form_ok = row.slice_value >= 1.0 - opts.epsilon && row.attained >= 2.0 - 2.0 * opts.epsilon;
            table.rows.push_back(std::move(row));
        }
    }
    for (const auto& r : table.rows) {
        if (r.status == LocalStatus::Fails) {
            table.overall = LocalStatus::Fails;
            break;
        }
        if (r.status == LocalStatus::Inconclusive) table.overall = LocalStatus::Inconclusive;
    }
    return table;
}

SmallImageVerdict small_image_check(const BoundedMap& psi, const ScalarMap& xp, double delta, const Vector& y,
                                    double eps, const Restriction* gamma, const UnitScalarGrid& grid,
                                    const SearchOptions& opts) {
    if (!(delta > 0.0) || !(eps > 0.0)) throw LabError(ErrorCode::InvalidParams, "delta and eps must be positive");
    require_member(psi.codomain(), y);
    const Space& cod = psi.codomain();
    SmallImageVerdict out;
    std::uint64_t stream = 200;
    bool inconclusive = false;
    for (const Scalar& w : grid.points()) {
        const Vector centre = std::conj(w) * y;
        const SliceSpec slice = make_slice(xp, std::min(delta, 1.0), w);
        const auto r = sup_on_slice([&](const Vector& x) { return cod.norm(psi(x) - centre); }, slice, gamma,
                                    {opts.budget, derive_seed(opts.seed, stream++)});
        SmallImageCell cell;
        cell.omega = w;
        cell.feasible = r.status == SliceSearchStatus::Feasible;
        if (cell.feasible) {
            cell.max_distance = r.value;
            cell.witness = r.witness;
            if (r.value >= eps && out.status != InclusionStatus::Violated) {
                out.status = InclusionStatus::Violated;
                out.witness = r.witness;
                out.omega = w;
            }
            if (r.value > eps - 1e-9) inconclusive = true;
            out.max_distance = std::max(out.max_distance, r.value);
        }
        out.cells.push_back(std::move(cell));
    }
    if (out.status == InclusionStatus::Violated) return out;
    out.vacuous = std::none_of(out.cells.begin(), out.cells.end(), [](const SmallImageCell& c) { return c.feasible; });
    out.status = inconclusive ? InclusionStatus::Inconclusive : InclusionStatus::HoldsOnGrid;
    return out;
}

T1Report theorem_T1_pipeline(const BoundedMap& phi, const BoundedMap& psi, const LocalContext& ctx,
                             const PipelineParams& params, const SearchOptions& opts) {
    const double eps = params.epsilon;
    if (!(eps > 0.0 && eps < 1.0)) throw LabError(ErrorCode::InvalidParams, "eps must lie in (0, 1)");
    if (!(phi.domain() == psi.domain()) || !(phi.codomain() == psi.codomain())) {
        throw LabError(ErrorCode::DimensionMismatch, "Phi and Psi act between different spaces");
    }
    const Restriction* gamma = ctx.restriction();
    const Space& cod = phi.codomain();
    std::vector<double> deltas = params.deltas;
    if (deltas.empty()) deltas = {eps / 2, eps / 4, eps / 8};

    T1Report rep;
    rep.epsilon = eps;
    rep.local = local_daugavet_check(phi, ctx, {opts, eps, 1e-6});

    // Hypothesis: some (x'0, y, delta) whose slices Psi maps into B_eps(conj(omega) y).
    const LocalRow* chosen = nullptr;
    std::uint64_t stream = 300;
    for (const auto& row : rep.local.rows) {
        if (row.status != LocalStatus::Holds) continue;
        for (double delta : deltas) {
            auto v = small_image_check(psi, ctx.W[row.w_index], delta, ctx.Delta[row.delta_index], eps, gamma,
                                       params.grid, {opts.budget, derive_seed(opts.seed, stream++)});
            const bool ok = v.status == InclusionStatus::HoldsOnGrid && !v.vacuous;
            rep.small_image = std::move(v);
            if (ok) {
                chosen = &row;
                rep.delta = delta;
                break;
            }
        }
        if (chosen) break;
    }
    if (!chosen) {
        rep.failed_stage = rep.small_image ? "small-image" : "local-daugavet";
        rep.defect = defect(phi, psi, {opts, std::nullopt}, gamma);
        return rep;
    }
    rep.w_index = chosen->w_index;
    rep.delta_index = chosen->delta_index;
    const ScalarMap& xp = ctx.W[rep.w_index];
    const Vector& y = ctx.Delta[rep.delta_index];

    // Slice form of the local property on S(omega0 x'0, delta).
    double best = -1.0;
    const auto hints = with_negations({chosen->witness});
    for (const Scalar& w : params.grid.points()) {
        const SliceSpec slice = make_slice(xp, std::min(rep.delta, 1.0), w);
        const auto r = sup_on_slice([&](const Vector& x) { return cod.norm(w * phi(x) + y); }, slice, gamma,
                                    {opts.budget, derive_seed(opts.seed, stream++)}, hints);
        if (r.status == SliceSearchStatus::Feasible && r.value > best) {
            best = r.value;
            rep.witness = r.witness;
            rep.omega = w;
        }
    }
    if (best < 2.0 - 2.0 * eps) {
        rep.failed_stage = "corollary-witness";
        rep.defect = defect(phi, psi, {opts, std::nullopt}, gamma);
        return rep;
    }
    const Vector& x0 = rep.witness;
    const double dist = cod.norm(psi(x0) - std::conj(rep.omega) * y);
    rep.chain_floor = best - dist;
    rep.lower_bound = cod.norm(phi(x0) + psi(x0));
    rep.certified = rep.lower_bound >= 2.0 - 3.0 * eps && rep.chain_floor >= 2.0 - 3.0 * eps;
    if (!rep.certified) rep.failed_stage = "chain";
    rep.defect = defect(phi, psi, {opts, std::nullopt}, gamma);
    return rep;
}

// ---- exposed slices -------------------------------------------------------------

ExposedSlice exposed_slice(const Space& space, const std::vector<Vector>& hull_points, double eps,
                           std::size_t budget) {
    if (hull_points.empty()) throw LabError(ErrorCode::InvalidParams, "no hull points");
    if (!(eps > 0.0 && eps < 1.0)) throw LabError(ErrorCode::InvalidParams, "eps must lie in (0, 1)");
    const std::size_t n = hull_points.size();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = norm(space, hull_points[i]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });
    if (norms[order.front()] <= 1.0 - eps) throw LabError(ErrorCode::NoExposedPoint, "hull lies inside the (1 - eps) ball");

    std::vector<DualFunctional> shared;
    if (const auto ext = dual_extreme_points(space, std::min<std::size_t>(budget, 4096))) shared = *ext;

    const double r = eps / 8.0;
    constexpr std::size_t kVertexTries = 16;
    for (std::size_t k = 0; k < std::min(n, kVertexTries); ++k) {
        const std::size_t i0 = order[k];
        if (norms[i0] <= 1.0 - eps) break;
        const Vector& y0 = hull_points[i0];
        std::vector<double> dist(n);
        double D = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dist[i] = norm(space, hull_points[i] - y0);
            D = std::max(D, dist[i]);
        }
        // Supporting functional candidates: the norming functional of y0, of y0 minus
        // its nearest far points, and the finite dual extreme set when available.
        std::vector<DualFunctional> zs{norming_functional(space, y0)};
        std::vector<std::size_t> far;
        for (std::size_t i = 0; i < n; ++i) {
            if (dist[i] >= r) far.push_back(i);
        }
        std::stable_sort(far.begin(), far.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
        for (std::size_t j = 0; j < std::min<std::size_t>(far.size(), 8); ++j) {
            zs.push_back(norming_functional(space, y0 - hull_points[far[j]]));
        }
        zs.insert(zs.end(), shared.begin(), shared.end());

        std::optional<ExposedSlice> best;
        for (auto z : zs) {
            const double dn = dual_norm(space, z);
            if (!(dn > 0.0)) continue;
            for (auto& c : z.coords) c /= dn;
            const double a = dual_pair(z, y0).real();
            if (!(a > 0.0)) continue;
            double top = -std::numeric_limits<double>::infinity();
            double far_top = -std::numeric_limits<double>::infinity();
            double near_radius = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v = dual_pair(z, hull_points[i]).real();
                top = std::max(top, v);
                if (dist[i] >= r) {
                    far_top = std::max(far_top, v);
                } else {
                    near_radius = std::max(near_radius, dist[i]);
                }
            }
            if (top > a + kExact * (1.0 + std::abs(a))) continue;  // y0 must maximize Re z*.
            ExposedSlice s;
            s.y0 = y0;
            s.y0_norm = norms[i0];
            s.z_star = z;
            double t = a * eps / 2.0;
            if (far_top == -std::numeric_limits<double>::infinity()) {
                s.eta = std::numeric_limits<double>::infinity();
                s.radius_bound = r;
            } else {
                s.eta = a - far_top;
                if (!(s.eta > kExact)) continue;
                // A hull point sum l_i y_i in the slice puts weight at most t/eta on far points,
                // so its distance to y0 is at most near_radius + (t/eta) D.
                t = std::min(t, s.eta * r / D);
                s.radius_bound = std::max(near_radius + (t / s.eta) * D, near_radius);
                if (!(s.radius_bound > 0.0)) s.radius_bound = r;
            }
            s.delta = t / a;
            s.diameter_bound = 2.0 * s.radius_bound;
            s.y0_star = z;
            for (auto& c : s.y0_star.coords) c /= a;
            if (!best || s.delta > best->delta) best = std::move(s);
        }
        if (best) return *best;
    }
    throw LabError(ErrorCode::NoExposedPoint, "no strongly exposed vertex found among the largest hull points");
}

std::vector<Vector> balanced_image_samples(const BoundedMap& psi, const UnitScalarGrid& grid,
                                           const SearchOptions& opts) {
    const Space& dom = psi.domain();
    const std::size_t m = std::clamp<std::size_t>(opts.budget / 200, 64, 512);
    std::vector<Vector> xs{sup_norm(psi, opts).witness};
    for (auto& x : extreme_points(dom, m, derive_seed(opts.seed, 50))) xs.push_back(std::move(x));
    for (auto& x : sample_ball(dom, derive_seed(opts.seed, 51), m)) xs.push_back(std::move(x));
    std::vector<Vector> out;
    out.reserve(xs.size() * grid.points().size());
    for (const auto& x : xs) {
        const Vector img = psi(x);
        for (const Scalar& w : grid.points()) out.push_back(w * img);
    }
    return out;
}

WCReport weakly_compact_pipeline(const BoundedMap& phi, const SliceFamily& upsilon, const BoundedMap& psi,
                                 const WeaklyCompactParams& params, const SearchOptions& opts) {
    const double eps = params.epsilon;
    if (!(eps > 0.0 && eps < 1.0)) throw LabError(ErrorCode::InvalidParams, "eps must lie in (0, 1)");
    const Space& cod = phi.codomain();
    const SliceKind kind = params.alternative ? SliceKind::Weak : SliceKind::Strong;
    WCReport rep;
    rep.epsilon = eps;
    rep.notes.push_back("weak compactness of Psi holds automatically in finite dimensions");

    try {
        rep.exposed = exposed_slice(cod, balanced_image_samples(psi, params.grid, opts), eps, opts.budget);
    } catch (const LabError& e) {
        if (e.code() != ErrorCode::NoExposedPoint) throw;
        rep.failed_stage = "exposed-slice";
        rep.notes.emplace_back(e.what());
        return rep;
    }
    const ExposedSlice& ex = *rep.exposed;
    const double delta = ex.delta;

    SliceFamily targets{psi, {ex.y0_star}, {delta}, params.grid, kind};
    SliceFamily cands = upsilon;
    cands.grid = params.grid;
    cands.kind = kind;
    cands.epsilons = {delta, delta / 2, delta / 4};
    const SearchOptions copts{opts.budget, derive_seed(opts.seed, 60)};
    rep.continuity = params.alternative ? check_weak_slice_continuity(targets, cands, copts)
                                        : check_strong_slice_continuity(targets, cands, copts);
    const ContinuityRow& row = rep.continuity->rows.front();
    if (row.status != InclusionStatus::HoldsOnGrid || !row.candidate_functional) {
        rep.failed_stage = "slice-continuity";
        return rep;
    }
    rep.mu = row.mu;
    const ScalarMap ups_z = normalized_functional(upsilon.base, *row.candidate_functional, make_norm_engine(copts));
    const Vector y0hat = (1.0 / ex.y0_norm) * ex.y0;

    LocalContext ctx;
    ctx.Delta = {y0hat};
    if (params.alternative) {
        for (const Scalar& w : params.grid.points()) ctx.W.push_back(scaled(ups_z, w));
    } else {
        ctx.W = {ups_z};
    }
    try {
        rep.hypothesis = local_daugavet_check(phi, ctx, {{opts.budget, derive_seed(opts.seed, 61)}, eps, 1e-6});
    } catch (const LabError& e) {
        if (e.code() != ErrorCode::InvalidParams) throw;
        rep.failed_stage = "hypothesis";
        rep.notes.emplace_back(e.what());
        return rep;
    }
    std::vector<Vector> hint_pts;
    bool holds = false;
    for (const auto& r : rep.hypothesis->rows) {
        if (r.status == LocalStatus::Holds) holds = true;
        hint_pts.push_back(r.witness);
    }
    if (!holds) {
        rep.failed_stage = "hypothesis";
        return rep;
    }
    const auto hints = with_negations(hint_pts);

    // x in S(omega Upsilon_{z*}, mu) (weak: S'(Upsilon_{z*}, mu)) with ||omega1 Phi(x) + y0/||y0|| || >= 2 - mu.
    double best = -1.0;
    std::uint64_t stream = 62;
    for (const Scalar& w : params.grid.points()) {
        const SliceSpec slice = params.alternative ? make_slice(ups_z, rep.mu, 1.0, SliceKind::Weak)
                                                   : make_slice(ups_z, rep.mu, w, SliceKind::Strong);
        const auto r = sup_on_slice([&](const Vector& x) { return cod.norm(w * phi(x) + y0hat); }, slice, nullptr,
                                    {opts.budget, derive_seed(opts.seed, stream++)}, hints);
        if (r.status == SliceSearchStatus::Feasible && r.value > best) {
            best = r.value;
            rep.witness = r.witness;
            rep.omega1 = w;
        }
    }
    rep.attained = best;
    if (best < 2.0 - eps) {
        rep.failed_stage = "witness";
        return rep;
    }
    const Vector& x = rep.witness;
    const Vector px = psi(x);
    if (params.alternative) {
        rep.omega2 = std::conj(phase(dual_pair(ex.y0_star, px)));
        rep.sum_omega = std::conj(rep.omega1) * rep.omega2;
    } else {
        rep.omega2 = rep.omega1;
        rep.sum_omega = 1.0;
    }
    rep.image_distance = cod.norm(rep.omega2 * px - ex.y0);
    if (dual_pair(ex.y0_star, rep.omega2 * px).real() < 1.0 - delta) {
        rep.notes.push_back("rotated image left the exposed slice; distance bound not implied");
    }
    rep.lower_bound = cod.norm(phi(x) + rep.sum_omega * px);
    rep.certified = rep.image_distance < eps && rep.lower_bound >= 2.0 - 3.0 * eps;
    if (!rep.certified) rep.failed_stage = "chain";
    return rep;
}

// ---- Ky Fan certificates --------------------------------------------------------

namespace {

void validate(const CertificateProblem& prob) {
    if (prob.V.empty() || prob.B.empty()) throw LabError(ErrorCode::InvalidParams, "V and B must be nonempty");
    if (!(prob.K > 0.0)) throw LabError(ErrorCode::InvalidParams, "K must be positive");
    require_member(prob.Psi.codomain(), prob.z);
}

// Payoff K (1 - Re<Phi(x_i), v_j>) - ||Psi(x_i) - z||, row j, column i.
std::vector<std::vector<double>> payoff(const CertificateProblem& prob) {
    const Space& cod = prob.Psi.codomain();
    std::vector<double> dist(prob.B.size());
    std::vector<Vector> img(prob.B.size());
    for (std::size_t i = 0; i < prob.B.size(); ++i) {
        dist[i] = cod.norm(prob.Psi(prob.B[i]) - prob.z);
        img[i] = prob.Phi(prob.B[i]);
    }
    std::vector<std::vector<double>> A(prob.V.size(), std::vector<double>(prob.B.size()));
    for (std::size_t j = 0; j < prob.V.size(); ++j) {
        for (std::size_t i = 0; i < prob.B.size(); ++i) {
            A[j][i] = prob.K * (1.0 - dual_pair(prob.V[j], img[i]).real()) - dist[i];
        }
    }
    return A;
}

}  // namespace

KyFanSample kyfan_inequality_sample(const CertificateProblem& prob, std::size_t combos, std::uint64_t seed) {
    validate(prob);
    if (combos == 0) throw LabError(ErrorCode::InvalidParams, "need at least one combination");
    const Space& cod = prob.Psi.codomain();
    std::vector<double> dist(prob.B.size());
    std::vector<Vector> img(prob.B.size());
    for (std::size_t i = 0; i < prob.B.size(); ++i) {
        dist[i] = cod.norm(prob.Psi(prob.B[i]) - prob.z);
        img[i] = prob.Phi(prob.B[i]);
    }
    Rng rng(seed);
    KyFanSample out;
    out.max_residual = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < combos; ++c) {
        const std::size_t m = 1 + rng.index(std::min<std::size_t>(prob.B.size(), 4));
        std::vector<std::size_t> idx(m);
        std::vector<double> a(m);
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            idx[k] = rng.index(prob.B.size());
            a[k] = 0.05 + rng.uniform();
            total += a[k];
        }
        double lhs = 0.0;
        Vector h(img.front().size(), 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            a[k] /= total;
            lhs += a[k] * dist[idx[k]];
            h = h + a[k] * img[idx[k]];
        }
        double sup = -std::numeric_limits<double>::infinity();
        for (const auto& v : prob.V) sup = std::max(sup, 1.0 - dual_pair(v, h).real());
        const double res = lhs - prob.K * sup;
        ++out.combinations;
        if (res > out.max_residual) {
            out.max_residual = res;
            out.worst_points = idx;
            out.worst_weights = a;
        }
    }
    return out;
}

KyFanCertificate kyfan_certificate_search(const CertificateProblem& prob, const KyFanOptions& opts) {
    validate(prob);
    const auto A = payoff(prob);
    const std::size_t rows = A.size();
    const std::size_t cols = A.front().size();
    auto row_min = [&](const std::vector<double>& lambda) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cols; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < rows; ++j) s += lambda[j] * A[j][i];
            m = std::min(m, s);
        }
        return m;
    };

    KyFanCertificate out;
    // Pure strategies first: a single element of V is the simplest certificate.
    std::size_t best_row = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rows; ++j) {
        const double m = *std::min_element(A[j].begin(), A[j].end());
        if (m > best_val) {
            best_val = m;
            best_row = j;
        }
    }
    std::vector<double> weights(rows, 0.0);
    weights[best_row] = 1.0;
    double value = best_val;
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cols; ++i) {
        double col_max = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < rows; ++j) col_max = std::max(col_max, A[j][i]);
        upper = std::min(upper, col_max);
    }

    if (value < -opts.tol && rows > 1) {
        // Multiplicative weights for the maximizing row player against best responses.
        double range = 0.0;
        for (const auto& r : A) {
            for (double v : r) range = std::max(range, std::abs(v));
        }
        if (range == 0.0) range = 1.0;
        const std::size_t T =
            std::clamp<std::size_t>(opts.search.budget / std::max<std::size_t>(rows * cols, 1), 50, 2000);
        const double eta = std::sqrt(8.0 * std::log(static_cast<double>(rows)) / static_cast<double>(T)) / range;
        std::vector<double> logw(rows, 0.0);
        std::vector<double> avg(rows, 0.0);
        std::vector<double> col_avg(rows, 0.0);
        for (std::size_t t = 0; t < T; ++t) {
            const double top = *std::max_element(logw.begin(), logw.end());
            std::vector<double> lambda(rows);
            double total = 0.0;
            for (std::size_t j = 0; j < rows; ++j) total += lambda[j] = std::exp(logw[j] - top);
            for (auto& l : lambda) l /= total;
            std::size_t br = 0;
            double br_val = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < cols; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < rows; ++j) s += lambda[j] * A[j][i];
                if (s < br_val) {
                    br_val = s;
                    br = i;
                }
            }
            for (std::size_t j = 0; j < rows; ++j) {
                avg[j] += lambda[j] / static_cast<double>(T);
                col_avg[j] += A[j][br] / static_cast<double>(T);
                logw[j] += eta * A[j][br];
            }
        }
        out.iterations = T;
        upper = std::min(upper, *std::max_element(col_avg.begin(), col_avg.end()));
        const double mixed = row_min(avg);
        if (mixed > value) {
            value = mixed;
            weights = avg;
        }
    }
    out.value = value;
    out.upper_value = std::max(upper, value);
    out.weights = weights;
    out.found = value >= -opts.tol;
    if (!out.found) return out;

    out.x0_star.coords.assign(prob.V.front().coords.size(), 0.0);
    for (std::size_t j = 0; j < rows; ++j) {
        if (weights[j] == 0.0) continue;
        out.x0_star.coords = out.x0_star.coords + weights[j] * prob.V[j].coords;
    }
    const Space& cod = prob.Psi.codomain();
    for (double eps : opts.epsilons) {
        ConsequenceCheck c;
        c.epsilon = eps;
        c.max_distance = -std::numeric_limits<double>::infinity();
        for (const auto& x : prob.B) {
            if (dual_pair(out.x0_star, prob.Phi(x)).real() < 1.0 - eps) continue;
            ++c.slice_points;
            c.max_distance = std::max(c.max_distance, cod.norm(prob.Psi(x) - prob.z));
        }
        c.holds = c.slice_points == 0 || c.max_distance <= prob.K * eps + opts.tol;
        out.consequences.push_back(c);
    }
    return out;
}

HullDistanceReport hull_distance_test(const BoundedMap& phi, const BoundedMap& psi, const Vector& z, double K,
                                      std::size_t combos, const std::vector<Vector>& hints, const KyFanOptions& opts) {
    if (!(phi.domain() == phi.codomain())) throw LabError(ErrorCode::UnsupportedSpace, "Phi must map X into X");
    if (combos == 0) throw LabError(ErrorCode::InvalidParams, "need at least one combination");
    const Space& X = phi.domain();
    for (const auto& h : hints) {
        if (!in_ball(X, h)) throw LabError(ErrorCode::OutsideBall, "hint outside the unit ball");
    }
    const std::size_t m = std::clamp<std::size_t>(opts.search.budget / 400, 32, 256);
    std::vector<Vector> pts = extreme_points(X, m, derive_seed(opts.search.seed, 70));
    for (auto& p : sample_ball(X, derive_seed(opts.search.seed, 71), m)) pts.push_back(std::move(p));
    std::vector<double> dist(pts.size());
    std::vector<Vector> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        dist[i] = X.norm(psi(pts[i]) - z);
        img[i] = phi(pts[i]);
    }

    HullDistanceReport out;
    out.max_residual = -std::numeric_limits<double>::infinity();
    Rng rng(derive_seed(opts.search.seed, 72));
    for (std::size_t c = 0; c < combos; ++c) {
        const std::size_t k = 1 + rng.index(4);
        std::vector<std::size_t> idx(k);
        std::vector<double> a(k);
        double total = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            idx[j] = rng.index(pts.size());
            a[j] = 0.05 + rng.uniform();
            total += a[j];
        }
        double lhs = 0.0;
        Vector h(X.dimension(), 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            lhs += a[j] / total * dist[idx[j]];
            h = h + (a[j] / total) * img[idx[j]];
        }
        Vector x;
        for (const auto& hint : hints) {
            if (lhs <= K * X.norm(hint - h) + opts.tol) {
                x = hint;
                ++out.settled_by_hint;
                break;
            }
        }
        if (x.empty()) {
            // ||x - h|| <= 1 + ||h|| with equality at x = -h/||h||.
            const double nh = X.norm(h);
            x = nh > 0.0 ? (-1.0 / nh) * h : extreme_points(X, 1).front();
        }
        const double res = lhs - K * X.norm(x - h);
        ++out.combinations;
        if (res > out.max_residual) {
            out.max_residual = res;
            out.witness = x;
        }
    }
    out.holds = out.max_residual <= opts.tol;

    CertificateProblem prob{{}, pts, psi, phi, z, K};
    if (auto ext = dual_extreme_points(X, 4096)) {
        prob.V = std::move(*ext);
    } else {
        for (const auto& p : sample_sphere(X, derive_seed(opts.search.seed, 73), 64)) {
            prob.V.push_back(norming_functional(X, p));
        }
    }
    out.certificate = kyfan_certificate_search(prob, opts);
    return out;
}

// ---- L1 small-support machinery ---------------------------------------------

namespace {

void require_weighted(const Space& s, const char* what) {
    if (!s.is_weighted_l1()) throw LabError(ErrorCode::UnsupportedSpace, std::string(what) + " must be a weighted L1 space");
}

double support_mass(const Space& s, const Vector& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != Scalar(0.0)) m += s.weights()[i];
    }
    return m;
}

}  // namespace

double l1_absolute_continuity_delta(const Space& space, const Vector& y, double eps) {
    require_weighted(space, "space");
    require_member(space, y);
    if (!(eps > 0.0)) throw LabError(ErrorCode::InvalidParams, "eps must be positive");
    const auto& w = space.weights();
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), 0);
    // Greedy by density |y_i|: the fractional knapsack maximizes int_A |y| at fixed mass.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return std::abs(y[a]) > std::abs(y[b]); });
    double mass = 0.0;
    double integral = 0.0;
    for (std::size_t i : order) {
        const double d = std::abs(y[i]);
        if (integral + w[i] * d >= eps) return mass + (eps - integral) / d;
        mass += w[i];
        integral += w[i] * d;
    }
    return std::numeric_limits<double>::infinity();
}

L1WitnessSearch l1_small_support_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y, double eps,
                                         const SearchOptions& opts) {
    const Space& dom = phi.domain();
    const Space& cod = phi.codomain();
    require_weighted(dom, "domain");
    require_weighted(cod, "codomain");
    if (!(xp.domain() == cod)) throw LabError(ErrorCode::DimensionMismatch, "x' must act on the codomain");
    if (!(dom == cod)) throw LabError(ErrorCode::DimensionMismatch, "Phi must map the space into itself");
    const double ny = unit_norm_or_throw(cod, y);
    if (!(eps > 0.0 && eps < 1.0)) throw LabError(ErrorCode::InvalidParams, "eps must lie in (0, 1)");
    for (const auto& s : sample_sphere(dom, derive_seed(opts.seed, 80), 64)) {
        if (std::abs(cod.norm(phi(s)) - 1.0) > 1e-9) {
            throw LabError(ErrorCode::InvalidParams, phi.name() + " does not map the sphere into the sphere");
        }
    }

    L1WitnessSearch out;
    out.delta = l1_absolute_continuity_delta(cod, y, eps);
    const auto& w = dom.weights();
    const std::size_t n = w.size();
    std::vector<Scalar> signs{1.0, -1.0};
    if (dom.field() == Field::Complex) {
        signs.emplace_back(0.0, 1.0);
        signs.emplace_back(0.0, -1.0);
    }
    std::optional<Vector> best_z;
    double best_val = -1.0;
    auto consider = [&](Vector z) {
        ++out.candidates;
        const Vector img = phi(z);
        if (support_mass(cod, img) >= out.delta) return;
        const double v = std::abs(xp(img));
        if (v > best_val) {
            best_val = v;
            best_z = std::move(z);
        }
    };
    // Single atoms, then evenly split pairs of atoms, while the budget lasts.
    for (const Scalar& s : signs) {
        for (std::size_t i = 0; i < n; ++i) consider(basis_vector(n, i, s / w[i]));
    }
    for (std::size_t i = 0; i < n && out.candidates < opts.budget; ++i) {
        for (std::size_t j = i + 1; j < n && out.candidates < opts.budget; ++j) {
            Vector z(n, 0.0);
            z[i] = 0.5 / w[i];
            z[j] = 0.5 / w[j];
            consider(std::move(z));
        }
    }
    out.best_image_value = std::max(best_val, 0.0);
    if (!best_z || best_val <= 1.0 - eps) return out;

    L1Witness r;
    r.z = *best_z;
    const Vector img = phi(r.z);
    const Scalar v = xp(img);
    r.omega = std::conj(phase(v));
    r.value = cod.norm(y + r.omega * img);
    r.delta = out.delta;
    r.support_mass = support_mass(cod, img);
    for (std::size_t i = 0; i < n; ++i) {
        if (img[i] != Scalar(0.0)) r.tail_integral += w[i] * std::abs(y[i]);
    }
    r.chain_floor = ny + cod.norm(img) - 2.0 * r.tail_integral;
    r.image_value = std::abs(v);
    r.slice_value = (r.omega * xp(r.z)).real();
    r.epsilon = eps;
    out.witness = std::move(r);
    return out;
}

AdmissibilityVerdict admissibility_check(const BoundedMap& phi, const std::vector<double>& delta_grid,
                                         const SearchOptions& opts, SupportShape shape) {
    const Space& dom = phi.domain();
    const Space& cod = phi.codomain();
    require_weighted(dom, "domain");
    require_weighted(cod, "codomain");
    const auto& w = dom.weights();
    const std::size_t n = w.size();
    const double total = std::accumulate(cod.weights().begin(), cod.weights().end(), 0.0);
    const auto& growth = phi.traits().support_growth;
    Rng rng(derive_seed(opts.seed, 90));
    const std::size_t per_delta =
        std::clamp<std::size_t>(opts.budget / std::max<std::size_t>(delta_grid.size() * n, 1), 32, 512);

    AdmissibilityVerdict out;
    auto fail = [&](const Vector& f, std::string reason) {
        if (out.status == AdmissibilityStatus::NotAdmissible) return;
        out.status = AdmissibilityStatus::NotAdmissible;
        out.witness = f;
        out.reason = std::move(reason);
    };

    // Requirement (ii) on generic unit vectors.
    for (const auto& f : sample_sphere(dom, derive_seed(opts.seed, 91), 64)) {
        if (std::abs(cod.norm(phi(f)) - 1.0) > 1e-9) fail(f, "image of a unit vector is not a unit vector");
    }

    for (double dp : delta_grid) {
        AdmissibilityRow row;
        row.delta_prime = dp;
        if (growth) row.declared = growth(dp);
        for (std::size_t s = 0; s < per_delta; ++s) {
            std::vector<std::size_t> atoms;
            double mass = 0.0;
            const std::size_t start = rng.index(n);
            std::vector<std::size_t> pool(n);
            if (shape == SupportShape::Arc) {
                for (std::size_t k = 0; k < n; ++k) pool[k] = (start + k) % n;
            } else {
                std::iota(pool.begin(), pool.end(), 0);
                for (std::size_t k = n - 1; k > 0; --k) std::swap(pool[k], pool[rng.index(k + 1)]);
            }
            const std::size_t want = 1 + rng.index(n);
            for (std::size_t i : pool) {
                if (atoms.size() >= want || mass + w[i] > dp * (1.0 + kExact)) break;
                atoms.push_back(i);
                mass += w[i];
            }
            if (atoms.empty()) continue;
            Vector f(n, 0.0);
            double fn = 0.0;
            for (std::size_t i : atoms) {
                f[i] = rng.normal();
                if (f[i] == Scalar(0.0)) f[i] = 1.0;
                fn += w[i] * std::abs(f[i]);
            }
            for (auto& c : f) c /= fn;
            const Vector img = phi(f);
            const double sm = support_mass(cod, img);
            row.max_norm_defect = std::max(row.max_norm_defect, std::abs(cod.norm(img) - 1.0));
            ++row.samples;
            if (sm > row.max_image_support) {
                row.max_image_support = sm;
                if (row.declared && sm > *row.declared * (1.0 + kExact)) {
                    fail(f, "image support exceeds the declared growth");
                }
                if (!row.declared && sm >= total * (1.0 - kExact)) fail(f, "small support is mapped to full support");
            }
            if (row.max_norm_defect > 1e-9) fail(f, "image of a unit vector is not a unit vector");
        }
        row.ok = row.samples > 0 && row.max_norm_defect <= 1e-9 &&
                 (!row.declared || row.max_image_support <= *row.declared * (1.0 + kExact));
        out.rows.push_back(row);
    }
    if (out.status == AdmissibilityStatus::NotAdmissible) return out;
    const bool all_ok = std::all_of(out.rows.begin(), out.rows.end(), [](const AdmissibilityRow& r) { return r.ok; });
    if (growth && all_ok) {
        out.status = AdmissibilityStatus::Admissible;
        out.reason = "declared support growth verified on all samples";
    } else {
        out.status = AdmissibilityStatus::Inconclusive;
        out.reason = growth ? "some delta' had no admissible samples" : "no declared support growth to verify";
    }
    return out;
}

}  // namespace slicelab
