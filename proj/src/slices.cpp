#include "slicelab/slices.hpp"

#include <cmath>
#include <limits>

#include "slicelab/random.hpp"

namespace slicelab {

const char* to_string(InclusionStatus s) noexcept {
    switch (s) {
    case InclusionStatus::HoldsOnGrid: return "HoldsOnGrid";
    case InclusionStatus::Violated: return "Violated";
    case InclusionStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

InclusionVerdict check_inclusion(const SliceSpec& inner, const SliceSpec& outer, const Restriction* gamma,
                                 const SearchOptions& opts, double tol) {
    if (!(inner.functional.domain() == outer.functional.domain())) {
        throw LabError(ErrorCode::DimensionMismatch, "slices live on different domains");
    }
    InclusionVerdict v;
    v.omega = outer.omega;
    const auto r = sup_on_slice(
        [&](const Vector& x) { return outer.vacuous() ? -1.0 : slice_deficiency(outer, x); }, inner, gamma, opts);
    v.evaluations = r.evaluations;
    if (r.status == SliceSearchStatus::InfeasibleOnBudget) {
        v.status = InclusionStatus::HoldsOnGrid;
        v.inner_empty = true;
        v.max_violation = -std::numeric_limits<double>::infinity();
        return v;
    }
    v.max_violation = r.value;
    if (r.value > tol) {
        v.status = InclusionStatus::Violated;
        v.witness = r.witness;
    } else if (r.value <= 0.0) {
        v.status = InclusionStatus::HoldsOnGrid;
    } else {
        v.status = InclusionStatus::Inconclusive;
        v.witness = r.witness;
    }
    return v;
}

namespace {

struct Candidate {
    std::string label;
    DualFunctional functional;
};

std::vector<Candidate> candidate_functionals(const BoundedMap& psi, const BoundedMap& phi, const DualFunctional& target,
                                             const std::vector<DualFunctional>& family) {
    std::vector<Candidate> out;
    auto add = [&](std::string label, DualFunctional f) {
        for (const auto& c : out) {
            if (c.functional.coords == f.coords) return;
        }
        out.push_back({std::move(label), std::move(f)});
    };
    if (const auto* fac = psi.factorization(); fac && fac->inner->same_as(phi)) {
        // z*(P v) = <g, v> with g_j = sum_i z_i conj(P_ij).
        const Matrix& P = fac->outer;
        Vector g(P.cols, 0.0);
        for (std::size_t j = 0; j < P.cols; ++j) {
            for (std::size_t i = 0; i < P.rows; ++i) g[j] += target.coords[i] * std::conj(P(i, j));
        }
        add("y*P", DualFunctional{g});
    }
    if (psi.codomain() == phi.codomain()) add("target", target);
    for (std::size_t k = 0; k < family.size(); ++k) add("family[" + std::to_string(k) + "]", family[k]);
    return out;
}

ContinuityTable continuity(const SliceFamily& targets, const SliceFamily& cands, const SearchOptions& opts,
                           const Restriction* gamma, SliceKind kind) {
    const BoundedMap& psi = targets.base;
    const BoundedMap& phi = cands.base;
    if (!(psi.domain() == phi.domain())) throw LabError(ErrorCode::DimensionMismatch, "families on different domains");
    const auto engine = make_norm_engine(opts);
    const std::vector<Scalar> omegas =
        kind == SliceKind::Strong ? targets.grid.points() : std::vector<Scalar>{Scalar(1.0)};

    ContinuityTable table;
    table.kind = kind;
    std::uint64_t stream = 0;
    for (std::size_t t = 0; t < targets.functionals.size(); ++t) {
        const DualFunctional& zstar = targets.functionals[t];
        std::optional<ScalarMap> psi_z;
        std::string degenerate_note;
        try {
            psi_z = normalized_functional(psi, zstar, engine);
        } catch (const LabError& e) {
            if (e.code() != ErrorCode::DegenerateFunctional) throw;
            degenerate_note = "target functional degenerate; skipped";
        }
        const auto cand = candidate_functionals(psi, phi, zstar, cands.functionals);
        for (double eps : targets.epsilons) {
            ContinuityRow row;
            row.target_index = t;
            row.epsilon = eps;
            if (!psi_z) {
                row.status = InclusionStatus::Inconclusive;
                row.notes.push_back(degenerate_note);
                table.rows.push_back(std::move(row));
                continue;
            }
            std::vector<double> mus = cands.epsilons;
            if (mus.empty()) mus = {eps, eps / 2, eps / 4};
            bool any_inconclusive = false;
            bool have_violation = false;
            for (const auto& c : cand) {
                std::optional<ScalarMap> phi_y;
                try {
                    phi_y = normalized_functional(phi, c.functional, engine);
                } catch (const LabError& e) {
                    if (e.code() != ErrorCode::DegenerateFunctional) throw;
                    row.notes.push_back(c.label + " degenerate; skipped");
                    continue;
                }
                for (double mu : mus) {
                    if (!(mu > 0.0 && mu <= 1.0)) continue;
                    bool holds = true;
                    for (const Scalar& w : omegas) {
                        const SliceSpec inner = make_slice(*phi_y, mu, w, kind);
                        const SliceSpec outer = make_slice(*psi_z, eps, w, kind);
                        const auto v = check_inclusion(inner, outer, gamma, {opts.budget, derive_seed(opts.seed, ++stream)});
                        table.evaluations += v.evaluations;
                        if (v.status == InclusionStatus::HoldsOnGrid) continue;
                        holds = false;
                        if (v.status == InclusionStatus::Violated) {
                            if (!have_violation) {
                                have_violation = true;
                                row.candidate = c.label;
                                row.candidate_functional = c.functional;
                                row.mu = mu;
                                row.witness = v.witness;
                                row.omega = w;
                                row.max_violation = v.max_violation;
                            }
                        } else {
                            any_inconclusive = true;
                        }
                        break;
                    }
                    if (holds) {
                        row.status = InclusionStatus::HoldsOnGrid;
                        row.candidate = c.label;
                        row.candidate_functional = c.functional;
                        row.mu = mu;
                        row.witness.clear();
                        row.max_violation = 0.0;
                        break;
                    }
                }
                if (row.status == InclusionStatus::HoldsOnGrid) break;
            }
            if (row.status != InclusionStatus::HoldsOnGrid) {
                row.status = any_inconclusive || !have_violation ? InclusionStatus::Inconclusive : InclusionStatus::Violated;
            }
            table.rows.push_back(std::move(row));
        }
    }
    for (const auto& r : table.rows) {
        if (r.status == InclusionStatus::Violated) {
            table.overall = InclusionStatus::Violated;
            break;
        }
        if (r.status == InclusionStatus::Inconclusive) table.overall = InclusionStatus::Inconclusive;
    }
    return table;
}

}  // namespace

ContinuityTable check_strong_slice_continuity(const SliceFamily& targets, const SliceFamily& candidates,
                                              const SearchOptions& opts, const Restriction* gamma) {
    return continuity(targets, candidates, opts, gamma, SliceKind::Strong);
}

ContinuityTable check_weak_slice_continuity(const SliceFamily& targets, const SliceFamily& candidates,
                                            const SearchOptions& opts, const Restriction* gamma) {
    return continuity(targets, candidates, opts, gamma, SliceKind::Weak);
}

RotationVerdict multilinear_rotation_check(const BoundedMap& A, const std::vector<DualFunctional>& functionals,
                                           const std::vector<double>& epsilons, const UnitScalarGrid& grid,
                                           const SearchOptions& opts) {
    if (!A.traits().bilinear) throw LabError(ErrorCode::NonBilinearMap, A.name() + " is not bilinear");
    const std::size_t n1 = A.traits().bilinear->left_dim;
    const auto engine = make_norm_engine(opts);
    const auto pts = sample_ball(A.domain(), derive_seed(opts.seed, 3), std::max<std::size_t>(opts.budget, 1));
    RotationVerdict out;
    for (const auto& f : functionals) {
        std::optional<ScalarMap> p;
        try {
            p = normalized_functional(A, f, engine);
        } catch (const LabError& e) {
            if (e.code() != ErrorCode::DegenerateFunctional) throw;
            continue;
        }
        for (const auto& x : pts) {
            for (const Scalar& w : grid.points()) {
                Vector xr = x;
                for (std::size_t i = 0; i < n1; ++i) xr[i] *= w;
                const double lhs = (w * (*p)(x)).real();
                const double rhs = (*p)(xr).real();
                const double gap = std::abs(lhs - rhs);
                out.max_value_gap = std::max(out.max_value_gap, gap);
                for (double eps : epsilons) {
                    ++out.checks;
                    const bool a = lhs >= 1.0 - eps;
                    const bool b = rhs >= 1.0 - eps;
                    // Rounding on the boundary is not a counterexample.
                    if (a != b && gap > 1e-12) {
                        if (out.mismatches++ == 0) {
                            out.witness = x;
                            out.omega = w;
                        }
                    }
                }
            }
        }
    }
    out.status = out.mismatches ? InclusionStatus::Violated : InclusionStatus::HoldsOnGrid;
    return out;
}

ModulusBoundSample modulus_bound_sample(double eps, std::size_t count, std::uint64_t seed) {
    if (!(eps > 0.0 && eps <= 1.0)) throw LabError(ErrorCode::InvalidParams, "eps must lie in (0, 1]");
    Rng rng(seed);
    ModulusBoundSample out;
    out.max_excess = -std::numeric_limits<double>::infinity();
    const double root = std::sqrt(2.0 * eps);
    const double h = std::sqrt(2.0 * eps - eps * eps);
    while (out.samples < count) {
        const Scalar c(rng.uniform(1.0 - eps, 1.0), rng.uniform(-h, h));
        if (std::abs(c) > 1.0) continue;
        ++out.samples;
        out.max_excess = std::max(out.max_excess, std::abs(1.0 - c) - root);
    }
    out.boundary_gap = std::abs(1.0 - Scalar(1.0 - eps, h)) - root;
    return out;
}

CubeSliceSample cube_slice_sample(std::size_t n, double eps, std::size_t count, std::uint64_t seed) {
    if (n == 0) throw LabError(ErrorCode::InvalidParams, "dimension must be positive");
    Rng rng(seed);
    CubeSliceSample out;
    out.max_violation = -std::numeric_limits<double>::infinity();
    const std::size_t max_proposals = 1000 * count + 1000;
    while (out.accepted < count && out.proposals < max_proposals) {
        ++out.proposals;
        std::vector<double> mu(n);
        double l1 = 0;
        for (auto& m : mu) {
            // Heavy-tailed magnitudes so that some coordinates carry little mass.
            const double u = rng.uniform();
            m = (rng.next() >> 63 ? -1.0 : 1.0) * u * u * u;
            l1 += std::abs(m);
        }
        if (l1 == 0.0) continue;
        for (auto& m : mu) m /= l1;
        // Propose z near the sign pattern of mu, with occasional free coordinates.
        const double spread = rng.uniform() * eps;
        double z3 = 0, z1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double z;
            if (rng.uniform() < 0.85) {
                z = (mu[i] >= 0 ? 1.0 : -1.0) * (1.0 - spread * rng.uniform());
            } else {
                z = rng.uniform(-1.0, 1.0);
            }
            z3 += z * z * z * mu[i];
            z1 += z * mu[i];
        }
        if (z3 < 1.0 - eps / 2.0) continue;
        ++out.accepted;
        out.max_violation = std::max(out.max_violation, (1.0 - eps) - z1);
    }
    return out;
}

}  // namespace slicelab
