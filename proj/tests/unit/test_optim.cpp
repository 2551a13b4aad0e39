#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "slicelab/optim.hpp"

using namespace slicelab;

namespace {

SearchOptions opts(std::size_t budget = 20000, std::uint64_t seed = 1) { return {budget, seed}; }

bool is_sign_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar z) { return z == Scalar(1.0) || z == Scalar(-1.0); });
}

BoundedMap square_plus_average(const Space& s, double ysign) {
    const auto phi = square_map(s);
    return rank_one(pullback(phi, uniform_probability(s)), constant_vector(s.dimension(), ysign), s);
}

}  // namespace

TEST(SupNorm, IdentityOnCube) {
    const auto est = sup_norm(identity_map(Space::sup(4)), opts());
    EXPECT_EQ(est.lower_bound, 1.0);
    EXPECT_TRUE(is_sign_vector(est.witness));
    ASSERT_TRUE(est.upper_bound);
    EXPECT_EQ(*est.upper_bound, 1.0);
}

TEST(SupNorm, ProjectionPlusAveragingIsExactlyOne) {
    const Space l = Space::uniform_l1(16);
    const Space s = Space::direct_sum(l, l);
    const auto comp = sum(summand_projection(s),
                          rank_one(pullback(averaging_rank_one(s), integration_functional(l)), constant_vector(16, 1.0), l));
    const auto est = sup_norm(comp, opts());
    EXPECT_NEAR(est.lower_bound, 1.0, 1e-12);
    ASSERT_TRUE(est.upper_bound);
    EXPECT_NEAR(*est.upper_bound, 1.0, 1e-12);
    EXPECT_EQ(est.upper_source, "linear");
    // Oracle: the maximum of a convex function over the embedded atoms.
    double best = 0;
    for (std::size_t i = 0; i < 32; ++i) {
        for (double sgn : {1.0, -1.0}) {
            const Vector x = basis_vector(32, i, sgn * 16.0);
            best = std::max(best, norm(l, comp(x)));
        }
    }
    EXPECT_NEAR(best, est.lower_bound, 1e-12);
}

TEST(SupNorm, SquareOnPositiveOrthant) {
    const Space s = Space::sup(4);
    const auto gamma = positive_orthant(s);
    const auto est = sup_norm(square_map(s), opts(), &gamma);
    EXPECT_EQ(est.lower_bound, 1.0);
    EXPECT_TRUE(gamma.contains(est.witness));
}

TEST(SupNorm, EmptyRestrictionThrows) {
    const Space s = Space::sup(2);
    const Restriction none{"none", [](const Vector&) { return false; }, {}};
    try {
        (void)sup_norm(identity_map(s), opts(200), &none);
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyRestriction);
    }
}

TEST(SupNorm, WitnessReproducesLowerBound) {
    const Space s = Space::sup(3);
    const std::vector<BoundedMap> maps = {cube_map(s), sum(cube_map(s), scaled(square_map(s), -0.5)),
                                          fourth_root_map(s)};
    for (const auto& m : maps) {
        const auto est = sup_norm(m, opts(5000, 3));
        EXPECT_EQ(norm(s, m(est.witness)), est.lower_bound);
        if (est.upper_bound) EXPECT_GE(*est.upper_bound, est.lower_bound);
    }
}

TEST(SupNorm, NonPolyhedralMatchesGridOracle) {
    // x -> (x1^3 - x2^2 / 2) on Sup(2): a genuinely nonconvex objective.
    const Space s = Space::sup(2);
    const Space line = Space::sup(1);
    const BoundedMap m("poly", s, line, [](const Vector& x) { return Vector{x[0] * x[0] * x[0] - 0.5 * x[1] * x[1] + 0.3 * x[0] * x[1]}; });
    const double want = oracle::grid_max(2, 2001, [](const oracle::Vec& x) {
        return std::abs(x[0] * x[0] * x[0] - 0.5 * x[1] * x[1] + 0.3 * x[0] * x[1]);
    });
    const auto est = sup_norm(m, opts(20000, 2));
    EXPECT_NEAR(est.lower_bound, want, 1e-6);
}

TEST(SupNorm, LowerBoundMonotoneInBudget) {
    const Space s = Space::sup(5);
    const BoundedMap m("mix", s, Space::sup(1), [](const Vector& x) {
        Scalar v = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) v += std::sin(3.0 * x[i].real() + static_cast<double>(i)) * x[(i + 1) % x.size()];
        return Vector{v};
    });
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        double prev = -1;
        for (std::size_t b : {500u, 1000u, 2000u, 4000u, 8000u}) {
            const auto est = sup_norm(m, opts(b, seed));
            EXPECT_GE(est.lower_bound, prev);
            prev = est.lower_bound;
        }
    }
}

TEST(SupNorm, Deterministic) {
    const Space s = Space::sup(4, Field::Complex);
    const auto m = sum(cube_map(s), scaled(identity_map(s), Scalar(0.0, 0.5)));
    const auto a = sup_norm(m, opts(3000, 9));
    const auto b = sup_norm(m, opts(3000, 9));
    EXPECT_EQ(a.lower_bound, b.lower_bound);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(SupNorm, RejectsTinyBudget) { EXPECT_THROW((void)sup_norm(identity_map(Space::sup(4)), opts(2)), LabError); }

TEST(LinearOperatorNorm, RoutesAgreeWithOracles) {
    oracle::Gen g(31);
    const Space sup3 = Space::sup(3);
    const Space wl = Space::weighted_l1({0.2, 0.3, 0.5});
    for (int k = 0; k < 30; ++k) {
        Matrix T(3, 3);
        for (auto& v : T.data) v = g.in(-1, 1);
        // Sup -> Sup: max row l1 sum.
        double rows = 0;
        for (std::size_t r = 0; r < 3; ++r) {
            double acc = 0;
            for (std::size_t c = 0; c < 3; ++c) acc += std::abs(T(r, c));
            rows = std::max(rows, acc);
        }
        const auto a = linear_operator_norm(T, sup3, sup3);
        ASSERT_TRUE(a);
        EXPECT_NEAR(a->value, rows, 1e-12);
        EXPECT_NEAR(norm(sup3, T.apply(a->witness)), rows, 1e-12);
        // WL1 -> WL1: max over atoms of ||T e_i|| / w_i.
        double cols = 0;
        for (std::size_t c = 0; c < 3; ++c) {
            double acc = 0;
            for (std::size_t r = 0; r < 3; ++r) acc += wl.weights()[r] * std::abs(T(r, c));
            cols = std::max(cols, acc / wl.weights()[c]);
        }
        const auto b = linear_operator_norm(T, wl, wl);
        ASSERT_TRUE(b);
        EXPECT_NEAR(b->value, cols, 1e-12);
    }
}

TEST(LinearOperatorNorm, L2DomainViaDualRoute) {
    // c -> c_i / sqrt(w_i) from l2 into weighted L1 has norm sqrt(sum w) = 1.
    const Space l2 = Space::lp(4, 2);
    const Space wl = Space::uniform_l1(4);
    Matrix T(4, 4);
    for (std::size_t i = 0; i < 4; ++i) T(i, i) = 2.0;
    const auto r = linear_operator_norm(T, l2, wl);
    ASSERT_TRUE(r);
    EXPECT_NEAR(r->value, 1.0, 1e-15);
    EXPECT_NEAR(norm(wl, T.apply(r->witness)), 1.0, 1e-15);
}

TEST(AnalyticUpperBound, HilbertFallbacks) {
    const Space l2 = Space::lp(3, 2);
    const auto id = identity_map(l2);
    // No exact l2 -> l2 formula: Id - Id is still bounded by 0 through its columns.
    const auto zero = analytic_upper_bound(sum(id, scaled(id, -1.0)));
    ASSERT_TRUE(zero.value);
    EXPECT_EQ(*zero.value, 0.0);
    EXPECT_EQ(zero.source, "columns");
    // Rank one u v^T has operator norm |u| |v| = Hilbert-Schmidt norm.
    Matrix T(3, 3);
    const double u[3] = {1, 2, 2}, v[3] = {0.6, 0.8, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T(i, j) = u[i] * v[j];
    const auto r = analytic_upper_bound(linear_map(l2, l2, T));
    ASSERT_TRUE(r.value);
    EXPECT_NEAR(*r.value, 3.0, 1e-14);
    EXPECT_EQ(r.source, "frobenius");
    const auto est = sup_norm(linear_map(l2, l2, T), opts());
    EXPECT_NEAR(est.lower_bound, 3.0, 1e-3);
    EXPECT_LE(est.lower_bound, *est.upper_bound);
}

TEST(SupOnSlice, ShiftedSupObjective) {
    const Space s = Space::sup(2);
    const auto slice = make_slice(linear_functional(s, coordinate_functional(s, 0)), 0.1);
    const Vector e1{1.0, 0.0};
    const auto r = sup_on_slice([&](const Vector& x) { return norm(s, x + e1); }, slice, nullptr, opts(4000));
    ASSERT_EQ(r.status, SliceSearchStatus::Feasible);
    // Oracle: brute force over sign vectors with x1 >= 0.9.
    double want = 0;
    for (const auto& v : oracle::all_sign_vectors(2)) {
        if (v[0].real() >= 0.9) want = std::max(want, oracle::sup_norm({v[0] + 1.0, v[1]}));
    }
    EXPECT_EQ(r.value, want);
    EXPECT_GE(r.witness[0].real(), 0.9);
}

TEST(SupOnSlice, EmptySliceReportsInfeasible) {
    const Space s = Space::sup(3);
    const auto p = pullback(square_map(s), DualFunctional{constant_vector(3, -1.0 / 3.0)});
    const auto slice = make_slice(p, 0.2);
    const auto r = sup_on_slice([](const Vector&) { return 0.0; }, slice, nullptr, opts(4000));
    EXPECT_EQ(r.status, SliceSearchStatus::InfeasibleOnBudget);
}

TEST(SupOnSlice, VacuousSliceIsSupNorm) {
    const Space s = Space::sup(3);
    const auto m = cube_map(s);
    const auto slice = make_slice(linear_functional(s, coordinate_functional(s, 0)), 1.0);
    const auto r = sup_on_slice([&](const Vector& x) { return norm(s, m(x) + Vector{0.5, 0.0, 0.0}); }, slice, nullptr,
                                opts(4000));
    ASSERT_EQ(r.status, SliceSearchStatus::Feasible);
    EXPECT_EQ(r.value, 1.5);
}

TEST(SupOnSlice, WitnessesAreFeasible) {
    const Space s = Space::sup(3);
    oracle::Gen g(4);
    for (int k = 0; k < 10; ++k) {
        const DualFunctional f{g.vec(3)};
        const double fn = dual_norm(s, f);
        const auto p = linear_functional(s, DualFunctional{(1.0 / fn) * f.coords});
        const auto slice = make_slice(p, 0.05, k % 2 ? 1.0 : -1.0);
        const auto r = sup_on_slice([&](const Vector& x) { return x[1].real(); }, slice, nullptr, opts(3000, k));
        ASSERT_EQ(r.status, SliceSearchStatus::Feasible);
        EXPECT_TRUE(membership(slice, r.witness));
    }
}

TEST(Defect, SelfSumHolds) {
    const auto phi = cube_map(Space::sup(3));
    const auto r = defect(phi, phi, {opts()});
    EXPECT_EQ(r.verdict, DefectVerdict::DaugavetHolds);
    EXPECT_NEAR(r.defect, 0.0, 1e-12);
    EXPECT_EQ(r.tol, 1e-6);
}

TEST(Defect, SquarePlusAverageHolds) {
    const Space s = Space::sup(8);
    const auto r = defect(square_map(s), square_plus_average(s, 1.0), {opts()});
    EXPECT_EQ(r.verdict, DefectVerdict::DaugavetHolds);
    EXPECT_EQ(r.norm_sum.lower_bound, 2.0);
    EXPECT_EQ(r.witness.size(), 8u);
    EXPECT_NEAR(std::abs(r.witness[0]), 1.0, 0.0);
    EXPECT_NEAR(r.defect, 0.0, 1e-12);
}

TEST(Defect, SquareMinusAverageFails) {
    const Space s = Space::sup(8);
    const auto r = defect(square_map(s), square_plus_average(s, -1.0), {opts()});
    EXPECT_EQ(r.verdict, DefectVerdict::DaugavetFails);
    ASSERT_TRUE(r.defect_lo);
    EXPECT_GE(*r.defect_lo, 1.0 - 1e-9);
    EXPECT_NEAR(*r.norm_sum.upper_bound, 1.0, 1e-12);
}

TEST(Defect, SearchOnlyNeverFails) {
    // No interval extension and no declared bound: failure cannot be certified.
    const Space s = Space::sup(2);
    const BoundedMap a("opaque", s, s, [](const Vector& x) { return x; });
    const auto r = defect(a, scaled(a, -1.0), {opts(2000)});
    EXPECT_NE(r.verdict, DefectVerdict::DaugavetFails);
    EXPECT_EQ(r.tol, 1e-3);
    EXPECT_FALSE(r.defect_lo);
}

TEST(AltDefect, MinusIdentity) {
    const Space s = Space::sup(2);
    const auto id = identity_map(s);
    const auto r = alt_defect(id, scaled(id, -1.0), UnitScalarGrid::real(), {opts()});
    EXPECT_EQ(r.best_omega, Scalar(-1.0));
    EXPECT_NEAR(r.best.defect, 0.0, 1e-12);
    ASSERT_EQ(r.defect_by_omega.size(), 2u);
    EXPECT_NEAR(r.defect_by_omega[0].second, 2.0, 1e-12);
    const auto d = defect(id, scaled(id, -1.0), {opts()});
    EXPECT_EQ(d.verdict, DefectVerdict::DaugavetFails);
    EXPECT_GE(*d.defect_lo, 2.0 - 1e-9);
}

TEST(AltDefect, SelfPicksPlusOne) {
    const auto phi = cube_map(Space::sup(3));
    const auto r = alt_defect(phi, phi, UnitScalarGrid::real(), {opts(5000)});
    EXPECT_EQ(r.best_omega, Scalar(1.0));
    EXPECT_NEAR(r.best.defect, 0.0, 1e-12);
}

TEST(AltDefect, ComplexRotationApproachesZero) {
    const Space s = Space::sup(2, Field::Complex);
    const auto id = identity_map(s);
    const auto psi = scaled(id, Scalar(0.0, 1.0));
    double prev = INFINITY;
    for (std::size_t res : {6u, 10u, 18u, 36u}) {
        const auto r = alt_defect(id, psi, UnitScalarGrid::complex(res), {opts(2000)});
        // Closed form: ||Id + w i Id|| = |1 + w i|.
        double want = INFINITY;
        const auto grid = UnitScalarGrid::complex(res);
        for (const auto& w : grid.points()) want = std::min(want, 2.0 - std::abs(1.0 + w * Scalar(0, 1)));
        EXPECT_NEAR(r.best.defect, want, 1e-12);
        EXPECT_LE(r.best.defect, prev + 1e-15);
        prev = r.best.defect;
    }
    EXPECT_LT(prev, 0.01);
    const auto exact = alt_defect(id, psi, UnitScalarGrid::complex(8), {opts(2000)});
    EXPECT_EQ(exact.best_omega, Scalar(0.0, -1.0));
    EXPECT_NEAR(exact.best.defect, 0.0, 1e-15);
}

TEST(Defect, ScalingInvariance) {
    const Space s = Space::sup(4);
    const std::vector<std::pair<BoundedMap, BoundedMap>> pairs = {
        {square_map(s), square_plus_average(s, 1.0)}, {cube_map(s), cube_map(s)}, {identity_map(s), cube_map(s)}};
    for (const auto& [phi, psi] : pairs) {
        ASSERT_NEAR(defect(phi, psi, {opts(4000)}).defect, 0.0, 1e-12);
        for (double a : {0.25, 0.5, 2.0, 4.0}) {
            for (double b : {0.25, 0.5, 2.0, 4.0}) {
                const auto r = defect(scaled(phi, b), scaled(psi, a), {opts(4000)});
                EXPECT_EQ(r.verdict, DefectVerdict::DaugavetHolds);
                EXPECT_NEAR(r.defect, 0.0, 1e-9);
            }
        }
    }
}

TEST(Defect, SumBoundOnPolyhedralCoordinatewise) {
    const Space s = Space::sup(4);
    oracle::Gen g(13);
    for (int k = 0; k < 10; ++k) {
        const double a = g.in(-1, 1), b = g.in(-1, 1);
        const auto phi = scaled(cube_map(s), a);
        const auto psi = scaled(identity_map(s), b);
        const auto r = defect(phi, psi, {opts(4000, k)});
        EXPECT_LE(r.norm_sum.lower_bound, r.norm_phi.lower_bound + r.norm_psi.lower_bound + 1e-9);
    }
}
