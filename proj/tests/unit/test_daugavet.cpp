#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "slicelab/daugavet.hpp"

using namespace slicelab;

namespace {

SearchOptions opts(std::size_t budget = 4000, std::uint64_t seed = 1) { return {budget, seed}; }

ScalarMap coord(const Space& s, std::size_t i, Scalar c = 1.0) {
    return linear_functional(s, coordinate_functional(s, i, c));
}

Vector ones(std::size_t n, double v = 1.0) { return Vector(n, v); }

// Square map with its averaged rank-one partner on SupNorm(n): Phi = x^2, x' = <x^2, mu>, Psi = x' (x) 1.
struct SquareExample {
    Space s;
    BoundedMap phi;
    ScalarMap xp;
    BoundedMap psi;
    explicit SquareExample(std::size_t n)
        : s(Space::sup(n)),
          phi(square_map(s)),
          xp(pullback(phi, uniform_probability(s))),
          psi(rank_one(xp, ones(n), s)) {}
};

}  // namespace

// ---- extract_witness / certify_from_witness ----------------------------------

TEST(ExtractWitness, IdentityMatchesSignVectorBruteForce) {
    const Space s = Space::sup(2);
    const auto id = identity_map(s);
    const Vector e1{1.0, 0.0};
    double brute = 0.0;
    for (const auto& v : oracle::all_sign_vectors(2)) brute = std::max(brute, oracle::sup_norm({v[0] + v[0], v[1]}));
    const auto r = extract_witness(id, coord(s, 0), e1, 0.1, opts());
    ASSERT_TRUE(r.witness);
    EXPECT_NEAR(r.best, brute, 1e-9);
    EXPECT_EQ(r.witness->omega, Scalar(1.0));
    EXPECT_NEAR(r.witness->x[0].real(), 1.0, 1e-9);
    EXPECT_LE(std::abs(r.witness->x[1]), 1.0);
    EXPECT_NEAR(r.witness->attained, 2.0, 1e-9);
    const auto b = certify_from_witness(id, coord(s, 0), e1, *r.witness);
    EXPECT_NEAR(b.value, 2.0, 1e-9);
}

TEST(ExtractWitness, ConstantFunctionalCube) {
    const Space s = Space::sup(4);
    const auto r = extract_witness(cube_map(s), constant_scalar(s, 1.0), ones(4), 0.1, opts());
    ASSERT_TRUE(r.witness);
    for (const auto& c : r.witness->x) EXPECT_NEAR(c.real(), 1.0, 1e-9);
    EXPECT_EQ(r.witness->omega, Scalar(1.0));
    EXPECT_NEAR(r.witness->attained, 2.0, 1e-9);
}

TEST(ExtractWitness, ProjectionWithAveragingFunctionalNotFound) {
    const Space sum = Space::direct_sum(Space::uniform_l1(4), Space::uniform_l1(4));
    const auto phi = summand_projection(sum);
    const auto xp = pullback(averaging_rank_one(sum), integration_functional(sum.left()));
    for (double eps : {0.4, 0.2, 0.05}) {
        const auto r = extract_witness(phi, xp, ones(4), eps, opts());
        EXPECT_FALSE(r.witness) << eps;
        EXPECT_LE(r.best, 1.0 + 1e-9);
    }
}

TEST(ExtractWitness, ZeroVectorRejected) {
    const Space s = Space::sup(2);
    try {
        (void)extract_witness(identity_map(s), coord(s, 0), {0.0, 0.0}, 0.1, opts());
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
    }
}

TEST(CertifyFromWitness, ExactWitnessHasNoSlack) {
    const Space s = Space::sup(2);
    CharacterizationWitness w;
    w.x = {1.0, 0.0};
    w.omega = 1.0;
    w.epsilon = 0.0;
    w.phi_norm = 1.0;
    w.slice_value = 1.0;
    w.attained = 2.0;
    const auto b = certify_from_witness(identity_map(s), coord(s, 0), {1.0, 0.0}, w);
    EXPECT_DOUBLE_EQ(b.value, 2.0);
    EXPECT_DOUBLE_EQ(b.chain_floor, 2.0);
}

TEST(CertifyFromWitness, SquareExampleAtOnes) {
    const SquareExample ex(6);
    CharacterizationWitness w;
    w.x = ones(6);
    w.epsilon = 0.05;
    w.phi_norm = 1.0;
    const auto b = certify_from_witness(ex.phi, ex.xp, ones(6), w);
    EXPECT_DOUBLE_EQ(b.value, 2.0);
}

TEST(CertifyFromWitness, StaleWitnessRejected) {
    const Space s = Space::sup(2);
    CharacterizationWitness w;
    w.x = {-1.0, 0.0};
    w.epsilon = 0.1;
    w.phi_norm = 1.0;
    try {
        (void)certify_from_witness(identity_map(s), coord(s, 0), {1.0, 0.0}, w);
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::StaleWitness);
    }
}

TEST(CertifyFromWitness, RoundTripOverEpsilons) {
    const Space s = Space::sup(3);
    const std::vector<BoundedMap> maps = {identity_map(s), cube_map(s)};
    const std::vector<ScalarMap> fs = {coord(s, 1), constant_scalar(s, 1.0), product_sign(s, 0, 2),
                                       linear_functional(s, DualFunctional{{0.5, -0.25, 0.25}})};
    oracle::Gen g(11);
    std::size_t found = 0, tried = 0;
    for (double eps : {0.2, 0.1, 0.05}) {
        for (const auto& phi : maps) {
            for (const auto& xp : fs) {
                Vector y(3);
                for (auto& c : y) c = g.in(-1.0, 1.0);
                const double ny = oracle::sup_norm(y);
                const auto r = extract_witness(phi, xp, y, eps, opts(3000));
                ++tried;
                // SupNorm(3) lacks the Daugavet property, so some pairs have no witness;
                // then the search must not have reached its target either.
                if (!r.witness) {
                    EXPECT_LT(r.best, r.target + 1e-12);
                    continue;
                }
                ++found;
                const auto b = certify_from_witness(phi, xp, y, *r.witness);
                EXPECT_GE(b.value, b.chain_floor - 1e-12);
                EXPECT_LE(b.rotation_gap, b.rotation_bound + 1e-12);
                EXPECT_GE(b.value, r.phi_norm + ny - (2.0 + std::sqrt(2.0)) * eps * ny - 1e-9);
                // The direct value never exceeds ||Phi|| + ||y||.
                EXPECT_LE(b.value, 1.0 + ny + 1e-9);
            }
        }
    }
    EXPECT_GE(2 * found, tried);
}

// ---- alternative witnesses -----------------------------------------------------

TEST(ExtractAltWitness, NegatedCoordinate) {
    const Space s = Space::sup(2);
    const auto r =
        extract_alt_witness(identity_map(s), coord(s, 0, -1.0), {1.0, 0.0}, 0.1, UnitScalarGrid::real(), opts());
    ASSERT_TRUE(r.witness);
    // Two-point omega brute force: only omega = -1 turns -e1* (x) e1 into a norm-two addition.
    EXPECT_EQ(r.witness->grid_omega, Scalar(-1.0));
    EXPECT_EQ(r.witness->omega1, Scalar(-1.0));
    EXPECT_EQ(r.witness->omega2, Scalar(1.0));
    EXPECT_NEAR(r.witness->x[0].real(), 1.0, 1e-9);
    EXPECT_GE(r.witness->modulus, 0.9);
}

TEST(ExtractAltWitness, MinusIdentitySatisfiesAlternativeOnly) {
    const Space line = Space::sup(1);
    const auto xp = coord(line, 0, -1.0);
    const auto de = extract_witness(identity_map(line), xp, {1.0}, 0.1, opts());
    EXPECT_FALSE(de.witness);
    EXPECT_NEAR(de.best, 0.0, 1e-12);
    const auto ade = extract_alt_witness(identity_map(line), xp, {1.0}, 0.1, UnitScalarGrid::real(), opts());
    EXPECT_TRUE(ade.witness);
}

TEST(ExtractAltWitness, EpsilonOneIsVacuous) {
    const Space s = Space::sup(2);
    const auto r = extract_alt_witness(cube_map(s), coord(s, 1), {0.3, -1.0}, 1.0, UnitScalarGrid::real(), opts());
    ASSERT_TRUE(r.witness);
    EXPECT_GE(r.witness->slice_value, 0.0);
}

TEST(ExtractAltWitness, ComplexGridAgreesWithSingleMapConstruction) {
    const Space s = Space::sup(2, Field::Complex);
    const auto xp = linear_functional(s, coordinate_functional(s, 0, Scalar(0.0, 1.0)));
    const auto r = extract_alt_witness(identity_map(s), xp, {1.0, 0.0}, 0.1, UnitScalarGrid::complex(8), opts());
    ASSERT_TRUE(r.witness);
    EXPECT_NEAR(std::abs(r.witness->omega1), 1.0, 1e-12);
    EXPECT_NEAR(r.witness->slice_value, r.witness->modulus, 1e-12);
    EXPECT_GE(r.witness->attained, r.phi_norm + 1.0 - 0.1);
}

// ---- quotient maps -----------------------------------------------------------

TEST(QuotientCheck, Examples) {
    const Space sum = Space::direct_sum(Space::uniform_l1(4), Space::uniform_l1(4));
    const auto proj = quotient_check(summand_projection(sum), opts(2000));
    EXPECT_EQ(proj.status, QuotientStatus::Surjective);
    EXPECT_EQ(proj.method, "inverse_oracle");
    EXPECT_LE(proj.max_roundtrip_error, 1e-9);

    const auto cube = quotient_check(cube_map(Space::sup(3)), opts(2000));
    EXPECT_EQ(cube.status, QuotientStatus::Surjective);

    const auto sq = quotient_check(square_map(Space::sup(3)), opts(2000));
    ASSERT_EQ(sq.status, QuotientStatus::NotSurjective);
    EXPECT_EQ(sq.method, "interval_image");
    ASSERT_EQ(sq.witness.size(), 3u);
    for (const auto& c : sq.witness) EXPECT_EQ(c, Scalar(-1.0));
    EXPECT_NEAR(sq.witness_gap, 1.0, 1e-12);
}

TEST(QuotientCheck, ScaledMapFailsByNorm) {
    const Space s = Space::sup(2);
    const auto v = quotient_check(scaled(identity_map(s), 0.5), opts(500));
    EXPECT_EQ(v.status, QuotientStatus::NotSurjective);
}

// ---- local property ------------------------------------------------------------

TEST(LocalDaugavet, CubeWithConstantFunctional) {
    const Space s = Space::sup(4);
    LocalContext ctx;
    ctx.W = {constant_scalar(s, 1.0)};
    for (const auto& v : oracle::all_sign_vectors(4)) ctx.Delta.push_back(v);
    const auto t = local_daugavet_check(cube_map(s), ctx, {opts(1500)});
    EXPECT_EQ(t.overall, LocalStatus::Holds);
    ASSERT_EQ(t.rows.size(), 16u);
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.status, LocalStatus::Holds);
        // Componentwise cube root of a sign vector is the vector itself.
        const auto& y = ctx.Delta[r.delta_index];
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.witness[i].real(), y[i].real(), 1e-9);
        EXPECT_TRUE(r.slice_form_ok);
    }
    EXPECT_TRUE(t.norm_determining);
}

TEST(LocalDaugavet, FourthRootOnPositiveCone) {
    const Space s = Space::sup(3);
    LocalContext ctx;
    ctx.gamma = positive_orthant(s);
    ctx.W = {linear_functional(s, uniform_probability(s)), coord(s, 0), coord(s, 2)};
    ctx.Delta = {ones(3), {1.0, 0.5, 0.0}, {0.25, 1.0, 0.75}};
    const auto t = local_daugavet_check(fourth_root_map(s), ctx, {opts(1500)});
    EXPECT_EQ(t.overall, LocalStatus::Holds);
    for (const auto& r : t.rows) {
        for (const auto& c : r.witness) EXPECT_NEAR(c.real(), 1.0, 1e-9);
    }
    // The pointwise domination 1 >= x^(1/4) >= x on [0, 1].
    for (const auto& x : sample_ball(s, 3, 200)) {
        for (const auto& c : x) {
            const double a = std::abs(c.real());
            EXPECT_GE(std::pow(a, 0.25), a - 1e-15);
        }
    }
}

TEST(LocalDaugavet, SquareExampleNegativeDirectionFails) {
    const SquareExample ex(6);
    LocalContext ctx;
    ctx.W = {ex.xp};
    ctx.Delta = {ones(6), ones(6, -1.0)};
    const auto t = local_daugavet_check(ex.phi, ctx, {opts(2000)});
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0].status, LocalStatus::Holds);
    EXPECT_EQ(t.rows[1].status, LocalStatus::Fails);
    ASSERT_TRUE(t.rows[1].upper_bound);
    EXPECT_LE(*t.rows[1].upper_bound, 1.0 + 1e-9);
    EXPECT_EQ(t.overall, LocalStatus::Fails);
}

TEST(LocalDaugavet, RejectsNonUnitNorm) {
    const Space s = Space::sup(2);
    LocalContext ctx;
    ctx.W = {coord(s, 0)};
    ctx.Delta = {{1.0, 0.0}};
    EXPECT_THROW((void)local_daugavet_check(scaled(identity_map(s), 0.5), ctx, {opts(500)}), LabError);
}

// ---- small image -----------------------------------------------------------------

TEST(SmallImage, ConstantMap) {
    const Space s = Space::sup(3);
    const Vector y{1.0, -1.0, 0.5};
    const auto psi = constant_map(s, s, y);
    const auto v = small_image_check(psi, constant_scalar(s, 1.0), 0.1, y, 0.05, nullptr, UnitScalarGrid::real(),
                                     opts(1000));
    EXPECT_EQ(v.status, InclusionStatus::HoldsOnGrid);
    ASSERT_EQ(v.cells.size(), 2u);
    EXPECT_TRUE(v.cells[0].feasible);
    EXPECT_NEAR(v.cells[0].max_distance, 0.0, 1e-12);
    EXPECT_FALSE(v.cells[1].feasible);
    EXPECT_FALSE(v.vacuous);
    // A functional taking both signs opens the omega = -1 slice, where the ball is around -y.
    const auto w = small_image_check(psi, coord(s, 0), 0.1, y, 0.05, nullptr, UnitScalarGrid::real(), opts(1000));
    EXPECT_EQ(w.status, InclusionStatus::Violated);
    EXPECT_EQ(w.omega, Scalar(-1.0));
    EXPECT_NEAR(w.max_distance, 2.0, 1e-12);
}

TEST(SmallImage, RankOneWithinSqrtBound) {
    const Space s = Space::sup(3);
    const auto xp = linear_functional(s, DualFunctional{{0.5, 0.25, -0.25}});
    const Vector y{1.0, -0.5, 0.25};
    for (double delta : {0.02, 0.05, 0.1}) {
        const auto v = small_image_check(rank_one(xp, y, s), xp, delta, y, 2.0 * delta + 0.01, nullptr,
                                         UnitScalarGrid::real(), opts(2000));
        EXPECT_EQ(v.status, InclusionStatus::HoldsOnGrid) << delta;
        // Real x': |x'(x) - conj(omega)| <= delta on the slice.
        EXPECT_LE(v.max_distance, delta * 1.0 + 1e-9);
    }
}

TEST(SmallImage, JumpMapMatchesLineScan) {
    const Space line = Space::sup(1);
    const auto psi = signed_jump_map();
    const double eps = 0.5;
    const auto v = small_image_check(psi, coord(line, 0), 0.1, {-1.0}, eps, nullptr, UnitScalarGrid::real(),
                                     opts(2000));
    ASSERT_EQ(v.cells.size(), 2u);
    for (const auto& cell : v.cells) {
        const double w = cell.omega.real();
        const double centre = w * -1.0;
        double scan = -1.0;
        for (int k = 0; k <= 2000; ++k) {
            const double x = -1.0 + k * 0.001;
            if (w * x < 0.9 - 1e-12) continue;
            const double px = x == 0.0 ? 1.0 : -std::abs(x);
            scan = std::max(scan, std::abs(px - centre));
        }
        ASSERT_TRUE(cell.feasible);
        // The search value is a lower estimate; the slice boundary is approached to within 1e-4.
        EXPECT_LE(cell.max_distance, scan + 1e-9);
        EXPECT_GE(cell.max_distance, scan - 1e-4);
    }
    EXPECT_EQ(v.status, InclusionStatus::Violated);
    EXPECT_EQ(v.omega, Scalar(-1.0));
}

TEST(SmallImage, EmptySlicesAreVacuous) {
    const Space s = Space::sup(2);
    // |x'| = 0.1 everywhere, so no rotation of it reaches 1 - delta.
    const auto v = small_image_check(identity_map(s), constant_scalar(s, 0.1), 0.2, {1.0, 0.0}, 0.1, nullptr,
                                     UnitScalarGrid::real(), opts(500));
    EXPECT_TRUE(v.vacuous);
    EXPECT_EQ(v.status, InclusionStatus::HoldsOnGrid);
}

// ---- small-image pipeline ---------------------------------------------------------

TEST(T1Pipeline, RankOneOverCubeContext) {
    const Space s = Space::sup(4);
    const Vector y{1.0, -1.0, 1.0, 1.0};
    LocalContext ctx;
    ctx.W = {constant_scalar(s, 1.0), product_sign(s, 0, 1)};
    ctx.Delta = {y};
    const auto psi = rank_one(product_sign(s, 0, 1), y, s);
    const double eps = 0.05;
    const auto rep = theorem_T1_pipeline(cube_map(s), psi, ctx, {eps}, opts(2000));
    ASSERT_TRUE(rep.certified) << rep.failed_stage;
    EXPECT_EQ(rep.w_index, 1u);
    EXPECT_GE(rep.lower_bound, 2.0 - 3.0 * eps);
    EXPECT_GE(rep.chain_floor, 2.0 - 3.0 * eps);
    ASSERT_TRUE(rep.defect);
    EXPECT_NEAR(rep.defect->norm_sum.lower_bound, 2.0, 1e-9);
}

TEST(T1Pipeline, ConstantPsiIsExact) {
    const Space s = Space::sup(4);
    const Vector y{1.0, 1.0, -1.0, 1.0};
    LocalContext ctx;
    ctx.W = {constant_scalar(s, 1.0)};
    ctx.Delta = {y};
    const auto rep = theorem_T1_pipeline(cube_map(s), constant_map(s, s, y), ctx, {0.05}, opts(2000));
    ASSERT_TRUE(rep.certified) << rep.failed_stage;
    EXPECT_DOUBLE_EQ(rep.lower_bound, 2.0);
}

TEST(T1Pipeline, SquareExampleHasNoDefect) {
    const SquareExample ex(6);
    LocalContext ctx;
    ctx.W = {ex.xp};
    ctx.Delta = {ones(6)};
    const auto rep = theorem_T1_pipeline(ex.phi, ex.psi, ctx, {0.05}, opts(2000));
    ASSERT_TRUE(rep.certified) << rep.failed_stage;
    ASSERT_TRUE(rep.defect);
    EXPECT_NEAR(rep.defect->defect, 0.0, 1e-9);
    EXPECT_EQ(rep.defect->verdict, DefectVerdict::DaugavetHolds);
}

TEST(T1Pipeline, FailedHypothesisNamesStage) {
    const Space line = Space::sup(1);
    LocalContext ctx;
    ctx.W = {coord(line, 0)};
    ctx.Delta = {{1.0}};
    const auto rep = theorem_T1_pipeline(identity_map(line), signed_jump_map(), ctx, {0.1}, opts(1000));
    EXPECT_FALSE(rep.certified);
    EXPECT_EQ(rep.failed_stage, "small-image");
    ASSERT_TRUE(rep.small_image);
    EXPECT_EQ(rep.small_image->status, InclusionStatus::Violated);

    ctx.Delta = {{-1.0}};
    const auto none = theorem_T1_pipeline(identity_map(line), signed_jump_map(), ctx, {0.1}, opts(1000));
    EXPECT_EQ(none.failed_stage, "local-daugavet");
    EXPECT_EQ(none.local.overall, LocalStatus::Fails);
}

// ---- exposed slices ---------------------------------------------------------------

namespace {

// Largest pairwise distance among hull samples in the slice, by dense barycentric enumeration.
double polygon_slice_diameter(const std::vector<Vector>& verts, const DualFunctional& f, double delta, int steps) {
    std::vector<oracle::Vec> in;
    const std::size_t m = verts.size();
    std::function<void(std::size_t, int, std::vector<int>&)> rec = [&](std::size_t i, int left, std::vector<int>& k) {
        if (i + 1 == m) {
            k[i] = left;
            oracle::Vec p(verts[0].size(), 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t c = 0; c < p.size(); ++c) p[c] += (static_cast<double>(k[j]) / steps) * verts[j][c];
            }
            double v = 0.0;
            for (std::size_t c = 0; c < p.size(); ++c) v += (std::conj(f.coords[c]) * p[c]).real();
            if (v >= 1.0 - delta) in.push_back(p);
            return;
        }
        for (int a = 0; a <= left; ++a) {
            k[i] = a;
            rec(i + 1, left - a, k);
        }
    };
    std::vector<int> k(m);
    rec(0, steps, k);
    double d = 0.0;
    for (const auto& a : in) {
        for (const auto& b : in) {
            oracle::Vec diff(a.size());
            for (std::size_t c = 0; c < a.size(); ++c) diff[c] = a[c] - b[c];
            d = std::max(d, oracle::l2(diff));
        }
    }
    return d;
}

}  // namespace

TEST(ExposedSlice, SquareInEuclideanPlane) {
    const Space s = Space::lp(2, 2.0);
    const std::vector<Vector> hull = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    const auto e = exposed_slice(s, hull, 0.5, 1000);
    EXPECT_NEAR(e.y0_norm, 1.0, 1e-12);
    EXPECT_EQ(e.y0, hull[0]);
    EXPECT_GT(e.delta, 0.0);
    EXPECT_LE(e.delta, 0.25);
    EXPECT_NEAR(dual_pair(e.y0_star, e.y0).real(), 1.0, 1e-12);
    const double diam = polygon_slice_diameter(hull, e.y0_star, e.delta, 400);
    EXPECT_LE(diam, 2.0 * std::sqrt(2.0) * e.delta + 1e-9);
    EXPECT_LE(diam, e.diameter_bound + 1e-9);
    EXPECT_LT(e.diameter_bound, 0.5);
}

TEST(ExposedSlice, RandomPolygonsAgainstBruteForce) {
    const Space s = Space::sup(2);
    oracle::Gen g(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vector> hull;
        for (int k = 0; k < 3; ++k) {
            const auto v = g.vec(2);
            hull.push_back(v);
            hull.push_back({-v[0], -v[1]});
        }
        hull.push_back({1.0, g.in(-1.0, 1.0)});
        hull.push_back({-1.0, -hull.back()[1]});
        const double eps = g.in(0.1, 0.6);
        const auto e = exposed_slice(s, hull, eps, 1000);
        EXPECT_GT(e.y0_norm, 1.0 - eps);
        EXPECT_LE(e.delta, eps / 2.0 + 1e-15);
        EXPECT_LT(e.diameter_bound, eps);
        for (const auto& y : hull) {
            if (dual_pair(e.y0_star, y).real() >= 1.0 - e.delta) EXPECT_LT(norm(s, y - e.y0), e.diameter_bound);
        }
        const double diam = polygon_slice_diameter(hull, e.y0_star, e.delta, 24);
        EXPECT_LE(diam, e.diameter_bound + 1e-9);
    }
}

TEST(ExposedSlice, Segment) {
    const Space s = Space::sup(3);
    const Vector y{1.0, -0.5, 0.25};
    const auto e = exposed_slice(s, {y, -y}, 0.1, 100);
    EXPECT_EQ(e.y0, y);
    EXPECT_LE(polygon_slice_diameter({y, -y}, e.y0_star, e.delta, 2000), 1e-12 + 2.0 * e.delta * 2.0);
}

TEST(ExposedSlice, RankOneImages) {
    const Space s = Space::sup(3);
    const auto xp = linear_functional(s, DualFunctional{{0.5, 0.25, 0.0}});
    const Vector y{1.0, -1.0, 0.5};
    const auto pts = balanced_image_samples(rank_one(xp, y, s), UnitScalarGrid::real(), opts(2000));
    EXPECT_THROW((void)exposed_slice(s, pts, 0.2, 1000), LabError);
    const auto e = exposed_slice(s, pts, 0.3, 1000);
    // One-dimensional hull: the samples are t y with |t| <= ||x'|| = 0.75.
    double tmax = 0.0;
    for (const auto& p : pts) tmax = std::max(tmax, std::abs(p[0]));
    EXPECT_NEAR(e.y0_norm, tmax, 1e-12);
    EXPECT_NEAR(tmax, 0.75, 1e-9);
    EXPECT_NEAR(std::abs(e.y0[1].real()), tmax, 1e-12);
}

TEST(ExposedSlice, SmallHullRejected) {
    const Space s = Space::sup(2);
    try {
        (void)exposed_slice(s, {{0.1, 0.0}, {-0.1, 0.0}}, 0.5, 100);
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoExposedPoint);
    }
}

// ---- weakly compact pipeline ---------------------------------------------------------

TEST(WeaklyCompactPipeline, RankOneSelfContinuity) {
    const Space s = Space::sup(4);
    const Vector y{1.0, -1.0, 1.0, 1.0};
    const auto psi = rank_one(product_sign(s, 0, 1), y, s);
    const SliceFamily ups{psi, {}, {}, UnitScalarGrid::real(), SliceKind::Strong};
    for (bool alt : {false, true}) {
        const auto rep = weakly_compact_pipeline(cube_map(s), ups, psi, {0.1, UnitScalarGrid::real(), alt}, opts(2000));
        ASSERT_TRUE(rep.certified) << alt << " " << rep.failed_stage;
        EXPECT_GE(rep.lower_bound, 2.0 - 3.0 * 0.1);
        EXPECT_LT(rep.image_distance, 0.1);
        EXPECT_LE(rep.mu, rep.exposed->delta);
    }
}

TEST(WeaklyCompactPipeline, LinearFactor) {
    const Space s = Space::sup(4);
    Matrix P(4, 4);
    for (std::size_t i = 0; i < 4; ++i) P(i, 0) = 1.0;
    const auto ups = cube_map(s);
    const auto psi = compose_linear(linear_map(s, s, P), ups);
    const SliceFamily fam{ups, {}, {}, UnitScalarGrid::real(), SliceKind::Strong};
    const auto rep = weakly_compact_pipeline(cube_map(s), fam, psi, {0.1}, opts(2000));
    ASSERT_TRUE(rep.certified) << rep.failed_stage;
    ASSERT_TRUE(rep.continuity);
    EXPECT_EQ(rep.continuity->rows.front().candidate, "y*P");
}

TEST(WeaklyCompactPipeline, ShiftIntoEuclideanSummandStopsAtContinuity) {
    const Space sum = Space::direct_sum(Space::uniform_l1(4), Space::lp(4, 2.0));
    const auto phi = summand_projection(sum);
    const SliceFamily fam{phi, {}, {}, UnitScalarGrid::real(), SliceKind::Strong};
    const auto rep = weakly_compact_pipeline(phi, fam, shift_map(sum), {0.1}, opts(2000));
    EXPECT_FALSE(rep.certified);
    EXPECT_EQ(rep.failed_stage, "slice-continuity");
    ASSERT_TRUE(rep.continuity);
    EXPECT_EQ(rep.continuity->overall, InclusionStatus::Violated);
}

// ---- Ky Fan ------------------------------------------------------------------------

namespace {

// Points g of SupNorm(n) with g^2 <= f <= |g| for f = (1, 0.5, ..., 0.5).
std::vector<Vector> sample_C(std::size_t n, std::size_t count, std::uint64_t seed) {
    oracle::Gen g(seed);
    std::vector<Vector> out;
    for (std::size_t k = 0; k < count; ++k) {
        Vector v(n);
        v[0] = g.unit() < 0.5 ? 1.0 : -1.0;
        for (std::size_t i = 1; i < n; ++i) v[i] = (g.unit() < 0.5 ? 1.0 : -1.0) * g.in(0.5, std::sqrt(0.5));
        out.push_back(v);
    }
    return out;
}

std::vector<DualFunctional> point_masses(const Space& s) {
    std::vector<DualFunctional> v;
    for (std::size_t i = 0; i < s.dimension(); ++i) v.push_back(coordinate_functional(s, i));
    return v;
}

}  // namespace

TEST(KyFan, SquareAbsoluteValueInequality) {
    const Space s = Space::sup(8);
    const CertificateProblem prob{point_masses(s), sample_C(8, 200, 3), absolute_value_map(s), square_map(s), ones(8), 1.0};
    const auto r = kyfan_inequality_sample(prob, 2000, 9);
    EXPECT_EQ(r.combinations, 2000u);
    EXPECT_LE(r.max_residual, 0.0);
}

TEST(KyFan, ConstantPsiAtZ) {
    const Space s = Space::sup(3);
    const Vector z{1.0, 0.0, 0.0};
    const CertificateProblem prob{point_masses(s), sample_ball(s, 2, 50), constant_map(s, s, z), cube_map(s), z, 1.0};
    EXPECT_LE(kyfan_inequality_sample(prob, 500, 4).max_residual, 0.0);
    const auto c = kyfan_certificate_search(prob, {opts()});
    EXPECT_TRUE(c.found);
    EXPECT_GE(c.value, 0.0);
}

TEST(KyFan, ConstructedFailure) {
    const Space s = Space::sup(2);
    const Vector z{1.0, 0.0};
    const CertificateProblem prob{{coordinate_functional(s, 0)}, sample_ball(s, 2, 30), constant_map(s, s, -z),
                                  constant_map(s, s, z), z, 1.0};
    EXPECT_NEAR(kyfan_inequality_sample(prob, 100, 1).max_residual, 2.0, 1e-12);
    const auto c = kyfan_certificate_search(prob, {opts()});
    EXPECT_FALSE(c.found);
    EXPECT_NEAR(c.value, -2.0, 1e-12);
}

TEST(KyFan, CertificateIsTheHalfCoordinate) {
    const Space s = Space::sup(2);
    const auto B = sample_C(2, 100, 8);
    const CertificateProblem prob{point_masses(s), B, absolute_value_map(s), square_map(s), ones(2), 1.0};
    // Enumeration over the point masses.
    std::vector<double> mins;
    for (std::size_t j = 0; j < 2; ++j) {
        double m = INFINITY;
        for (const auto& g : B) {
            const double d = std::max(1.0 - std::abs(g[0]), 1.0 - std::abs(g[1]));
            m = std::min(m, 1.0 - std::norm(g[j]) - d);
        }
        mins.push_back(m);
    }
    ASSERT_LT(mins[0], 0.0);
    ASSERT_GE(mins[1], 0.0);
    const auto c = kyfan_certificate_search(prob, {opts()});
    ASSERT_TRUE(c.found);
    EXPECT_NEAR(c.x0_star.coords[1].real(), 1.0, 1e-12);
    EXPECT_NEAR(c.value, mins[1], 1e-12);
    for (const auto& q : c.consequences) {
        EXPECT_TRUE(q.holds);
        EXPECT_EQ(q.slice_points, 0u);
    }
}

TEST(KyFan, CertificateImpliesSliceInclusion) {
    const Space s = Space::sup(3);
    oracle::Gen g(21);
    for (int trial = 0; trial < 10; ++trial) {
        const Vector z{g.in(-1, 1), g.in(-1, 1), 1.0};
        Matrix A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) A(i, j) = g.in(-0.3, 0.3);
        const auto psi = sum(constant_map(s, s, z), linear_map(s, s, A));
        const CertificateProblem prob{point_masses(s), sample_ball(s, trial, 80), psi, identity_map(s), z, 2.0};
        const auto c = kyfan_certificate_search(prob, {opts()});
        if (!c.found) continue;
        for (const auto& q : c.consequences) {
            EXPECT_TRUE(q.holds);
            if (q.slice_points > 0) EXPECT_LE(q.max_distance, prob.K * q.epsilon + 1e-9);
        }
    }
}

TEST(KyFan, MixedStrategyNeeded) {
    // Two rows, each losing against one column; the half-half mixture wins.
    const Space s = Space::sup(2);
    const std::vector<Vector> B = {{1.0, 0.0}, {0.0, 1.0}};
    const Vector z{0.0, 0.0};
    const auto psi = constant_map(s, s, Vector{0.25, 0.0});
    const CertificateProblem prob{point_masses(s), B, psi, identity_map(s), z, 1.0};
    const auto c = kyfan_certificate_search(prob, {opts(20000)});
    ASSERT_TRUE(c.found);
    EXPECT_NEAR(c.weights[0], 0.5, 0.05);
    EXPECT_GE(c.upper_value, c.value);
}

TEST(HullDistance, SquareExampleWithOnes) {
    const SquareExample ex(6);
    const auto r = hull_distance_test(ex.phi, ex.psi, ones(6), 1.0, 1000, {ones(6)}, {opts(4000)});
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.combinations, 1000u);
    EXPECT_EQ(r.settled_by_hint, 1000u);
    // Direct evaluation: sum a_i (1 - <x_i^2, mu>) = 1 - <h, mu> <= 1 - min h = ||1 - h||.
    EXPECT_LE(r.max_residual, 1e-12);
}

TEST(HullDistance, ConstantPsi) {
    const Space s = Space::sup(3);
    const Vector z{1.0, 0.0, 0.0};
    const auto r = hull_distance_test(cube_map(s), constant_map(s, s, z), z, 1.0, 300, {}, {opts()});
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.certificate.found);
}

// ---- L1 small supports --------------------------------------------------------------

TEST(L1Delta, MatchesSubsetEnumeration) {
    oracle::Gen g(2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 6;
        std::vector<double> w(n);
        for (auto& x : w) x = g.in(0.05, 0.3);
        const Space s = Space::weighted_l1(w);
        Vector y(n);
        for (auto& c : y) c = g.in(-2.0, 2.0);
        const double eps = g.in(0.05, 0.3);
        const double delta = l1_absolute_continuity_delta(s, y, eps);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            double m = 0, integral = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    m += w[i];
                    integral += w[i] * std::abs(y[i]);
                }
            }
            if (m < delta) EXPECT_LT(integral, eps + 1e-12);
        }
    }
}

TEST(L1Witness, AbsoluteValueSingleAtom) {
    const std::size_t n = 64;
    const Space s = Space::uniform_l1(n);
    const auto xp = linear_functional(s, integration_functional(s));
    const double eps = 0.05;
    const auto r = l1_small_support_witness(absolute_value_map(s), xp, ones(n), eps, opts());
    ASSERT_TRUE(r.witness);
    const auto& w = *r.witness;
    EXPECT_NEAR(r.delta, eps, 1e-15);
    EXPECT_NEAR(w.support_mass, 1.0 / 64.0, 1e-15);
    // 63/64 + 65/64.
    EXPECT_NEAR(w.value, 2.0, 1e-12);
    EXPECT_GE(w.value, 2.0 - 2.0 * eps);
    EXPECT_GE(w.value, w.chain_floor - 1e-12);
    EXPECT_GE(w.chain_floor, 2.0 - 2.0 * eps);
    EXPECT_LT(w.tail_integral, eps);
}

TEST(L1Witness, ConvolutionSquare) {
    const std::size_t n = 32;
    const Space s = Space::uniform_l1(n);
    const auto xp = linear_functional(s, integration_functional(s));
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = i % 2 == 0 ? 1.5 : 0.5;
    const auto r = l1_small_support_witness(cyclic_convolution_map(s), xp, y, 0.1, opts());
    ASSERT_TRUE(r.witness);
    EXPECT_GE(r.witness->value, r.witness->chain_floor - 1e-12);
    EXPECT_GE(r.witness->chain_floor, 2.0 - 0.2);
}

TEST(L1Witness, RejectsOtherSpaces) {
    const Space s = Space::sup(3);
    try {
        (void)l1_small_support_witness(identity_map(s), coord(s, 0), ones(3), 0.1, opts());
        FAIL();
    } catch (const LabError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedSpace);
    }
}

TEST(Admissibility, Verdicts) {
    const Space s = Space::uniform_l1(64);
    const std::vector<double> grid{1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};
    EXPECT_EQ(admissibility_check(absolute_value_map(s), grid, opts()).status, AdmissibilityStatus::Admissible);
    const auto conv = admissibility_check(cyclic_convolution_map(s), grid, opts());
    EXPECT_EQ(conv.status, AdmissibilityStatus::Admissible) << conv.reason;
    for (const auto& r : conv.rows) EXPECT_LE(r.max_image_support, 2.0 * r.delta_prime + 1e-12);

    // Scattered supports: the sumset of k atoms can hold k(k+1)/2 atoms.
    const auto scattered = admissibility_check(cyclic_convolution_map(s), grid, opts(), SupportShape::Scattered);
    EXPECT_EQ(scattered.status, AdmissibilityStatus::NotAdmissible);

    const auto spread = rank_one(pullback(absolute_value_map(s), integration_functional(s)), ones(64), s);
    const auto v = admissibility_check(spread, grid, opts());
    EXPECT_EQ(v.status, AdmissibilityStatus::NotAdmissible);
    EXPECT_FALSE(v.witness.empty());
}
