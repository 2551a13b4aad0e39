#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicelab/optim.hpp"
#include "slicelab/slices.hpp"

namespace slicelab {

// ---- rank-one characterizations ---------------------------------------------

/// x in B_X and omega with Re(omega x'(x)) >= 1 - eps and
/// ||omega Phi(x) + y/||y|| || >= ||Phi|| + 1 - eps.
struct CharacterizationWitness {
    Vector x;
    Scalar omega = 1.0;
    double slice_value = 0.0;
    double attained = 0.0;
    double epsilon = 0.0;
    // The estimate of ||Phi|| the inequalities refer to.
    double phi_norm = 0.0;
};

struct WitnessSearch {
    std::optional<CharacterizationWitness> witness;
    double phi_norm = 0.0;
    // Best ||Phi(x) + x'(x) y/||y|| || found, and the level it had to reach.
    double best = 0.0;
    double target = 0.0;
    Vector best_x;
    std::size_t evaluations = 0;
};

// Near-norming x of Phi + x' (x) y, then omega = |x'(x)| / x'(x).
[[nodiscard]] WitnessSearch extract_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y, double eps,
                                            const SearchOptions& opts);

struct CertifiedBound {
    // ||Phi(x) + x'(x) y||, evaluated directly; a lower bound for ||Phi + x' (x) y||.
    double value = 0.0;
    // What the triangle-inequality chain alone guarantees:
    // ||omega Phi(x) + y|| - |1 - omega x'(x)| ||y|| with the modulus bound sqrt(2 eps).
    double chain_floor = 0.0;
    // |1 - omega x'(x)| and the bound sqrt(2 eps) it must respect.
    double rotation_gap = 0.0;
    double rotation_bound = 0.0;
};

// Throws StaleWitness when the witness no longer satisfies its inequalities.
[[nodiscard]] CertifiedBound certify_from_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y,
                                                  const CharacterizationWitness& w);

struct AltWitness {
    Vector x;
    Scalar omega1 = 1.0;
    Scalar omega2 = 1.0;
    // The grid rotation omega with ||Phi + omega x' (x) y|| maximal.
    Scalar grid_omega = 1.0;
    double slice_value = 0.0;  // Re(omega1 x'(x))
    double modulus = 0.0;      // |x'(x)|
    double attained = 0.0;     // ||omega2 Phi(x) + y/||y|| ||
    double epsilon = 0.0;
    double phi_norm = 0.0;
};

struct AltWitnessSearch {
    std::optional<AltWitness> witness;
    double phi_norm = 0.0;
    double best = 0.0;
    double target = 0.0;
    std::size_t evaluations = 0;
};

[[nodiscard]] AltWitnessSearch extract_alt_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y,
                                                   double eps, const UnitScalarGrid& grid, const SearchOptions& opts);

// ---- quotient maps ----------------------------------------------------------

enum class QuotientStatus { Surjective, NotSurjective, Inconclusive };

[[nodiscard]] const char* to_string(QuotientStatus s) noexcept;

struct QuotientVerdict {
    QuotientStatus status = QuotientStatus::Inconclusive;
    // "inverse_oracle", "interval_image", "norm_bound" or "covering".
    std::string method;
    // For NotSurjective: a unit vector of the codomain bounded away from the image.
    Vector witness;
    // Certified distance from the witness to the image enclosure.
    double witness_gap = 0.0;
    std::size_t samples = 0;
    double max_roundtrip_error = 0.0;
    // max ||inverse(y)|| - ||y||; informational, the oracle need not be non-expansive.
    double max_inverse_excess = 0.0;
    double covering_radius = 0.0;
};

[[nodiscard]] QuotientVerdict quotient_check(const BoundedMap& phi, const SearchOptions& opts);

// ---- local (Gamma, W, Delta) properties ------------------------------------------

struct LocalContext {
    // Whole ball when empty.
    std::optional<Restriction> gamma;
    std::vector<ScalarMap> W;
    std::vector<Vector> Delta;

    [[nodiscard]] const Restriction* restriction() const noexcept { return gamma ? &*gamma : nullptr; }
};

enum class LocalStatus { Holds, Fails, Inconclusive };

[[nodiscard]] const char* to_string(LocalStatus s) noexcept;

struct LocalRow {
    std::size_t w_index = 0;
    std::size_t delta_index = 0;
    double estimate = 0.0;
    std::optional<double> upper_bound;
    LocalStatus status = LocalStatus::Inconclusive;
    Vector witness;
    // Slice form at the witness: omega = |x'(x)| / x'(x), Re(omega x'(x)) and ||omega Phi(x) + y||.
    Scalar omega = 1.0;
    double slice_value = 0.0;
    double attained = 0.0;
    bool slice_form_ok = false;
};

struct LocalTable {
    double phi_norm_gamma = 0.0;
    double phi_norm_ball = 0.0;
    bool norm_determining = false;
    std::vector<LocalRow> rows;
    LocalStatus overall = LocalStatus::Holds;
    double epsilon = 0.0;
};

struct LocalOptions {
    SearchOptions search;
    // Slice parameter of the witness form.
    double epsilon = 0.05;
    double tol = 1e-6;
};

// sup over Gamma of ||Phi(x) + x'(x) y|| against 2 for every (x', y) in W x Delta.
// Throws InvalidParams unless ||Phi||_Gamma = 1 within tol.
[[nodiscard]] LocalTable local_daugavet_check(const BoundedMap& phi, const LocalContext& ctx, const LocalOptions& opts);

struct SmallImageCell {
    Scalar omega = 1.0;
    bool feasible = false;
    double max_distance = 0.0;
    Vector witness;
};

struct SmallImageVerdict {
    InclusionStatus status = InclusionStatus::Inconclusive;
    // Every grid slice looked empty.
    bool vacuous = false;
    std::vector<SmallImageCell> cells;
    Vector witness;
    Scalar omega = 1.0;
    double max_distance = 0.0;
};

// Psi(S(omega x', delta) cap Gamma) inside the open ball B_eps(conj(omega) y) for every grid omega.
[[nodiscard]] SmallImageVerdict small_image_check(const BoundedMap& psi, const ScalarMap& xp, double delta,
                                                  const Vector& y, double eps, const Restriction* gamma,
                                                  const UnitScalarGrid& grid, const SearchOptions& opts);

struct PipelineParams {
    double epsilon = 0.05;
    UnitScalarGrid grid = UnitScalarGrid::real();
    // Slice widths tried for the small-image hypothesis; default {eps/2, eps/4, eps/8}.
    std::vector<double> deltas;
};

struct T1Report {
    bool certified = false;
    // Empty when certified, otherwise the stage that stopped the pipeline.
    std::string failed_stage;
    double epsilon = 0.0;
    double lower_bound = 0.0;
    // ||omega0 Phi(x0) + y|| - ||Psi(x0) - conj(omega0) y||
    double chain_floor = 0.0;
    Vector witness;
    Scalar omega = 1.0;
    std::size_t w_index = 0;
    std::size_t delta_index = 0;
    double delta = 0.0;
    LocalTable local;
    std::optional<SmallImageVerdict> small_image;
    std::optional<DefectReport> defect;
    std::vector<std::string> notes;
};

[[nodiscard]] T1Report theorem_T1_pipeline(const BoundedMap& phi, const BoundedMap& psi, const LocalContext& ctx,
                                           const PipelineParams& params, const SearchOptions& opts);

// ---- exposed slices and weakly compact maps ------------------------------------

struct ExposedSlice {
    Vector y0;
    double y0_norm = 0.0;
    // Normalized so that Re y0*(y0) = 1.
    DualFunctional y0_star;
    // Unnormalized supporting functional (dual norm 1) and its gap eta.
    DualFunctional z_star;
    double eta = 0.0;
    double delta = 0.0;
    // Every point y of the hull with Re y0*(y) >= 1 - delta has ||y - y0|| <= radius_bound.
    double radius_bound = 0.0;
    double diameter_bound = 0.0;
};

// Vertex y0 of conv(points) with ||y0|| > 1 - eps, strongly exposed by y0*.
// Throws NoExposedPoint when no such vertex is found.
[[nodiscard]] ExposedSlice exposed_slice(const Space& space, const std::vector<Vector>& hull_points, double eps,
                                         std::size_t budget);

// Psi(B_X) samples rotated by the grid: the generators of conv(T Psi(B_X)).
[[nodiscard]] std::vector<Vector> balanced_image_samples(const BoundedMap& psi, const UnitScalarGrid& grid,
                                                         const SearchOptions& opts);

struct WeaklyCompactParams {
    double epsilon = 0.05;
    UnitScalarGrid grid = UnitScalarGrid::real();
    // Alternative equation: weak slices and a rotated sum.
    bool alternative = false;
};

struct WCReport {
    bool certified = false;
    std::string failed_stage;
    double epsilon = 0.0;
    double lower_bound = 0.0;
    std::optional<ExposedSlice> exposed;
    std::optional<ContinuityTable> continuity;
    std::optional<LocalTable> hypothesis;
    Vector witness;
    Scalar omega1 = 1.0;
    Scalar omega2 = 1.0;
    // Rotation of Psi in the final bound (1 for the plain equation).
    Scalar sum_omega = 1.0;
    double mu = 0.0;
    double attained = 0.0;       // ||omega1 Phi(x) + y0/||y0|| ||
    double image_distance = 0.0;  // ||omega2 Psi(x) - y0||
    std::vector<std::string> notes;
};

// Replays the weakly compact argument: exposed slice of conv(T Psi(B)), slice
// continuity against the Upsilon family, the local hypothesis for (Upsilon_{z*}, y0),
// and the final 2 - 3 eps estimate.
[[nodiscard]] WCReport weakly_compact_pipeline(const BoundedMap& phi, const SliceFamily& upsilon, const BoundedMap& psi,
                                               const WeaklyCompactParams& params, const SearchOptions& opts);

// ---- Ky Fan certificates --------------------------------------------------------

struct CertificateProblem {
    std::vector<DualFunctional> V;
    std::vector<Vector> B;
    BoundedMap Psi;
    BoundedMap Phi;
    Vector z;
    double K = 1.0;
};

struct KyFanSample {
    std::size_t combinations = 0;
    // max over sampled convex combinations of LHS - RHS.
    double max_residual = 0.0;
    std::vector<std::size_t> worst_points;
    std::vector<double> worst_weights;
};

[[nodiscard]] KyFanSample kyfan_inequality_sample(const CertificateProblem& prob, std::size_t combos, std::uint64_t seed);

struct ConsequenceCheck {
    double epsilon = 0.0;
    // Points of B in S(x0* o Phi, eps).
    std::size_t slice_points = 0;
    // max ||Psi(x) - z|| over them (-inf when the slice is empty).
    double max_distance = 0.0;
    bool holds = false;
};

struct KyFanCertificate {
    bool found = false;
    DualFunctional x0_star;
    // Mixed weights over V; a single 1 for a pure certificate.
    std::vector<double> weights;
    // min over B of K (1 - <Phi(x), x0*>) - ||Psi(x) - z||
    double value = 0.0;
    // Upper bound on the max-min value from the averaged column strategy.
    double upper_value = 0.0;
    std::size_t iterations = 0;
    std::vector<ConsequenceCheck> consequences;
};

struct KyFanOptions {
    SearchOptions search;
    double tol = 1e-9;
    std::vector<double> epsilons{0.1, 0.05};
};

[[nodiscard]] KyFanCertificate kyfan_certificate_search(const CertificateProblem& prob, const KyFanOptions& opts);

struct HullDistanceReport {
    std::size_t combinations = 0;
    bool holds = false;
    // max over combinations of sum a_i ||Psi(x_i) - z|| - K ||x - sum a_i Phi(x_i)|| at the chosen x.
    double max_residual = 0.0;
    // The x used for the worst combination.
    Vector witness;
    // Combinations settled by the preferred point.
    std::size_t settled_by_hint = 0;
    KyFanCertificate certificate;
};

// `hints` are tried first as the point x; otherwise x maximizes ||x - hull point||.
[[nodiscard]] HullDistanceReport hull_distance_test(const BoundedMap& phi, const BoundedMap& psi, const Vector& z,
                                                    double K, std::size_t combos, const std::vector<Vector>& hints,
                                                    const KyFanOptions& opts);

// ---- L1 small-support machinery ---------------------------------------------

struct L1Witness {
    Vector z;
    Scalar omega = 1.0;
    // ||y + omega Phi(z)|| evaluated directly.
    double value = 0.0;
    // ||y|| + ||Phi(z)|| - 2 int_{supp Phi(z)} |y|
    double chain_floor = 0.0;
    double delta = 0.0;
    double support_mass = 0.0;
    double tail_integral = 0.0;
    // |x'(Phi(z))| and Re(omega x'(z)).
    double image_value = 0.0;
    double slice_value = 0.0;
    double epsilon = 0.0;
};

struct L1WitnessSearch {
    std::optional<L1Witness> witness;
    double delta = 0.0;
    std::size_t candidates = 0;
    double best_image_value = 0.0;
};

// Largest delta with int_A |y| < eps whenever mass(A) < delta (fractional-knapsack bound).
[[nodiscard]] double l1_absolute_continuity_delta(const Space& space, const Vector& y, double eps);

[[nodiscard]] L1WitnessSearch l1_small_support_witness(const BoundedMap& phi, const ScalarMap& xp, const Vector& y,
                                                       double eps, const SearchOptions& opts);

enum class AdmissibilityStatus { Admissible, NotAdmissible, Inconclusive };

[[nodiscard]] const char* to_string(AdmissibilityStatus s) noexcept;

// Arc: supports are runs of consecutive atoms (cyclically); Scattered: arbitrary atom sets.
enum class SupportShape { Arc, Scattered };

struct AdmissibilityRow {
    double delta_prime = 0.0;
    std::size_t samples = 0;
    // Largest image support mass seen, and the declared growth if any.
    double max_image_support = 0.0;
    std::optional<double> declared;
    // max | ||Phi(f)|| - 1 | over unit f.
    double max_norm_defect = 0.0;
    bool ok = false;
};

struct AdmissibilityVerdict {
    AdmissibilityStatus status = AdmissibilityStatus::Inconclusive;
    std::vector<AdmissibilityRow> rows;
    Vector witness;
    std::string reason;
};

// Support mass of f means the weight of atoms with f_i != 0; inputs have support mass <= delta'.
[[nodiscard]] AdmissibilityVerdict admissibility_check(const BoundedMap& phi, const std::vector<double>& delta_grid,
                                                       const SearchOptions& opts,
                                                       SupportShape shape = SupportShape::Arc);

}  // namespace slicelab
