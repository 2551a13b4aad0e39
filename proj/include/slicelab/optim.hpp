#pragma once

#include <functional>
#include <optional>
#include <string>

#include "slicelab/maps.hpp"
#include "slicelab/slice.hpp"

namespace slicelab {

struct SearchOptions {
    std::size_t budget = 100000;
    std::uint64_t seed = 0;
};

/// Subset Gamma of the unit ball. `sampler`, when present, produces points
/// of Gamma and is used to seed searches that would otherwise start outside it.
struct Restriction {
    std::string name;
    std::function<bool(const Vector&)> contains;
    std::function<std::vector<Vector>(std::uint64_t seed, std::size_t count)> sampler;
};

// Real points with all coordinates >= 0.
[[nodiscard]] Restriction positive_orthant(const Space& space);

enum class SearchMethod { ExtremePoints, Multistart, Hybrid };

[[nodiscard]] const char* to_string(SearchMethod m) noexcept;

struct NormEstimate {
    double lower_bound = 0.0;
    std::optional<double> upper_bound;
    Vector witness;
    std::size_t evaluations = 0;
    SearchMethod method = SearchMethod::ExtremePoints;
    std::uint64_t seed = 0;
    // Where the upper bound came from ("linear", "interval", "declared", ...).
    std::string upper_source;

    [[nodiscard]] bool attained(double slack = 1e-9) const {
        return upper_bound && *upper_bound - lower_bound <= slack * std::max(1.0, *upper_bound);
    }
};

using Objective = std::function<double(const Vector&)>;

struct MaximizeResult {
    double value = 0.0;
    Vector witness;
    std::size_t evaluations = 0;
    SearchMethod method = SearchMethod::ExtremePoints;
    bool found = false;
};

/// Hybrid maximizer over B_X (intersected with Gamma): candidate points and
/// extreme points first, then multistart coordinate pattern search with
/// geometric step decay. Ties go to the lexicographically smallest point.
[[nodiscard]] MaximizeResult maximize_on_ball(const Space& domain, const Objective& f, const Restriction* gamma,
                                              const SearchOptions& opts, const std::vector<Vector>& candidates = {});

struct UpperBound {
    std::optional<double> value;
    std::string source;
    // A point attaining `value`, when the bound is exact (linear maps).
    std::optional<Vector> witness;
};

// Best available analytic bound on sup ||map(x)|| over the unit ball.
[[nodiscard]] UpperBound analytic_upper_bound(const BoundedMap& map);

// Exact operator norm of a matrix between two spaces, when one of the finite
// formulas applies (polyhedral domain, sup codomain, or finite dual ball).
struct OperatorNorm {
    double value;
    Vector witness;
};
[[nodiscard]] std::optional<OperatorNorm> linear_operator_norm(const Matrix& T, const Space& domain,
                                                               const Space& codomain);

[[nodiscard]] NormEstimate sup_norm(const BoundedMap& map, const SearchOptions& opts,
                                    const Restriction* gamma = nullptr);
[[nodiscard]] NormEstimate sup_norm(const ScalarMap& p, const SearchOptions& opts,
                                    const Restriction* gamma = nullptr);
// Engine for normalized_functional backed by sup_norm.
[[nodiscard]] ScalarNormEngine make_norm_engine(const SearchOptions& opts);

enum class SliceSearchStatus { Feasible, InfeasibleOnBudget };

[[nodiscard]] const char* to_string(SliceSearchStatus s) noexcept;

struct SliceSearchResult {
    SliceSearchStatus status = SliceSearchStatus::InfeasibleOnBudget;
    double value = 0.0;
    Vector witness;
    std::size_t evaluations = 0;
    std::uint64_t seed = 0;
};

/// Maximizes `objective` over the slice (and Gamma) with an escalating
/// penalty on slice deficiency; only exactly feasible points are reported.
[[nodiscard]] SliceSearchResult sup_on_slice(const Objective& objective, const SliceSpec& slice,
                                             const Restriction* gamma, const SearchOptions& opts,
                                             const std::vector<Vector>& hints = {});

enum class DefectVerdict { DaugavetHolds, DaugavetFails, Inconclusive };

[[nodiscard]] const char* to_string(DefectVerdict v) noexcept;

struct DefectReport {
    NormEstimate norm_phi;
    NormEstimate norm_psi;
    NormEstimate norm_sum;
    // est||Phi|| + est||Psi|| - est||Phi + Psi|| from the lower bounds.
    double defect = 0.0;
    // Certified enclosure of the true defect; sides are absent without upper bounds.
    std::optional<double> defect_lo;
    std::optional<double> defect_hi;
    Vector witness;
    DefectVerdict verdict = DefectVerdict::Inconclusive;
    double tol = 0.0;
    // For DaugavetFails: est||Phi|| + est||Psi|| - upper(||Phi + Psi||).
    double gap = 0.0;
};

struct DefectOptions {
    SearchOptions search;
    // Defaults to 1e-6 when all three norms are attained exactly, 1e-3 otherwise.
    std::optional<double> tol;
};

[[nodiscard]] DefectReport defect(const BoundedMap& phi, const BoundedMap& psi, const DefectOptions& opts,
                                  const Restriction* gamma = nullptr);

struct AltDefectReport {
    Scalar best_omega = 1.0;
    DefectReport best;
    std::vector<std::pair<Scalar, double>> defect_by_omega;
};

[[nodiscard]] AltDefectReport alt_defect(const BoundedMap& phi, const BoundedMap& psi, const UnitScalarGrid& grid,
                                         const DefectOptions& opts, const Restriction* gamma = nullptr);

}  // namespace slicelab
