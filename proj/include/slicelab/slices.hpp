#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slicelab/optim.hpp"
#include "slicelab/slice.hpp"

namespace slicelab {

enum class InclusionStatus { HoldsOnGrid, Violated, Inconclusive };

[[nodiscard]] const char* to_string(InclusionStatus s) noexcept;

struct InclusionVerdict {
    InclusionStatus status = InclusionStatus::Inconclusive;
    // For Violated: a point of the inner slice outside the outer one.
    Vector witness;
    Scalar omega = 1.0;
    // Largest outer-slice deficiency found on the inner slice.
    double max_violation = 0.0;
    std::size_t evaluations = 0;
    // The inner slice looked empty; the inclusion then holds vacuously.
    bool inner_empty = false;
};

// Searches inner (intersected with Gamma) for points outside outer.
[[nodiscard]] InclusionVerdict check_inclusion(const SliceSpec& inner, const SliceSpec& outer, const Restriction* gamma,
                                               const SearchOptions& opts, double tol = 1e-9);

/// Finite stand-in for the natural set of slices of `base`.
struct SliceFamily {
    BoundedMap base;
    std::vector<DualFunctional> functionals;
    std::vector<double> epsilons;
    UnitScalarGrid grid = UnitScalarGrid::real();
    SliceKind kind = SliceKind::Strong;
};

struct ContinuityRow {
    std::size_t target_index = 0;
    double epsilon = 0.0;
    InclusionStatus status = InclusionStatus::Inconclusive;
    // "y*P", "target" or "family[k]". On HoldsOnGrid this is the candidate whose
    // slice fits; on Violated it is the one the witness refutes (in its mu-slice,
    // outside the target slice, both at omega).
    std::string candidate;
    std::optional<DualFunctional> candidate_functional;
    double mu = 0.0;
    Vector witness;
    Scalar omega = 1.0;
    double max_violation = 0.0;
    std::vector<std::string> notes;
};

struct ContinuityTable {
    SliceKind kind = SliceKind::Strong;
    std::vector<ContinuityRow> rows;
    InclusionStatus overall = InclusionStatus::HoldsOnGrid;
    std::size_t evaluations = 0;
};

// For each target slice S(Psi_{z*}, eps), looks for (y*, mu) with
// S(w Phi_{y*}, mu) inside S(w Psi_{z*}, eps) for every grid w.
[[nodiscard]] ContinuityTable check_strong_slice_continuity(const SliceFamily& targets, const SliceFamily& candidates,
                                                            const SearchOptions& opts,
                                                            const Restriction* gamma = nullptr);
// Same with weak slices and no omega quantifier.
[[nodiscard]] ContinuityTable check_weak_slice_continuity(const SliceFamily& targets, const SliceFamily& candidates,
                                                          const SearchOptions& opts,
                                                          const Restriction* gamma = nullptr);

struct RotationVerdict {
    InclusionStatus status = InclusionStatus::HoldsOnGrid;
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    double max_value_gap = 0.0;
    Vector witness;
    Scalar omega = 1.0;
};

// Checks x in S(w A_{x*}, eps) <=> (w x1, x2) in S(A_{x*}, eps) on samples.
[[nodiscard]] RotationVerdict multilinear_rotation_check(const BoundedMap& A, const std::vector<DualFunctional>& functionals,
                                                         const std::vector<double>& epsilons, const UnitScalarGrid& grid,
                                                         const SearchOptions& opts);

// ---- sampled scalar and cube-slice inequalities ---------------------------

struct ModulusBoundSample {
    std::size_t samples = 0;
    // max |1 - c| - sqrt(2 eps) over samples (should be <= 0).
    double max_excess = 0.0;
    // |1 - c_b| - sqrt(2 eps) at the extreme point c_b = (1 - eps) + i sqrt(2 eps - eps^2).
    double boundary_gap = 0.0;
};

// Scalars with |c| <= 1 and Re c >= 1 - eps.
[[nodiscard]] ModulusBoundSample modulus_bound_sample(double eps, std::size_t count, std::uint64_t seed);

struct CubeSliceSample {
    std::size_t accepted = 0;
    std::size_t proposals = 0;
    // max over accepted pairs of (1 - eps) - <z, mu>; the inequality holds when <= 0.
    double max_violation = -1.0;
};

// z in B(Sup(n)), signed mu with ||mu||_1 = 1: if <z^3, mu> >= 1 - eps/2 then <z, mu> >= 1 - eps.
[[nodiscard]] CubeSliceSample cube_slice_sample(std::size_t n, double eps, std::size_t count, std::uint64_t seed);

}  // namespace slicelab
