#pragma once

#include "slicelab/maps.hpp"

namespace slicelab {

enum class SliceKind { Strong, Weak };

[[nodiscard]] const char* to_string(SliceKind k) noexcept;

/// S(p, eps) = {x in B : Re(omega p(x)) >= 1 - eps}, or the weak slice
/// {x in B : |p(x)| >= 1 - eps} (omega ignored).
struct SliceSpec {
    ScalarMap functional;
    double epsilon;
    Scalar omega = 1.0;
    SliceKind kind = SliceKind::Strong;

    // True for eps = 1, where the slice is the whole ball for any functional of norm <= 1.
    [[nodiscard]] bool vacuous() const noexcept { return epsilon >= 1.0; }
};

// Validates eps in (0, 1] and |omega| = 1.
[[nodiscard]] SliceSpec make_slice(ScalarMap p, double epsilon, Scalar omega = 1.0,
                                   SliceKind kind = SliceKind::Strong);

// Re(omega p(x)) for strong slices, |p(x)| for weak ones.
[[nodiscard]] double slice_value(const SliceSpec& s, const Vector& x);
// (1 - eps) - slice_value: positive means outside the slice.
[[nodiscard]] double slice_deficiency(const SliceSpec& s, const Vector& x);
// Throws OutsideBall if ||x|| > 1 + 1e-12.
[[nodiscard]] bool membership(const SliceSpec& s, const Vector& x);

}  // namespace slicelab
