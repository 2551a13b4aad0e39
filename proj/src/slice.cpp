#include "slicelab/slice.hpp"

#include <cmath>

namespace slicelab {

const char* to_string(SliceKind k) noexcept { return k == SliceKind::Strong ? "strong" : "weak"; }

SliceSpec make_slice(ScalarMap p, double epsilon, Scalar omega, SliceKind kind) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw LabError(ErrorCode::InvalidParams, "slice epsilon must lie in (0, 1]");
    if (std::abs(std::abs(omega) - 1.0) > 1e-12) throw LabError(ErrorCode::InvalidParams, "omega must be unimodular");
    return SliceSpec{std::move(p), epsilon, omega, kind};
}

double slice_value(const SliceSpec& s, const Vector& x) {
    const Scalar v = s.functional(x);
    return s.kind == SliceKind::Strong ? (s.omega * v).real() : std::abs(v);
}

double slice_deficiency(const SliceSpec& s, const Vector& x) { return (1.0 - s.epsilon) - slice_value(s, x); }

bool membership(const SliceSpec& s, const Vector& x) {
    const double n = s.functional.domain().norm(x);
    if (n > 1.0 + 1e-12) throw LabError(ErrorCode::OutsideBall, "point of norm " + std::to_string(n));
    return slice_deficiency(s, x) <= 0.0;
}

}  // namespace slicelab
