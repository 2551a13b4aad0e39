#pragma once

#include <vector>

namespace slicelab {

// Closed real interval with outward rounding by one ulp per operation, which
// keeps enclosures sound without switching the FPU rounding mode.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double v) { return {v, v}; }
    static Interval symmetric(double r) { return {-r, r}; }

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] double magnitude() const noexcept;  // max |t| over the interval
    [[nodiscard]] double mignitude() const noexcept;  // min |t| over the interval
};

using Box = std::vector<Interval>;

[[nodiscard]] Interval operator+(Interval a, Interval b);
[[nodiscard]] Interval operator-(Interval a, Interval b);
[[nodiscard]] Interval operator-(Interval a);
[[nodiscard]] Interval operator*(Interval a, Interval b);
[[nodiscard]] Interval operator*(double s, Interval a);
[[nodiscard]] Interval hull(Interval a, Interval b);
[[nodiscard]] Interval sqr(Interval a);
[[nodiscard]] Interval cube(Interval a);
[[nodiscard]] Interval abs(Interval a);
// |t|^(1/4)
[[nodiscard]] Interval fourth_root_abs(Interval a);

[[nodiscard]] Box symmetric_box(const std::vector<double>& radii);

}  // namespace slicelab
