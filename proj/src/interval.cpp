#include "slicelab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slicelab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

Interval widen(double lo, double hi) { return {std::nextafter(lo, -kInf), std::nextafter(hi, kInf)}; }
}  // namespace

double Interval::magnitude() const noexcept { return std::max(std::abs(lo), std::abs(hi)); }

double Interval::mignitude() const noexcept {
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return std::min(std::abs(lo), std::abs(hi));
}

Interval operator+(Interval a, Interval b) { return widen(a.lo + b.lo, a.hi + b.hi); }
Interval operator-(Interval a, Interval b) { return widen(a.lo - b.hi, a.hi - b.lo); }
Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

Interval operator*(Interval a, Interval b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Interval operator*(double s, Interval a) { return Interval::point(s) * a; }

Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Interval sqr(Interval a) {
    const double m = a.magnitude();
    const double n = a.mignitude();
    return widen(n * n, m * m);
}

Interval cube(Interval a) { return widen(a.lo * a.lo * a.lo, a.hi * a.hi * a.hi); }

Interval abs(Interval a) { return {a.mignitude(), a.magnitude()}; }

Interval fourth_root_abs(Interval a) {
    return widen(std::sqrt(std::sqrt(a.mignitude())), std::sqrt(std::sqrt(a.magnitude())));
}

Box symmetric_box(const std::vector<double>& radii) {
    Box b;
    b.reserve(radii.size());
    for (double r : radii) b.push_back(Interval::symmetric(r));
    return b;
}

}  // namespace slicelab
