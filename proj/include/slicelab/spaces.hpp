#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slicelab/core.hpp"

namespace slicelab {

enum class Field { Real, Complex };

[[nodiscard]] const char* to_string(Field f) noexcept;

/// Finite set of unit scalars standing in for the circle. Real mode is {1, -1};
/// complex mode uses `resolution` equally spaced points with 1, -1 (and, when
/// the resolution is a multiple of four, i and -i) stored exactly.
class UnitScalarGrid {
public:
    static UnitScalarGrid real();
    static UnitScalarGrid complex(std::size_t resolution);
    static UnitScalarGrid for_field(Field f, std::size_t resolution = 16);

    [[nodiscard]] Field field() const noexcept { return field_; }
    [[nodiscard]] std::size_t resolution() const noexcept { return points_.size(); }
    [[nodiscard]] const std::vector<Scalar>& points() const noexcept { return points_; }

private:
    UnitScalarGrid(Field f, std::vector<Scalar> pts) : field_(f), points_(std::move(pts)) {}
    Field field_;
    std::vector<Scalar> points_;
};

class Space;

struct SupNorm {
    std::size_t dim;
};
struct LpNorm {
    std::size_t dim;
    double p;
};
struct WeightedL1 {
    std::vector<double> weights;
};
struct DirectSumL1 {
    std::shared_ptr<const Space> left;
    std::shared_ptr<const Space> right;
};

class Space {
public:
    using Kind = std::variant<SupNorm, LpNorm, WeightedL1, DirectSumL1>;

    static Space sup(std::size_t n, Field f = Field::Real);
    static Space lp(std::size_t n, double p, Field f = Field::Real);
    static Space weighted_l1(std::vector<double> weights, Field f = Field::Real);
    // n equal atoms of total mass `mass`.
    static Space uniform_l1(std::size_t n, double mass = 1.0, Field f = Field::Real);
    // Both summands must share a field.
    static Space direct_sum(const Space& left, const Space& right);

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
    [[nodiscard]] Field field() const noexcept { return field_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }

    [[nodiscard]] bool is_sup() const noexcept { return std::holds_alternative<SupNorm>(kind_); }
    [[nodiscard]] bool is_weighted_l1() const noexcept { return std::holds_alternative<WeightedL1>(kind_); }
    [[nodiscard]] bool is_direct_sum() const noexcept { return std::holds_alternative<DirectSumL1>(kind_); }
    // Summands of a direct sum; throws UnsupportedSpace otherwise.
    [[nodiscard]] const Space& left() const;
    [[nodiscard]] const Space& right() const;
    // Weights of a WeightedL1 space (throws otherwise).
    [[nodiscard]] const std::vector<double>& weights() const;

    [[nodiscard]] double norm(std::span<const Scalar> v) const;
    [[nodiscard]] double dual_norm(std::span<const Scalar> f) const;
    // Bound on |v_i| over the unit ball, coordinate by coordinate.
    [[nodiscard]] std::vector<double> box_hull() const;
    // Number of extreme points of a real polyhedral ball, if finite and representable.
    [[nodiscard]] std::optional<std::size_t> extreme_point_count() const;
    [[nodiscard]] bool is_polyhedral() const { return extreme_point_count().has_value(); }

    [[nodiscard]] std::string describe() const;
    friend bool operator==(const Space& a, const Space& b);

private:
    Space(Kind k, Field f, std::size_t dim) : kind_(std::move(k)), field_(f), dim_(dim) {}
    Kind kind_;
    Field field_;
    std::size_t dim_;
};

struct DualFunctional {
    Vector coords;
};

// Throws DimensionMismatch if v does not fit the space.
void require_member(const Space& space, std::span<const Scalar> v);

[[nodiscard]] double norm(const Space& space, const Vector& v);
[[nodiscard]] double dual_norm(const Space& space, const DualFunctional& f);
// sum conj(f_i) v_i
[[nodiscard]] Scalar dual_pair(const DualFunctional& f, const Vector& v);
[[nodiscard]] Vector project_to_ball(const Space& space, Vector v);
[[nodiscard]] bool in_ball(const Space& space, const Vector& v, double slack = 1e-12);

[[nodiscard]] std::vector<Vector> sample_sphere(const Space& space, std::uint64_t seed, std::size_t count);
// Radially distributed samples of the closed ball (radius drawn uniformly).
[[nodiscard]] std::vector<Vector> sample_ball(const Space& space, std::uint64_t seed, std::size_t count);
[[nodiscard]] std::vector<Vector> extreme_points(const Space& space, std::size_t budget,
                                                 std::uint64_t seed = 0);

// Direct-sum helpers.
[[nodiscard]] Vector embed_left(const Space& sum, const Vector& u);
[[nodiscard]] Vector embed_right(const Space& sum, const Vector& v);
[[nodiscard]] Vector left_part(const Space& sum, const Vector& v);
[[nodiscard]] Vector right_part(const Space& sum, const Vector& v);

// Common functionals.
[[nodiscard]] DualFunctional coordinate_functional(const Space& space, std::size_t i, Scalar scale = 1.0);
// Positive functional with <1, f> = 1 and dual norm 1 (uniform probability on atoms).
[[nodiscard]] DualFunctional uniform_probability(const Space& space);
// f -> sum_i w_i f_i on a WeightedL1 space; equals uniform_probability for mass 1.
[[nodiscard]] DualFunctional integration_functional(const Space& space);
// Unit vector x with <f, x> = ||f||_* (the pairing is real and nonnegative).
[[nodiscard]] Vector norming_vector(const Space& space, const DualFunctional& f);
// Dual unit functional f with <f, y> = ||y|| (a supporting functional of the ball at y/||y||).
[[nodiscard]] DualFunctional norming_functional(const Space& space, const Vector& y);
// Extreme points of the dual unit ball when that set is finite and at most `budget`.
[[nodiscard]] std::optional<std::vector<DualFunctional>> dual_extreme_points(const Space& space,
                                                                            std::size_t budget);

}  // namespace slicelab
