#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "slicelab/interval.hpp"
#include "slicelab/spaces.hpp"

namespace slicelab {

/// Dense row-major matrix; only used for linear maps and their factorizations.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    Scalar& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    [[nodiscard]] Vector apply(const Vector& x) const;
    [[nodiscard]] bool is_real() const noexcept;
};

struct BilinearShape {
    std::size_t left_dim;
    std::size_t right_dim;
};

struct MapTraits {
    bool is_linear = false;
    bool odd_symmetry = false;
    bool sphere_onto = false;
    // Right inverse on the codomain ball: map(inverse_oracle(y)) == y.
    std::function<Vector(const Vector&)> inverse_oracle;
    // delta' -> delta: support mass below delta' is mapped to support mass below delta.
    std::function<double(double)> support_growth;
    std::optional<double> norm_bound;
    // Enclosure of the image of a box (real field only).
    std::function<Box(const Box&)> interval_eval;
    std::optional<BilinearShape> bilinear;
};

class BoundedMap;

// Records Psi = P o inner, with P given by a matrix.
struct LinearFactorization {
    Matrix outer;
    std::shared_ptr<const BoundedMap> inner;
};

class BoundedMap {
public:
    using Evaluator = std::function<Vector(const Vector&)>;

    BoundedMap(std::string name, Space domain, Space codomain, Evaluator eval, MapTraits traits = {});

    // Checks the input dimension; the evaluator itself is assumed pure.
    [[nodiscard]] Vector operator()(const Vector& x) const;

    [[nodiscard]] const std::string& name() const noexcept { return impl_->name; }
    [[nodiscard]] const Space& domain() const noexcept { return impl_->domain; }
    [[nodiscard]] const Space& codomain() const noexcept { return impl_->codomain; }
    [[nodiscard]] const MapTraits& traits() const noexcept { return impl_->traits; }
    [[nodiscard]] const LinearFactorization* factorization() const noexcept {
        return impl_->factor ? &*impl_->factor : nullptr;
    }
    // Identity of the underlying map object (copies compare equal).
    [[nodiscard]] bool same_as(const BoundedMap& other) const noexcept { return impl_ == other.impl_; }

    [[nodiscard]] BoundedMap renamed(std::string name) const;

private:
    struct Impl {
        std::string name;
        Space domain;
        Space codomain;
        Evaluator eval;
        MapTraits traits;
        std::optional<LinearFactorization> factor;
    };
    explicit BoundedMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend BoundedMap compose_linear(const BoundedMap& P, const BoundedMap& phi);
};

struct ScalarTraits {
    bool declared_norm_le_one = false;
    // Set when the map is x -> <linear, x>.
    std::optional<DualFunctional> linear;
    // Enclosure of the (real) value over a box; real field only.
    std::function<Interval(const Box&)> interval_eval;
    // Normalizing constant used by normalized_functional, and whether it is exact.
    std::optional<double> normalizer;
    bool normalizer_certified = false;
};

class ScalarMap {
public:
    using Evaluator = std::function<Scalar(const Vector&)>;

    ScalarMap(std::string name, Space domain, Evaluator eval, ScalarTraits traits = {});

    [[nodiscard]] Scalar operator()(const Vector& x) const;
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const Space& domain() const noexcept { return domain_; }
    [[nodiscard]] const ScalarTraits& traits() const noexcept { return traits_; }

private:
    std::string name_;
    Space domain_;
    Evaluator eval_;
    ScalarTraits traits_;
};

// ---- constructors -------------------------------------------------------

[[nodiscard]] BoundedMap identity_map(const Space& space);
[[nodiscard]] BoundedMap cube_map(const Space& space);
[[nodiscard]] BoundedMap square_map(const Space& space);
[[nodiscard]] BoundedMap fourth_root_map(const Space& space);
[[nodiscard]] BoundedMap absolute_value_map(const Space& space);
// |f| * |f| on a weighted L1 space with equal atoms arranged on a circle.
[[nodiscard]] BoundedMap cyclic_convolution_map(const Space& space);
// (int |f|) f
[[nodiscard]] BoundedMap mass_scale_map(const Space& space);
// (f, g) -> f
[[nodiscard]] BoundedMap summand_projection(const Space& sum);
// (f, a) -> f + a^2 1, right summand one-dimensional
[[nodiscard]] BoundedMap augmented_projection(const Space& sum);
// (f, g) -> (int g) 1, right summand weighted L1
[[nodiscard]] BoundedMap averaging_rank_one(const Space& sum);
// (f, c) -> c_i / sqrt(w_i): the l2 summand carries g with L2 norm ||c||_2
[[nodiscard]] BoundedMap shift_map(const Space& sum);
// Real line map: 1 at exactly 0, -|x| elsewhere.
[[nodiscard]] BoundedMap signed_jump_map();
[[nodiscard]] BoundedMap linear_map(const Space& domain, const Space& codomain, Matrix matrix);
// out_k = sum_ij T[k][i][j] u_i v_j on the flattened domain Sup(left + right).
[[nodiscard]] BoundedMap bilinear_map(BilinearShape shape, std::size_t out_dim, std::vector<Scalar> tensor,
                                      Field field = Field::Real);
[[nodiscard]] BoundedMap constant_map(const Space& domain, const Space& codomain, Vector value);

enum class MapKind {
    Identity,
    Cube,
    Square,
    FourthRoot,
    AbsoluteValue,
    CyclicConvolution,
    MassScale,
    SummandProjection,
    AugmentedProjection,
    AveragingRankOne,
    Shift,
    SignedJump,
    Linear,
    Bilinear,
    Constant,
};

struct MapParams {
    std::optional<Space> domain;
    std::optional<Space> codomain;
    Matrix matrix;
    std::vector<Scalar> tensor;
    std::optional<BilinearShape> shape;
    std::size_t out_dim = 0;
    Vector value;
};

[[nodiscard]] BoundedMap make_map(MapKind kind, const MapParams& params);
[[nodiscard]] std::optional<MapKind> map_kind_from_string(const std::string& name);

// ---- combinators ----------------------------------------------------------

[[nodiscard]] BoundedMap sum(const BoundedMap& a, const BoundedMap& b);
[[nodiscard]] BoundedMap scaled(const BoundedMap& a, Scalar c);
[[nodiscard]] BoundedMap rank_one(const ScalarMap& xp, const Vector& y, const Space& codomain);
// Throws NonLinearMap if P is not linear.
[[nodiscard]] BoundedMap compose_linear(const BoundedMap& P, const BoundedMap& phi);
// Columns are images of basis vectors; only meaningful for linear maps.
[[nodiscard]] Matrix linear_matrix(const BoundedMap& T);

// ---- scalar maps ------------------------------------------------------------

[[nodiscard]] ScalarMap linear_functional(const Space& space, const DualFunctional& f, std::string name = "");
[[nodiscard]] ScalarMap constant_scalar(const Space& space, Scalar c);
// x -> 1 if Re x_i * Re x_j >= 0 else -1; even and unimodular.
[[nodiscard]] ScalarMap product_sign(const Space& space, std::size_t i, std::size_t j);
// x -> <y*, map(x)>
[[nodiscard]] ScalarMap pullback(const BoundedMap& map, const DualFunctional& ystar);
[[nodiscard]] ScalarMap scaled(const ScalarMap& p, Scalar c);
// The scalar map viewed as a map into the one-dimensional sup space.
[[nodiscard]] BoundedMap as_map(const ScalarMap& p);

struct NormBound {
    double lower;
    std::optional<double> upper;
};
using ScalarNormEngine = std::function<NormBound(const ScalarMap&)>;

// x -> <y*, map(x)> / ||y* o map||, using the engine's lower bound as the
// normalizer. Throws DegenerateFunctional when that estimate is <= tol.
[[nodiscard]] ScalarMap normalized_functional(const BoundedMap& map, const DualFunctional& ystar,
                                              const ScalarNormEngine& engine, double tol = 1e-9);

}  // namespace slicelab
