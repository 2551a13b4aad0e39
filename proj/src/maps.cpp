#include "slicelab/maps.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace slicelab {

Vector Matrix::apply(const Vector& x) const {
    if (x.size() != cols) throw LabError(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vector out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        Scalar s = 0.0;
        for (std::size_t c = 0; c < cols; ++c) s += data[r * cols + c] * x[c];
        out[r] = s;
    }
    return out;
}

bool Matrix::is_real() const noexcept {
    return std::all_of(data.begin(), data.end(), [](const Scalar& z) { return z.imag() == 0.0; });
}

BoundedMap::BoundedMap(std::string name, Space domain, Space codomain, Evaluator eval, MapTraits traits)
    : impl_(std::make_shared<const Impl>(
          Impl{std::move(name), std::move(domain), std::move(codomain), std::move(eval), std::move(traits), {}})) {}

Vector BoundedMap::operator()(const Vector& x) const {
    require_member(impl_->domain, x);
    return impl_->eval(x);
}

BoundedMap BoundedMap::renamed(std::string name) const {
    auto copy = std::make_shared<Impl>(*impl_);
    copy->name = std::move(name);
    return BoundedMap(std::shared_ptr<const Impl>(std::move(copy)));
}

ScalarMap::ScalarMap(std::string name, Space domain, Evaluator eval, ScalarTraits traits)
    : name_(std::move(name)), domain_(std::move(domain)), eval_(std::move(eval)), traits_(std::move(traits)) {}

Scalar ScalarMap::operator()(const Vector& x) const {
    require_member(domain_, x);
    return eval_(x);
}

namespace {

bool real_field(const Space& s) { return s.field() == Field::Real; }

// Componentwise map with an optional interval extension.
BoundedMap coordinatewise(std::string name, const Space& space, std::function<Scalar(Scalar)> f,
                          std::function<Interval(Interval)> fi, MapTraits traits) {
    if (fi && real_field(space)) {
        traits.interval_eval = [fi](const Box& b) {
            Box out(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) out[i] = fi(b[i]);
            return out;
        };
    }
    return BoundedMap(std::move(name), space, space,
                      [f = std::move(f)](const Vector& x) {
                          Vector y(x.size());
                          for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
                          return y;
                      },
                      std::move(traits));
}

std::optional<double> sup_only_bound(const Space& s) {
    if (s.is_sup()) return 1.0;
    return std::nullopt;
}

const std::vector<double>& uniform_weights(const Space& space, const char* who) {
    if (!space.is_weighted_l1()) throw LabError(ErrorCode::UnsupportedSpace, std::string(who) + " needs a weighted L1 space");
    const auto& w = space.weights();
    for (double x : w) {
        if (x != w.front()) throw LabError(ErrorCode::InvalidParams, std::string(who) + " needs equal atoms");
    }
    return w;
}

Scalar complex_cbrt(Scalar z) {
    if (z.imag() == 0.0) return std::cbrt(z.real());
    return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

double sum_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s;
}

}  // namespace

BoundedMap identity_map(const Space& space) {
    MapTraits t;
    t.is_linear = true;
    t.odd_symmetry = true;
    t.sphere_onto = true;
    t.inverse_oracle = [](const Vector& y) { return y; };
    t.support_growth = [](double d) { return d; };
    t.norm_bound = 1.0;
    return coordinatewise("identity", space, [](Scalar z) { return z; }, [](Interval i) { return i; }, std::move(t));
}

BoundedMap cube_map(const Space& space) {
    MapTraits t;
    t.odd_symmetry = true;
    t.norm_bound = sup_only_bound(space);
    if (space.is_sup()) {
        t.sphere_onto = true;
        t.inverse_oracle = [](const Vector& y) {
            Vector x(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) x[i] = complex_cbrt(y[i]);
            return x;
        };
    }
    return coordinatewise("cube", space, [](Scalar z) { return z * z * z; },
                          [](Interval i) { return cube(i); }, std::move(t));
}

BoundedMap square_map(const Space& space) {
    MapTraits t;
    t.norm_bound = sup_only_bound(space);
    return coordinatewise("square", space, [](Scalar z) { return z * z; }, [](Interval i) { return sqr(i); },
                          std::move(t));
}

BoundedMap fourth_root_map(const Space& space) {
    MapTraits t;
    t.norm_bound = sup_only_bound(space);
    return coordinatewise("fourth_root", space, [](Scalar z) { return Scalar(std::sqrt(std::sqrt(std::abs(z)))); },
                          [](Interval i) { return fourth_root_abs(i); }, std::move(t));
}

BoundedMap absolute_value_map(const Space& space) {
    MapTraits t;
    t.support_growth = [](double d) { return d; };
    if (space.is_sup() || space.is_weighted_l1()) t.norm_bound = 1.0;
    return coordinatewise("abs", space, [](Scalar z) { return Scalar(std::abs(z)); },
                          [](Interval i) { return abs(i); }, std::move(t));
}

BoundedMap cyclic_convolution_map(const Space& space) {
    const auto& weights = uniform_weights(space, "cyclic convolution");
    const double w = weights.front();
    const std::size_t n = weights.size();
    MapTraits t;
    t.norm_bound = 1.0;  // ||f|*|f|| = ||f||^2
    t.support_growth = [](double d) { return 2.0 * d; };
    if (real_field(space)) {
        t.interval_eval = [w, n](const Box& b) {
            Box a(n);
            for (std::size_t j = 0; j < n; ++j) a[j] = abs(b[j]);
            Box out(n, Interval::point(0.0));
            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t j = 0; j < n; ++j) out[k] = out[k] + a[j] * a[(k + n - j) % n];
                out[k] = w * out[k];
            }
            return out;
        };
    }
    return BoundedMap("cyclic_convolution", space, space,
                      [w, n](const Vector& x) {
                          std::vector<double> a(n);
                          for (std::size_t j = 0; j < n; ++j) a[j] = std::abs(x[j]);
                          Vector out(n);
                          for (std::size_t k = 0; k < n; ++k) {
                              double s = 0;
                              for (std::size_t j = 0; j < n; ++j) s += a[j] * a[(k + n - j) % n];
                              out[k] = w * s;
                          }
                          return out;
                      },
                      std::move(t));
}

BoundedMap mass_scale_map(const Space& space) {
    const auto weights = space.weights();
    MapTraits t;
    t.norm_bound = 1.0;
    t.odd_symmetry = true;
    t.support_growth = [](double d) { return d; };
    if (real_field(space)) {
        t.interval_eval = [weights](const Box& b) {
            Interval m = Interval::point(0.0);
            for (std::size_t i = 0; i < b.size(); ++i) m = m + weights[i] * abs(b[i]);
            Box out(b.size());
            for (std::size_t i = 0; i < b.size(); ++i) out[i] = m * b[i];
            return out;
        };
    }
    return BoundedMap("mass_scale", space, space,
                      [weights](const Vector& x) {
                          double m = 0;
                          for (std::size_t i = 0; i < x.size(); ++i) m += weights[i] * std::abs(x[i]);
                          return Scalar(m) * x;
                      },
                      std::move(t));
}

BoundedMap summand_projection(const Space& sum_space) {
    const Space left = sum_space.left();
    const std::size_t nl = left.dimension();
    MapTraits t;
    t.is_linear = true;
    t.sphere_onto = true;
    t.odd_symmetry = true;
    t.norm_bound = 1.0;
    t.inverse_oracle = [sum_space](const Vector& y) { return embed_left(sum_space, y); };
    t.interval_eval = [nl](const Box& b) { return Box(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(nl)); };
    return BoundedMap("summand_projection", sum_space, left,
                      [nl](const Vector& x) { return Vector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nl)); },
                      std::move(t));
}

BoundedMap augmented_projection(const Space& sum_space) {
    const Space left = sum_space.left();
    if (sum_space.right().dimension() != 1) {
        throw LabError(ErrorCode::InvalidParams, "augmented projection needs a one-dimensional right summand");
    }
    const std::size_t nl = left.dimension();
    MapTraits t;
    // ||f|| + |a|^2 <= ||f|| + |a| <= 1 when the left norm is the sup norm.
    if (left.is_sup()) t.norm_bound = 1.0;
    if (real_field(sum_space)) {
        t.interval_eval = [nl](const Box& b) {
            Box out(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(nl));
            const Interval a2 = sqr(b[nl]);
            for (auto& i : out) i = i + a2;
            return out;
        };
    }
    return BoundedMap("augmented_projection", sum_space, left,
                      [nl](const Vector& x) {
                          Vector out(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nl));
                          const Scalar a2 = x[nl] * x[nl];
                          for (auto& v : out) v += a2;
                          return out;
                      },
                      std::move(t));
}

BoundedMap averaging_rank_one(const Space& sum_space) {
    const Space left = sum_space.left();
    const auto wr = sum_space.right().weights();
    const std::size_t nl = left.dimension();
    MapTraits t;
    t.is_linear = true;
    t.odd_symmetry = true;
    t.norm_bound = left.norm(constant_vector(nl, 1.0));
    if (real_field(sum_space)) {
        t.interval_eval = [nl, wr](const Box& b) {
            Interval s = Interval::point(0.0);
            for (std::size_t j = 0; j < wr.size(); ++j) s = s + wr[j] * b[nl + j];
            return Box(nl, s);
        };
    }
    return BoundedMap("averaging_rank_one", sum_space, left,
                      [nl, wr](const Vector& x) {
                          Scalar s = 0.0;
                          for (std::size_t j = 0; j < wr.size(); ++j) s += wr[j] * x[nl + j];
                          return constant_vector(nl, s);
                      },
                      std::move(t));
}

BoundedMap shift_map(const Space& sum_space) {
    const Space left = sum_space.left();
    const auto wl = left.weights();
    const Space& right = sum_space.right();
    if (right.dimension() != left.dimension()) {
        throw LabError(ErrorCode::InvalidParams, "shift map needs summands of equal dimension");
    }
    const std::size_t nl = left.dimension();
    std::vector<double> scale(nl);
    for (std::size_t i = 0; i < nl; ++i) scale[i] = 1.0 / std::sqrt(wl[i]);
    MapTraits t;
    t.is_linear = true;
    t.odd_symmetry = true;
    // sum_i sqrt(w_i) |c_i| <= sqrt(mass) ||c||_2 (Cauchy-Schwarz); tight for l2 summands.
    if (std::holds_alternative<LpNorm>(right.kind()) && std::get<LpNorm>(right.kind()).p == 2.0) {
        t.norm_bound = std::sqrt(sum_of(wl));
    }
    if (real_field(sum_space)) {
        t.interval_eval = [nl, scale](const Box& b) {
            Box out(nl);
            for (std::size_t i = 0; i < nl; ++i) out[i] = scale[i] * b[nl + i];
            return out;
        };
    }
    return BoundedMap("shift", sum_space, left,
                      [nl, scale](const Vector& x) {
                          Vector out(nl);
                          for (std::size_t i = 0; i < nl; ++i) out[i] = scale[i] * x[nl + i];
                          return out;
                      },
                      std::move(t));
}

BoundedMap signed_jump_map() {
    const Space line = Space::sup(1);
    MapTraits t;
    t.norm_bound = 1.0;
    t.interval_eval = [](const Box& b) {
        const Interval& x = b[0];
        const Interval neg{-x.magnitude(), -x.mignitude()};
        return Box{x.contains(0.0) ? hull(neg, Interval::point(1.0)) : neg};
    };
    return BoundedMap("signed_jump", line, line,
                      [](const Vector& x) {
                          const double a = std::abs(x[0]);
                          return Vector{a < 1e-300 ? Scalar(1.0) : Scalar(-a)};
                      },
                      std::move(t));
}

BoundedMap linear_map(const Space& domain, const Space& codomain, Matrix matrix) {
    if (matrix.rows != codomain.dimension() || matrix.cols != domain.dimension()) {
        throw LabError(ErrorCode::DimensionMismatch, "matrix shape does not match spaces");
    }
    MapTraits t;
    t.is_linear = true;
    t.odd_symmetry = true;
    if (matrix.is_real() && real_field(domain)) {
        t.interval_eval = [matrix](const Box& b) {
            Box out(matrix.rows, Interval::point(0.0));
            for (std::size_t r = 0; r < matrix.rows; ++r) {
                for (std::size_t c = 0; c < matrix.cols; ++c) {
                    if (matrix(r, c).real() != 0.0) out[r] = out[r] + matrix(r, c).real() * b[c];
                }
            }
            return out;
        };
    }
    return BoundedMap("linear", domain, codomain, [matrix](const Vector& x) { return matrix.apply(x); },
                      std::move(t));
}

BoundedMap bilinear_map(BilinearShape shape, std::size_t out_dim, std::vector<Scalar> tensor, Field field) {
    const std::size_t n1 = shape.left_dim;
    const std::size_t n2 = shape.right_dim;
    if (tensor.size() != out_dim * n1 * n2 || out_dim == 0 || n1 == 0 || n2 == 0) {
        throw LabError(ErrorCode::InvalidParams, "tensor size must be out_dim * left_dim * right_dim");
    }
    MapTraits t;
    t.bilinear = shape;
    const bool real_tensor = std::all_of(tensor.begin(), tensor.end(), [](const Scalar& z) { return z.imag() == 0.0; });
    if (field == Field::Real && real_tensor) {
        t.interval_eval = [tensor, n1, n2, out_dim](const Box& b) {
            Box out(out_dim, Interval::point(0.0));
            for (std::size_t k = 0; k < out_dim; ++k) {
                for (std::size_t i = 0; i < n1; ++i) {
                    for (std::size_t j = 0; j < n2; ++j) {
                        const double c = tensor[(k * n1 + i) * n2 + j].real();
                        if (c != 0.0) out[k] = out[k] + c * (b[i] * b[n1 + j]);
                    }
                }
            }
            return out;
        };
    }
    return BoundedMap("bilinear", Space::sup(n1 + n2, field), Space::sup(out_dim, field),
                      [tensor, n1, n2, out_dim](const Vector& x) {
                          Vector out(out_dim, 0.0);
                          for (std::size_t k = 0; k < out_dim; ++k) {
                              for (std::size_t i = 0; i < n1; ++i) {
                                  for (std::size_t j = 0; j < n2; ++j) {
                                      out[k] += tensor[(k * n1 + i) * n2 + j] * x[i] * x[n1 + j];
                                  }
                              }
                          }
                          return out;
                      },
                      std::move(t));
}

BoundedMap constant_map(const Space& domain, const Space& codomain, Vector value) {
    require_member(codomain, value);
    MapTraits t;
    t.norm_bound = codomain.norm(value);
    if (std::all_of(value.begin(), value.end(), [](const Scalar& z) { return z.imag() == 0.0; })) {
        t.interval_eval = [value](const Box&) {
            Box out(value.size());
            for (std::size_t i = 0; i < value.size(); ++i) out[i] = Interval::point(value[i].real());
            return out;
        };
    }
    return BoundedMap("constant", domain, codomain, [value](const Vector&) { return value; }, std::move(t));
}

BoundedMap make_map(MapKind kind, const MapParams& p) {
    auto dom = [&]() -> const Space& {
        if (!p.domain) throw LabError(ErrorCode::InvalidParams, "map needs a domain");
        return *p.domain;
    };
    switch (kind) {
    case MapKind::Identity: return identity_map(dom());
    case MapKind::Cube: return cube_map(dom());
    case MapKind::Square: return square_map(dom());
    case MapKind::FourthRoot: return fourth_root_map(dom());
    case MapKind::AbsoluteValue: return absolute_value_map(dom());
    case MapKind::CyclicConvolution: return cyclic_convolution_map(dom());
    case MapKind::MassScale: return mass_scale_map(dom());
    case MapKind::SummandProjection: return summand_projection(dom());
    case MapKind::AugmentedProjection: return augmented_projection(dom());
    case MapKind::AveragingRankOne: return averaging_rank_one(dom());
    case MapKind::Shift: return shift_map(dom());
    case MapKind::SignedJump: return signed_jump_map();
    case MapKind::Linear:
        if (!p.codomain) throw LabError(ErrorCode::InvalidParams, "linear map needs a codomain");
        return linear_map(dom(), *p.codomain, p.matrix);
    case MapKind::Bilinear:
        if (!p.shape) throw LabError(ErrorCode::InvalidParams, "bilinear map needs a shape");
        return bilinear_map(*p.shape, p.out_dim, p.tensor, p.domain ? p.domain->field() : Field::Real);
    case MapKind::Constant:
        if (!p.codomain) throw LabError(ErrorCode::InvalidParams, "constant map needs a codomain");
        return constant_map(dom(), *p.codomain, p.value);
    }
    throw LabError(ErrorCode::InvalidParams, "unknown map kind");
}

std::optional<MapKind> map_kind_from_string(const std::string& name) {
    static const std::unordered_map<std::string, MapKind> table = {
        {"identity", MapKind::Identity},
        {"cube", MapKind::Cube},
        {"square", MapKind::Square},
        {"fourth_root", MapKind::FourthRoot},
        {"abs", MapKind::AbsoluteValue},
        {"cyclic_convolution", MapKind::CyclicConvolution},
        {"mass_scale", MapKind::MassScale},
        {"summand_projection", MapKind::SummandProjection},
        {"augmented_projection", MapKind::AugmentedProjection},
        {"averaging_rank_one", MapKind::AveragingRankOne},
        {"shift", MapKind::Shift},
        {"signed_jump", MapKind::SignedJump},
        {"linear", MapKind::Linear},
        {"bilinear", MapKind::Bilinear},
        {"constant", MapKind::Constant},
    };
    const auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

BoundedMap sum(const BoundedMap& a, const BoundedMap& b) {
    if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
        throw LabError(ErrorCode::DimensionMismatch, "sum of maps with different spaces");
    }
    MapTraits t;
    t.is_linear = a.traits().is_linear && b.traits().is_linear;
    t.odd_symmetry = a.traits().odd_symmetry && b.traits().odd_symmetry;
    if (a.traits().norm_bound && b.traits().norm_bound) t.norm_bound = *a.traits().norm_bound + *b.traits().norm_bound;
    if (a.traits().interval_eval && b.traits().interval_eval) {
        t.interval_eval = [fa = a.traits().interval_eval, fb = b.traits().interval_eval](const Box& box) {
            Box ra = fa(box);
            const Box rb = fb(box);
            for (std::size_t i = 0; i < ra.size(); ++i) ra[i] = ra[i] + rb[i];
            return ra;
        };
    }
    return BoundedMap("(" + a.name() + " + " + b.name() + ")", a.domain(), a.codomain(),
                      [a, b](const Vector& x) { return a(x) + b(x); }, std::move(t));
}

BoundedMap scaled(const BoundedMap& a, Scalar c) {
    MapTraits t;
    t.is_linear = a.traits().is_linear;
    t.odd_symmetry = a.traits().odd_symmetry;
    if (a.traits().norm_bound) t.norm_bound = std::abs(c) * *a.traits().norm_bound;
    if (a.traits().support_growth) t.support_growth = a.traits().support_growth;
    if (a.traits().interval_eval && c.imag() == 0.0) {
        t.interval_eval = [f = a.traits().interval_eval, s = c.real()](const Box& box) {
            Box r = f(box);
            for (auto& i : r) i = s * i;
            return r;
        };
    }
    if (a.traits().bilinear) t.bilinear = a.traits().bilinear;
    std::string name = c == Scalar(-1.0) ? "-" + a.name() : "(" + std::to_string(c.real()) +
                                                               (c.imag() != 0.0 ? "+" + std::to_string(c.imag()) + "i" : "") +
                                                               ")" + a.name();
    return BoundedMap(std::move(name), a.domain(), a.codomain(), [a, c](const Vector& x) { return c * a(x); },
                      std::move(t));
}

BoundedMap rank_one(const ScalarMap& xp, const Vector& y, const Space& codomain) {
    require_member(codomain, y);
    MapTraits t;
    t.is_linear = xp.traits().linear.has_value();
    t.odd_symmetry = t.is_linear;
    if (xp.traits().declared_norm_le_one) t.norm_bound = codomain.norm(y);
    const bool real_y = std::all_of(y.begin(), y.end(), [](const Scalar& z) { return z.imag() == 0.0; });
    if (xp.traits().interval_eval && real_y) {
        t.interval_eval = [f = xp.traits().interval_eval, y](const Box& box) {
            const Interval s = f(box);
            Box out(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i].real() * s;
            return out;
        };
    }
    return BoundedMap(xp.name() + " (x) y", xp.domain(), codomain, [xp, y](const Vector& x) { return xp(x) * y; },
                      std::move(t));
}

Matrix linear_matrix(const BoundedMap& T) {
    const std::size_t n = T.domain().dimension();
    const std::size_t m = T.codomain().dimension();
    Matrix M(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Vector col = T(basis_vector(n, j));
        for (std::size_t i = 0; i < m; ++i) M(i, j) = col[i];
    }
    return M;
}

BoundedMap compose_linear(const BoundedMap& P, const BoundedMap& phi) {
    if (!P.traits().is_linear) throw LabError(ErrorCode::NonLinearMap, "outer map " + P.name() + " is not linear");
    if (!(P.domain() == phi.codomain())) throw LabError(ErrorCode::DimensionMismatch, "composition spaces differ");
    MapTraits t;
    t.is_linear = phi.traits().is_linear;
    t.odd_symmetry = phi.traits().odd_symmetry;
    if (P.traits().interval_eval && phi.traits().interval_eval) {
        t.interval_eval = [fp = P.traits().interval_eval, fi = phi.traits().interval_eval](const Box& box) {
            return fp(fi(box));
        };
    }
    BoundedMap out(P.name() + " o " + phi.name(), phi.domain(), P.codomain(),
                   [P, phi](const Vector& x) { return P(phi(x)); }, std::move(t));
    auto impl = std::make_shared<BoundedMap::Impl>(*out.impl_);
    impl->factor = LinearFactorization{linear_matrix(P), std::make_shared<const BoundedMap>(phi)};
    return BoundedMap(std::shared_ptr<const BoundedMap::Impl>(std::move(impl)));
}

ScalarMap linear_functional(const Space& space, const DualFunctional& f, std::string name) {
    require_member(space, f.coords);
    ScalarTraits t;
    t.linear = f;
    t.declared_norm_le_one = space.dual_norm(f.coords) <= 1.0 + 1e-12;
    const bool real_f = std::all_of(f.coords.begin(), f.coords.end(), [](const Scalar& z) { return z.imag() == 0.0; });
    if (real_f && real_field(space)) {
        t.interval_eval = [f](const Box& b) {
            Interval s = Interval::point(0.0);
            for (std::size_t i = 0; i < b.size(); ++i) {
                if (f.coords[i].real() != 0.0) s = s + f.coords[i].real() * b[i];
            }
            return s;
        };
    }
    if (name.empty()) name = "functional";
    return ScalarMap(std::move(name), space, [f](const Vector& x) { return dual_pair(f, x); }, std::move(t));
}

ScalarMap constant_scalar(const Space& space, Scalar c) {
    ScalarTraits t;
    t.declared_norm_le_one = std::abs(c) <= 1.0;
    if (c.imag() == 0.0) t.interval_eval = [c](const Box&) { return Interval::point(c.real()); };
    return ScalarMap("const", space, [c](const Vector&) { return c; }, std::move(t));
}

ScalarMap product_sign(const Space& space, std::size_t i, std::size_t j) {
    if (i >= space.dimension() || j >= space.dimension()) throw LabError(ErrorCode::InvalidParams, "index out of range");
    ScalarTraits t;
    t.declared_norm_le_one = true;
    t.interval_eval = [](const Box&) { return Interval{-1.0, 1.0}; };
    return ScalarMap("sign(x" + std::to_string(i) + "x" + std::to_string(j) + ")", space,
                     [i, j](const Vector& x) { return Scalar(x[i].real() * x[j].real() >= 0.0 ? 1.0 : -1.0); },
                     std::move(t));
}

ScalarMap pullback(const BoundedMap& map, const DualFunctional& ystar) {
    require_member(map.codomain(), ystar.coords);
    ScalarTraits t;
    if (map.traits().is_linear) {
        const Matrix M = linear_matrix(map);
        Vector g(M.cols, 0.0);
        for (std::size_t j = 0; j < M.cols; ++j) {
            for (std::size_t i = 0; i < M.rows; ++i) g[j] += ystar.coords[i] * std::conj(M(i, j));
        }
        t.linear = DualFunctional{g};
    }
    const bool real_y =
        std::all_of(ystar.coords.begin(), ystar.coords.end(), [](const Scalar& z) { return z.imag() == 0.0; });
    if (map.traits().interval_eval && real_y) {
        t.interval_eval = [f = map.traits().interval_eval, ystar](const Box& b) {
            const Box img = f(b);
            Interval s = Interval::point(0.0);
            for (std::size_t i = 0; i < img.size(); ++i) {
                if (ystar.coords[i].real() != 0.0) s = s + ystar.coords[i].real() * img[i];
            }
            return s;
        };
    }
    return ScalarMap("y* o " + map.name(), map.domain(), [map, ystar](const Vector& x) { return dual_pair(ystar, map(x)); },
                     std::move(t));
}

ScalarMap scaled(const ScalarMap& p, Scalar c) {
    ScalarTraits t;
    t.declared_norm_le_one = p.traits().declared_norm_le_one && std::abs(c) <= 1.0;
    if (p.traits().linear) {
        Vector g = p.traits().linear->coords;
        for (auto& v : g) v *= std::conj(c);
        t.linear = DualFunctional{g};
    }
    if (p.traits().interval_eval && c.imag() == 0.0) {
        t.interval_eval = [f = p.traits().interval_eval, s = c.real()](const Box& b) { return s * f(b); };
    }
    return ScalarMap(p.name(), p.domain(), [p, c](const Vector& x) { return c * p(x); }, std::move(t));
}

BoundedMap as_map(const ScalarMap& p) {
    MapTraits t;
    t.is_linear = p.traits().linear.has_value();
    if (p.traits().declared_norm_le_one) t.norm_bound = 1.0;
    if (p.traits().interval_eval) {
        t.interval_eval = [f = p.traits().interval_eval](const Box& b) { return Box{f(b)}; };
    }
    return BoundedMap(p.name(), p.domain(), Space::sup(1, p.domain().field()),
                      [p](const Vector& x) { return Vector{p(x)}; }, std::move(t));
}

ScalarMap normalized_functional(const BoundedMap& map, const DualFunctional& ystar, const ScalarNormEngine& engine,
                                double tol) {
    const ScalarMap raw = pullback(map, ystar);
    const NormBound est = engine(raw);
    if (!(est.lower > tol)) {
        throw LabError(ErrorCode::DegenerateFunctional, "||y* o " + map.name() + "|| below tolerance");
    }
    const double c = est.lower;
    ScalarTraits t;
    t.normalizer = c;
    // Only an exactly attained estimate guarantees the normalized map has norm <= 1.
    t.normalizer_certified = est.upper && *est.upper <= c * (1.0 + 1e-12);
    t.declared_norm_le_one = t.normalizer_certified;
    if (raw.traits().linear) {
        Vector g = raw.traits().linear->coords;
        for (auto& v : g) v /= c;
        t.linear = DualFunctional{g};
    }
    if (raw.traits().interval_eval) {
        t.interval_eval = [f = raw.traits().interval_eval, c](const Box& b) { return (1.0 / c) * f(b); };
    }
    return ScalarMap("N[y* o " + map.name() + "]", map.domain(), [raw, c](const Vector& x) { return raw(x) / c; },
                     std::move(t));
}

}  // namespace slicelab
