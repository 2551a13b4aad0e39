#include "slicelab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slicelab/random.hpp"

namespace slicelab {

const char* to_string(Field f) noexcept { return f == Field::Real ? "real" : "complex"; }

UnitScalarGrid UnitScalarGrid::real() { return UnitScalarGrid(Field::Real, {1.0, -1.0}); }

UnitScalarGrid UnitScalarGrid::complex(std::size_t resolution) {
    if (resolution < 2 || resolution % 2 != 0) {
        throw LabError(ErrorCode::InvalidParams, "complex grid resolution must be even and >= 2");
    }
    std::vector<Scalar> pts;
    pts.reserve(resolution);
    for (std::size_t k = 0; k < resolution; ++k) {
        // Exact values at the quarter turns.
        if (4 * k == resolution) {
            pts.emplace_back(0.0, 1.0);
        } else if (2 * k == resolution) {
            pts.emplace_back(-1.0, 0.0);
        } else if (4 * k == 3 * resolution) {
            pts.emplace_back(0.0, -1.0);
        } else if (k == 0) {
            pts.emplace_back(1.0, 0.0);
        } else {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution);
            pts.push_back(std::polar(1.0, t));
        }
    }
    return UnitScalarGrid(Field::Complex, std::move(pts));
}

UnitScalarGrid UnitScalarGrid::for_field(Field f, std::size_t resolution) {
    return f == Field::Real ? real() : complex(resolution);
}

Space Space::sup(std::size_t n, Field f) {
    if (n == 0) throw LabError(ErrorCode::InvalidParams, "dimension must be positive");
    return Space(SupNorm{n}, f, n);
}

Space Space::lp(std::size_t n, double p, Field f) {
    if (n == 0) throw LabError(ErrorCode::InvalidParams, "dimension must be positive");
    if (!(p >= 1.0) || !std::isfinite(p)) throw LabError(ErrorCode::InvalidParams, "p must lie in [1, inf)");
    return Space(LpNorm{n, p}, f, n);
}

Space Space::weighted_l1(std::vector<double> weights, Field f) {
    if (weights.empty()) throw LabError(ErrorCode::InvalidParams, "weights must be non-empty");
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw LabError(ErrorCode::InvalidParams, "weights must be positive");
    }
    const std::size_t n = weights.size();
    return Space(WeightedL1{std::move(weights)}, f, n);
}

Space Space::uniform_l1(std::size_t n, double mass, Field f) {
    if (n == 0) throw LabError(ErrorCode::InvalidParams, "dimension must be positive");
    return weighted_l1(std::vector<double>(n, mass / static_cast<double>(n)), f);
}

Space Space::direct_sum(const Space& left, const Space& right) {
    if (left.field() != right.field()) throw LabError(ErrorCode::InvalidParams, "summands must share a field");
    return Space(DirectSumL1{std::make_shared<const Space>(left), std::make_shared<const Space>(right)},
                 left.field(), left.dimension() + right.dimension());
}

const Space& Space::left() const {
    if (!is_direct_sum()) throw LabError(ErrorCode::UnsupportedSpace, "not a direct sum");
    return *std::get<DirectSumL1>(kind_).left;
}

const Space& Space::right() const {
    if (!is_direct_sum()) throw LabError(ErrorCode::UnsupportedSpace, "not a direct sum");
    return *std::get<DirectSumL1>(kind_).right;
}

const std::vector<double>& Space::weights() const {
    if (!is_weighted_l1()) throw LabError(ErrorCode::UnsupportedSpace, "not a weighted L1 space");
    return std::get<WeightedL1>(kind_).weights;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double lp_sum(std::span<const Scalar> v, double p) {
    if (p == 1.0) {
        double s = 0;
        for (const auto& x : v) s += std::abs(x);
        return s;
    }
    if (p == 2.0) {
        double s = 0;
        for (const auto& x : v) s += std::norm(x);
        return std::sqrt(s);
    }
    double m = 0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return 0.0;
    double s = 0;
    for (const auto& x : v) s += std::pow(std::abs(x) / m, p);
    return m * std::pow(s, 1.0 / p);
}

}  // namespace

double Space::norm(std::span<const Scalar> v) const {
    if (v.size() != dim_) {
        throw LabError(ErrorCode::DimensionMismatch,
                       "vector of size " + std::to_string(v.size()) + " in " + describe());
    }
    return std::visit(overloaded{
                          [&](const SupNorm&) {
                              double m = 0;
                              for (const auto& x : v) m = std::max(m, std::abs(x));
                              return m;
                          },
                          [&](const LpNorm& k) { return lp_sum(v, k.p); },
                          [&](const WeightedL1& k) {
                              double s = 0;
                              for (std::size_t i = 0; i < v.size(); ++i) s += k.weights[i] * std::abs(v[i]);
                              return s;
                          },
                          [&](const DirectSumL1& k) {
                              const std::size_t nl = k.left->dimension();
                              return k.left->norm(v.subspan(0, nl)) + k.right->norm(v.subspan(nl));
                          },
                      },
                      kind_);
}

double Space::dual_norm(std::span<const Scalar> f) const {
    if (f.size() != dim_) throw LabError(ErrorCode::DimensionMismatch, "functional size mismatch in " + describe());
    return std::visit(overloaded{
                          [&](const SupNorm&) { return lp_sum(f, 1.0); },
                          [&](const LpNorm& k) {
                              if (k.p == 1.0) {
                                  double m = 0;
                                  for (const auto& x : f) m = std::max(m, std::abs(x));
                                  return m;
                              }
                              return lp_sum(f, k.p / (k.p - 1.0));
                          },
                          [&](const WeightedL1& k) {
                              double m = 0;
                              for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]) / k.weights[i]);
                              return m;
                          },
                          [&](const DirectSumL1& k) {
                              const std::size_t nl = k.left->dimension();
                              return std::max(k.left->dual_norm(f.subspan(0, nl)), k.right->dual_norm(f.subspan(nl)));
                          },
                      },
                      kind_);
}

std::vector<double> Space::box_hull() const {
    return std::visit(overloaded{
                          [&](const SupNorm& k) { return std::vector<double>(k.dim, 1.0); },
                          [&](const LpNorm& k) { return std::vector<double>(k.dim, 1.0); },
                          [&](const WeightedL1& k) {
                              std::vector<double> b(k.weights.size());
                              for (std::size_t i = 0; i < b.size(); ++i) b[i] = 1.0 / k.weights[i];
                              return b;
                          },
                          [&](const DirectSumL1& k) {
                              auto b = k.left->box_hull();
                              const auto r = k.right->box_hull();
                              b.insert(b.end(), r.begin(), r.end());
                              return b;
                          },
                      },
                      kind_);
}

std::optional<std::size_t> Space::extreme_point_count() const {
    if (field_ != Field::Real) return std::nullopt;
    return std::visit(overloaded{
                          [&](const SupNorm& k) -> std::optional<std::size_t> {
                              if (k.dim >= 40) return std::nullopt;
                              return std::size_t{1} << k.dim;
                          },
                          [&](const LpNorm& k) -> std::optional<std::size_t> {
                              if (k.p != 1.0) return std::nullopt;
                              return 2 * k.dim;
                          },
                          [&](const WeightedL1& k) -> std::optional<std::size_t> { return 2 * k.weights.size(); },
                          [&](const DirectSumL1& k) -> std::optional<std::size_t> {
                              auto a = k.left->extreme_point_count();
                              auto b = k.right->extreme_point_count();
                              if (!a || !b) return std::nullopt;
                              return *a + *b;
                          },
                      },
                      kind_);
}

std::string Space::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const SupNorm& k) { os << "Sup(" << k.dim << ")"; },
                   [&](const LpNorm& k) { os << "L" << k.p << "(" << k.dim << ")"; },
                   [&](const WeightedL1& k) { os << "WL1(" << k.weights.size() << ")"; },
                   [&](const DirectSumL1& k) { os << "[" << k.left->describe() << " (+)1 " << k.right->describe() << "]"; },
               },
               kind_);
    if (field_ == Field::Complex) os << "_C";
    return os.str();
}

bool operator==(const Space& a, const Space& b) {
    if (a.field_ != b.field_ || a.dim_ != b.dim_ || a.kind_.index() != b.kind_.index()) return false;
    return std::visit(overloaded{
                          [&](const SupNorm&) { return true; },
                          [&](const LpNorm& k) { return k.p == std::get<LpNorm>(b.kind_).p; },
                          [&](const WeightedL1& k) { return k.weights == std::get<WeightedL1>(b.kind_).weights; },
                          [&](const DirectSumL1& k) {
                              const auto& o = std::get<DirectSumL1>(b.kind_);
                              return *k.left == *o.left && *k.right == *o.right;
                          },
                      },
                      a.kind_);
}

void require_member(const Space& space, std::span<const Scalar> v) {
    if (v.size() != space.dimension()) {
        throw LabError(ErrorCode::DimensionMismatch,
                       "vector of size " + std::to_string(v.size()) + " in " + space.describe());
    }
}

double norm(const Space& space, const Vector& v) { return space.norm(v); }

double dual_norm(const Space& space, const DualFunctional& f) { return space.dual_norm(f.coords); }

Scalar dual_pair(const DualFunctional& f, const Vector& v) {
    if (f.coords.size() != v.size()) throw LabError(ErrorCode::DimensionMismatch, "pairing size mismatch");
    Scalar s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(f.coords[i]) * v[i];
    return s;
}

Vector project_to_ball(const Space& space, Vector v) {
    const double n = space.norm(v);
    if (n <= 1.0) return v;
    for (auto& x : v) x /= n;
    return v;
}

bool in_ball(const Space& space, const Vector& v, double slack) { return space.norm(v) <= 1.0 + slack; }

namespace {

Scalar draw_coordinate(Rng& rng, Field f) {
    if (f == Field::Real) return rng.uniform(-1.0, 1.0);
    // Uniform on the unit disc.
    const double r = std::sqrt(rng.uniform());
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    return std::polar(r, t);
}

Vector draw_unit(const Space& space, Rng& rng) {
    for (;;) {
        Vector v(space.dimension());
        if (space.is_direct_sum()) {
            const Space& l = space.left();
            const Space& r = space.right();
            const Vector a = draw_unit(l, rng);
            const Vector b = draw_unit(r, rng);
            const double t = rng.uniform();
            for (std::size_t i = 0; i < a.size(); ++i) v[i] = t * a[i];
            for (std::size_t i = 0; i < b.size(); ++i) v[a.size() + i] = (1.0 - t) * b[i];
        } else if (std::holds_alternative<LpNorm>(space.kind()) && std::get<LpNorm>(space.kind()).p != 1.0) {
            for (auto& x : v) {
                const double re = rng.normal();
                x = space.field() == Field::Real ? Scalar(re) : Scalar(re, rng.normal());
            }
        } else {
            for (auto& x : v) x = draw_coordinate(rng, space.field());
        }
        const double n = space.norm(v);
        if (n > 1e-300) {
            for (auto& x : v) x /= n;
            return v;
        }
    }
}

}  // namespace

std::vector<Vector> sample_sphere(const Space& space, std::uint64_t seed, std::size_t count) {
    if (count == 0) throw LabError(ErrorCode::InvalidParams, "count must be positive");
    Rng rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(draw_unit(space, rng));
    return out;
}

std::vector<Vector> sample_ball(const Space& space, std::uint64_t seed, std::size_t count) {
    if (count == 0) throw LabError(ErrorCode::InvalidParams, "count must be positive");
    Rng rng(seed);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vector v = draw_unit(space, rng);
        const double r = rng.uniform();
        for (auto& x : v) x *= r;
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

Vector sign_vector(std::size_t n, std::uint64_t code) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = ((code >> i) & 1U) ? -1.0 : 1.0;
    return v;
}

// Real sign vectors in a fixed scrambled order starting with 1 and -1, so a
// smaller budget always yields a prefix of a larger one.
std::vector<Vector> real_sign_vectors(std::size_t n, std::size_t budget, std::uint64_t seed) {
    std::vector<Vector> out;
    out.push_back(sign_vector(n, 0));
    if (budget > 1) out.push_back(constant_vector(n, -1.0));
    if (n < 40) {
        const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        const std::uint64_t mult = 0x9e3779b97f4a7c15ULL & mask;
        const unsigned shift = static_cast<unsigned>((n + 1) / 2);
        for (std::uint64_t k = 1; k <= mask && out.size() < budget; ++k) {
            std::uint64_t m = (k * (mult | 1U)) & mask;
            m ^= m >> shift;
            if (m == 0 || m == mask) continue;
            out.push_back(sign_vector(n, m));
        }
        return out;
    }
    Rng rng(seed);
    while (out.size() < budget) {
        Vector v(n);
        for (auto& x : v) x = (rng.next() >> 63) ? -1.0 : 1.0;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vector> sup_extreme_points(std::size_t n, Field f, std::size_t budget, std::uint64_t seed) {
    if (f == Field::Real) return real_sign_vectors(n, budget, seed);
    std::vector<Vector> out;
    const std::vector<Scalar> alphabet{1.0, Scalar(0, 1), -1.0, Scalar(0, -1)};
    std::size_t total = 1;
    bool fits = true;
    for (std::size_t i = 0; i < n && fits; ++i) {
        if (total > budget / 4) fits = false;
        total *= 4;
    }
    if (fits && total <= budget) {
        for (std::size_t code = 0; code < total; ++code) {
            Vector v(n);
            std::size_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = alphabet[c % 4];
                c /= 4;
            }
            out.push_back(std::move(v));
        }
        return out;
    }
    out.push_back(constant_vector(n, 1.0));
    if (budget > 1) out.push_back(constant_vector(n, -1.0));
    Rng rng(seed);
    while (out.size() < budget) {
        Vector v(n);
        for (auto& x : v) x = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vector> atom_extreme_points(const std::vector<double>& inv_scale, Field f, std::size_t budget) {
    const std::vector<Scalar> phases = f == Field::Real ? std::vector<Scalar>{1.0, -1.0}
                                                        : std::vector<Scalar>{1.0, Scalar(0, 1), -1.0, Scalar(0, -1)};
    std::vector<Vector> out;
    const std::size_t n = inv_scale.size();
    for (std::size_t i = 0; i < n && out.size() < budget; ++i) {
        for (const auto& ph : phases) {
            if (out.size() >= budget) break;
            out.push_back(basis_vector(n, i, ph * inv_scale[i]));
        }
    }
    return out;
}

}  // namespace

std::vector<Vector> extreme_points(const Space& space, std::size_t budget, std::uint64_t seed) {
    if (budget == 0) throw LabError(ErrorCode::InvalidParams, "budget must be positive");
    return std::visit(overloaded{
                          [&](const SupNorm& k) { return sup_extreme_points(k.dim, space.field(), budget, seed); },
                          [&](const LpNorm& k) {
                              if (k.p == 1.0) return atom_extreme_points(std::vector<double>(k.dim, 1.0), space.field(), budget);
                              return sample_sphere(space, seed, budget);
                          },
                          [&](const WeightedL1& k) {
                              std::vector<double> inv(k.weights.size());
                              for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / k.weights[i];
                              return atom_extreme_points(inv, space.field(), budget);
                          },
                          [&](const DirectSumL1& k) {
                              // Finite summands get their full set first; the rest of the budget goes to the other.
                              std::size_t lb = budget / 2;
                              std::size_t rb = budget - lb;
                              const auto lc = k.left->extreme_point_count();
                              const auto rc = k.right->extreme_point_count();
                              if (lc && *lc < lb) {
                                  rb = budget - *lc;
                                  lb = *lc;
                              } else if (rc && *rc < rb) {
                                  lb = budget - *rc;
                                  rb = *rc;
                              }
                              std::vector<Vector> out;
                              if (lb > 0) {
                                  for (const auto& u : extreme_points(*k.left, lb, derive_seed(seed, 1))) {
                                      out.push_back(embed_left(space, u));
                                  }
                              }
                              if (rb > 0) {
                                  for (const auto& v : extreme_points(*k.right, rb, derive_seed(seed, 2))) {
                                      out.push_back(embed_right(space, v));
                                  }
                              }
                              return out;
                          },
                      },
                      space.kind());
}

Vector embed_left(const Space& sum, const Vector& u) {
    require_member(sum.left(), u);
    Vector v(sum.dimension(), 0.0);
    std::copy(u.begin(), u.end(), v.begin());
    return v;
}

Vector embed_right(const Space& sum, const Vector& w) {
    require_member(sum.right(), w);
    Vector v(sum.dimension(), 0.0);
    std::copy(w.begin(), w.end(), v.begin() + static_cast<std::ptrdiff_t>(sum.left().dimension()));
    return v;
}

Vector left_part(const Space& sum, const Vector& v) {
    require_member(sum, v);
    const auto nl = static_cast<std::ptrdiff_t>(sum.left().dimension());
    return Vector(v.begin(), v.begin() + nl);
}

Vector right_part(const Space& sum, const Vector& v) {
    require_member(sum, v);
    const auto nl = static_cast<std::ptrdiff_t>(sum.left().dimension());
    return Vector(v.begin() + nl, v.end());
}

DualFunctional coordinate_functional(const Space& space, std::size_t i, Scalar scale) {
    return DualFunctional{basis_vector(space.dimension(), i, scale)};
}

DualFunctional uniform_probability(const Space& space) {
    return std::visit(overloaded{
                          [&](const SupNorm& k) {
                              return DualFunctional{constant_vector(k.dim, 1.0 / static_cast<double>(k.dim))};
                          },
                          [&](const WeightedL1& k) {
                              double mass = 0;
                              for (double w : k.weights) mass += w;
                              Vector c(k.weights.size());
                              for (std::size_t i = 0; i < c.size(); ++i) c[i] = k.weights[i] / mass;
                              return DualFunctional{c};
                          },
                          [&](const auto&) -> DualFunctional {
                              throw LabError(ErrorCode::UnsupportedSpace,
                                             "uniform probability needs a Sup or weighted L1 space");
                          },
                      },
                      space.kind());
}

DualFunctional integration_functional(const Space& space) {
    const auto& w = space.weights();
    Vector c(w.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = w[i];
    return DualFunctional{c};
}

Vector norming_vector(const Space& space, const DualFunctional& f) {
    require_member(space, f.coords);
    const auto& c = f.coords;
    auto best_atom = [&](const std::vector<double>& w) {
        std::size_t best = 0;
        double val = -1.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double r = std::abs(c[i]) / w[i];
            if (r > val) {
                val = r;
                best = i;
            }
        }
        return basis_vector(c.size(), best, phase(c[best]) / w[best]);
    };
    return std::visit(overloaded{
                          [&](const SupNorm&) {
                              Vector x(c.size());
                              for (std::size_t i = 0; i < c.size(); ++i) x[i] = phase(c[i]);
                              return x;
                          },
                          [&](const WeightedL1& k) { return best_atom(k.weights); },
                          [&](const LpNorm& k) {
                              if (k.p == 1.0) return best_atom(std::vector<double>(c.size(), 1.0));
                              const double q = k.p / (k.p - 1.0);
                              const double fq = lp_sum(c, q);
                              if (fq == 0.0) return basis_vector(c.size(), 0);
                              Vector x(c.size());
                              for (std::size_t i = 0; i < c.size(); ++i) {
                                  x[i] = phase(c[i]) * std::pow(std::abs(c[i]) / fq, q - 1.0);
                              }
                              return x;
                          },
                          [&](const DirectSumL1& k) {
                              const std::size_t nl = k.left->dimension();
                              DualFunctional fl{Vector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(nl))};
                              DualFunctional fr{Vector(c.begin() + static_cast<std::ptrdiff_t>(nl), c.end())};
                              if (k.left->dual_norm(fl.coords) >= k.right->dual_norm(fr.coords)) {
                                  return embed_left(space, norming_vector(*k.left, fl));
                              }
                              return embed_right(space, norming_vector(*k.right, fr));
                          },
                      },
                      space.kind());
}

DualFunctional norming_functional(const Space& space, const Vector& y) {
    require_member(space, y);
    return std::visit(overloaded{
                          [&](const SupNorm&) {
                              std::size_t best = 0;
                              for (std::size_t i = 1; i < y.size(); ++i) {
                                  if (std::abs(y[i]) > std::abs(y[best])) best = i;
                              }
                              return DualFunctional{basis_vector(y.size(), best, phase(y[best]))};
                          },
                          [&](const WeightedL1& k) {
                              Vector f(y.size());
                              for (std::size_t i = 0; i < y.size(); ++i) f[i] = k.weights[i] * phase(y[i]);
                              return DualFunctional{f};
                          },
                          [&](const LpNorm& k) {
                              Vector f(y.size());
                              if (k.p == 1.0) {
                                  for (std::size_t i = 0; i < y.size(); ++i) f[i] = phase(y[i]);
                                  return DualFunctional{f};
                              }
                              const double ny = lp_sum(y, k.p);
                              if (ny == 0.0) return DualFunctional{basis_vector(y.size(), 0)};
                              for (std::size_t i = 0; i < y.size(); ++i) {
                                  f[i] = phase(y[i]) * std::pow(std::abs(y[i]) / ny, k.p - 1.0);
                              }
                              return DualFunctional{f};
                          },
                          [&](const DirectSumL1& k) {
                              const auto fl = norming_functional(*k.left, left_part(space, y)).coords;
                              const auto fr = norming_functional(*k.right, right_part(space, y)).coords;
                              Vector f = fl;
                              f.insert(f.end(), fr.begin(), fr.end());
                              return DualFunctional{f};
                          },
                      },
                      space.kind());
}

std::optional<std::vector<DualFunctional>> dual_extreme_points(const Space& space, std::size_t budget) {
    if (space.field() != Field::Real) return std::nullopt;
    auto sign_vectors = [&](const std::vector<double>& scale) -> std::optional<std::vector<DualFunctional>> {
        const std::size_t n = scale.size();
        if (n >= 40 || (std::size_t{1} << n) > budget) return std::nullopt;
        std::vector<DualFunctional> out;
        for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
            Vector c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = ((code >> i) & 1U) ? -scale[i] : scale[i];
            out.push_back(DualFunctional{c});
        }
        return out;
    };
    return std::visit(overloaded{
                          [&](const SupNorm& k) -> std::optional<std::vector<DualFunctional>> {
                              if (2 * k.dim > budget) return std::nullopt;
                              std::vector<DualFunctional> out;
                              for (std::size_t i = 0; i < k.dim; ++i) {
                                  out.push_back(DualFunctional{basis_vector(k.dim, i, 1.0)});
                                  out.push_back(DualFunctional{basis_vector(k.dim, i, -1.0)});
                              }
                              return out;
                          },
                          [&](const LpNorm& k) -> std::optional<std::vector<DualFunctional>> {
                              if (k.p != 1.0) return std::nullopt;
                              return sign_vectors(std::vector<double>(k.dim, 1.0));
                          },
                          [&](const WeightedL1& k) { return sign_vectors(k.weights); },
                          [&](const DirectSumL1& k) -> std::optional<std::vector<DualFunctional>> {
                              const auto a = dual_extreme_points(*k.left, budget);
                              const auto b = dual_extreme_points(*k.right, budget);
                              if (!a || !b || a->size() * b->size() > budget) return std::nullopt;
                              std::vector<DualFunctional> out;
                              for (const auto& fa : *a) {
                                  for (const auto& fb : *b) {
                                      Vector c = fa.coords;
                                      c.insert(c.end(), fb.coords.begin(), fb.coords.end());
                                      out.push_back(DualFunctional{c});
                                  }
                              }
                              return out;
                          },
                      },
                      space.kind());
}

}  // namespace slicelab
