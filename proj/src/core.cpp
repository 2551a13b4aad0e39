#include "slicelab/core.hpp"

#include <algorithm>

namespace slicelab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DegenerateFunctional: return "DegenerateFunctional";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::OutsideBall: return "OutsideBall";
    case ErrorCode::NonLinearMap: return "NonLinearMap";
    case ErrorCode::NonBilinearMap: return "NonBilinearMap";
    case ErrorCode::StaleWitness: return "StaleWitness";
    case ErrorCode::NoExposedPoint: return "NoExposedPoint";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

LabError::LabError(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool lex_less(std::span<const Scalar> a, std::span<const Scalar> b) noexcept {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

namespace {
void require_same_size(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) {
        throw LabError(ErrorCode::DimensionMismatch,
                       "vector sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
}
}  // namespace

Vector operator+(const Vector& a, const Vector& b) {
    require_same_size(a, b);
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_size(a, b);
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vector operator*(Scalar s, const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

Vector operator-(const Vector& v) {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

Vector constant_vector(std::size_t n, Scalar value) { return Vector(n, value); }

Vector basis_vector(std::size_t n, std::size_t i, Scalar value) {
    if (i >= n) throw LabError(ErrorCode::InvalidParams, "basis index out of range");
    Vector v(n, 0.0);
    v[i] = value;
    return v;
}

Scalar phase(Scalar z) noexcept {
    const double r = std::abs(z);
    if (r == 0.0) return 1.0;
    if (z.imag() == 0.0) return z.real() > 0 ? 1.0 : -1.0;
    return z / r;
}

}  // namespace slicelab
