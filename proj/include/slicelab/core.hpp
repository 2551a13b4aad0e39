#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slicelab {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

enum class ErrorCode {
    DimensionMismatch,
    InvalidParams,
    DegenerateFunctional,
    EmptyRestriction,
    OutsideBall,
    NonLinearMap,
    NonBilinearMap,
    StaleWitness,
    NoExposedPoint,
    UnsupportedSpace,
    ZeroVector,
    Config,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

class LabError : public std::runtime_error {
public:
    LabError(ErrorCode code, const std::string& what);
    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Strict lexicographic order on (re, im) pairs; used to break exact ties so
// that searches are reproducible independent of evaluation order.
[[nodiscard]] bool lex_less(std::span<const Scalar> a, std::span<const Scalar> b) noexcept;

[[nodiscard]] Vector operator+(const Vector& a, const Vector& b);
[[nodiscard]] Vector operator-(const Vector& a, const Vector& b);
[[nodiscard]] Vector operator*(Scalar s, const Vector& v);
[[nodiscard]] Vector operator-(const Vector& v);

[[nodiscard]] Vector constant_vector(std::size_t n, Scalar value);
[[nodiscard]] Vector basis_vector(std::size_t n, std::size_t i, Scalar value = 1.0);

// Unit scalar with the phase of z (1 when z == 0).
[[nodiscard]] Scalar phase(Scalar z) noexcept;

}  // namespace slicelab
