#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace slicelab {

/// Seeded generator with platform-independent conversions. The standard
/// distributions are implementation-defined, so uniform and normal draws are
/// done by hand on top of the (fully specified) mt19937_64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    double normal();

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

// splitmix64 mix of (seed, stream); independent sub-streams for nested searches.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace slicelab
