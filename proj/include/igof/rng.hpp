#pragma once

#include <cstdint>
#include <random>

namespace igof {

/// Identifies one reproducible random stream: same (seed, stream), same draws.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    [[nodiscard]] RngSeed substream(std::uint64_t index) const;
};

/// Per-worker generator. Never shared across threads.
///
/// The engine is seeded through std::seed_seq over all four 32-bit halves of
/// (seed, stream), so distinct streams start from decorrelated states. Draws
/// are converted to doubles by hand so results do not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(RngSeed seed);

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal by inversion.
    double normal();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace igof
