#include "igof/rng.hpp"

#include <array>

#include "igof/numeric.hpp"

namespace igof {

RngSeed RngSeed::substream(std::uint64_t index) const {
    // splitmix64 finalizer keeps nested streams from colliding with siblings.
    std::uint64_t z = stream + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return {seed, z ^ (z >> 31)};
}

namespace {

std::mt19937_64 make_engine(RngSeed s) {
    std::array<std::uint32_t, 4> words{
        static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
        static_cast<std::uint32_t>(s.stream), static_cast<std::uint32_t>(s.stream >> 32)};
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(RngSeed seed) : engine_(make_engine(seed)) {}

double Rng::uniform() {
    // 53 random bits, shifted half a step off zero.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return numeric::std_normal_quantile(uniform()); }

}  // namespace igof
