#pragma once

#include <cstdint>
#include <random>

namespace cardbounds {

/// Identifies one reproducible random stream.
struct RngSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed handed to the engine for a given stream:
///   mix64(master_seed ^ mix64(stream_index + 0x9e3779b97f4a7c15)).
constexpr std::uint64_t derive_stream_seed(const RngSpec& spec) noexcept {
    return mix64(spec.master_seed ^ mix64(spec.stream_index + 0x9e3779b97f4a7c15ULL));
}

/// Deterministic random stream backed by std::mt19937_64.
///
/// Bounded draws do not use the standard distributions (their output is
/// implementation-defined). `uniform_below(b)` takes bit_width(b-1) bits from
/// a 64-bit buffer, refilling it with a fresh engine output when fewer bits
/// remain, and rejects values >= b. Power-of-two bounds therefore never
/// reject, and a binary symbol costs one bit of engine output.
class Rng {
public:
    explicit Rng(const RngSpec& spec) : engine_(derive_stream_seed(spec)) {}

    std::uint64_t next() { return engine_(); }

    std::uint64_t bits(unsigned count);

    std::uint64_t uniform_below(std::uint64_t bound);

    bool coin() { return bits(1) != 0; }

private:
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    unsigned buffered_ = 0;
};

}  // namespace cardbounds
