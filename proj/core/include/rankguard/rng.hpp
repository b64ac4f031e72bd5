#pragma once

#include <cstdint>

namespace rankguard {

/// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent draw streams within one simulated frame.
enum class Stream : std::uint64_t {
    erasure = 1,
    frozen = 2,
    message = 3,
    audit = 4,
};

/// Counter-based generator: every draw is a pure function of
/// (seed, frame, stream, index), so serial and parallel runs produce
/// identical random values no matter how frames are scheduled.
class FrameRng {
public:
    FrameRng(std::uint64_t seed, std::uint64_t frame) noexcept
        : seed_(seed), frame_(frame) {}

    std::uint64_t word(Stream stream, std::uint64_t index) const noexcept {
        std::uint64_t h = mix64(seed_ ^ 0x243f6a8885a308d3ULL);
        h = mix64(h ^ (frame_ * 0x9e3779b97f4a7c15ULL));
        h = mix64(h ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
        return mix64(h ^ (index * 0x2545f4914f6cdd1dULL));
    }

    /// Uniform double in [0, 1).
    double uniform(Stream stream, std::uint64_t index) const noexcept {
        return static_cast<double>(word(stream, index) >> 11) * 0x1.0p-53;
    }

    /// Fair coin flip, 0 or 1.
    std::uint8_t bit(Stream stream, std::uint64_t index) const noexcept {
        return static_cast<std::uint8_t>(word(stream, index) & 1u);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t frame() const noexcept { return frame_; }

private:
    std::uint64_t seed_;
    std::uint64_t frame_;
};

}  // namespace rankguard
