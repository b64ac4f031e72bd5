#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankguard/leakage.hpp"
#include "rankguard/polar.hpp"
#include "rankguard/rng.hpp"

namespace rankguard {

/// A received symbol: 0, 1, or erased.
using ErasureSymbol = std::int8_t;
inline constexpr ErasureSymbol kErased = -1;

/// Static split of the codeword coordinates between a public link (the
/// coordinates in public_set, observed by everyone pre-noise) and a private
/// link carrying the rest.  Each link is an independent erasure channel.
struct ChannelAssignment {
    std::vector<std::size_t> public_set;  ///< ascending, 1-based
    double delta_pub = 0.0;
    double delta_priv = 0.0;
};

/// Per-coordinate erasure probabilities induced by an assignment.
std::vector<double> induced_delta(const ChannelAssignment& assign, std::size_t block_length);

/// Outcome of successive-cancellation erasure decoding.  `u` holds the
/// decoded input vector with kErased at undetermined information positions;
/// frozen positions always carry their known values.
struct DecodeResult {
    std::vector<ErasureSymbol> u;
    bool success = false;
    std::size_t first_undetermined = 0;  ///< 1-based input index, 0 when success
    std::size_t undetermined_info_bits = 0;
};

struct SimulationReport {
    std::uint64_t trials = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t bit_errors = 0;
    double fer = 0.0;
    double ber = 0.0;
    std::uint64_t adversary_checks_passed = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Input file for the simulate command.
struct ExperimentConfig {
    std::string code_ref;  ///< path to a code descriptor
    std::vector<std::size_t> public_set;
    double delta_pub = 0.0;
    double delta_priv = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    bool reuse_mask = false;  ///< negative demo: reuse frame 0's frozen mask

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Sends x through the assigned channels: symbol i is erased independently
/// with probability delta_i and delivered unchanged otherwise.
std::vector<ErasureSymbol> transmit(std::span<const std::uint8_t> x,
                                    const ChannelAssignment& assign, const FrameRng& rng);
std::vector<ErasureSymbol> transmit(std::span<const std::uint8_t> x,
                                    std::span<const double> delta_per_coord, const FrameRng& rng);

/// Successive-cancellation decoding over erasures.  Frozen positions take
/// their known values (the shared secret); an information position whose
/// synthetic observation is erased makes the frame a failure.  With no
/// erasures the input is always recovered exactly.
DecodeResult sc_decode(std::span<const ErasureSymbol> y, const PolarCode& code,
                       std::span<const std::uint8_t> frozen_values);

/// What the public observer computes: the published coordinates of x times
/// the extractor.  Equals u_A * M for the true information bits.  Throws
/// UnverifiedCertificate unless the certificate passed its audit.
std::vector<std::uint8_t> adversary_observe(std::span<const std::uint8_t> x,
                                            const LeakageCertificate& cert);

/// Runs `trials` independent frames: fresh random information and frozen
/// bits, transmit, decode, and an exact adversary-consistency check per
/// frame.  Deterministic given the seed, independent of worker count.
SimulationReport run_experiment(const PolarCode& code, const ChannelAssignment& assign,
                                const LeakageCertificate& cert, std::uint64_t trials,
                                std::uint64_t seed, bool reuse_mask = false);

}  // namespace rankguard
