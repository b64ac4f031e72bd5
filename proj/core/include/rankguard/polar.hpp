#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankguard/bit_matrix.hpp"

namespace rankguard {

/// A constructed polar code over per-coordinate erasure channels.
///
/// Index convention: `info_set`, `frozen_set` and every published-set
/// argument in this library are 1-based, matching the CLI and file formats.
/// Raw BitMatrix indices stay 0-based.
struct PolarCode {
    unsigned n = 0;                       ///< log2 of the blocklength
    std::size_t block_length = 0;         ///< N = 2^n
    std::vector<std::size_t> info_set;    ///< ascending, 1-based
    std::vector<std::size_t> frozen_set;  ///< ascending, 1-based
    std::vector<double> z_profile;        ///< synthetic-channel erasure parameters
    std::vector<double> delta;            ///< per-coordinate channel erasure probabilities
    std::optional<double> rate;           ///< set when built from a target rate
    std::optional<double> zeta;           ///< set when built from a threshold
};

/// The NxN binary transform: n-fold Kronecker power of [[1,0],[1,1]] in
/// natural (non-bit-reversed) order.  n is capped at 16 because the result
/// is stored densely; beyond that throws CapExceeded.
BitMatrix polar_transform(unsigned n);

/// x = u * transform, computed by the in-place butterfly in O(N log N) bit
/// operations.  The input length must be a power of two (BadLength).
std::vector<std::uint8_t> encode(std::vector<std::uint8_t> u);

/// Exact synthetic-channel erasure parameters for one erasure probability
/// per coordinate.  Pairs (z', z'') combine into z' + z'' - z'z'' on the
/// less reliable branch and z'z'' on the more reliable one; leaves start at
/// delta.  delta must have length 2^n with entries in [0, 1].
std::vector<double> bec_reliability(unsigned n, std::span<const double> delta);

/// Information set = the floor(N*rate) indices with the smallest reliability
/// parameter, ties broken toward the smaller index.
PolarCode build_code(unsigned n, std::vector<double> delta, double rate);

/// Information set = every index whose reliability parameter is <= zeta,
/// with 0 <= zeta < 1.
PolarCode build_code_threshold(unsigned n, std::vector<double> delta, double zeta);

/// 1 at positions (0-based) belonging to the information set.
std::vector<std::uint8_t> info_mask(const PolarCode& code);

/// Scatters information and frozen bits (given in ascending set order) into
/// a full-length input vector.
std::vector<std::uint8_t> assemble_input(const PolarCode& code,
                                         std::span<const std::uint8_t> info_bits,
                                         std::span<const std::uint8_t> frozen_bits);

/// Picks x at the given 1-based coordinates, in the order given.
std::vector<std::uint8_t> gather_coordinates(std::span<const std::uint8_t> x,
                                             std::span<const std::size_t> idx_1based);

/// Validates a 1-based, duplicate-free index set against blocklength N and
/// returns it converted to 0-based form (unsorted input is accepted and
/// order is preserved).
std::vector<std::size_t> to_zero_based(std::span<const std::size_t> idx_1based, std::size_t N);

}  // namespace rankguard
