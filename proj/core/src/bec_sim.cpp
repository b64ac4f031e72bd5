#include "rankguard/bec_sim.hpp"

#include <algorithm>
#include <cassert>

#include "rankguard/errors.hpp"
#include "rankguard/parallel.hpp"

namespace rankguard {

namespace {

ErasureSymbol xor3(ErasureSymbol a, ErasureSymbol b) {
    if (a == kErased || b == kErased) return kErased;
    return a ^ b;
}

// Successive-cancellation pass over one block.  `obs` holds the block's
// synthetic observations at this level; decisions land in u[base..base+m).
// Writes the re-encoded decision vector of the block into `xhat` and
// returns it so the caller can form the sibling branch's observations.
//
// Buffer layout: level l owns rows [l*N, (l+1)*N) of obs_buf/xhat_buf, and a
// block of size m starting at leaf `base` uses columns [base, base+m).
struct ScWorkspace {
    std::size_t N;
    std::vector<ErasureSymbol> obs_buf;
    std::vector<ErasureSymbol> xhat_buf;
    std::span<const std::uint8_t> info;           // 1 = information position
    std::span<const std::uint8_t> frozen_values;  // consumed in frozen-set order
    std::size_t frozen_at = 0;
    std::vector<ErasureSymbol>* u = nullptr;

    void run(std::size_t level, std::size_t base, std::size_t m) {
        ErasureSymbol* obs = obs_buf.data() + level * N + base;
        ErasureSymbol* xhat = xhat_buf.data() + level * N + base;
        if (m == 1) {
            ErasureSymbol decided;
            if (info[base]) {
                decided = obs[0];
            } else {
                decided = static_cast<ErasureSymbol>(frozen_values[frozen_at++]);
            }
            (*u)[base] = decided;
            xhat[0] = decided;
            return;
        }
        const std::size_t half = m / 2;
        ErasureSymbol* child_obs = obs_buf.data() + (level + 1) * N + base;
        // Degraded branch first: combine the pairwise observations.
        for (std::size_t j = 0; j < half; ++j) child_obs[j] = xor3(obs[j], obs[j + half]);
        run(level + 1, base, half);
        const ErasureSymbol* left_xhat = xhat_buf.data() + (level + 1) * N + base;
        // With the left block re-encoded, each pair pins down the upgraded
        // branch from either direct delivery or the XOR side.
        ErasureSymbol* child_obs2 = obs_buf.data() + (level + 1) * N + base + half;
        for (std::size_t j = 0; j < half; ++j) {
            if (obs[j + half] != kErased)
                child_obs2[j] = obs[j + half];
            else
                child_obs2[j] = xor3(obs[j], left_xhat[j]);
        }
        run(level + 1, base + half, half);
        const ErasureSymbol* right_xhat = xhat_buf.data() + (level + 1) * N + base + half;
        for (std::size_t j = 0; j < half; ++j) {
            xhat[j] = xor3(left_xhat[j], right_xhat[j]);
            xhat[j + half] = right_xhat[j];
        }
    }
};

}  // namespace

std::vector<double> induced_delta(const ChannelAssignment& assign, std::size_t block_length) {
    const std::vector<std::size_t> p0 = to_zero_based(assign.public_set, block_length);
    if (!(assign.delta_pub >= 0.0 && assign.delta_pub <= 1.0))
        throw OutOfRange("delta_pub outside [0,1]");
    if (!(assign.delta_priv >= 0.0 && assign.delta_priv <= 1.0))
        throw OutOfRange("delta_priv outside [0,1]");
    std::vector<double> delta(block_length, assign.delta_priv);
    for (std::size_t i : p0) delta[i] = assign.delta_pub;
    return delta;
}

std::vector<ErasureSymbol> transmit(std::span<const std::uint8_t> x,
                                    const ChannelAssignment& assign, const FrameRng& rng) {
    return transmit(x, induced_delta(assign, x.size()), rng);
}

std::vector<ErasureSymbol> transmit(std::span<const std::uint8_t> x,
                                    std::span<const double> delta_per_coord,
                                    const FrameRng& rng) {
    if (delta_per_coord.size() != x.size())
        throw DimensionMismatch("transmit: delta vector length does not match x");
    std::vector<ErasureSymbol> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = rng.uniform(Stream::erasure, i) < delta_per_coord[i]
                   ? kErased
                   : static_cast<ErasureSymbol>(x[i]);
    }
    return y;
}

DecodeResult sc_decode(std::span<const ErasureSymbol> y, const PolarCode& code,
                       std::span<const std::uint8_t> frozen_values) {
    const std::size_t N = code.block_length;
    if (y.size() != N) throw BadLength("sc_decode: observation length does not match the code");
    if (frozen_values.size() != code.frozen_set.size())
        throw DimensionMismatch("sc_decode: frozen value count does not match the frozen set");

    DecodeResult result;
    result.u.assign(N, kErased);

    const std::vector<std::uint8_t> mask = info_mask(code);
    ScWorkspace ws;
    ws.N = N;
    ws.obs_buf.assign(N * (code.n + 1), kErased);
    ws.xhat_buf.assign(N * (code.n + 1), kErased);
    ws.info = mask;
    ws.frozen_values = frozen_values;
    ws.u = &result.u;
    std::copy(y.begin(), y.end(), ws.obs_buf.begin());
    ws.run(0, 0, N);

    result.success = true;
    for (std::size_t i = 0; i < N; ++i) {
        if (mask[i] && result.u[i] == kErased) {
            if (result.success) {
                result.success = false;
                result.first_undetermined = i + 1;
            }
            ++result.undetermined_info_bits;
        }
    }
    return result;
}

std::vector<std::uint8_t> adversary_observe(std::span<const std::uint8_t> x,
                                            const LeakageCertificate& cert) {
    if (!cert.verified)
        throw UnverifiedCertificate("adversary_observe: certificate failed or skipped its audit");
    const std::vector<std::uint8_t> xp = gather_coordinates(x, cert.public_set);
    return vec_mat_multiply(xp, cert.extractor);
}

SimulationReport run_experiment(const PolarCode& code, const ChannelAssignment& assign,
                                const LeakageCertificate& cert, std::uint64_t trials,
                                std::uint64_t seed, bool reuse_mask) {
    if (trials < 1) throw OutOfRange("run_experiment: trials must be >= 1");
    if (!cert.verified)
        throw UnverifiedCertificate("run_experiment: certificate failed or skipped its audit");

    const std::vector<double> delta = induced_delta(assign, code.block_length);
    const std::size_t info_count = code.info_set.size();
    const std::size_t frozen_count = code.frozen_set.size();

    struct Tally {
        std::uint64_t frame_errors = 0;
        std::uint64_t bit_errors = 0;
        std::uint64_t adversary_ok = 0;
    };

    std::size_t chunk_count = worker_count();
    if (trials < 512) chunk_count = 1;
    std::vector<Tally> tallies(std::max<std::size_t>(chunk_count, 1));

    parallel_chunks(trials, chunk_count, [&](std::size_t chunk, std::uint64_t begin,
                                             std::uint64_t end) {
        Tally& tally = tallies[chunk];
        std::vector<std::uint8_t> info_bits(info_count), frozen_bits(frozen_count);
        for (std::uint64_t frame = begin; frame < end; ++frame) {
            const FrameRng rng(seed, frame);
            const FrameRng mask_rng(seed, reuse_mask ? 0 : frame);
            for (std::size_t j = 0; j < info_count; ++j) info_bits[j] = rng.bit(Stream::message, j);
            for (std::size_t j = 0; j < frozen_count; ++j)
                frozen_bits[j] = mask_rng.bit(Stream::frozen, j);

            const std::vector<std::uint8_t> x =
                encode(assemble_input(code, info_bits, frozen_bits));

            // The observer sees the published channel inputs pre-noise.
            const std::vector<std::uint8_t> recovered = adversary_observe(x, cert);
            if (recovered == vec_mat_multiply(info_bits, cert.leaked_combinations))
                ++tally.adversary_ok;

            const std::vector<ErasureSymbol> y = transmit(x, delta, rng);
            const DecodeResult decoded = sc_decode(y, code, frozen_bits);
            if (!decoded.success) {
                ++tally.frame_errors;
                tally.bit_errors += decoded.undetermined_info_bits;
            }
        }
    });

    SimulationReport report;
    report.trials = trials;
    report.seed = seed;
    for (const Tally& t : tallies) {
        report.frame_errors += t.frame_errors;
        report.bit_errors += t.bit_errors;
        report.adversary_checks_passed += t.adversary_ok;
    }
    report.fer = static_cast<double>(report.frame_errors) / static_cast<double>(trials);
    report.ber = info_count == 0 ? 0.0
                                 : static_cast<double>(report.bit_errors) /
                                       (static_cast<double>(trials) *
                                        static_cast<double>(info_count));
    return report;
}

}  // namespace rankguard
