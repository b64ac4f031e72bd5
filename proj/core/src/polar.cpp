#include "rankguard/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rankguard/errors.hpp"

namespace rankguard {

namespace {

constexpr unsigned kMaxDenseLog2 = 16;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

void check_delta(unsigned n, std::span<const double> delta) {
    if (delta.size() != (std::size_t(1) << n))
        throw BadLength("delta: expected " + std::to_string(std::size_t(1) << n) +
                        " entries, got " + std::to_string(delta.size()));
    for (double d : delta)
        if (!(d >= 0.0 && d <= 1.0))
            throw OutOfRange("delta: entry " + std::to_string(d) + " outside [0,1]");
}

PolarCode make_code(unsigned n, std::vector<double> delta, std::vector<std::size_t> info_0based) {
    PolarCode code;
    code.n = n;
    code.block_length = std::size_t(1) << n;
    code.z_profile = bec_reliability(n, delta);
    code.delta = std::move(delta);
    std::sort(info_0based.begin(), info_0based.end());
    std::vector<std::uint8_t> is_info(code.block_length, 0);
    for (std::size_t i : info_0based) is_info[i] = 1;
    for (std::size_t i = 0; i < code.block_length; ++i)
        (is_info[i] ? code.info_set : code.frozen_set).push_back(i + 1);
    return code;
}

}  // namespace

BitMatrix polar_transform(unsigned n) {
    if (n > kMaxDenseLog2)
        throw CapExceeded("polar_transform: n = " + std::to_string(n) + " exceeds dense cap " +
                              std::to_string(kMaxDenseLog2),
                          n);
    BitMatrix g = BitMatrix::identity(1);
    for (unsigned level = 0; level < n; ++level) {
        const std::size_t m = g.rows();
        BitMatrix next(2 * m, 2 * m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                if (!g.get(r, c)) continue;
                next.set(r, c, true);          // top-left block
                next.set(m + r, c, true);      // bottom-left block
                next.set(m + r, m + c, true);  // bottom-right block
            }
        }
        g = std::move(next);
    }
    return g;
}

std::vector<std::uint8_t> encode(std::vector<std::uint8_t> u) {
    if (!is_power_of_two(u.size()))
        throw BadLength("encode: length " + std::to_string(u.size()) + " is not a power of two");
    const std::size_t N = u.size();
    for (std::size_t block = N; block >= 2; block >>= 1) {
        const std::size_t half = block >> 1;
        for (std::size_t start = 0; start < N; start += block)
            for (std::size_t i = start; i < start + half; ++i) u[i] ^= u[i + half];
    }
    return u;
}

std::vector<double> bec_reliability(unsigned n, std::span<const double> delta) {
    check_delta(n, delta);
    std::vector<double> z(delta.begin(), delta.end());
    const std::size_t N = z.size();
    for (std::size_t block = N; block >= 2; block >>= 1) {
        const std::size_t half = block >> 1;
        for (std::size_t start = 0; start < N; start += block) {
            for (std::size_t j = start; j < start + half; ++j) {
                const double a = z[j];
                const double b = z[j + half];
                const double hi = std::max(a, b);
                const double lo = std::min(a, b);
                z[j] = std::min(1.0, hi + (1.0 - hi) * lo);  // degraded branch
                z[j + half] = a * b;                         // upgraded branch
            }
        }
    }
    return z;
}

PolarCode build_code(unsigned n, std::vector<double> delta, double rate) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw OutOfRange("rate: " + std::to_string(rate) + " outside [0,1]");
    check_delta(n, delta);
    const std::size_t N = std::size_t(1) << n;
    const std::vector<double> z = bec_reliability(n, delta);
    const auto k = static_cast<std::size_t>(std::floor(static_cast<double>(N) * rate));

    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&z](std::size_t a, std::size_t b) { return z[a] < z[b]; });
    order.resize(k);

    PolarCode code = make_code(n, std::move(delta), std::move(order));
    code.rate = rate;
    return code;
}

PolarCode build_code_threshold(unsigned n, std::vector<double> delta, double zeta) {
    if (!(zeta >= 0.0 && zeta < 1.0))
        throw OutOfRange("zeta: " + std::to_string(zeta) + " outside [0,1)");
    check_delta(n, delta);
    const std::size_t N = std::size_t(1) << n;
    const std::vector<double> z = bec_reliability(n, delta);

    std::vector<std::size_t> info;
    for (std::size_t i = 0; i < N; ++i)
        if (z[i] <= zeta) info.push_back(i);

    PolarCode code = make_code(n, std::move(delta), std::move(info));
    code.zeta = zeta;
    return code;
}

std::vector<std::uint8_t> info_mask(const PolarCode& code) {
    std::vector<std::uint8_t> mask(code.block_length, 0);
    for (std::size_t i : code.info_set) mask[i - 1] = 1;
    return mask;
}

std::vector<std::uint8_t> assemble_input(const PolarCode& code,
                                         std::span<const std::uint8_t> info_bits,
                                         std::span<const std::uint8_t> frozen_bits) {
    if (info_bits.size() != code.info_set.size() || frozen_bits.size() != code.frozen_set.size())
        throw DimensionMismatch("assemble_input: bit counts do not match the code's sets");
    std::vector<std::uint8_t> u(code.block_length, 0);
    for (std::size_t j = 0; j < code.info_set.size(); ++j) u[code.info_set[j] - 1] = info_bits[j];
    for (std::size_t j = 0; j < code.frozen_set.size(); ++j)
        u[code.frozen_set[j] - 1] = frozen_bits[j];
    return u;
}

std::vector<std::uint8_t> gather_coordinates(std::span<const std::uint8_t> x,
                                             std::span<const std::size_t> idx_1based) {
    std::vector<std::uint8_t> out;
    out.reserve(idx_1based.size());
    for (std::size_t i : idx_1based) {
        if (i == 0 || i > x.size())
            throw IndexOutOfRange("coordinate " + std::to_string(i) + " outside [1," +
                                  std::to_string(x.size()) + "]");
        out.push_back(x[i - 1]);
    }
    return out;
}

std::vector<std::size_t> to_zero_based(std::span<const std::size_t> idx_1based, std::size_t N) {
    std::vector<std::uint8_t> seen(N, 0);
    std::vector<std::size_t> out;
    out.reserve(idx_1based.size());
    for (std::size_t i : idx_1based) {
        if (i == 0 || i > N)
            throw IndexOutOfRange("index " + std::to_string(i) + " outside [1," +
                                  std::to_string(N) + "]");
        if (seen[i - 1]) throw IndexOutOfRange("duplicate index " + std::to_string(i));
        seen[i - 1] = 1;
        out.push_back(i - 1);
    }
    return out;
}

}  // namespace rankguard
