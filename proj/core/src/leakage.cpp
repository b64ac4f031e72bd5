#include "rankguard/leakage.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "rankguard/errors.hpp"
#include "rankguard/rng.hpp"

namespace rankguard {

namespace {

std::vector<std::size_t> all_rows(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

struct PublishedSubmatrices {
    BitMatrix gp;   // all rows, published columns
    BitMatrix gap;  // information rows
    BitMatrix gfp;  // frozen rows
};

PublishedSubmatrices cut(const BitMatrix& g, const PolarCode& code,
                         std::span<const std::size_t> public_set) {
    const std::vector<std::size_t> p0 = to_zero_based(public_set, code.block_length);
    const std::vector<std::size_t> a0 = to_zero_based(code.info_set, code.block_length);
    const std::vector<std::size_t> f0 = to_zero_based(code.frozen_set, code.block_length);
    PublishedSubmatrices s;
    s.gp = select_submatrix(g, all_rows(code.block_length), p0);
    s.gap = select_submatrix(g, a0, p0);
    s.gfp = select_submatrix(g, f0, p0);
    return s;
}

void check_code_transform(const PolarCode& code, const BitMatrix& g) {
    if (g.rows() != code.block_length || g.cols() != code.block_length)
        throw DimensionMismatch("transform is " + std::to_string(g.rows()) + "x" +
                                std::to_string(g.cols()) + ", code blocklength is " +
                                std::to_string(code.block_length));
    if (code.info_set.size() + code.frozen_set.size() != code.block_length)
        throw DimensionMismatch("info/frozen sets do not partition the index range");
}

bool is_zero(const BitMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!m.row_is_zero(r)) return false;
    return true;
}

double entropy_bits(const std::unordered_map<std::uint64_t, std::uint64_t>& counts,
                    std::uint64_t total) {
    // H = log2(T) - (1/T) * sum c*log2(c)
    double acc = 0.0;
    for (const auto& [key, c] : counts) {
        (void)key;
        acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    return std::log2(static_cast<double>(total)) - acc / static_cast<double>(total);
}

}  // namespace

std::string VerificationReport::first_failure() const {
    if (!stored_ranks_match) return "stored rank mismatch";
    if (!rank_identity) return "rank identity mismatch";
    if (!extractor_width) return "extractor width mismatch";
    if (!frozen_annihilated) return "frozen annihilation failed";
    if (!leaked_rank) return "leaked rank mismatch";
    if (!combinations_match) return "leaked combinations mismatch";
    if (!frames_consistent) return "frame consistency failed";
    return "";
}

LeakageValue leakage(const PolarCode& code, std::span<const std::size_t> public_set) {
    return leakage(polar_transform(code.n), code, public_set);
}

LeakageValue leakage(const BitMatrix& transform, const PolarCode& code,
                     std::span<const std::size_t> public_set) {
    check_code_transform(code, transform);
    const PublishedSubmatrices s = cut(transform, code, public_set);
    LeakageValue v;
    v.rank_gp = rank(s.gp);
    v.rank_gfp = rank(s.gfp);
    v.leaked_bits = v.rank_gp - v.rank_gfp;
    return v;
}

LeakageCertificate build_extractor(const PolarCode& code, std::span<const std::size_t> public_set,
                                   std::uint64_t seed, std::string code_ref) {
    return build_extractor(polar_transform(code.n), code, public_set, seed, std::move(code_ref));
}

LeakageCertificate build_extractor(const BitMatrix& transform, const PolarCode& code,
                                   std::span<const std::size_t> public_set, std::uint64_t seed,
                                   std::string code_ref) {
    check_code_transform(code, transform);
    // The certificate stores P in ascending order, so the submatrix cut (and
    // with it the extractor's row order) must use the same ordering.
    std::vector<std::size_t> sorted_p(public_set.begin(), public_set.end());
    std::sort(sorted_p.begin(), sorted_p.end());
    const PublishedSubmatrices s = cut(transform, code, sorted_p);
    const std::size_t width = sorted_p.size();

    const RowBasis v = row_reduce(s.gfp);
    const RowBasis q = row_reduce(s.gp);
    const std::size_t r = q.rank() - v.rank();

    // Basis of the full |P|-dimensional row space: frozen-space basis rows,
    // then the coset representatives, then unit vectors for the remainder.
    const BitMatrix reps = extend_basis(v, q);
    BitMatrix basis(width, width);
    BasisAccumulator acc(width);
    std::size_t row_at = 0;
    for (std::size_t i = 0; i < v.matrix.rows(); ++i, ++row_at) {
        acc.try_insert(v.matrix, i);
        std::copy(v.matrix.row(i).begin(), v.matrix.row(i).end(), basis.row(row_at).begin());
    }
    for (std::size_t i = 0; i < reps.rows(); ++i, ++row_at) {
        acc.try_insert(reps, i);
        std::copy(reps.row(i).begin(), reps.row(i).end(), basis.row(row_at).begin());
    }
    BitMatrix unit(1, width);
    for (std::size_t i = 0; i < width && row_at < width; ++i) {
        unit.set(0, i, true);
        if (acc.try_insert(unit, 0)) {
            basis.set(row_at, i, true);
            ++row_at;
        }
        unit.set(0, i, false);
    }
    assert(row_at == width);

    // Images: zero for frozen-space rows, unit output for representative
    // l, zero for the completion.  R then solves basis * R = images.
    BitMatrix images(width, r);
    for (std::size_t l = 0; l < r; ++l) images.set(v.rank() + l, l, true);
    const BitMatrix extractor = multiply(invert(basis), images);

    LeakageCertificate cert;
    cert.code_ref = std::move(code_ref);
    cert.n = code.n;
    cert.info_set = code.info_set;
    cert.public_set = std::move(sorted_p);
    cert.rank_gp = q.rank();
    cert.rank_gfp = v.rank();
    cert.leaked_bits = r;
    cert.extractor = extractor;
    cert.leaked_combinations = multiply(s.gap, extractor);
    cert.seed = seed;
    cert.verified = verify_certificate(cert, code, transform).ok();
    return cert;
}

VerificationReport verify_certificate(const LeakageCertificate& cert, const PolarCode& code) {
    return verify_certificate(cert, code, polar_transform(code.n));
}

VerificationReport verify_certificate(const LeakageCertificate& cert, const PolarCode& code,
                                      const BitMatrix& transform) {
    check_code_transform(code, transform);
    if (cert.n != code.n)
        throw DimensionMismatch("certificate blocklength 2^" + std::to_string(cert.n) +
                                " does not match code 2^" + std::to_string(code.n));
    if (cert.info_set != code.info_set)
        throw DimensionMismatch("certificate information set does not match the code");
    const PublishedSubmatrices s = cut(transform, code, cert.public_set);
    if (cert.extractor.rows() != cert.public_set.size())
        throw DimensionMismatch("extractor has " + std::to_string(cert.extractor.rows()) +
                                " rows, published set has " +
                                std::to_string(cert.public_set.size()));
    if (cert.leaked_combinations.rows() != code.info_set.size())
        throw DimensionMismatch("leaked combinations have " +
                                std::to_string(cert.leaked_combinations.rows()) +
                                " rows, information set has " +
                                std::to_string(code.info_set.size()));
    if (cert.leaked_combinations.cols() != cert.extractor.cols())
        throw DimensionMismatch("extractor and leaked combinations disagree on column count");

    VerificationReport report;
    const std::size_t rank_gp = rank(s.gp);
    const std::size_t rank_gfp = rank(s.gfp);
    report.stored_ranks_match = cert.rank_gp == rank_gp && cert.rank_gfp == rank_gfp;
    report.rank_identity = cert.leaked_bits == rank_gp - rank_gfp;
    report.extractor_width = cert.extractor.cols() == cert.leaked_bits;
    report.frozen_annihilated = is_zero(multiply(s.gfp, cert.extractor));
    const BitMatrix recombined = multiply(s.gap, cert.extractor);
    report.leaked_rank = rank(recombined) == cert.leaked_bits;
    report.combinations_match = recombined == cert.leaked_combinations;

    // Sampled end-to-end consistency: encode random inputs, publish, apply
    // the extractor, and compare with the combination matrix applied to the
    // information bits.  Deterministic given cert.seed.
    constexpr std::size_t kFrames = 100;
    report.frames_consistent = true;
    for (std::size_t f = 0; f < kFrames; ++f) {
        const FrameRng rng(cert.seed, f);
        std::vector<std::uint8_t> info_bits(code.info_set.size());
        std::vector<std::uint8_t> frozen_bits(code.frozen_set.size());
        for (std::size_t j = 0; j < info_bits.size(); ++j)
            info_bits[j] = rng.bit(Stream::audit, j);
        for (std::size_t j = 0; j < frozen_bits.size(); ++j)
            frozen_bits[j] = rng.bit(Stream::audit, info_bits.size() + j);
        const std::vector<std::uint8_t> x = encode(assemble_input(code, info_bits, frozen_bits));
        const std::vector<std::uint8_t> xp = gather_coordinates(x, cert.public_set);
        if (vec_mat_multiply(xp, cert.extractor) !=
            vec_mat_multiply(info_bits, cert.leaked_combinations)) {
            report.frames_consistent = false;
            break;
        }
    }
    return report;
}

double exhaustive_mi_oracle(const PolarCode& code, std::span<const std::size_t> public_set) {
    const std::size_t N = code.block_length;
    if (N > 20)
        throw CapExceeded("exhaustive_mi_oracle: 2^" + std::to_string(N) +
                              " inputs exceed the enumeration cap (N <= 20)",
                          N >= 64 ? ~0ULL : (1ULL << N));
    const std::vector<std::size_t> p0 = to_zero_based(public_set, N);
    const std::vector<std::size_t> a0 = to_zero_based(code.info_set, N);

    std::unordered_map<std::uint64_t, std::uint64_t> info_counts, pub_counts, joint_counts;
    const std::uint64_t total = 1ULL << N;
    std::vector<std::uint8_t> u(N);
    for (std::uint64_t word = 0; word < total; ++word) {
        for (std::size_t i = 0; i < N; ++i) u[i] = static_cast<std::uint8_t>((word >> i) & 1u);
        const std::vector<std::uint8_t> x = encode(u);
        std::uint64_t info_key = 0, pub_key = 0;
        for (std::size_t j = 0; j < a0.size(); ++j)
            info_key |= static_cast<std::uint64_t>(u[a0[j]]) << j;
        for (std::size_t j = 0; j < p0.size(); ++j)
            pub_key |= static_cast<std::uint64_t>(x[p0[j]]) << j;
        ++info_counts[info_key];
        ++pub_counts[pub_key];
        ++joint_counts[(info_key << p0.size()) | pub_key];
    }
    // I(u_A; x_p) = H(x_p) - H(x_p | u_A) = H(x_p) + H(u_A) - H(u_A, x_p)
    return entropy_bits(pub_counts, total) + entropy_bits(info_counts, total) -
           entropy_bits(joint_counts, total);
}

std::vector<std::string> leaked_equation_report(const LeakageCertificate& cert) {
    std::vector<std::string> lines;
    lines.reserve(cert.leaked_bits);
    const BitMatrix& r = cert.extractor;
    const BitMatrix& m = cert.leaked_combinations;
    for (std::size_t col = 0; col < cert.leaked_bits; ++col) {
        std::string left, right;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (!r.get(i, col)) continue;
            if (!left.empty()) left += " ⊕ ";
            left += "x_" + std::to_string(cert.public_set[i]);
        }
        for (std::size_t j = 0; j < m.rows(); ++j) {
            if (!m.get(j, col)) continue;
            if (!right.empty()) right += " ⊕ ";
            right += "u_" + std::to_string(cert.info_set[j]);
        }
        lines.push_back(left + " = " + right);
    }
    return lines;
}

}  // namespace rankguard
