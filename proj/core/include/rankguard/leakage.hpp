#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankguard/bit_matrix.hpp"
#include "rankguard/polar.hpp"

namespace rankguard {

/// Default seed for the sampled frame-consistency audit; recorded in every
/// certificate so an audit can be replayed exactly.
inline constexpr std::uint64_t kDefaultAuditSeed = 0x5eedc0de;

/// Exact leakage of a published coordinate set, split into its two rank
/// terms:  leaked_bits == rank_gp - rank_gfp.
struct LeakageValue {
    std::size_t leaked_bits = 0;
    std::size_t rank_gp = 0;   ///< rank of the published submatrix, all rows
    std::size_t rank_gfp = 0;  ///< rank of the published submatrix, frozen rows only
};

/// Certifies what a public observer of the published coordinates learns:
/// exactly `leaked_bits` independent GF(2) combinations of the information
/// bits, recovered by right-multiplying the published bits with `extractor`.
///
/// Shapes: extractor is |P| x L, leaked_combinations is |A| x L with
/// leaked_combinations == G_{A,P} * extractor.  Column j of
/// leaked_combinations names which information bits XOR into recovered
/// bit j.  When L == 0 both matrices have zero columns.
struct LeakageCertificate {
    std::string code_ref;  ///< descriptor reference (file path, or "inline")
    unsigned n = 0;
    std::vector<std::size_t> info_set;    ///< ascending, 1-based; labels the rows of M
    std::vector<std::size_t> public_set;  ///< ascending, 1-based
    std::size_t rank_gp = 0;
    std::size_t rank_gfp = 0;
    std::size_t leaked_bits = 0;
    BitMatrix extractor;
    BitMatrix leaked_combinations;
    bool verified = false;
    std::uint64_t seed = kDefaultAuditSeed;

    friend bool operator==(const LeakageCertificate&, const LeakageCertificate&) = default;
};

/// Per-check outcome of a certificate audit.
struct VerificationReport {
    bool stored_ranks_match = false;  ///< stored ranks equal recomputed ranks
    bool rank_identity = false;       ///< L == rank_gp - rank_gfp, recomputed
    bool extractor_width = false;     ///< extractor has exactly L columns
    bool frozen_annihilated = false;  ///< G_{F,P} * R == 0
    bool leaked_rank = false;         ///< rank(G_{A,P} * R) == L
    bool combinations_match = false;  ///< stored M == G_{A,P} * R
    bool frames_consistent = false;   ///< sampled frames: x_p R == u_A M

    bool ok() const {
        return stored_ranks_match && rank_identity && extractor_width && frozen_annihilated &&
               leaked_rank && combinations_match && frames_consistent;
    }

    /// Name of the first failed check, or empty when everything passed.
    std::string first_failure() const;
};

/// Exact leakage of publishing the 1-based coordinate set P.
LeakageValue leakage(const PolarCode& code, std::span<const std::size_t> public_set);
LeakageValue leakage(const BitMatrix& transform, const PolarCode& code,
                     std::span<const std::size_t> public_set);

/// Builds the extractor by the quotient-space construction: a basis of the
/// frozen row space is extended by coset representatives to a basis of the
/// full published row space, completed with unit vectors, and the linear map
/// sending representatives to unit outputs (and everything else to zero) is
/// solved for as a matrix.  The returned certificate has been audited and
/// carries the verdict in `verified`.
LeakageCertificate build_extractor(const PolarCode& code, std::span<const std::size_t> public_set,
                                   std::uint64_t seed = kDefaultAuditSeed,
                                   std::string code_ref = "inline");
LeakageCertificate build_extractor(const BitMatrix& transform, const PolarCode& code,
                                   std::span<const std::size_t> public_set,
                                   std::uint64_t seed = kDefaultAuditSeed,
                                   std::string code_ref = "inline");

/// Re-audits a certificate against a code: recomputes both ranks, rechecks
/// the rank identity and the extractor algebra, and replays the seeded
/// frame-consistency sample.  Throws DimensionMismatch when the certificate
/// shapes cannot belong to the code.
VerificationReport verify_certificate(const LeakageCertificate& cert, const PolarCode& code);
VerificationReport verify_certificate(const LeakageCertificate& cert, const PolarCode& code,
                                      const BitMatrix& transform);

/// Ground-truth mutual information (in bits) between the information bits
/// and the published coordinates, by enumerating all 2^N inputs and summing
/// the entropies of the tallied histograms.  Independent of the rank path;
/// capped at N <= 20 (CapExceeded).
double exhaustive_mi_oracle(const PolarCode& code, std::span<const std::size_t> public_set);

/// One line per recovered bit, e.g. "x_2 = u_2 ⊕ u_4": the left side lists
/// the published coordinates selected by that extractor column, the right
/// side the information bits it equals.
std::vector<std::string> leaked_equation_report(const LeakageCertificate& cert);

}  // namespace rankguard
