#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rankguard/leakage.hpp"
#include "rankguard/polar.hpp"

namespace rankguard {

/// Per-coordinate column weights of the transform, split by row membership.
/// info_ones[i] counts the information bits feeding codeword coordinate i+1,
/// frozen_ones[i] the frozen bits; score = frozen_ones - info_ones.  High
/// score marks coordinates that are well masked and touch little payload.
struct ScoreTable {
    std::vector<std::size_t> info_ones;    ///< a_i
    std::vector<std::size_t> frozen_ones;  ///< f_i
    std::vector<long long> score;          ///< s_i = f_i - a_i
};

enum class SelectionMethod { greedy, brute_force, exhaustive_sweep };

struct SelectionResult {
    std::vector<std::size_t> public_set;  ///< ascending, 1-based, size k
    std::size_t leaked_bits = 0;          ///< exact leakage of public_set
    std::size_t bound = 0;                ///< sum of info_ones over public_set
    SelectionMethod method = SelectionMethod::greedy;
    std::uint64_t work = 0;  ///< candidate sets examined (serial-scan count)
    bool budget_exceeds_frozen = false;  ///< k > |F|: the score bound's usual regime is left
};

/// One comparison row of greedy vs exhaustive selection at a budget.
struct SweepRow {
    std::size_t k = 0;
    std::size_t greedy_leakage = 0;
    std::size_t bound = 0;
    std::size_t optimal_leakage = 0;
    std::size_t gap = 0;  ///< greedy_leakage - optimal_leakage
    double greedy_ms = 0.0;
    double brute_force_ms = 0.0;
};

/// Column-weight counts over the code's transform; O(N^2) bit reads.
ScoreTable score_table(const PolarCode& code);
ScoreTable score_table(const BitMatrix& transform, const PolarCode& code);

/// Publishes the k best-scoring coordinates (ties toward the smaller index)
/// and certifies their exact leakage.  Throws BadBudget unless 1 <= k <= N.
SelectionResult score_greedy(const PolarCode& code, std::size_t k);
SelectionResult score_greedy(const BitMatrix& transform, const PolarCode& code, std::size_t k);

/// Scans all k-subsets in lexicographic order and returns the first one
/// attaining the minimum exact leakage.  Stops early once leakage 0 is seen
/// (nothing can beat it).  Work may be split across threads; the result and
/// the reported work count always equal the serial scan's.  Throws
/// CapExceeded when C(N,k) > cap.
SelectionResult brute_force_min_leakage(const PolarCode& code, std::size_t k,
                                        std::uint64_t cap = 10'000'000);
SelectionResult brute_force_min_leakage(const BitMatrix& transform, const PolarCode& code,
                                        std::size_t k, std::uint64_t cap = 10'000'000);

/// Greedy vs brute force vs bound for every budget 1..k_max.
std::vector<SweepRow> sweep_report(const PolarCode& code, std::size_t k_max,
                                   std::uint64_t cap = 10'000'000);

/// CSV rendering with header k,L_greedy,bound,L_opt,gap,t_greedy_ms,t_bf_ms.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial_saturated(std::uint64_t n, std::uint64_t k);

}  // namespace rankguard
