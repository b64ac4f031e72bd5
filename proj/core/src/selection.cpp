#include "rankguard/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <optional>

#include "rankguard/errors.hpp"
#include "rankguard/parallel.hpp"

namespace rankguard {

namespace {

// Submatrix copy that trusts its (already validated) index lists.
BitMatrix cut(const BitMatrix& g, std::span<const std::size_t> rows,
              std::span<const std::size_t> cols) {
    BitMatrix out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (g.get(rows[r], cols[c])) out.set(r, c, true);
    return out;
}

struct CandidateEvaluator {
    const BitMatrix& transform;
    std::vector<std::size_t> all_rows;
    std::vector<std::size_t> frozen_rows;  // 0-based

    explicit CandidateEvaluator(const BitMatrix& g, const PolarCode& code)
        : transform(g), all_rows(code.block_length), frozen_rows() {
        std::iota(all_rows.begin(), all_rows.end(), 0);
        frozen_rows.reserve(code.frozen_set.size());
        for (std::size_t i : code.frozen_set) frozen_rows.push_back(i - 1);
    }

    std::size_t leakage_of(std::span<const std::size_t> p0) const {
        return rank(cut(transform, all_rows, p0)) - rank(cut(transform, frozen_rows, p0));
    }
};

// Lexicographic successor of a k-combination of {0..n-1}; false at the end.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (c[i] + (k - i) < n) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> combination_unrank(std::size_t n, std::size_t k, std::uint64_t rank) {
    std::vector<std::size_t> c(k);
    std::size_t v = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (;; ++v) {
            const std::uint64_t block = binomial_saturated(n - v - 1, k - i - 1);
            if (rank < block) {
                c[i] = v;
                ++v;
                break;
            }
            rank -= block;
        }
    }
    return c;
}

std::uint64_t combination_rank(std::span<const std::size_t> c, std::size_t n) {
    std::uint64_t rank = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t v = prev; v < c[i]; ++v)
            rank += binomial_saturated(n - v - 1, c.size() - i - 1);
        prev = c[i] + 1;
    }
    return rank;
}

struct ChunkBest {
    bool scanned = false;        // chunk produced a result (was not skipped)
    std::size_t min_leakage = 0;
    std::vector<std::size_t> first_p0;  // lex-first attaining min_leakage within chunk
};

}  // namespace

std::uint64_t binomial_saturated(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 res = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        res = res * (n - k + i) / i;
        if (res > ~std::uint64_t(0)) return ~std::uint64_t(0);
    }
    return static_cast<std::uint64_t>(res);
}

ScoreTable score_table(const PolarCode& code) {
    return score_table(polar_transform(code.n), code);
}

ScoreTable score_table(const BitMatrix& transform, const PolarCode& code) {
    const std::size_t N = code.block_length;
    ScoreTable t;
    t.info_ones.assign(N, 0);
    t.frozen_ones.assign(N, 0);
    t.score.assign(N, 0);
    const std::vector<std::uint8_t> mask = info_mask(code);
    for (std::size_t r = 0; r < N; ++r) {
        auto& counts = mask[r] ? t.info_ones : t.frozen_ones;
        for (std::size_t c = 0; c < N; ++c)
            if (transform.get(r, c)) ++counts[c];
    }
    for (std::size_t i = 0; i < N; ++i)
        t.score[i] = static_cast<long long>(t.frozen_ones[i]) -
                     static_cast<long long>(t.info_ones[i]);
    return t;
}

SelectionResult score_greedy(const PolarCode& code, std::size_t k) {
    return score_greedy(polar_transform(code.n), code, k);
}

SelectionResult score_greedy(const BitMatrix& transform, const PolarCode& code, std::size_t k) {
    const std::size_t N = code.block_length;
    if (k < 1 || k > N)
        throw BadBudget("score_greedy: k = " + std::to_string(k) + " outside [1," +
                        std::to_string(N) + "]");
    const ScoreTable table = score_table(transform, code);

    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&table](std::size_t a, std::size_t b) {
        return table.score[a] > table.score[b];
    });
    order.resize(k);
    std::sort(order.begin(), order.end());

    SelectionResult result;
    result.method = SelectionMethod::greedy;
    result.public_set.reserve(k);
    for (std::size_t i : order) result.public_set.push_back(i + 1);
    result.leaked_bits = leakage(transform, code, result.public_set).leaked_bits;
    result.bound = 0;
    for (std::size_t i : order) result.bound += table.info_ones[i];
    result.work = N;
    result.budget_exceeds_frozen = k > code.frozen_set.size();
    return result;
}

SelectionResult brute_force_min_leakage(const PolarCode& code, std::size_t k, std::uint64_t cap) {
    return brute_force_min_leakage(polar_transform(code.n), code, k, cap);
}

SelectionResult brute_force_min_leakage(const BitMatrix& transform, const PolarCode& code,
                                        std::size_t k, std::uint64_t cap) {
    const std::size_t N = code.block_length;
    if (k > N)
        throw BadBudget("brute force: k = " + std::to_string(k) + " exceeds N = " +
                        std::to_string(N));
    const std::uint64_t total = binomial_saturated(N, k);
    if (total > cap)
        throw CapExceeded("brute force: C(" + std::to_string(N) + "," + std::to_string(k) +
                              ") = " + std::to_string(total) + " exceeds cap " +
                              std::to_string(cap),
                          total);

    const CandidateEvaluator eval(transform, code);
    const ScoreTable table = score_table(transform, code);

    std::size_t chunk_count = worker_count();
    if (total < 4096) chunk_count = 1;  // not worth spinning threads up
    if (chunk_count > total) chunk_count = static_cast<std::size_t>(total);

    std::vector<ChunkBest> results(chunk_count);
    std::atomic<std::uint64_t> earliest_zero_chunk{~std::uint64_t(0)};

    parallel_chunks(total, chunk_count, [&](std::size_t chunk, std::uint64_t begin,
                                            std::uint64_t end) {
        // A later chunk cannot beat an earlier chunk's leakage-0 hit, so it
        // may be skipped outright; earlier chunks must finish.
        if (earliest_zero_chunk.load(std::memory_order_relaxed) < chunk) return;
        std::vector<std::size_t> combo = combination_unrank(N, k, begin);
        ChunkBest best;
        best.scanned = true;
        bool have = false;
        for (std::uint64_t at = begin; at < end; ++at) {
            const std::size_t leaked = eval.leakage_of(combo);
            if (!have || leaked < best.min_leakage) {
                have = true;
                best.min_leakage = leaked;
                best.first_p0 = combo;
                if (leaked == 0) {
                    // Record ourselves as the earliest zero so far.
                    std::uint64_t seen = earliest_zero_chunk.load(std::memory_order_relaxed);
                    while (seen > chunk && !earliest_zero_chunk.compare_exchange_weak(
                                               seen, chunk, std::memory_order_relaxed)) {
                    }
                    break;
                }
            }
            if (earliest_zero_chunk.load(std::memory_order_relaxed) < chunk) {
                best.scanned = false;  // result superseded; drop it
                break;
            }
            if (at + 1 < end) next_combination(combo, N);
        }
        results[chunk] = std::move(best);
    });

    std::optional<ChunkBest> overall;
    for (const ChunkBest& b : results) {
        if (!b.scanned) continue;
        if (!overall || b.min_leakage < overall->min_leakage) overall = b;
        if (overall->min_leakage == 0) break;
    }
    assert(overall.has_value());

    SelectionResult result;
    result.method = SelectionMethod::brute_force;
    result.leaked_bits = overall->min_leakage;
    result.public_set.reserve(k);
    for (std::size_t i : overall->first_p0) result.public_set.push_back(i + 1);
    for (std::size_t i : overall->first_p0) result.bound += table.info_ones[i];
    // Serial-scan work: everything up to the lex-first zero, or the full run.
    result.work = overall->min_leakage == 0 ? combination_rank(overall->first_p0, N) + 1 : total;
    result.budget_exceeds_frozen = k > code.frozen_set.size();
    return result;
}

std::vector<SweepRow> sweep_report(const PolarCode& code, std::size_t k_max, std::uint64_t cap) {
    const BitMatrix transform = polar_transform(code.n);
    std::vector<SweepRow> rows;
    rows.reserve(k_max);
    using clock = std::chrono::steady_clock;
    for (std::size_t k = 1; k <= k_max; ++k) {
        SweepRow row;
        row.k = k;
        const auto t0 = clock::now();
        const SelectionResult greedy = score_greedy(transform, code, k);
        const auto t1 = clock::now();
        const SelectionResult brute = brute_force_min_leakage(transform, code, k, cap);
        const auto t2 = clock::now();
        row.greedy_leakage = greedy.leaked_bits;
        row.bound = greedy.bound;
        row.optimal_leakage = brute.leaked_bits;
        row.gap = greedy.leaked_bits - brute.leaked_bits;
        row.greedy_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.brute_force_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "k,L_greedy,bound,L_opt,gap,t_greedy_ms,t_bf_ms\n";
    char buf[64];
    for (const SweepRow& r : rows) {
        out += std::to_string(r.k) + "," + std::to_string(r.greedy_leakage) + "," +
               std::to_string(r.bound) + "," + std::to_string(r.optimal_leakage) + "," +
               std::to_string(r.gap);
        std::snprintf(buf, sizeof(buf), ",%.3f,%.3f\n", r.greedy_ms, r.brute_force_ms);
        out += buf;
    }
    return out;
}

}  // namespace rankguard
