#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>

#include "rankguard/errors.hpp"
#include "rankguard/selection.hpp"
#include "support/fixtures.hpp"

using namespace rankguard;

namespace {

// Plain serial reference scan over all k-subsets in lexicographic order.
SelectionResult serial_reference(const PolarCode& code, std::size_t k) {
    const BitMatrix g = polar_transform(code.n);
    const std::size_t N = code.block_length;
    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i + 1;
    SelectionResult best;
    best.leaked_bits = SIZE_MAX;
    std::uint64_t examined = 0;
    for (;;) {
        ++examined;
        const std::size_t leaked = leakage(g, code, combo).leaked_bits;
        if (leaked < best.leaked_bits) {
            best.leaked_bits = leaked;
            best.public_set = combo;
            if (leaked == 0) break;
        }
        // advance
        std::size_t i = k;
        bool more = false;
        while (i-- > 0) {
            if (combo[i] + (k - i) <= N) {
                ++combo[i];
                for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    best.work = examined;
    return best;
}

struct EnvGuard {
    std::string saved;
    bool had;
    EnvGuard() {
        const char* v = std::getenv("RANKGUARD_THREADS");
        had = v != nullptr;
        if (had) saved = v;
    }
    ~EnvGuard() {
        if (had)
            setenv("RANKGUARD_THREADS", saved.c_str(), 1);
        else
            unsetenv("RANKGUARD_THREADS");
    }
};

}  // namespace

TEST_CASE("score_table: counts for both worked splits and the empty information set") {
    const ScoreTable lean = score_table(fixtures::quarter4());
    CHECK(lean.info_ones == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK(lean.frozen_ones == std::vector<std::size_t>{3, 1, 1, 0});
    CHECK(lean.score == std::vector<long long>{2, 0, 0, -1});

    const ScoreTable rich = score_table(fixtures::three_quarter4());
    CHECK(rich.score == std::vector<long long>{-2, -2, -2, -1});

    const ScoreTable empty = score_table(build_code(2, std::vector<double>(4, 0.5), 0.0));
    CHECK(empty.info_ones == std::vector<std::size_t>{0, 0, 0, 0});

    // Column weights always split between the two tallies.
    const BitMatrix g = polar_transform(2);
    for (std::size_t i = 0; i < 4; ++i) {
        std::size_t weight = 0;
        for (std::size_t r = 0; r < 4; ++r) weight += g.get(r, i);
        CHECK(lean.info_ones[i] + lean.frozen_ones[i] == weight);
    }
}

TEST_CASE("score_greedy: worked selections, full publication, budget validation") {
    const auto lean = score_greedy(fixtures::quarter4(), 1);
    CHECK(lean.public_set == std::vector<std::size_t>{1});
    CHECK(lean.leaked_bits == 0);
    CHECK(lean.bound == 1);
    CHECK(lean.work == 4);
    CHECK_FALSE(lean.budget_exceeds_frozen);

    // Scores are (2, 0, 0, -1): the tie at budget 2 resolves to the smaller
    // index.
    CHECK(score_greedy(fixtures::quarter4(), 2).public_set ==
          (std::vector<std::size_t>{1, 2}));

    // The documented miss: the best score publishes coordinate 4 and leaks a
    // bit even though publishing coordinate 1 would leak nothing.
    const auto rich = score_greedy(fixtures::three_quarter4(), 1);
    CHECK(rich.public_set == std::vector<std::size_t>{4});
    CHECK(rich.leaked_bits == 1);
    CHECK(rich.bound == 1);

    const auto full = score_greedy(fixtures::three_quarter4(), 4);
    CHECK(full.public_set == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(full.leaked_bits == 3);  // everything the code carries
    CHECK(full.budget_exceeds_frozen);

    CHECK_THROWS_AS(score_greedy(fixtures::quarter4(), 0), BadBudget);
    CHECK_THROWS_AS(score_greedy(fixtures::quarter4(), 5), BadBudget);
}

TEST_CASE("brute force finds the masked coordinate the greedy score misses") {
    const auto best = brute_force_min_leakage(fixtures::three_quarter4(), 1);
    CHECK(best.public_set == std::vector<std::size_t>{1});
    CHECK(best.leaked_bits == 0);
    CHECK(best.work == 1);  // the very first candidate wins and short-circuits
}

TEST_CASE("brute force: empty budget, cap handling") {
    const auto none = brute_force_min_leakage(fixtures::quarter4(), 0);
    CHECK(none.public_set.empty());
    CHECK(none.leaked_bits == 0);

    CHECK_THROWS_AS(brute_force_min_leakage(fixtures::quarter4(), 2, 3), CapExceeded);
    try {
        brute_force_min_leakage(fixtures::quarter4(), 2, 3);
    } catch (const CapExceeded& e) {
        CHECK(e.computed() == 6);  // C(4,2)
    }
    CHECK_THROWS_AS(brute_force_min_leakage(fixtures::quarter4(), 9), BadBudget);
}

TEST_CASE("brute force three-coordinate search on the lean code") {
    // With only u_4 carried, leakage is 0 exactly when x_4 stays unpublished
    // and the published triple hides u_4; scanning all C(4,3) = 4 subsets
    // must find {1,2,3} which leaks nothing.
    const auto code = fixtures::quarter4();
    const auto best = brute_force_min_leakage(code, 3);
    CHECK(best.public_set == std::vector<std::size_t>{1, 2, 3});
    CHECK(best.leaked_bits == 0);
    CHECK(std::abs(exhaustive_mi_oracle(code, best.public_set)) < 1e-9);
}

TEST_CASE("brute force work accounting") {
    // Rate-1 code: every coordinate carries payload, so no subset of size 1+
    // reaches leakage 0 and the scan must visit every candidate.
    const auto saturated = build_code(3, std::vector<double>(8, 0.5), 1.0);
    const auto full = brute_force_min_leakage(saturated, 3);
    CHECK(full.work == binomial_saturated(8, 3));
    CHECK(full.leaked_bits == 3);

    // With zero-leakage sets present the work equals the serial scan prefix.
    const auto half = build_code(3, std::vector<double>(8, 0.5), 0.5);
    for (std::size_t k = 1; k <= 4; ++k) {
        const auto got = brute_force_min_leakage(half, k);
        const auto want = serial_reference(half, k);
        CHECK(got.public_set == want.public_set);
        CHECK(got.leaked_bits == want.leaked_bits);
        CHECK(got.work == want.work);
    }
}

TEST_CASE("brute force is deterministic across thread counts") {
    EnvGuard guard;
    // C(16,5) = 4368 candidates: enough to spread across worker chunks.
    for (double rate : {0.4375, 1.0}) {
        const auto code = build_code(4, std::vector<double>(16, 0.5), rate);
        std::vector<SelectionResult> results;
        for (const char* threads : {"1", "3", "8"}) {
            setenv("RANKGUARD_THREADS", threads, 1);
            results.push_back(brute_force_min_leakage(code, 5));
        }
        for (std::size_t i = 1; i < results.size(); ++i) {
            CHECK(results[i].public_set == results[0].public_set);
            CHECK(results[i].leaked_bits == results[0].leaked_bits);
            CHECK(results[i].work == results[0].work);
        }
        // Also pin against the serial reference.
        const auto want = serial_reference(code, 5);
        CHECK(results[0].public_set == want.public_set);
        CHECK(results[0].leaked_bits == want.leaked_bits);
        CHECK(results[0].work == want.work);
    }
}

TEST_CASE("selection chain: exact leakage never exceeds the score bound") {
    std::mt19937_64 gen(401);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 15; ++rep) {
        const unsigned n = 2 + gen() % 3;
        const std::size_t N = std::size_t(1) << n;
        const auto code = build_code(n, std::vector<double>(N, 0.5), unif(gen));
        const std::size_t k = 1 + gen() % N;
        const auto greedy = score_greedy(code, k);
        const BitMatrix g = polar_transform(code.n);
        const auto gap = select_submatrix(g, to_zero_based(code.info_set, N),
                                          to_zero_based(greedy.public_set, N));
        CHECK(greedy.leaked_bits <= rank(gap));
        CHECK(rank(gap) <= greedy.bound);
    }
}

TEST_CASE("sweep report compares greedy, optimal and the bound for every budget") {
    const auto code = build_code(3, std::vector<double>(8, 0.5), 0.5);
    const auto rows = sweep_report(code, 8);  // beyond |F| = 4 still works
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].k == i + 1);
        CHECK(rows[i].optimal_leakage <= rows[i].greedy_leakage);
        CHECK(rows[i].greedy_leakage <= rows[i].bound);
        CHECK(rows[i].gap == rows[i].greedy_leakage - rows[i].optimal_leakage);
    }

    // The lean N=4 budget-1 row closes the gap; the rich split shows gap 1.
    const auto lean_rows = sweep_report(fixtures::quarter4(), 1);
    CHECK(lean_rows[0].gap == 0);
    const auto rich_rows = sweep_report(fixtures::three_quarter4(), 1);
    CHECK(rich_rows[0].greedy_leakage == 1);
    CHECK(rich_rows[0].optimal_leakage == 0);
    CHECK(rich_rows[0].gap == 1);
}

TEST_CASE("sweep CSV carries the fixed header and one line per budget") {
    const auto rows = sweep_report(fixtures::quarter4(), 3);
    const std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("k,L_greedy,bound,L_opt,gap,t_greedy_ms,t_bf_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("1,0,1,0,0,") != std::string::npos);
}

TEST_CASE("greedy never beats the exhaustive optimum up to N=16") {
    const auto code = build_code(4, std::vector<double>(16, 0.5), 0.5);
    const BitMatrix g = polar_transform(4);
    for (std::size_t k : {1u, 2u, 3u, 8u}) {
        const auto greedy = score_greedy(g, code, k);
        const auto brute = brute_force_min_leakage(g, code, k);
        CHECK(brute.leaked_bits <= greedy.leaked_bits);
        CHECK(greedy.leaked_bits <= greedy.bound);
    }
}

TEST_CASE("binomial_saturated: exact small values and saturation") {
    CHECK(binomial_saturated(4, 2) == 6);
    CHECK(binomial_saturated(16, 4) == 1820);
    CHECK(binomial_saturated(10, 0) == 1);
    CHECK(binomial_saturated(3, 5) == 0);
    CHECK(binomial_saturated(4096, 2048) == ~std::uint64_t(0));
}
