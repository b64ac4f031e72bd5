#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "rankguard/errors.hpp"
#include "rankguard/leakage.hpp"
#include "support/fixtures.hpp"
#include "support/gf2_oracle.hpp"

using namespace rankguard;

namespace {

std::vector<std::size_t> random_subset(std::mt19937_64& gen, std::size_t N, std::size_t size) {
    std::vector<std::size_t> all(N);
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
}

// Appends column `extra` to m and returns the rank of the widened matrix.
std::size_t rank_with_column(const BitMatrix& m, const std::vector<std::uint8_t>& extra) {
    BitMatrix wide(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) wide.set(r, c, true);
        if (extra[r]) wide.set(r, m.cols(), true);
    }
    return rank(wide);
}

}  // namespace

TEST_CASE("leakage: the four worked N=4 cases and the empty set") {
    const auto quarter = fixtures::quarter4();
    const auto scenario1_full = leakage(quarter, std::vector<std::size_t>{4});
    CHECK(scenario1_full.leaked_bits == 1);
    CHECK(scenario1_full.rank_gp == 1);
    CHECK(scenario1_full.rank_gfp == 0);

    const auto scenario1_masked = leakage(quarter, std::vector<std::size_t>{1});
    CHECK(scenario1_masked.leaked_bits == 0);
    CHECK(scenario1_masked.rank_gp == 1);
    CHECK(scenario1_masked.rank_gfp == 1);

    const auto three = fixtures::three_quarter4();
    CHECK(leakage(three, std::vector<std::size_t>{1}).leaked_bits == 0);

    const auto wide = leakage(three, std::vector<std::size_t>{1, 2, 3});
    CHECK(wide.leaked_bits == 2);
    CHECK(wide.rank_gp == 3);
    CHECK(wide.rank_gfp == 1);

    CHECK(leakage(quarter, std::vector<std::size_t>{}).leaked_bits == 0);
    CHECK_THROWS_AS(leakage(quarter, std::vector<std::size_t>{5}), IndexOutOfRange);
}

TEST_CASE("build_extractor: single published coordinate carrying one information bit") {
    const auto cert = build_extractor(fixtures::quarter4(), std::vector<std::size_t>{4});
    CHECK(cert.leaked_bits == 1);
    CHECK(cert.verified);
    // The only valid 1x1 extractor is [1]: [0] would kill the leaked rank.
    REQUIRE(cert.extractor.rows() == 1);
    REQUIRE(cert.extractor.cols() == 1);
    CHECK(cert.extractor.get(0, 0));
    CHECK(cert.leaked_combinations.get(0, 0));
    CHECK(leaked_equation_report(cert) == std::vector<std::string>{"x_4 = u_4"});
}

TEST_CASE("build_extractor: the three-coordinate publication leaking two combinations") {
    const auto code = fixtures::three_quarter4();
    const auto cert = build_extractor(code, std::vector<std::size_t>{1, 2, 3});
    CHECK(cert.leaked_bits == 2);
    CHECK(cert.rank_gp == 3);
    CHECK(cert.rank_gfp == 1);
    CHECK(cert.verified);
    REQUIRE(cert.extractor.rows() == 3);
    REQUIRE(cert.extractor.cols() == 2);

    const auto report = verify_certificate(cert, code);
    CHECK(report.ok());
    CHECK(report.first_failure().empty());

    // The leaked combinations span {u_2 + u_4, u_3 + u_4} regardless of
    // which witness extractor was chosen.
    const oracle::Mat m = oracle::from_bits(cert.leaked_combinations);
    const oracle::Mat span = oracle::transpose_naive(m);
    CHECK(oracle::rank_naive(span) == 2);
    CHECK(oracle::in_rowspace_naive(span, {1, 0, 1}));  // u_2 + u_4
    CHECK(oracle::in_rowspace_naive(span, {0, 1, 1}));  // u_3 + u_4

    CHECK(leaked_equation_report(cert) ==
          std::vector<std::string>{"x_2 = u_2 ⊕ u_4", "x_3 = u_3 ⊕ u_4"});
}

TEST_CASE("build_extractor: zero leakage gives a zero-width verified certificate") {
    const auto cert = build_extractor(fixtures::three_quarter4(), std::vector<std::size_t>{1});
    CHECK(cert.leaked_bits == 0);
    CHECK(cert.extractor.rows() == 1);
    CHECK(cert.extractor.cols() == 0);
    CHECK(cert.leaked_combinations.cols() == 0);
    CHECK(cert.verified);
    CHECK(leaked_equation_report(cert).empty());

    const auto empty = build_extractor(fixtures::quarter4(), std::vector<std::size_t>{});
    CHECK(empty.leaked_bits == 0);
    CHECK(empty.verified);
}

TEST_CASE("verify_certificate catches tampering") {
    const auto code = fixtures::three_quarter4();
    const auto good = build_extractor(code, std::vector<std::size_t>{1, 2, 3});

    SUBCASE("leak count edited") {
        auto bad = good;
        bad.leaked_bits += 1;
        const auto report = verify_certificate(bad, code);
        CHECK_FALSE(report.ok());
        CHECK(report.first_failure() == "rank identity mismatch");
    }
    SUBCASE("stored rank edited") {
        auto bad = good;
        bad.rank_gfp = 0;
        const auto report = verify_certificate(bad, code);
        CHECK_FALSE(report.ok());
        CHECK(report.first_failure() == "stored rank mismatch");
    }
    SUBCASE("extractor row flipped so the frozen rows are no longer annihilated") {
        auto bad = good;
        bad.extractor.set(0, 0, true);
        bad.extractor.set(0, 1, true);
        const auto report = verify_certificate(bad, code);
        CHECK_FALSE(report.frozen_annihilated);
        CHECK(report.first_failure() == "frozen annihilation failed");
    }
    SUBCASE("combination matrix rewritten") {
        auto bad = good;
        bad.leaked_combinations.set(0, 0, !bad.leaked_combinations.get(0, 0));
        const auto report = verify_certificate(bad, code);
        CHECK_FALSE(report.combinations_match);
    }
    SUBCASE("certificate against the wrong code") {
        CHECK_THROWS_AS(verify_certificate(good, fixtures::quarter4()), DimensionMismatch);
    }
}

TEST_CASE("exhaustive_mi_oracle: the N=2 one-time-pad facts") {
    const auto toy = fixtures::toy2();
    CHECK(std::abs(exhaustive_mi_oracle(toy, std::vector<std::size_t>{1}) - 0.0) < 1e-12);
    CHECK(std::abs(exhaustive_mi_oracle(toy, std::vector<std::size_t>{2}) - 1.0) < 1e-12);
}

TEST_CASE("exhaustive_mi_oracle agrees with the rank identity on the worked cases") {
    const auto quarter = fixtures::quarter4();
    const auto three = fixtures::three_quarter4();
    CHECK(std::abs(exhaustive_mi_oracle(quarter, std::vector<std::size_t>{4}) - 1.0) < 1e-12);
    CHECK(std::abs(exhaustive_mi_oracle(quarter, std::vector<std::size_t>{1}) - 0.0) < 1e-12);
    CHECK(std::abs(exhaustive_mi_oracle(three, std::vector<std::size_t>{1, 2, 3}) - 2.0) < 1e-12);

    PolarCode big = build_code(5, std::vector<double>(32, 0.5), 0.5);
    CHECK_THROWS_AS(exhaustive_mi_oracle(big, std::vector<std::size_t>{1}), CapExceeded);
}

TEST_CASE("leakage equals the enumeration oracle on random codes") {
    std::mt19937_64 gen(301);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (unsigned n : {2u, 3u}) {
        const std::size_t N = std::size_t(1) << n;
        for (int rep = 0; rep < 16; ++rep) {
            // Non-uniform channel profiles give every information/frozen
            // split a chance to appear; the identity holds for all of them.
            std::vector<double> delta(N);
            for (auto& d : delta) d = rep % 2 ? unif(gen) : 0.5;
            const auto code = build_code(n, delta, unif(gen));
            const auto p = random_subset(gen, N, gen() % (N + 1));
            const double mi = exhaustive_mi_oracle(code, p);
            CHECK(std::abs(mi - std::round(mi)) < 1e-9);
            CHECK(static_cast<double>(leakage(code, p).leaked_bits) == doctest::Approx(mi).epsilon(1e-9));
        }
    }
}

TEST_CASE("leakage is monotone under publishing more coordinates") {
    std::mt19937_64 gen(302);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const unsigned n = 2 + gen() % 4;
        const std::size_t N = std::size_t(1) << n;
        const auto code = build_code(n, std::vector<double>(N, 0.5), unif(gen));
        const auto big = random_subset(gen, N, gen() % (N + 1));
        std::vector<std::size_t> small;
        for (std::size_t i : big)
            if (gen() & 1) small.push_back(i);
        CHECK(leakage(code, small).leaked_bits <= leakage(code, big).leaked_bits);
    }
}

TEST_CASE("leakage bounds: 0 <= L <= min(|A|, |P|)") {
    std::mt19937_64 gen(303);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const unsigned n = 1 + gen() % 5;
        const std::size_t N = std::size_t(1) << n;
        const auto code = build_code(n, std::vector<double>(N, 0.5), unif(gen));
        const auto p = random_subset(gen, N, gen() % (N + 1));
        const auto v = leakage(code, p);
        CHECK(v.leaked_bits <= std::min(code.info_set.size(), p.size()));
        CHECK(v.rank_gfp <= v.rank_gp);
    }
}

TEST_CASE("zero leakage iff the information rows sit inside the frozen row space") {
    std::mt19937_64 gen(304);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const BitMatrix g3 = polar_transform(3);
    int zeros_seen = 0, positives_seen = 0;
    for (int rep = 0; rep < 60; ++rep) {
        const auto code = build_code(3, std::vector<double>(8, 0.5), unif(gen));
        const auto p = random_subset(gen, 8, 1 + gen() % 8);
        const auto p0 = to_zero_based(p, 8);
        const auto a0 = to_zero_based(code.info_set, 8);
        const auto f0 = to_zero_based(code.frozen_set, 8);
        const oracle::Mat gap = oracle::from_bits(select_submatrix(g3, a0, p0));
        const oracle::Mat gfp = oracle::from_bits(select_submatrix(g3, f0, p0));
        bool contained = true;
        for (const auto& row : gap)
            if (!oracle::in_rowspace_naive(gfp, row)) {
                contained = false;
                break;
            }
        const bool zero_leak = leakage(g3, code, p).leaked_bits == 0;
        CHECK(zero_leak == contained);
        (zero_leak ? zeros_seen : positives_seen)++;
    }
    CHECK(zeros_seen > 0);
    CHECK(positives_seen > 0);
}

TEST_CASE("no extractor column can be added beyond the certified count") {
    std::mt19937_64 gen(305);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const BitMatrix g = polar_transform(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto code = build_code(3, std::vector<double>(8, 0.5), 0.125 + 0.75 * unif(gen));
        const std::size_t psize = 1 + gen() % 8;
        const auto p = random_subset(gen, 8, psize);
        const auto cert = build_extractor(g, code, p);
        REQUIRE(cert.verified);
        const auto p0 = to_zero_based(p, 8);
        const auto a0 = to_zero_based(code.info_set, 8);
        const auto f0 = to_zero_based(code.frozen_set, 8);
        const BitMatrix gap = select_submatrix(g, a0, p0);
        const BitMatrix gfp = select_submatrix(g, f0, p0);
        // Every annihilating column leaves the recovered rank at L.
        for (std::size_t bits = 0; bits < (std::size_t(1) << psize); ++bits) {
            std::vector<std::uint8_t> candidate(psize);
            for (std::size_t i = 0; i < psize; ++i)
                candidate[i] = static_cast<std::uint8_t>((bits >> i) & 1u);
            bool annihilates = true;
            for (std::size_t r = 0; r < gfp.rows() && annihilates; ++r) {
                int acc = 0;
                for (std::size_t c = 0; c < psize; ++c) acc ^= gfp.get(r, c) & candidate[c];
                annihilates = acc == 0;
            }
            if (!annihilates) continue;
            std::vector<std::uint8_t> image(gap.rows());
            for (std::size_t r = 0; r < gap.rows(); ++r) {
                int acc = 0;
                for (std::size_t c = 0; c < psize; ++c) acc ^= gap.get(r, c) & candidate[c];
                image[r] = static_cast<std::uint8_t>(acc);
            }
            CHECK(rank_with_column(cert.leaked_combinations, image) == cert.leaked_bits);
        }
    }
}

TEST_CASE("the published-set order given by the caller does not matter") {
    const auto code = fixtures::three_quarter4();
    const auto sorted = build_extractor(code, std::vector<std::size_t>{1, 2, 3});
    const auto shuffled = build_extractor(code, std::vector<std::size_t>{3, 1, 2});
    CHECK(shuffled == sorted);
    CHECK(shuffled.verified);
}

TEST_CASE("certificates built concurrently match the serial result") {
    const auto code = build_code(4, std::vector<double>(16, 0.5), 0.5);
    const BitMatrix g = polar_transform(4);
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t i = 1; i <= 8; ++i) sets.push_back({i, i + 8});

    std::vector<LeakageCertificate> serial;
    for (const auto& p : sets) serial.push_back(build_extractor(g, code, p));

    std::vector<LeakageCertificate> parallel(sets.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < sets.size(); ++i)
        pool.emplace_back([&, i] { parallel[i] = build_extractor(g, code, sets[i]); });
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < sets.size(); ++i) CHECK(parallel[i] == serial[i]);
}
