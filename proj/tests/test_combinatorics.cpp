#include <doctest.h>

#include <random>

#include "bzc/combinatorics.hpp"
#include "bzc/error.hpp"
#include "oracles.hpp"

using namespace bzc;

TEST_CASE("binomial") {
    CHECK(binomial(7, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(10, 6) == 210);
    for (std::uint64_t n = 0; n <= 40; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            CHECK(binomial(n, static_cast<std::int64_t>(k)) == mpz_class(std::to_string(oracle::pascal(n, k))));
        }
    }
}

TEST_CASE("rank width") {
    CHECK(rank_bit_width(4, 3) == 2);
    CHECK(rank_bit_width(50, 0) == 0);
    CHECK(rank_bit_width(10, 6) == 8);
    CHECK(rank_bit_width(0, 0) == 0);
    CHECK(rank_bit_width(8, 1) == 3);
    CHECK(rank_bit_width(9, 1) == 4);
    CHECK(ceil_log2(mpz_class(1)) == 0);
    CHECK(ceil_log2(mpz_class(1024)) == 10);
    CHECK(ceil_log2(mpz_class(1025)) == 11);
}

TEST_CASE("rank examples") {
    CHECK(rank(BitSequence::from_string("1101"), 3) == 2);
    CHECK(rank(BitSequence::from_string("0111"), 3) == 0);
    CHECK(rank(BitSequence::from_string("11010"), 3) == 8);
    CHECK(rank(BitSequence{}, 0) == 0);
    CHECK_THROWS_AS(rank(BitSequence::from_string("1101"), 2), Error);
    try {
        rank(BitSequence::from_string("1101"), 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WeightMismatch);
    }
}

TEST_CASE("unrank examples") {
    CHECK(unrank(2, 4, 3).to_string() == "1101");
    CHECK(unrank(0, 4, 3).to_string() == "0111");
    CHECK(unrank(9, 5, 3).to_string() == "11100");
    CHECK(unrank(0, 0, 0).empty());
    for (const mpz_class r : {mpz_class(10), mpz_class(-1)}) {
        try {
            unrank(r, 5, 3);
            FAIL("expected RankOutOfRange");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RankOutOfRange);
        }
    }
}

TEST_CASE("one positions") {
    const auto pos = one_positions(BitSequence::from_string("1101")).positions;
    CHECK(pos == std::vector<std::uint64_t>{0, 2, 3});
}

TEST_CASE("exhaustive bijection and counting oracle up to n=12") {
    for (std::uint64_t n = 0; n <= 12; ++n) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const BitSequence x = oracle::from_index(v, n);
            const std::uint64_t k = x.popcount();
            const RankValue r = rank(x, k);
            REQUIRE(r == oracle::rank_by_counting(x));
            REQUIRE(r < binomial(n, static_cast<std::int64_t>(k)));
            REQUIRE(unrank(r, n, k) == x);
        }
    }
}

TEST_CASE("exhaustive bijection n up to 16") {
    for (std::uint64_t n = 13; n <= 16; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) {
            const auto c = binomial(n, static_cast<std::int64_t>(k)).get_ui();
            for (unsigned long r = 0; r < c; ++r) {
                const BitSequence x = unrank(r, n, k);
                REQUIRE(x.popcount() == k);
                REQUIRE(rank(x, k) == r);
            }
        }
    }
}

TEST_CASE("monotone in numeric order") {
    for (std::uint64_t n = 1; n <= 12; ++n) {
        std::vector<long> last(n + 1, -1);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
            const BitSequence x = oracle::from_index(v, n);
            const std::uint64_t k = x.popcount();
            const long r = rank(x, k).get_si();
            CHECK(r == last[k] + 1);
            last[k] = r;
        }
    }
}

TEST_CASE("split and refine variants agree with the incremental ones") {
    std::mt19937_64 rng(3);
    for (std::uint64_t n : {1u, 7u, 100u, 2047u, 2048u, 2049u, 5000u, 20000u, 70000u}) {
        for (double p : {0.001, 0.1, 0.5, 0.93}) {
            BitSequence x(n);
            for (std::uint64_t i = 0; i < n; ++i) x.set(i, static_cast<double>(rng() >> 11) * 0x1.0p-53 < p);
            const std::uint64_t k = x.popcount();
            const RankValue r = detail::rank_incremental(x, k);
            REQUIRE(detail::rank_split(x, k) == r);
            REQUIRE(rank(x, k) == r);
            REQUIRE(detail::unrank_greedy(r, n, k) == x);
            REQUIRE(detail::unrank_refine(r, n, k) == x);
        }
    }
}

TEST_CASE("extreme ranks of long sequences") {
    for (std::uint64_t n : {3000u, 50000u}) {
        for (std::uint64_t k : {std::uint64_t{1}, n / 10, n / 2, n - 1}) {
            const mpz_class c = binomial(n, static_cast<std::int64_t>(k));
            for (const mpz_class& r : {mpz_class(0), mpz_class(1), mpz_class(c / 3), mpz_class(c - 1)}) {
                const BitSequence x = unrank(r, n, k);
                REQUIRE(x.popcount() == k);
                REQUIRE(rank(x, k) == r);
            }
        }
    }
}
