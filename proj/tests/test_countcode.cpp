#include <doctest.h>

#include "bzc/baselines.hpp"
#include "bzc/countcode.hpp"
#include "bzc/error.hpp"

using namespace bzc;

namespace {

ErrorCode decode_error(const std::string& bits, const CountCodeParams& params) {
    const BitSequence s = BitSequence::from_string(bits);
    const auto bytes = pack_bits(s);
    BitReader r(bytes, s.size());
    try {
        decode_count(r, params);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

DecodedCount decode(const std::string& bits, const CountCodeParams& params) {
    const BitSequence s = BitSequence::from_string(bits);
    const auto bytes = pack_bits(s);
    BitReader r(bytes, s.size());
    return decode_count(r, params);
}

const std::vector<double> kGrid{0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99};

}  // namespace

TEST_CASE("derive params") {
    const auto a = derive_params(10, 0.2);
    CHECK(a.floor_np == 2);
    CHECK(a.d_max == 8);
    CHECK(a.t_max == 3);
    CHECK(a.t_width == 2);

    const auto b = derive_params(50, 0.1);
    CHECK(b.floor_np == 5);
    CHECK(b.d_max == 45);
    CHECK(b.t_max == 5);
    CHECK(b.t_width == 3);

    const auto c = derive_params(16, 0.01);
    CHECK(c.floor_np == 0);
    CHECK(c.d_max == 16);
    CHECK(c.t_max == 4);
    CHECK(c.t_width == 3);

    const auto one = derive_params(1, 0.5);
    CHECK(one.t_width == 1);

    CHECK_THROWS_AS(derive_params(0, 0.5), Error);
    CHECK_THROWS_AS(derive_params(5, 0.0), Error);
    CHECK_THROWS_AS(derive_params(5, 1.0), Error);
}

TEST_CASE("t width always has capacity") {
    for (std::uint64_t n = 1; n <= 2000; ++n) {
        for (double p : kGrid) {
            const auto prm = derive_params(n, p);
            CHECK((std::uint64_t{1} << prm.t_width) > prm.t_max);
            for (std::uint64_t k : {std::uint64_t{0}, n}) {
                const auto d = k > prm.floor_np ? k - prm.floor_np : prm.floor_np - k;
                CHECK(floor_log2(d + 1) <= prm.t_max);
            }
        }
    }
}

TEST_CASE("encode examples") {
    const auto prm = derive_params(10, 0.2);
    CHECK(encode_count(6, prm).to_string() == "11001");
    CHECK(encode_count(2, prm).to_string() == "000");
    CHECK(encode_count(0, prm).to_string() == "0011");
    const auto c = split_count(6, prm);
    CHECK(c.f);
    CHECK(c.d == 4);
    CHECK(c.t == 2);
    CHECK(c.u == 1);
    try {
        encode_count(11, prm);
        FAIL("expected WeightOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WeightOutOfRange);
    }
}

TEST_CASE("decode examples") {
    const auto prm = derive_params(10, 0.2);
    const auto a = decode("11001", prm);
    CHECK(a.k == 6);
    CHECK(a.consumed == 5);
    const auto b = decode("000", prm);
    CHECK(b.k == 2);
    CHECK(b.consumed == 3);
    CHECK(decode_error("100", prm) == ErrorCode::NonCanonical);
    CHECK(decode_error("1000", derive_params(50, 0.1)) == ErrorCode::NonCanonical);
    CHECK(decode_error("10", derive_params(2, 0.5)) == ErrorCode::NonCanonical);
    CHECK(decode_error("11", prm) == ErrorCode::PayloadExhausted);
    CHECK(decode_error("1100", prm) == ErrorCode::PayloadExhausted);
    // F=0, t=3, u=111: d=14 puts k below zero.
    CHECK(decode_error("011111", prm) == ErrorCode::KOutOfRange);
    // F=1, t=3, u=111: d=14 puts k above n.
    CHECK(decode_error("111111", prm) == ErrorCode::KOutOfRange);
}

TEST_CASE("length examples") {
    CHECK(count_code_length(6, derive_params(10, 0.2)) == 5);
    const auto prm = derive_params(50, 0.1);
    CHECK(count_code_length(prm.floor_np, prm) == 1 + prm.t_width);
    CHECK(count_code_length(0, derive_params(50, 0.01)) == 4);
}

TEST_CASE("f follows k <= np exactly when np is an integer") {
    const auto prm = derive_params(10, 0.5);
    CHECK(prm.floor_np == 5);
    CHECK_FALSE(split_count(5, prm).f);
    CHECK(split_count(6, prm).f);
    CHECK_FALSE(split_count(4, prm).f);
}

TEST_CASE("roundtrip, prefix freedom and Kraft up to n=256") {
    for (std::uint64_t n = 1; n <= 256; ++n) {
        for (double p : kGrid) {
            const auto prm = derive_params(n, p);
            std::vector<BitSequence> words;
            for (std::uint64_t k = 0; k <= n; ++k) {
                BitSequence w = encode_count(k, prm);
                REQUIRE(w.size() == count_code_length(k, prm));
                const auto bytes = pack_bits(w);
                BitReader r(bytes, w.size());
                const auto d = decode_count(r, prm);
                REQUIRE(d.k == k);
                REQUIRE(d.consumed == w.size());
                words.push_back(std::move(w));
            }
            REQUIRE(is_prefix_free(words));
            REQUIRE(kraft_sum(words) <= 1.0);
        }
    }
}

TEST_CASE("length grows with distance") {
    for (std::uint64_t n : {10u, 50u, 257u}) {
        for (double p : kGrid) {
            const auto prm = derive_params(n, p);
            std::vector<unsigned> by_d(n + 1, 0);
            for (std::uint64_t k = 0; k <= n; ++k) {
                const auto c = split_count(k, prm);
                by_d[c.d] = count_code_length(k, prm);
            }
            for (std::uint64_t d = 1; d <= prm.d_max; ++d) {
                if (by_d[d] != 0 && by_d[d - 1] != 0) CHECK(by_d[d - 1] <= by_d[d]);
            }
        }
    }
}
