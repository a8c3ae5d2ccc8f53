#include <doctest.h>

#include <random>

#include "bzc/baselines.hpp"
#include "bzc/codec.hpp"
#include "bzc/combinatorics.hpp"
#include "bzc/countcode.hpp"
#include "bzc/error.hpp"
#include "oracles.hpp"

using namespace bzc;

namespace {

template <typename F>
ErrorCode code_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::IoError;
}

BitSequence decode_bits(const BitSequence& code, const BernoulliModel& m) {
    const auto bytes = pack_bits(code);
    BitReader r(bytes, code.size());
    BitSequence out = decode_sequence(r, m);
    CHECK(r.remaining() == 0);
    return out;
}

BitSequence random_bits(std::mt19937_64& rng, std::uint64_t n, double p) {
    BitSequence x(n);
    for (std::uint64_t i = 0; i < n; ++i) x.set(i, static_cast<double>(rng() >> 11) * 0x1.0p-53 < p);
    return x;
}

}  // namespace

TEST_CASE("sequence examples") {
    const BernoulliModel m{4, 0.2};
    CHECK(encode_sequence(BitSequence::from_string("1101"), m).to_string() == "1100010");
    CHECK(encode_sequence(BitSequence::from_string("0000"), m).to_string() == "000");
    CHECK(decode_bits(BitSequence::from_string("1100010"), m).to_string() == "1101");
    CHECK(decode_bits(BitSequence::from_string("000"), m).to_string() == "0000");
    CHECK(code_of([&] { decode_bits(BitSequence::from_string("11"), m); }) == ErrorCode::PayloadExhausted);
    CHECK(code_of([&] { encode_sequence(BitSequence::from_string("101"), m); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { encode_sequence(BitSequence::from_string("1"), {1, 1.0}); }) == ErrorCode::InvalidModel);
}

TEST_CASE("corrupt rank bits") {
    // n=4, p=0.2, k=3: count 11000, then 2 rank bits; C(4,3)=4 fills the width,
    // so use k=2 (C(4,2)=6 in 3 bits) where 110 and 111 are out of range.
    const BernoulliModel m{4, 0.2};
    const BitSequence code = encode_sequence(BitSequence::from_string("0011"), m);
    const auto count_len = count_code_length(2, derive_params(4, 0.2));
    BitSequence bad = code.slice(0, count_len);
    bad.append(BitSequence::from_string("111"));
    CHECK(code_of([&] { decode_bits(bad, m); }) == ErrorCode::RankOutOfRange);
}

TEST_CASE("exhaustive roundtrip n<=16 and length law") {
    for (std::uint64_t n = 1; n <= 16; ++n) {
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const BernoulliModel m{n, p};
            const auto prm = derive_params(n, p);
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
                const BitSequence x = oracle::from_index(v, n);
                const BitSequence code = encode_sequence(x, m);
                const std::uint64_t k = x.popcount();
                REQUIRE(code.size() == count_code_length(k, prm) + rank_bit_width(n, k));
                REQUIRE(code.size() == codeword_length(n, p, k));
                REQUIRE(decode_bits(code, m) == x);
            }
        }
    }
}

TEST_CASE("full codeword set is prefix free for n<=12") {
    for (std::uint64_t n = 1; n <= 12; ++n) {
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            std::vector<BitSequence> words;
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
                words.push_back(encode_sequence(oracle::from_index(v, n), {n, p}));
            }
            REQUIRE(is_prefix_free(words));
            REQUIRE(kraft_sum(words) <= 1.0);
        }
    }
}

TEST_CASE("blocks") {
    std::mt19937_64 rng(5);
    const BitSequence x10 = random_bits(rng, 10, 0.3);
    CHECK(encode_blocks(x10, 0.3, 5) ==
          concat(encode_sequence(x10.slice(0, 5), {5, 0.3}), encode_sequence(x10.slice(5, 5), {5, 0.3})));

    const BitSequence x7 = random_bits(rng, 7, 0.3);
    const BitSequence code7 = encode_blocks(x7, 0.3, 5);
    CHECK(code7 == concat(encode_sequence(x7.slice(0, 5), {5, 0.3}), encode_sequence(x7.slice(5, 2), {2, 0.3})));
    const auto bytes7 = pack_bits(code7);
    BitReader r7(bytes7, code7.size());
    CHECK(decode_blocks(r7, 7, 0.3, 5) == x7);
    CHECK(block_count(7, 5) == 2);

    for (std::uint64_t bl : {7u, 8u, 100u}) CHECK(encode_blocks(x7, 0.3, bl) == encode_sequence(x7, {7, 0.3}));

    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t n = rng() % 3000 + 1, bl = rng() % 200 + 1;
        const double p = 0.01 + 0.98 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const BitSequence x = random_bits(rng, n, p);
        const BitSequence code = encode_blocks(x, p, bl);
        std::uint64_t total = 0;
        for (std::uint64_t pos = 0; pos < n; pos += bl) {
            const std::uint64_t m = std::min(bl, n - pos);
            total += codeword_length(m, p, x.slice(pos, m).popcount());
        }
        REQUIRE(code.size() == total);
        REQUIRE(encode_blocks(x, p, bl, 4) == code);
        const auto bytes = pack_bits(code);
        BitReader r(bytes, code.size());
        REQUIRE(decode_blocks(r, n, p, bl) == x);
        REQUIRE(r.remaining() == 0);
    }
}

TEST_CASE("random roundtrip for long sequences") {
    std::mt19937_64 rng(9);
    for (std::uint64_t n : {1000u, 4096u, 30000u, 200000u}) {
        for (double p : {0.001, 0.1, 0.5, 0.97}) {
            const BitSequence x = random_bits(rng, n, p);
            const BitSequence code = encode_sequence(x, {n, p});
            REQUIRE(code.size() == codeword_length(n, p, x.popcount()));
            REQUIRE(decode_bits(code, {n, p}) == x);
        }
    }
}

TEST_CASE("containers") {
    std::mt19937_64 rng(21);
    const BitSequence x = random_bits(rng, 1000, 0.1);
    for (auto method : {Method::Direct, Method::Block}) {
        const auto bytes = compress_file(x, 0.1, method, method == Method::Block ? 64 : 0, 2);
        const Decompressed d = decompress_file(bytes);
        CHECK(d.bits == x);
        CHECK(d.header.n_or_v == 1000);
        CHECK(d.header.mode == (method == Method::Block ? ContainerMode::SequenceBlock : ContainerMode::SequenceDirect));
        CHECK(bytes.size() == kHeaderSize + (d.header.payload_bit_count + 7) / 8);

        auto magic = bytes;
        magic[0] = 'X';
        CHECK(code_of([&] { decompress_file(magic); }) == ErrorCode::BadMagic);

        auto truncated = bytes;
        truncated.resize(bytes.size() - 2);
        CHECK(code_of([&] { decompress_file(truncated); }) == ErrorCode::PayloadExhausted);

        // Shrinking the declared bit count cuts the codeword short.
        auto shorter = bytes;
        shorter.resize(bytes.size() - 1);
        const std::uint64_t declared = (bytes.size() - 1 - kHeaderSize) * 8;
        for (int i = 0; i < 8; ++i) shorter[26 + i] = static_cast<std::uint8_t>(declared >> (8 * i));
        CHECK(code_of([&] { decompress_file(shorter); }) == ErrorCode::PayloadExhausted);

        auto trailing = bytes;
        trailing.push_back(0);
        CHECK(code_of([&] { decompress_file(trailing); }) == ErrorCode::LengthMismatch);
    }
    CHECK(code_of([&] { compress_file(x, 1.0, Method::Direct); }) == ErrorCode::BadProbability);
    CHECK(code_of([&] { compress_file(x, 0.5, Method::Block, 0); }) == ErrorCode::InvalidModel);
}

TEST_CASE("zero-width payload container") {
    const BitSequence x = BitSequence::from_string("0000");
    const auto bytes = compress_file(x, 0.2, Method::Direct);
    CHECK(decompress_file(bytes).bits == x);
}
