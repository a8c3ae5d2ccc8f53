#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bzc/bit_sequence.hpp"
#include "bzc/bitio.hpp"

namespace bzc {

struct BernoulliModel {
    std::uint64_t n = 1;
    double p = 0.5;
};

// Throws InvalidModel unless n >= 1 and 0 < p < 1.
void validate_model(const BernoulliModel& m);

// Count code for k = popcount(x), then rank(x, k) in exactly rank_bit_width(n, k) bits.
void encode_sequence(BitWriter& out, const BitSequence& x, const BernoulliModel& model);
BitSequence encode_sequence(const BitSequence& x, const BernoulliModel& model);

BitSequence decode_sequence(BitReader& in, const BernoulliModel& model);

// Number of bits encode_sequence emits for a sequence of weight k.
std::uint64_t codeword_length(std::uint64_t n, double p, std::uint64_t k);

// Chunks of block_len bits (the last may be shorter), each coded with its own
// length. Blocks are encoded on up to `threads` workers and joined in order.
void encode_blocks(BitWriter& out, const BitSequence& x, double p, std::uint64_t block_len, unsigned threads = 1);
BitSequence encode_blocks(const BitSequence& x, double p, std::uint64_t block_len, unsigned threads = 1);

BitSequence decode_blocks(BitReader& in, std::uint64_t total_len, double p, std::uint64_t block_len);

std::uint64_t block_count(std::uint64_t total_len, std::uint64_t block_len);

enum class Method { Direct, Block };

std::vector<std::uint8_t> compress_file(const BitSequence& x, double p, Method method,
                                        std::uint64_t block_len = 0, unsigned threads = 1);

struct Decompressed {
    ContainerHeader header;
    BitSequence bits;
};

// Accepts every container mode; for graph modes `bits` is the edge indicator
// sequence of length C(v,2).
Decompressed decompress_file(std::span<const std::uint8_t> bytes);

namespace detail {

// Container assembly shared with graph mode.
std::vector<std::uint8_t> build_container(const BitSequence& x, ContainerHeader header, unsigned threads);

}  // namespace detail

}  // namespace bzc
