#pragma once

#include <cstdint>

#include "bzc/bit_sequence.hpp"
#include "bzc/bitio.hpp"

namespace bzc {

// Parameters shared by encoder and decoder, derived from (n, p) alone.
struct CountCodeParams {
    std::uint64_t n = 0;
    double p = 0.5;
    std::uint64_t floor_np = 0;
    std::uint64_t d_max = 0;
    unsigned t_max = 0;
    unsigned t_width = 1;
};

// Decomposition of one weight codeword: F, then t in t_width bits, then u in t bits.
struct CountCode {
    bool f = false;
    unsigned t = 0;
    std::uint64_t u = 0;
    std::uint64_t d = 0;
};

// floor(log2(v)) for v >= 1.
unsigned floor_log2(std::uint64_t v) noexcept;

// Throws InvalidModel when n = 0 or p is outside (0,1).
CountCodeParams derive_params(std::uint64_t n, double p);

CountCode split_count(std::uint64_t k, const CountCodeParams& params);

void encode_count(BitWriter& out, std::uint64_t k, const CountCodeParams& params);
BitSequence encode_count(std::uint64_t k, const CountCodeParams& params);

struct DecodedCount {
    std::uint64_t k;
    std::uint64_t consumed;
};

DecodedCount decode_count(BitReader& in, const CountCodeParams& params);

unsigned count_code_length(std::uint64_t k, const CountCodeParams& params);

}  // namespace bzc
