#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bzc/bit_sequence.hpp"

namespace bzc {

// Codewords for the symbols of nonzero probability, in symbol order.
struct CodeTable {
    std::vector<std::uint64_t> symbols;
    std::vector<BitSequence> codewords;
    std::vector<double> probabilities;

    [[nodiscard]] double mean_length() const;
    [[nodiscard]] double kraft_sum() const;
    [[nodiscard]] std::uint64_t max_length() const;
};

// True when no codeword is a prefix of another (duplicates count as prefixes).
bool is_prefix_free(std::span<const BitSequence> codewords);

// sum 2^-len, exact when every length is below 1024.
double kraft_sum(std::span<const BitSequence> codewords);

// Ties merge the lower id first; a merged node sorts after existing equals.
// Throws DegenerateDistribution with fewer than two nonzero probabilities.
CodeTable huffman_build(std::span<const double> probabilities);

// Shannon-Fano-Elias: ceil(log2 1/p)+1 leading bits of the cumulative midpoint,
// evaluated in exact rationals over the normalized distribution.
CodeTable sfe_build(std::span<const double> probabilities);

// -sum p log2 p over the given weights.
double distribution_entropy(std::span<const double> probabilities);

enum class AuditCoder { BernoulliZip, HuffmanFull, SfeFull };

const char* to_string(AuditCoder c) noexcept;

struct AuditReport {
    std::uint64_t n = 0;
    double p = 0;
    AuditCoder coder = AuditCoder::BernoulliZip;
    double mean_length = 0;
    double entropy = 0;
    double kraft_sum = 0;
    bool prefix_free = false;
    std::uint64_t max_length = 0;
    // Every sequence decodes back to itself; always true for the full-alphabet coders.
    bool roundtrip = true;
};

inline constexpr std::uint64_t kAuditMaxN = 16;

// Enumerates all 2^n sequences. Throws TooLarge above kAuditMaxN.
AuditReport exhaustive_code_audit(std::uint64_t n, double p, AuditCoder coder);

// Huffman over the weight distribution plus the fixed rank width.
double huffman_count_variant_mean(std::uint64_t n, double p);

}  // namespace bzc
