#pragma once

#include <cstdint>
#include <vector>

namespace bzc {

// Which T width the length formula uses. The codec always uses Capacity;
// Compact is ceil(log2 log2 n) and exists only to measure the difference.
enum class WidthMode { Capacity, Compact };

const char* to_string(WidthMode m) noexcept;

// h(p) in bits. Throws InvalidProbability outside (0,1).
double bernoulli_entropy(double p);

// n * h(p). Throws InvalidModel.
double sequence_entropy(std::uint64_t n, double p);

// P(S = k) for k = 0..n via the log-space ratio recurrence.
std::vector<double> binomial_pmf(std::uint64_t n, double p);

// ceil(log2 C(n,k)) for every k = 0..n, exact.
std::vector<std::uint64_t> rank_widths(std::uint64_t n);

// ceil(log2 log2 n), and 0 for n <= 2.
unsigned compact_t_width(std::uint64_t n);

// Count-code length of weight k under the chosen width convention.
unsigned count_length(std::uint64_t n, double p, std::uint64_t k, WidthMode mode);

// Expected codeword length: sum over k of P(S=k) * (count length + rank width).
double exact_mean_length(std::uint64_t n, double p, WidthMode mode = WidthMode::Capacity);

// Expected length of block mode: the sum of exact_mean_length over the blocks.
double exact_block_mean_length(std::uint64_t total_len, double p, std::uint64_t block_len,
                               WidthMode mode = WidthMode::Capacity);

// n h(p) + log2 log2 n + log2 sqrt(1/(2 pi e)) + 3, for n >= 2.
double mean_length_upper_bound(std::uint64_t n, double p);

// 1/2 log2(2 pi e n p q).
double binomial_entropy_approx(std::uint64_t n, double p);

// -sum P(S=k) log2 P(S=k).
double binomial_entropy_exact(std::uint64_t n, double p);

struct MadCheck {
    double exact_mad = 0;
    double bound = 0;
    bool holds = false;
};

// E|k - np| by direct summation against sqrt(npq).
MadCheck verify_mad_bound(std::uint64_t n, double p);

struct LengthReport {
    std::uint64_t n = 0;
    double p = 0;
    double entropy_bits = 0;
    double exact_mean_len = 0;
    double upper_bound = 0;
    double binomial_entropy_approx = 0;
    double mad_bound = 0;
};

LengthReport length_report(std::uint64_t n, double p, WidthMode mode = WidthMode::Capacity);

}  // namespace bzc
