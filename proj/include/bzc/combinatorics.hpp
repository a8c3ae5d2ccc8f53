#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "bzc/bit_sequence.hpp"

namespace bzc {

// Lexicographic index of a weight-k sequence among all weight-k sequences of
// the same length, in [0, C(n,k)).
using RankValue = mpz_class;

// Zero-based positions of the 1-bits counted from the right (the last element
// of a BitSequence is position 0), strictly increasing.
struct OnePositions {
    std::vector<std::uint64_t> positions;
};

OnePositions one_positions(const BitSequence& x);

// C(n,k); zero when k < 0 or k > n.
mpz_class binomial(std::uint64_t n, std::int64_t k);

// ceil(log2(count)) for a positive count, computed from the bit length of count-1.
std::uint64_t ceil_log2(const mpz_class& count);

// ceil(log2 C(n,k)); 0 when C(n,k) = 1. Requires k <= n.
std::uint64_t rank_bit_width(std::uint64_t n, std::uint64_t k);

// Sum over the ones of C(l_i, i). Throws WeightMismatch when k != popcount(x).
RankValue rank(const BitSequence& x, std::uint64_t k);

// Inverse of rank. Throws RankOutOfRange when r >= C(n,k) or r < 0.
BitSequence unrank(const RankValue& r, std::uint64_t n, std::uint64_t k);

namespace detail {

// Position-by-position evaluation with an incrementally updated binomial.
// O(n) big-integer operations; used for short sequences and as a cross-check.
RankValue rank_incremental(const BitSequence& x, std::uint64_t k);
BitSequence unrank_greedy(const RankValue& r, std::uint64_t n, std::uint64_t k);

// Subquadratic variants (binary splitting / recursive interval refinement).
RankValue rank_split(const BitSequence& x, std::uint64_t k);
BitSequence unrank_refine(const RankValue& r, std::uint64_t n, std::uint64_t k);

}  // namespace detail

}  // namespace bzc
