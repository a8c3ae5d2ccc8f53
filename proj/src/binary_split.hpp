#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>

namespace bzc::detail {

// One link of a chain c_{m+1} = c_m * a / b; `one` marks the terms to sum.
struct Step {
    std::uint64_t a;
    std::uint64_t b;
    bool one;
};

// For a run of steps, integers with
//   c_end = c_0 * p / q   and   sum over marked m of c_m = c_0 * t / q.
// p, q and t share no factor that binary splitting could cancel cheaply, so
// their size tracks the value they describe rather than the factor count.
struct Split {
    mpz_class p{1};
    mpz_class q{1};
    mpz_class t{0};
};

Split split(std::span<const Step> steps, bool want_p = true);

// Textbook binary splitting without cancellation: p = prod a, q = prod b.
Split split_plain(std::span<const Step> steps);

}  // namespace bzc::detail
