#include "bzc/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "binary_split.hpp"
#include "bzc/error.hpp"

namespace bzc {

namespace {

// Below this many positions the incremental O(n * size) paths win.
constexpr std::uint64_t kSplitThreshold = 2048;

std::uint64_t bit_length(const mpz_class& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

bool bit_at(const BitSequence& x, std::uint64_t pos) {
    return x[x.size() - 1 - pos];
}

void check_weight(const BitSequence& x, std::uint64_t k) {
    const std::uint64_t w = x.popcount();
    if (w != k) {
        throw Error(ErrorCode::WeightMismatch,
                    "k=" + std::to_string(k) + " but sequence has " + std::to_string(w) + " ones");
    }
}

using detail::Split;
using detail::Step;
using detail::split;

// Chunk length (in positions) for exact splitting: products over a chunk stay
// near the size of the value they feed, so no factorial-sized numbers appear.
std::size_t chunk_steps(double value_bits, std::uint64_t n) {
    const double factor_bits = std::max(1.0, std::log2(static_cast<double>(n) + 1.0));
    return std::max<std::size_t>(4096, static_cast<std::size_t>(value_bits / factor_bits));
}

double log2_binomial(std::uint64_t n, std::uint64_t k) {
    const auto ln = [](std::uint64_t v) { return std::lgamma(static_cast<double>(v) + 1.0); };
    return (ln(n) - ln(k) - ln(n - k)) / std::log(2.0);
}

// Enclosure [lo, hi] * 2^e of a nonnegative product, hi kept within `cap` bits.
struct Bound {
    mpz_class lo, hi;
    long e = 0;
};

void cap_bound(Bound& b, std::size_t cap) {
    const std::size_t len = bit_length(b.hi);
    if (len <= cap) return;
    const std::size_t sh = len - cap;
    mpz_fdiv_q_2exp(b.lo.get_mpz_t(), b.lo.get_mpz_t(), sh);
    mpz_cdiv_q_2exp(b.hi.get_mpz_t(), b.hi.get_mpz_t(), sh);
    b.e += static_cast<long>(sh);
}

Bound exact_bound(mpz_class v, std::size_t cap) {
    Bound b{v, std::move(v), 0};
    cap_bound(b, cap);
    return b;
}

Bound mul(const Bound& x, const Bound& y, std::size_t cap) {
    Bound b{x.lo * y.lo, x.hi * y.hi, x.e + y.e};
    cap_bound(b, cap);
    return b;
}

// Rounds an enclosure down to a coarser exponent.
void coarsen(Bound& b, long e) {
    if (e <= b.e) return;
    const auto sh = static_cast<mp_bitcnt_t>(e - b.e);
    mpz_fdiv_q_2exp(b.lo.get_mpz_t(), b.lo.get_mpz_t(), sh);
    mpz_cdiv_q_2exp(b.hi.get_mpz_t(), b.hi.get_mpz_t(), sh);
    b.e = e;
}

Bound add(Bound x, Bound y, std::size_t cap) {
    if (sgn(x.hi) == 0) return y;
    if (sgn(y.hi) == 0) return x;
    const long e = std::max(x.e, y.e);
    coarsen(x, e);
    coarsen(y, e);
    Bound b{x.lo + y.lo, x.hi + y.hi, e};
    cap_bound(b, cap);
    return b;
}

struct CappedSplit {
    Bound p, q, t;
};

// Same quantities as split(), enclosed to roughly `cap` significant bits.
CappedSplit split_capped(std::span<const Step> steps, std::size_t cap, std::size_t step_bits) {
    if (steps.size() * step_bits <= cap || steps.size() <= 8) {
        Split s = detail::split_plain(steps);
        return {exact_bound(std::move(s.p), cap), exact_bound(std::move(s.q), cap), exact_bound(std::move(s.t), cap)};
    }
    const std::size_t mid = steps.size() / 2;
    const CappedSplit lo = split_capped(steps.first(mid), cap, step_bits);
    const CappedSplit hi = split_capped(steps.subspan(mid), cap, step_bits);
    return {mul(lo.p, hi.p, cap), mul(lo.q, hi.q, cap), add(mul(lo.t, hi.q, cap), mul(lo.p, hi.t, cap), cap)};
}

// floor or ceil of v * x / y * 2^shift for enclosure endpoints.
mpz_class scaled_quotient(const mpz_class& v, const mpz_class& x, const mpz_class& y, long shift, bool up) {
    mpz_class num = v * x;
    mpz_class den = y;
    if (shift >= 0) {
        num <<= static_cast<mp_bitcnt_t>(shift);
    } else {
        den <<= static_cast<mp_bitcnt_t>(-shift);
    }
    mpz_class out;
    if (up) {
        mpz_cdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    } else {
        mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return out;
}

// Number of trailing ones: those have C(l_i, i) = 0 and start no chain.
std::uint64_t trailing_ones(const BitSequence& x) {
    std::uint64_t r = 0;
    while (r < x.size() && bit_at(x, r)) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Unranking by recursive interval refinement.
//
// The greedy decoder walks positions l = n-1..0 keeping R (rank left) and
// C = C(l, j) (j = ones still to place); the bit is 1 iff R >= C. A Window
// holds enclosures of R and C in units of 2^s. Exact windows (s = 0) hold the
// true values. A window delegates to a truncated copy of itself, lets it decide
// as many positions as its precision allows, then catches up on those
// decisions in one batch through binary splitting.

constexpr std::size_t kLeafBits = 192;
constexpr std::size_t kMinBits = 64;
constexpr std::size_t kSlackShift = 24;

struct Cursor {
    BitSequence& out;
    std::uint64_t n;
    std::int64_t l;
    std::uint64_t j;
    std::size_t chunk;  // positions per exact catch-up

    void emit(bool one) {
        if (one) {
            out.set(n - 1 - static_cast<std::uint64_t>(l), true);
            --j;
        }
        --l;
    }

    // Fills forced tails. True once every position is decided.
    bool settle() {
        if (l < 0) return true;
        if (j == 0) {
            l = -1;
            return true;
        }
        if (j == static_cast<std::uint64_t>(l) + 1) {
            for (std::int64_t pos = l; pos >= 0; --pos) out.set(n - 1 - static_cast<std::uint64_t>(pos), true);
            j = 0;
            l = -1;
            return true;
        }
        return false;
    }
};

struct Window {
    mpz_class r_lo, r_hi, c_lo, c_hi;
    bool exact = false;

    // Exact windows keep only the *_lo members.
    [[nodiscard]] const mpz_class& rh() const { return exact ? r_lo : r_hi; }
    [[nodiscard]] const mpz_class& ch() const { return exact ? c_lo : c_hi; }
};

enum class Stop { Done, Ambiguous, Exhausted };

int decide(const Window& w) {
    if (w.r_lo >= w.ch()) return 1;
    if (w.rh() < w.c_lo) return 0;
    return -1;
}

bool exhausted(const Window& w) {
    if (w.exact) return false;
    if (sgn(w.c_lo) == 0 || bit_length(w.c_lo) < kMinBits) return true;
    mpz_class slack = w.c_lo >> kSlackShift;
    return (w.c_hi - w.c_lo) > slack || (w.r_hi - w.r_lo) > slack;
}

void apply(Window& w, Cursor& cur, bool one) {
    const auto l = static_cast<unsigned long>(cur.l);
    const auto num = static_cast<unsigned long>(one ? cur.j : cur.l - static_cast<std::int64_t>(cur.j));
    if (w.exact) {
        if (one) w.r_lo -= w.c_lo;
        w.c_lo *= num;
        mpz_divexact_ui(w.c_lo.get_mpz_t(), w.c_lo.get_mpz_t(), l);
    } else {
        if (one) {
            w.r_lo -= w.c_hi;
            if (sgn(w.r_lo) < 0) w.r_lo = 0;
            w.r_hi -= w.c_lo;
        }
        w.c_lo *= num;
        mpz_fdiv_q_ui(w.c_lo.get_mpz_t(), w.c_lo.get_mpz_t(), l);
        w.c_hi *= num;
        mpz_cdiv_q_ui(w.c_hi.get_mpz_t(), w.c_hi.get_mpz_t(), l);
    }
    cur.emit(one);
}

Stop run_sequential(Window& w, Cursor& cur) {
    for (;;) {
        if (cur.settle()) return Stop::Done;
        if (exhausted(w)) return Stop::Exhausted;
        const int d = decide(w);
        if (d < 0) return Stop::Ambiguous;
        apply(w, cur, d == 1);
    }
}

Window truncated(const Window& w, std::size_t shift) {
    Window s;
    mpz_fdiv_q_2exp(s.r_lo.get_mpz_t(), w.r_lo.get_mpz_t(), shift);
    mpz_cdiv_q_2exp(s.r_hi.get_mpz_t(), w.rh().get_mpz_t(), shift);
    mpz_fdiv_q_2exp(s.c_lo.get_mpz_t(), w.c_lo.get_mpz_t(), shift);
    mpz_cdiv_q_2exp(s.c_hi.get_mpz_t(), w.ch().get_mpz_t(), shift);
    return s;
}

// Replays the decisions for positions l0 .. cur.l+1 on `w`.
void catch_up(Window& w, const Cursor& cur, std::int64_t l0, std::uint64_t j0) {
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>(l0 - cur.l));
    std::uint64_t j = j0;
    for (std::int64_t l = l0; l > cur.l; --l) {
        const auto pos = static_cast<std::uint64_t>(l);
        const bool one = bit_at(cur.out, pos);
        steps.push_back({one ? j : pos - j, pos, one});
        if (one) --j;
    }
    if (w.exact) {
        const Split s = split(steps);
        mpz_class sum = w.c_lo * s.t;
        mpz_divexact(sum.get_mpz_t(), sum.get_mpz_t(), s.q.get_mpz_t());
        w.r_lo -= sum;
        w.c_lo *= s.p;
        mpz_divexact(w.c_lo.get_mpz_t(), w.c_lo.get_mpz_t(), s.q.get_mpz_t());
        return;
    }
    const std::size_t cap = bit_length(w.c_hi) + 64;
    const std::size_t step_bits = bit_length(mpz_class{static_cast<unsigned long>(l0 + 1)});
    const CappedSplit s = split_capped(steps, cap, step_bits);
    const long dt = s.t.e - s.q.e;
    const long dp = s.p.e - s.q.e;
    const mpz_class sum_lo = scaled_quotient(w.c_lo, s.t.lo, s.q.hi, dt, false);
    const mpz_class sum_hi = scaled_quotient(w.c_hi, s.t.hi, s.q.lo, dt, true);
    w.r_lo -= sum_hi;
    if (sgn(w.r_lo) < 0) w.r_lo = 0;
    w.r_hi -= sum_lo;
    w.c_lo = scaled_quotient(w.c_lo, s.p.lo, s.q.hi, dp, false);
    w.c_hi = scaled_quotient(w.c_hi, s.p.hi, s.q.lo, dp, true);
}

Stop advance(Window& w, Cursor& cur) {
    for (;;) {
        if (cur.settle()) return Stop::Done;
        if (exhausted(w)) return Stop::Exhausted;
        const std::size_t bits = bit_length(w.ch());
        if (bits <= kLeafBits) return run_sequential(w, cur);

        std::size_t keep = std::max(kLeafBits, bits / 2);
        if (w.exact) {
            // Each exact catch-up costs about one multiplication at full size,
            // so the first sub-window only covers a chunk of positions.
            const auto left = static_cast<std::uint64_t>(cur.l) + 1;
            const double per_step = static_cast<double>(bits) / static_cast<double>(left);
            const double chunk = static_cast<double>(cur.chunk) * per_step;
            keep = std::max(kLeafBits, std::min(keep, static_cast<std::size_t>(chunk) + 64));
        }
        const std::size_t shift = bits - keep;
        Window sub = truncated(w, shift);
        const std::int64_t l0 = cur.l;
        const std::uint64_t j0 = cur.j;
        const Stop st = advance(sub, cur);
        if (st == Stop::Done) return Stop::Done;
        if (cur.l != l0) catch_up(w, cur, l0, j0);
        if (st == Stop::Ambiguous || cur.l == l0) {
            if (cur.settle()) return Stop::Done;
            if (exhausted(w)) return Stop::Exhausted;
            const int d = decide(w);
            if (d < 0) return Stop::Ambiguous;
            apply(w, cur, d == 1);
        }
    }
}

// Validates (r, n, k) and returns C(n-1, k), the first comparison value.
mpz_class check_rank(const RankValue& r, std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw Error(ErrorCode::WeightMismatch, "weight " + std::to_string(k) + " exceeds length " + std::to_string(n));
    }
    const mpz_class total = binomial(n, static_cast<std::int64_t>(k));
    if (sgn(r) < 0 || r >= total) {
        throw Error(ErrorCode::RankOutOfRange,
                    "rank needs " + std::to_string(bit_length(r)) + " bits, limit C(" + std::to_string(n) + "," +
                        std::to_string(k) + ")");
    }
    if (k == n || n == 0) return mpz_class{0};
    mpz_class c = total * static_cast<unsigned long>(n - k);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n));
    return c;
}

}  // namespace

OnePositions one_positions(const BitSequence& x) {
    OnePositions out;
    for (std::uint64_t pos = 0; pos < x.size(); ++pos) {
        if (bit_at(x, pos)) out.positions.push_back(pos);
    }
    return out;
}

mpz_class binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

std::uint64_t ceil_log2(const mpz_class& count) {
    if (count <= 1) return 0;
    return bit_length(count - 1);
}

std::uint64_t rank_bit_width(std::uint64_t n, std::uint64_t k) {
    return ceil_log2(binomial(n, static_cast<std::int64_t>(k)));
}

RankValue rank(const BitSequence& x, std::uint64_t k) {
    return x.size() <= kSplitThreshold ? detail::rank_incremental(x, k) : detail::rank_split(x, k);
}

BitSequence unrank(const RankValue& r, std::uint64_t n, std::uint64_t k) {
    return n <= kSplitThreshold ? detail::unrank_greedy(r, n, k) : detail::unrank_refine(r, n, k);
}

namespace detail {

RankValue rank_incremental(const BitSequence& x, std::uint64_t k) {
    check_weight(x, k);
    const std::uint64_t n = x.size();
    const std::uint64_t r0 = trailing_ones(x);
    RankValue sum = 0;
    if (r0 == k) return sum;
    mpz_class c = 1;  // C(l, j)
    std::uint64_t j = r0 + 1;
    std::uint64_t seen = r0;
    for (std::uint64_t l = r0 + 1; l < n; ++l) {
        const bool one = bit_at(x, l);
        if (one) {
            sum += c;
            ++seen;
            if (seen == k) break;
        }
        c *= static_cast<unsigned long>(l + 1);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(one ? j + 1 : l + 1 - j));
        if (one) ++j;
    }
    return sum;
}

BitSequence unrank_greedy(const RankValue& r, std::uint64_t n, std::uint64_t k) {
    mpz_class c = check_rank(r, n, k);
    BitSequence out(n);
    Cursor cur{out, n, static_cast<std::int64_t>(n) - 1, k, 0};
    Window w{r, 0, std::move(c), 0, true};
    run_sequential(w, cur);
    return out;
}

RankValue rank_split(const BitSequence& x, std::uint64_t k) {
    check_weight(x, k);
    const std::uint64_t n = x.size();
    const std::uint64_t r0 = trailing_ones(x);
    if (r0 == k) return 0;
    std::uint64_t top = n - 1;
    while (!bit_at(x, top)) --top;

    std::vector<Step> steps;
    steps.reserve(top - r0);
    std::uint64_t j = r0 + 1;
    for (std::uint64_t l = r0 + 1; l <= top; ++l) {
        const bool one = bit_at(x, l);
        steps.push_back({l + 1, one ? j + 1 : l + 1 - j, one});
        if (one) ++j;
    }
    Split s = split(steps, false);
    mpz_divexact(s.t.get_mpz_t(), s.t.get_mpz_t(), s.q.get_mpz_t());
    return s.t;
}

BitSequence unrank_refine(const RankValue& r, std::uint64_t n, std::uint64_t k) {
    mpz_class c = check_rank(r, n, k);
    BitSequence out(n);
    Cursor cur{out, n, static_cast<std::int64_t>(n) - 1, k, chunk_steps(log2_binomial(n, k), n)};
    Window w{r, 0, std::move(c), 0, true};
    advance(w, cur);
    return out;
}

}  // namespace detail

}  // namespace bzc
