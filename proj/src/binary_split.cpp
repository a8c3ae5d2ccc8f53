#include "binary_split.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <vector>

namespace bzc::detail {

namespace {

using u128 = unsigned __int128;

constexpr std::size_t kLeafSteps = 256;
constexpr std::size_t kFactorLeafSteps = 1024;
constexpr std::uint64_t kSieveLimit = std::uint64_t{1} << 26;

void absorb(Split& acc, std::uint64_t sp, std::uint64_t sq, std::uint64_t st) {
    acc.t *= static_cast<unsigned long>(sq);
    mpz_addmul_ui(acc.t.get_mpz_t(), acc.p.get_mpz_t(), static_cast<unsigned long>(st));
    acc.p *= static_cast<unsigned long>(sp);
    acc.q *= static_cast<unsigned long>(sq);
}

// Runs of steps are folded into single words until a product would overflow.
Split plain_leaf(std::span<const Step> steps) {
    Split acc;
    std::uint64_t sp = 1, sq = 1, st = 0;
    for (const Step& s : steps) {
        u128 np = static_cast<u128>(sp) * s.a;
        u128 nq = static_cast<u128>(sq) * s.b;
        u128 nt = static_cast<u128>(s.b) * (static_cast<u128>(st) + (s.one ? sp : 0));
        if ((np >> 64) != 0 || (nq >> 64) != 0 || (nt >> 64) != 0) {
            absorb(acc, sp, sq, st);
            np = s.a;
            nq = s.b;
            nt = s.one ? s.b : 0;
        }
        sp = static_cast<std::uint64_t>(np);
        sq = static_cast<std::uint64_t>(nq);
        st = static_cast<std::uint64_t>(nt);
    }
    absorb(acc, sp, sq, st);
    return acc;
}

// ---------------------------------------------------------------------------
// Smallest-prime-factor table, shared and grown on demand.

class Sieve {
public:
    std::shared_ptr<const std::vector<std::uint32_t>> get(std::uint64_t max_value) {
        std::lock_guard lock(mutex_);
        if (!table_ || table_->size() <= max_value) {
            const std::uint64_t size = std::min(kSieveLimit, std::max<std::uint64_t>(max_value + 1, 2 * (table_ ? table_->size() : 0)));
            table_ = build(size);
        }
        return table_;
    }

private:
    static std::shared_ptr<const std::vector<std::uint32_t>> build(std::uint64_t size) {
        auto spf = std::make_shared<std::vector<std::uint32_t>>(size, 0);
        auto& s = *spf;
        for (std::uint64_t i = 2; i < size; ++i) {
            if (s[i] != 0) continue;
            s[i] = static_cast<std::uint32_t>(i);
            for (std::uint64_t m = i * i; m < size; m += i) {
                if (s[m] == 0) s[m] = static_cast<std::uint32_t>(i);
            }
        }
        return spf;
    }

    std::mutex mutex_;
    std::shared_ptr<const std::vector<std::uint32_t>> table_;
};

Sieve& sieve() {
    static Sieve s;
    return s;
}

// ---------------------------------------------------------------------------
// Integers in factored form: (prime, exponent) pairs sorted by prime.

struct PrimePower {
    std::uint32_t p;
    std::uint32_t e;
};

using Factors = std::vector<PrimePower>;

// Exponent tally for the prime factorization of a product of step values.
class Tally {
public:
    explicit Tally(const std::vector<std::uint32_t>& spf) : spf_(spf), count_(spf.size(), 0) {}

    void add(std::uint64_t v) {
        while (v > 1) {
            const std::uint32_t p = spf_[v];
            if (count_[p]++ == 0) touched_.push_back(p);
            v /= p;
        }
    }

    Factors take() {
        std::sort(touched_.begin(), touched_.end());
        Factors out;
        out.reserve(touched_.size());
        for (std::uint32_t p : touched_) {
            out.push_back({p, count_[p]});
            count_[p] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    const std::vector<std::uint32_t>& spf_;
    std::vector<std::uint32_t> count_;
    std::vector<std::uint32_t> touched_;
};

// Divides both x and y by their gcd.
void cancel(Factors& x, Factors& y) {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].p < y[j].p) {
            ++i;
        } else if (y[j].p < x[i].p) {
            ++j;
        } else {
            const std::uint32_t m = std::min(x[i].e, y[j].e);
            x[i++].e -= m;
            y[j++].e -= m;
        }
    }
    const auto zero = [](const PrimePower& f) { return f.e == 0; };
    x.erase(std::remove_if(x.begin(), x.end(), zero), x.end());
    y.erase(std::remove_if(y.begin(), y.end(), zero), y.end());
}

Factors times(const Factors& x, const Factors& y) {
    Factors out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].p < y[j].p)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].p < x[i].p) {
            out.push_back(y[j++]);
        } else {
            out.push_back({x[i].p, x[i].e + y[j].e});
            ++i;
            ++j;
        }
    }
    return out;
}

mpz_class product(std::span<const std::uint64_t> words) {
    if (words.size() <= 8) {
        mpz_class out = 1;
        for (std::uint64_t w : words) out *= static_cast<unsigned long>(w);
        return out;
    }
    const std::size_t mid = words.size() / 2;
    return product(words.first(mid)) * product(words.subspan(mid));
}

mpz_class value(const Factors& f) {
    std::vector<std::uint64_t> words;
    std::uint64_t acc = 1;
    std::uint32_t twos = 0;
    for (const PrimePower& pp : f) {
        if (pp.p == 2) {
            twos = pp.e;
            continue;
        }
        for (std::uint32_t k = 0; k < pp.e; ++k) {
            const u128 next = static_cast<u128>(acc) * pp.p;
            if ((next >> 64) != 0) {
                words.push_back(acc);
                acc = pp.p;
            } else {
                acc = static_cast<std::uint64_t>(next);
            }
        }
    }
    words.push_back(acc);
    mpz_class out = product(words);
    out <<= twos;
    return out;
}

struct Node {
    Factors p, q;
    mpz_class t;
};

Node factored(std::span<const Step> steps, Tally& tally) {
    if (steps.size() <= kFactorLeafSteps) {
        for (const Step& s : steps) tally.add(s.a);
        Factors p = tally.take();
        for (const Step& s : steps) tally.add(s.b);
        Factors q = tally.take();
        return {std::move(p), std::move(q), split_plain(steps).t};
    }
    const std::size_t mid = steps.size() / 2;
    Node lo = factored(steps.first(mid), tally);
    Node hi = factored(steps.subspan(mid), tally);
    // T = T_lo * Q_hi + P_lo * T_hi; a factor shared by P_lo and Q_hi divides
    // both terms and comes out of P, Q and T alike.
    cancel(lo.p, hi.q);
    Node out;
    if (sgn(lo.t) != 0) out.t = lo.t * value(hi.q);
    if (sgn(hi.t) != 0) mpz_addmul(out.t.get_mpz_t(), value(lo.p).get_mpz_t(), hi.t.get_mpz_t());
    out.p = times(lo.p, hi.p);
    out.q = times(lo.q, hi.q);
    return out;
}

}  // namespace

Split split_plain(std::span<const Step> steps) {
    if (steps.size() <= kLeafSteps) return plain_leaf(steps);
    const std::size_t mid = steps.size() / 2;
    Split lo = split_plain(steps.first(mid));
    Split hi = split_plain(steps.subspan(mid));
    Split out;
    out.t = lo.t * hi.q;
    mpz_addmul(out.t.get_mpz_t(), lo.p.get_mpz_t(), hi.t.get_mpz_t());
    out.p = lo.p * hi.p;
    out.q = lo.q * hi.q;
    return out;
}

Split split(std::span<const Step> steps, bool want_p) {
    if (steps.size() <= kFactorLeafSteps) return split_plain(steps);
    std::uint64_t top = 0;
    for (const Step& s : steps) {
        if (s.a == 0 || s.b == 0) return split_plain(steps);
        top = std::max({top, s.a, s.b});
    }
    if (top >= kSieveLimit) return split_plain(steps);
    const auto spf = sieve().get(top);
    Tally tally(*spf);
    Node root = factored(steps, tally);
    Split out;
    if (want_p) out.p = value(root.p);
    out.q = value(root.q);
    out.t = std::move(root.t);
    return out;
}

}  // namespace bzc::detail
