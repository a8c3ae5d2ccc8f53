#include "bzc/analysis.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numbers>

#include "bzc/countcode.hpp"
#include "bzc/error.hpp"

namespace bzc {

namespace {

void check_model(std::uint64_t n, double p) {
    if (n == 0) throw Error(ErrorCode::InvalidModel, "n must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidModel, "p must lie in (0,1)");
}

}  // namespace

const char* to_string(WidthMode m) noexcept {
    return m == WidthMode::Compact ? "compact" : "capacity";
}

double bernoulli_entropy(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidProbability, "p must lie in (0,1)");
    const double q = 1.0 - p;
    return -p * std::log2(p) - q * std::log2(q);
}

double sequence_entropy(std::uint64_t n, double p) {
    check_model(n, p);
    return static_cast<double>(n) * bernoulli_entropy(p);
}

std::vector<double> binomial_pmf(std::uint64_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidModel, "p must lie in (0,1)");
    const double q = 1.0 - p;
    const double lr = std::log(p) - std::log(q);
    std::vector<double> out(n + 1);
    double lp = static_cast<double>(n) * std::log1p(-p);
    for (std::uint64_t k = 0;; ++k) {
        out[k] = std::exp(lp);
        if (k == n) break;
        lp += std::log(static_cast<double>(n - k) / static_cast<double>(k + 1)) + lr;
    }
    return out;
}

std::vector<std::uint64_t> rank_widths(std::uint64_t n) {
    std::vector<std::uint64_t> out(n + 1);
    mpz_class c = 1;
    mpz_class cm1;
    for (std::uint64_t k = 0;; ++k) {
        cm1 = c - 1;
        out[k] = sgn(cm1) == 0 ? 0 : mpz_sizeinbase(cm1.get_mpz_t(), 2);
        if (k == n) break;
        c *= static_cast<unsigned long>(n - k);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k + 1));
    }
    return out;
}

unsigned compact_t_width(std::uint64_t n) {
    // Smallest w with 2^(2^w) >= n.
    unsigned w = 0;
    while (w < 6 && (std::uint64_t{1} << (std::uint64_t{1} << w)) < n) ++w;
    return w;
}

unsigned count_length(std::uint64_t n, double p, std::uint64_t k, WidthMode mode) {
    const CountCodeParams params = derive_params(n, p);
    const unsigned len = count_code_length(k, params);
    return mode == WidthMode::Capacity ? len : len - params.t_width + compact_t_width(n);
}

double exact_mean_length(std::uint64_t n, double p, WidthMode mode) {
    check_model(n, p);
    const CountCodeParams params = derive_params(n, p);
    const unsigned width = mode == WidthMode::Capacity ? params.t_width : compact_t_width(n);
    const std::vector<double> pmf = binomial_pmf(n, p);
    const std::vector<std::uint64_t> widths = rank_widths(n);
    double sum = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
        const std::uint64_t d = k >= params.floor_np ? k - params.floor_np : params.floor_np - k;
        const double len = 1.0 + width + floor_log2(d + 1) + static_cast<double>(widths[k]);
        sum += pmf[k] * len;
    }
    return sum;
}

double exact_block_mean_length(std::uint64_t total_len, double p, std::uint64_t block_len, WidthMode mode) {
    check_model(total_len, p);
    if (block_len == 0) throw Error(ErrorCode::InvalidModel, "block length must be at least 1");
    const std::uint64_t full = total_len / block_len;
    const std::uint64_t rest = total_len % block_len;
    double sum = 0;
    if (full > 0) sum += static_cast<double>(full) * exact_mean_length(block_len, p, mode);
    if (rest > 0) sum += exact_mean_length(rest, p, mode);
    return sum;
}

double mean_length_upper_bound(std::uint64_t n, double p) {
    if (n < 2) throw Error(ErrorCode::InvalidModel, "bound needs n >= 2");
    check_model(n, p);
    const double c = 0.5 * std::log2(1.0 / (2.0 * std::numbers::pi * std::numbers::e));
    return sequence_entropy(n, p) + std::log2(std::log2(static_cast<double>(n))) + c + 3.0;
}

double binomial_entropy_approx(std::uint64_t n, double p) {
    check_model(n, p);
    const double npq = static_cast<double>(n) * p * (1.0 - p);
    return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * npq);
}

double binomial_entropy_exact(std::uint64_t n, double p) {
    check_model(n, p);
    double h = 0;
    for (double w : binomial_pmf(n, p)) {
        if (w > 0) h -= w * std::log2(w);
    }
    return h;
}

MadCheck verify_mad_bound(std::uint64_t n, double p) {
    check_model(n, p);
    const std::vector<double> pmf = binomial_pmf(n, p);
    const double np = static_cast<double>(n) * p;
    MadCheck out;
    for (std::uint64_t k = 0; k <= n; ++k) out.exact_mad += pmf[k] * std::abs(static_cast<double>(k) - np);
    out.bound = std::sqrt(np * (1.0 - p));
    out.holds = out.exact_mad <= out.bound;
    return out;
}

LengthReport length_report(std::uint64_t n, double p, WidthMode mode) {
    LengthReport r;
    r.n = n;
    r.p = p;
    r.entropy_bits = sequence_entropy(n, p);
    r.exact_mean_len = exact_mean_length(n, p, mode);
    r.upper_bound = n >= 2 ? mean_length_upper_bound(n, p) : NAN;
    r.binomial_entropy_approx = binomial_entropy_approx(n, p);
    r.mad_bound = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
    return r;
}

}  // namespace bzc
