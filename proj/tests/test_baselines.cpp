#include <doctest.h>

#include <cmath>

#include "bzc/analysis.hpp"
#include "bzc/baselines.hpp"
#include "bzc/codec.hpp"
#include "bzc/combinatorics.hpp"
#include "bzc/countcode.hpp"
#include "bzc/error.hpp"
#include "oracles.hpp"

using namespace bzc;
using doctest::Approx;

namespace {

void check_table(const CodeTable& t) {
    CHECK(is_prefix_free(t.codewords));
    CHECK(t.kraft_sum() <= 1.0 + 1e-12);
}

}  // namespace

TEST_CASE("prefix checks") {
    std::vector<BitSequence> ok{BitSequence::from_string("0"), BitSequence::from_string("10"),
                                BitSequence::from_string("11")};
    CHECK(is_prefix_free(ok));
    CHECK(kraft_sum(ok) == 1.0);
    ok.push_back(BitSequence::from_string("101"));
    CHECK_FALSE(is_prefix_free(ok));
    std::vector<BitSequence> dup{BitSequence::from_string("01"), BitSequence::from_string("01")};
    CHECK_FALSE(is_prefix_free(dup));
}

TEST_CASE("huffman") {
    const std::vector<double> two{0.5, 0.5};
    const auto a = huffman_build(two);
    CHECK(a.codewords[0].size() == 1);
    CHECK(a.codewords[1].size() == 1);

    const std::vector<double> dyadic{0.5, 0.25, 0.25};
    const auto b = huffman_build(dyadic);
    CHECK(b.mean_length() == 1.5);
    CHECK(distribution_entropy(dyadic) == 1.5);
    check_table(b);

    const auto pmf = binomial_pmf(10, 0.2);
    const auto c = huffman_build(pmf);
    const double h = distribution_entropy(pmf);
    CHECK(c.mean_length() >= h - 1e-12);
    CHECK(c.mean_length() < h + 1);
    check_table(c);

    const std::vector<double> one{0.0, 1.0, 0.0};
    try {
        huffman_build(one);
        FAIL("expected DegenerateDistribution");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateDistribution);
    }
}

TEST_CASE("huffman ties are reproducible") {
    const std::vector<double> flat{0.25, 0.25, 0.25, 0.25};
    const auto t = huffman_build(flat);
    // Symbols 0,1 merge first, then 2,3, then the two merged nodes.
    CHECK(t.codewords[0].to_string() == "00");
    CHECK(t.codewords[1].to_string() == "01");
    CHECK(t.codewords[2].to_string() == "10");
    CHECK(t.codewords[3].to_string() == "11");
    const auto again = huffman_build(flat);
    CHECK(again.codewords == t.codewords);

    // Weight 0.2 merge (0+1) ties with symbol 2 and must come after it.
    const std::vector<double> tie{0.1, 0.1, 0.2, 0.6};
    const auto u = huffman_build(tie);
    CHECK(u.codewords[2].to_string() == "00");
    CHECK(u.codewords[0].to_string() == "010");
    CHECK(u.codewords[1].to_string() == "011");
    CHECK(u.codewords[3].to_string() == "1");
}

TEST_CASE("huffman beats the weight code on S") {
    for (std::uint64_t n = 1; n <= 256; n += (n < 32 ? 1 : 15)) {
        for (double p : {0.01, 0.1, 0.3, 0.5, 0.8}) {
            const auto pmf = binomial_pmf(n, p);
            bool nonzero2 = false;
            int count = 0;
            for (double w : pmf) count += w > 0;
            nonzero2 = count >= 2;
            if (!nonzero2) continue;
            const auto t = huffman_build(pmf);
            const auto prm = derive_params(n, p);
            double main = 0;
            for (std::uint64_t k = 0; k <= n; ++k) main += pmf[k] * count_code_length(k, prm);
            CHECK(t.mean_length() <= main + 1e-9);
        }
    }
}

TEST_CASE("shannon fano elias") {
    const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
    const auto u = sfe_build(uniform);
    for (const auto& c : u.codewords) CHECK(c.size() == 3);
    CHECK(u.codewords[0].to_string() == "001");
    CHECK(u.codewords[3].to_string() == "111");
    check_table(u);

    for (std::uint64_t n : {3u, 10u, 40u}) {
        for (double p : {0.05, 0.3, 0.5}) {
            const auto pmf = binomial_pmf(n, p);
            const auto t = sfe_build(pmf);
            check_table(t);
            CHECK(t.mean_length() < distribution_entropy(pmf) + 2);
        }
    }
    CHECK_THROWS_AS(sfe_build(std::vector<double>{1.0}), Error);
}

TEST_CASE("audits") {
    const double h8 = 8 * bernoulli_entropy(0.2);
    const auto huff = exhaustive_code_audit(8, 0.2, AuditCoder::HuffmanFull);
    CHECK(h8 == Approx(5.7754).epsilon(1e-4));
    CHECK(huff.entropy == Approx(h8).epsilon(1e-12));
    CHECK(huff.mean_length >= h8 - 1e-9);
    CHECK(huff.mean_length < h8 + 1);
    CHECK(huff.prefix_free);

    const auto bz = exhaustive_code_audit(8, 0.2, AuditCoder::BernoulliZip);
    CHECK(bz.mean_length >= huff.mean_length);
    CHECK(bz.roundtrip);

    const auto half = exhaustive_code_audit(12, 0.5, AuditCoder::BernoulliZip);
    CHECK(half.prefix_free);
    CHECK(half.kraft_sum <= 1.0);

    const auto sfe = exhaustive_code_audit(8, 0.3, AuditCoder::SfeFull);
    CHECK(sfe.mean_length >= sfe.entropy);
    CHECK(sfe.mean_length < sfe.entropy + 2);
    CHECK(sfe.prefix_free);

    try {
        exhaustive_code_audit(17, 0.5, AuditCoder::HuffmanFull);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("bernoullizip audit matches the analytic mean") {
    for (std::uint64_t n : {1u, 5u, 10u, 16u}) {
        for (double p : {0.1, 0.5, 0.9}) {
            const auto a = exhaustive_code_audit(n, p, AuditCoder::BernoulliZip);
            CHECK(std::abs(a.mean_length - exact_mean_length(n, p)) <= 1e-9 * a.mean_length);
            CHECK(a.max_length >= 1);
        }
    }
}

TEST_CASE("huffman count variant") {
    const double v = huffman_count_variant_mean(50, 0.1);
    CHECK(v <= exact_mean_length(50, 0.1));
    CHECK(v >= sequence_entropy(50, 0.1));

    // Enumeration: Huffman code over the weight, then the rank field.
    const auto pmf = binomial_pmf(10, 0.2);
    const auto t = huffman_build(pmf);
    double brute = 0;
    for (std::uint64_t x = 0; x < 1024; ++x) {
        const BitSequence s = oracle::from_index(x, 10);
        const std::uint64_t k = s.popcount();
        const double prob = std::pow(0.2, k) * std::pow(0.8, 10 - k);
        brute += prob * static_cast<double>(t.codewords[k].size() + rank_bit_width(10, k));
    }
    CHECK(huffman_count_variant_mean(10, 0.2) == Approx(brute).epsilon(1e-12));

    for (std::uint64_t n = 2; n <= 256; n += 18) {
        for (double p : {0.05, 0.2, 0.5}) CHECK(huffman_count_variant_mean(n, p) <= exact_mean_length(n, p) + 1e-9);
    }
}
