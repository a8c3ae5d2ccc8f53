#include "bzc/baselines.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <string>

#include "bzc/analysis.hpp"
#include "bzc/codec.hpp"
#include "bzc/error.hpp"

namespace bzc {

namespace {

struct Nonzero {
    std::vector<std::uint64_t> symbols;
    std::vector<double> probabilities;
};

Nonzero nonzero(std::span<const double> probabilities) {
    Nonzero out;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const double w = probabilities[i];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw Error(ErrorCode::DegenerateDistribution, "probability " + std::to_string(i) + " is not a finite non-negative number");
        }
        if (w > 0.0) {
            out.symbols.push_back(i);
            out.probabilities.push_back(w);
        }
    }
    if (out.symbols.size() < 2) {
        throw Error(ErrorCode::DegenerateDistribution, "need at least two symbols of nonzero probability");
    }
    return out;
}

// Element 0 of the sequence is the most significant bit of v.
BitSequence index_sequence(std::uint64_t v, std::uint64_t n) {
    BitSequence x(n);
    for (std::uint64_t i = 0; i < n; ++i) x.set(i, ((v >> (n - 1 - i)) & 1u) != 0);
    return x;
}

std::vector<double> sequence_probabilities(std::uint64_t n, double p) {
    const double lp = std::log(p), lq = std::log1p(-p);
    std::vector<double> out(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < out.size(); ++v) {
        const auto k = static_cast<double>(std::popcount(v));
        out[v] = std::exp(k * lp + (static_cast<double>(n) - k) * lq);
    }
    return out;
}

}  // namespace

double CodeTable::mean_length() const {
    double sum = 0, total = 0;
    for (std::size_t i = 0; i < codewords.size(); ++i) {
        sum += probabilities[i] * static_cast<double>(codewords[i].size());
        total += probabilities[i];
    }
    return sum / total;
}

double CodeTable::kraft_sum() const {
    return bzc::kraft_sum(codewords);
}

std::uint64_t CodeTable::max_length() const {
    std::uint64_t m = 0;
    for (const auto& c : codewords) m = std::max<std::uint64_t>(m, c.size());
    return m;
}

bool is_prefix_free(std::span<const BitSequence> codewords) {
    std::vector<std::string> words;
    words.reserve(codewords.size());
    for (const auto& c : codewords) words.push_back(c.to_string());
    std::sort(words.begin(), words.end());
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].starts_with(words[i - 1])) return false;
    }
    return true;
}

double kraft_sum(std::span<const BitSequence> codewords) {
    // Summing shortest-first keeps every partial sum exact in binary64.
    std::vector<std::size_t> lens;
    lens.reserve(codewords.size());
    for (const auto& c : codewords) lens.push_back(c.size());
    std::sort(lens.begin(), lens.end());
    double sum = 0;
    for (std::size_t len : lens) sum += std::ldexp(1.0, -static_cast<int>(len));
    return sum;
}

CodeTable huffman_build(std::span<const double> probabilities) {
    const Nonzero nz = nonzero(probabilities);
    const std::size_t m = nz.symbols.size();
    struct Node {
        double weight;
        std::uint64_t order;
        std::size_t left, right;
    };
    constexpr std::size_t kLeaf = SIZE_MAX;
    std::vector<Node> nodes;
    nodes.reserve(2 * m);
    using Entry = std::pair<double, std::uint64_t>;  // weight, order
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t i = 0; i < m; ++i) {
        nodes.push_back({nz.probabilities[i], i, kLeaf, kLeaf});
        heap.emplace(nz.probabilities[i], i);
    }
    // Orders of merged nodes grow from m, so they sort after every equal-weight leaf
    // and after earlier merges of the same weight.
    std::uint64_t next_order = m;
    while (heap.size() > 1) {
        const auto [wa, a] = heap.top();
        heap.pop();
        const auto [wb, b] = heap.top();
        heap.pop();
        nodes.push_back({wa + wb, next_order, a, b});
        heap.emplace(wa + wb, next_order);
        ++next_order;
    }
    CodeTable t;
    t.symbols = nz.symbols;
    t.probabilities = nz.probabilities;
    t.codewords.resize(m);
    // Node index equals its order.
    std::vector<std::pair<std::size_t, BitSequence>> stack{{nodes.size() - 1, BitSequence{}}};
    while (!stack.empty()) {
        auto [id, prefix] = std::move(stack.back());
        stack.pop_back();
        const Node& node = nodes[id];
        if (node.left == kLeaf) {
            t.codewords[id] = std::move(prefix);
            continue;
        }
        BitSequence one = prefix;
        one.push_back(true);
        prefix.push_back(false);
        stack.emplace_back(node.right, std::move(one));
        stack.emplace_back(node.left, std::move(prefix));
    }
    return t;
}

CodeTable sfe_build(std::span<const double> probabilities) {
    const Nonzero nz = nonzero(probabilities);
    const std::size_t m = nz.symbols.size();
    std::vector<mpq_class> w(m);
    mpq_class total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        w[i] = mpq_class(nz.probabilities[i]);
        total += w[i];
    }
    CodeTable t;
    t.symbols = nz.symbols;
    t.probabilities = nz.probabilities;
    t.codewords.resize(m);
    mpq_class cum = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const mpq_class ps = w[i] / total;
        const mpq_class mid = cum + ps / 2;
        cum += ps;
        // Smallest L with ps * 2^L >= 1.
        std::uint64_t l = 0;
        mpq_class scaled = ps;
        while (scaled < 1) {
            scaled *= 2;
            ++l;
        }
        const std::uint64_t len = l + 1;
        mpz_class bits;
        mpz_class num = mid.get_num();
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), len);
        mpz_fdiv_q(bits.get_mpz_t(), num.get_mpz_t(), mid.get_den_mpz_t());
        BitSequence code(len);
        for (std::uint64_t b = 0; b < len; ++b) code.set(b, mpz_tstbit(bits.get_mpz_t(), len - 1 - b) != 0);
        t.codewords[i] = std::move(code);
    }
    return t;
}

double distribution_entropy(std::span<const double> probabilities) {
    double h = 0;
    for (double w : probabilities) {
        if (w > 0) h -= w * std::log2(w);
    }
    return h;
}

const char* to_string(AuditCoder c) noexcept {
    switch (c) {
        case AuditCoder::BernoulliZip: return "bernoullizip";
        case AuditCoder::HuffmanFull: return "huffman-full";
        case AuditCoder::SfeFull: return "sfe-full";
    }
    return "unknown";
}

AuditReport exhaustive_code_audit(std::uint64_t n, double p, AuditCoder coder) {
    if (n > kAuditMaxN) throw Error(ErrorCode::TooLarge, "exhaustive audit supports n <= " + std::to_string(kAuditMaxN));
    validate_model(BernoulliModel{n, p});
    const std::vector<double> probs = sequence_probabilities(n, p);
    AuditReport r;
    r.n = n;
    r.p = p;
    r.coder = coder;
    r.entropy = distribution_entropy(probs);
    std::vector<BitSequence> codewords;
    if (coder == AuditCoder::BernoulliZip) {
        codewords.reserve(probs.size());
        const BernoulliModel model{n, p};
        for (std::uint64_t v = 0; v < probs.size(); ++v) {
            const BitSequence x = index_sequence(v, n);
            BitSequence code = encode_sequence(x, model);
            const auto packed = pack_bits(code);
            BitReader in(packed, code.size());
            if (decode_sequence(in, model) != x || in.remaining() != 0) r.roundtrip = false;
            r.mean_length += probs[v] * static_cast<double>(code.size());
            codewords.push_back(std::move(code));
        }
    } else {
        CodeTable t = coder == AuditCoder::HuffmanFull ? huffman_build(probs) : sfe_build(probs);
        r.mean_length = t.mean_length();
        codewords = std::move(t.codewords);
    }
    r.kraft_sum = kraft_sum(codewords);
    r.prefix_free = is_prefix_free(codewords);
    for (const auto& c : codewords) r.max_length = std::max<std::uint64_t>(r.max_length, c.size());
    return r;
}

double huffman_count_variant_mean(std::uint64_t n, double p) {
    validate_model(BernoulliModel{n, p});
    const std::vector<double> pmf = binomial_pmf(n, p);
    const std::vector<std::uint64_t> widths = rank_widths(n);
    const CodeTable t = huffman_build(pmf);
    double sum = 0;
    for (std::size_t i = 0; i < t.symbols.size(); ++i) {
        const std::uint64_t k = t.symbols[i];
        sum += pmf[k] * static_cast<double>(t.codewords[i].size() + widths[k]);
    }
    return sum;
}

}  // namespace bzc
