#include "bzc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "bzc/bitio.hpp"
#include "bzc/codec.hpp"
#include "bzc/error.hpp"
#include "bzc/graph.hpp"

namespace bzc {

Prng substream(std::uint64_t seed, std::uint64_t index) {
    return Prng(seed ^ index);
}

double next_uniform(Prng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BitSequence draw_instance(std::uint64_t n, double p, Prng& rng) {
    BitSequence x(n);
    for (std::uint64_t i = 0; i < n; ++i) x.set(i, next_uniform(rng) < p);
    return x;
}

std::uint64_t ModelSpec::length() const {
    return kind == ModelKind::Graph ? pair_count(n_or_v) : n_or_v;
}

std::string ModelSpec::label() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%c(%llu,%g)", kind == ModelKind::Graph ? 'G' : 'B',
                  static_cast<unsigned long long>(n_or_v), p);
    return buf;
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
    if (name == "table1") return ExperimentKind::Table1;
    if (name == "table2") return ExperimentKind::Table2;
    if (name == "sweep-p") return ExperimentKind::SweepP;
    if (name == "sweep-n") return ExperimentKind::SweepN;
    return std::nullopt;
}

std::vector<ModelSpec> preset_models(ExperimentKind kind) {
    using K = ModelKind;
    switch (kind) {
        case ExperimentKind::Table1:
            return {{K::Bernoulli, 50, 0.1, 0}, {K::Bernoulli, 50, 0.01, 0}, {K::Bernoulli, 20, 0.2, 0},
                    {K::Graph, 5, 0.1, 0},      {K::Graph, 8, 0.2, 0},       {K::Graph, 10, 0.1, 0}};
        case ExperimentKind::Table2:
            return {{K::Bernoulli, 200, 0.2, 5}, {K::Bernoulli, 1000, 0.01, 50}, {K::Graph, 20, 0.05, 10},
                    {K::Graph, 100, 0.01, 25}};
        case ExperimentKind::SweepP: {
            std::vector<ModelSpec> out;
            for (int i = 1; i <= 50; ++i) out.push_back({K::Bernoulli, 50, i / 100.0, 0});
            return out;
        }
        case ExperimentKind::SweepN: {
            std::vector<ModelSpec> out;
            for (std::uint64_t n : {10, 50, 100, 500, 1000, 5000}) out.push_back({K::Bernoulli, n, 0.1, 0});
            return out;
        }
    }
    return {};
}

double model_exact_mean(const ModelSpec& m, WidthMode mode) {
    const std::uint64_t len = m.length();
    return m.block_len == 0 ? exact_mean_length(len, m.p, mode)
                            : exact_block_mean_length(len, m.p, m.block_len, mode);
}

ExperimentRow run_model(const ModelSpec& m, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    if (samples == 0) throw Error(ErrorCode::InvalidModel, "samples must be at least 1");
    validate_model(BernoulliModel{m.length(), m.p});
    ExperimentRow row;
    row.model = m;
    row.entropy_bits = sequence_entropy(m.length(), m.p);
    row.exact_mean = model_exact_mean(m);
    row.samples = samples;
    row.seed = seed;

    std::vector<std::uint64_t> lengths(samples);
    const auto work = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t i = first; i < samples; i += stride) {
            Prng rng = substream(seed, i);
            const BitSequence x = draw_instance(m.length(), m.p, rng);
            BitWriter w;
            if (m.block_len == 0) {
                encode_sequence(w, x, BernoulliModel{x.size(), m.p});
            } else {
                encode_blocks(w, x, m.p, m.block_len);
            }
            lengths[i] = w.bit_count();
        }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), samples));
    if (workers == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
    }

    double sum = 0;
    for (std::uint64_t len : lengths) sum += static_cast<double>(len);
    row.mc_mean = sum / static_cast<double>(samples);
    double ss = 0;
    for (std::uint64_t len : lengths) {
        const double dev = static_cast<double>(len) - row.mc_mean;
        ss += dev * dev;
    }
    row.mc_std = samples > 1 ? std::sqrt(ss / static_cast<double>(samples - 1)) : 0.0;
    return row;
}

void write_csv_header(std::ostream& out) {
    out << kCsvHeader << '\n';
}

void write_csv_row(std::ostream& out, const ExperimentRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%llu,%.10g,%llu,%.4f,%.4f,%.4f,%.4f,%llu,%llu,%s",
                  r.model.kind == ModelKind::Graph ? "graph" : "bernoulli",
                  static_cast<unsigned long long>(r.model.n_or_v), r.model.p,
                  static_cast<unsigned long long>(r.model.block_len), r.entropy_bits, r.exact_mean, r.mc_mean,
                  r.mc_std, static_cast<unsigned long long>(r.samples), static_cast<unsigned long long>(r.seed),
                  to_string(r.width_mode));
    out << buf << '\n';
}

std::vector<BenchResult> bench(const std::vector<std::uint64_t>& ns, double p, unsigned repetitions,
                               std::uint64_t seed) {
    std::vector<BenchResult> out;
    if (repetitions == 0) return out;
    for (std::size_t idx = 0; idx < ns.size(); ++idx) {
        Prng rng = substream(seed, idx);
        const BitSequence x = draw_instance(ns[idx], p, rng);
        const BernoulliModel model{ns[idx], p};
        BenchResult r;
        r.n = ns[idx];
        r.seconds = INFINITY;
        for (unsigned rep = 0; rep < repetitions; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            BitWriter w;
            encode_sequence(w, x, model);
            const std::uint64_t bits = w.bit_count();
            const std::vector<std::uint8_t> bytes = w.finish();
            BitReader in(bytes, bits);
            const BitSequence y = decode_sequence(in, model);
            const auto t1 = std::chrono::steady_clock::now();
            if (y != x) throw Error(ErrorCode::LengthMismatch, "benchmark roundtrip failed");
            r.code_bits = bits;
            r.seconds = std::min(r.seconds, std::chrono::duration<double>(t1 - t0).count());
        }
        out.push_back(r);
    }
    return out;
}

unsigned default_threads() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BZC_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, hw));
    }
    return hw;
}

}  // namespace bzc
