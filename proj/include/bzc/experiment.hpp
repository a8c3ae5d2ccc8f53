#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bzc/analysis.hpp"
#include "bzc/bit_sequence.hpp"

namespace bzc {

// The experiment generator: std::mt19937_64. Instance i of a run with seed s
// draws from a generator seeded with s XOR i.
using Prng = std::mt19937_64;

Prng substream(std::uint64_t seed, std::uint64_t index);

// Uniform in [0,1) from the top 53 bits of one draw.
double next_uniform(Prng& rng);

// Bit i is 1 iff the i-th uniform draw is below p.
BitSequence draw_instance(std::uint64_t n, double p, Prng& rng);

enum class ModelKind { Bernoulli, Graph };

struct ModelSpec {
    ModelKind kind = ModelKind::Bernoulli;
    std::uint64_t n_or_v = 1;
    double p = 0.5;
    std::uint64_t block_len = 0;  // 0 selects the direct method

    // Bits in one instance: n, or C(v,2) for graphs.
    [[nodiscard]] std::uint64_t length() const;
    // "B(50,0.1)" or "G(5,0.1)".
    [[nodiscard]] std::string label() const;
};

enum class ExperimentKind { Table1, Table2, SweepP, SweepN };

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);
std::vector<ModelSpec> preset_models(ExperimentKind kind);

struct ExperimentRow {
    ModelSpec model;
    double entropy_bits = 0;
    double exact_mean = 0;
    double mc_mean = 0;
    double mc_std = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    WidthMode width_mode = WidthMode::Capacity;
};

// Exact mean under the codec's block layout (direct when block_len is 0).
double model_exact_mean(const ModelSpec& m, WidthMode mode = WidthMode::Capacity);

// Draws `samples` instances, compresses each and summarizes the code lengths.
// Results do not depend on `threads`.
ExperimentRow run_model(const ModelSpec& m, std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

inline constexpr const char* kCsvHeader =
    "model,n,p,block_len,entropy_bits,exact_mean,mc_mean,mc_std,samples,seed,width_mode";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentRow& row);

struct BenchResult {
    std::uint64_t n = 0;
    double seconds = 0;  // best encode+decode wall time over the repetitions
    std::uint64_t code_bits = 0;
};

// Empty when repetitions is 0.
std::vector<BenchResult> bench(const std::vector<std::uint64_t>& ns, double p, unsigned repetitions,
                               std::uint64_t seed);

// BZC_THREADS if set and positive, else the hardware concurrency.
unsigned default_threads();

}  // namespace bzc
