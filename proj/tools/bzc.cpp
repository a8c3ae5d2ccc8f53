#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "bzc/codec.hpp"
#include "bzc/error.hpp"
#include "bzc/experiment.hpp"
#include "bzc/graph.hpp"

namespace {

constexpr int kExitData = 2;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bzc::Error(bzc::ErrorCode::IoError, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size()))) {
        throw bzc::Error(bzc::ErrorCode::IoError, "cannot write " + path);
    }
}

bzc::BitSequence parse_bits(const std::vector<std::uint8_t>& raw) {
    std::string text(raw.begin(), raw.end());
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.pop_back();
    return bzc::BitSequence::from_string(text);
}

struct CompressArgs {
    std::string input, output, mode = "direct", format = "bits";
    double p = 0;
    std::uint64_t block_len = 0;
};

int cmd_compress(const CompressArgs& a) {
    const bool block = a.mode == "block";
    if (block && a.block_len == 0) throw CLI::ValidationError("--block-len", "required with --mode block");
    if (!block && a.block_len != 0) throw CLI::ValidationError("--block-len", "only valid with --mode block");
    const auto method = block ? bzc::Method::Block : bzc::Method::Direct;
    const auto raw = read_file(a.input);
    const unsigned threads = bzc::default_threads();
    std::vector<std::uint8_t> container;
    std::uint64_t original = 0;
    if (a.format == "edgelist") {
        std::istringstream in(std::string(raw.begin(), raw.end()));
        const bzc::GraphSpec g = bzc::read_edge_list(in);
        original = bzc::pair_count(g.v);
        container = bzc::encode_graph(g, a.p, method, a.block_len, threads);
    } else {
        const bzc::BitSequence x = parse_bits(raw);
        original = x.size();
        container = bzc::compress_file(x, a.p, method, a.block_len, threads);
    }
    write_file(a.output, std::string(container.begin(), container.end()));
    const bzc::ContainerHeader h = bzc::read_header(container);
    std::printf("original bits: %llu\n", static_cast<unsigned long long>(original));
    std::printf("compressed bits: %llu\n", static_cast<unsigned long long>(h.payload_bit_count));
    std::printf("file bits: %llu\n", static_cast<unsigned long long>(container.size() * 8));
    std::printf("ratio: %.6f\n", static_cast<double>(h.payload_bit_count) / static_cast<double>(original));
    return 0;
}

int cmd_decompress(const std::string& input, const std::string& output) {
    const auto raw = read_file(input);
    const bzc::Decompressed d = bzc::decompress_file(raw);
    std::ostringstream out;
    if (bzc::is_graph_mode(d.header.mode)) {
        bzc::write_edge_list(out, bzc::bits_to_graph(d.bits, d.header.n_or_v));
    } else {
        out << d.bits.to_string() << '\n';
    }
    write_file(output, out.str());
    return 0;
}

struct ExperimentArgs {
    std::string kind, output, model = "bernoulli";
    std::uint64_t n = 0, block_len = 0, samples = 10000, seed = 1;
    double p = 0;
    unsigned threads = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
    std::vector<bzc::ModelSpec> models;
    if (a.kind == "single") {
        if (a.n == 0 || !(a.p > 0 && a.p < 1)) throw CLI::ValidationError("single", "needs --n >= 1 and --p in (0,1)");
        models.push_back({a.model == "graph" ? bzc::ModelKind::Graph : bzc::ModelKind::Bernoulli, a.n, a.p, a.block_len});
    } else {
        models = bzc::preset_models(*bzc::parse_experiment_kind(a.kind));
    }
    const unsigned threads = a.threads > 0 ? a.threads : bzc::default_threads();
    std::ostringstream csv;
    bzc::write_csv_header(csv);
    for (const auto& m : models) bzc::write_csv_row(csv, bzc::run_model(m, a.samples, a.seed, threads));
    if (a.output.empty() || a.output == "-") {
        std::cout << csv.str();
    } else {
        write_file(a.output, csv.str());
    }
    return 0;
}

struct BenchArgs {
    std::vector<std::uint64_t> ns{100000, 200000, 400000, 800000, 1600000};
    double p = 0.1;
    unsigned reps = 3;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& a) {
    const auto results = bzc::bench(a.ns, a.p, a.reps, a.seed);
    if (results.empty()) return 0;
    std::printf("n,seconds,code_bits,ratio_to_previous\n");
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        std::printf("%llu,%.6f,%llu,", static_cast<unsigned long long>(r.n), r.seconds,
                    static_cast<unsigned long long>(r.code_bits));
        if (i > 0) {
            std::printf("%.3f\n", r.seconds / results[i - 1].seconds);
        } else {
            std::printf("\n");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-stage prefix coder for Bernoulli sequences and G(v,p) graphs"};
    app.require_subcommand(1);

    CompressArgs ca;
    auto* compress = app.add_subcommand("compress", "Compress a 0/1 text file or an edge list");
    compress->add_option("input", ca.input, "Input file")->required()->check(CLI::ExistingFile);
    compress->add_option("--p", ca.p, "Success probability in (0,1)")->required();
    compress->add_option("--mode", ca.mode, "direct or block")->check(CLI::IsMember({"direct", "block"}));
    compress->add_option("--block-len", ca.block_len, "Block length for --mode block");
    compress->add_option("--format", ca.format, "bits or edgelist")->check(CLI::IsMember({"bits", "edgelist"}));
    compress->add_option("-o,--output", ca.output, "Container path")->required();

    std::string din, dout;
    auto* decompress = app.add_subcommand("decompress", "Restore the original bits or edge list");
    decompress->add_option("input", din, "Container file")->required()->check(CLI::ExistingFile);
    decompress->add_option("-o,--output", dout, "Output path")->required();

    ExperimentArgs ea;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo runs of the presets, CSV output");
    experiment->add_option("--kind", ea.kind, "table1, table2, sweep-p, sweep-n or single")
        ->required()
        ->check(CLI::IsMember({"table1", "table2", "sweep-p", "sweep-n", "single"}));
    experiment->add_option("--model", ea.model, "bernoulli or graph (single only)")
        ->check(CLI::IsMember({"bernoulli", "graph"}));
    experiment->add_option("--n,--v", ea.n, "Length, or vertex count for graphs (single only)");
    experiment->add_option("--p", ea.p, "Success probability (single only)");
    experiment->add_option("--block-len", ea.block_len, "Block length, 0 for direct (single only)");
    experiment->add_option("--samples", ea.samples, "Instances per model")->check(CLI::PositiveNumber);
    experiment->add_option("--seed", ea.seed, "64-bit seed");
    experiment->add_option("--threads", ea.threads, "Worker count (default: BZC_THREADS or all cores)");
    experiment->add_option("-o,--output", ea.output, "CSV path, - for stdout");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Time encode+decode per length");
    bench->add_option("--n", ba.ns, "Sequence lengths")->delimiter(',');
    bench->add_option("--p", ba.p, "Success probability")->check(CLI::Range(0.0, 1.0));
    bench->add_option("--reps", ba.reps, "Repetitions per length (best time reported)");
    bench->add_option("--seed", ba.seed, "64-bit seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*compress) return cmd_compress(ca);
        if (*decompress) return cmd_decompress(din, dout);
        if (*experiment) return cmd_experiment(ea);
        if (*bench) return cmd_bench(ba);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const bzc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 1;
}
