#include "bzc/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "bzc/error.hpp"

namespace bzc {

namespace {

// Index of pair (i, j), 1 <= i < j <= v, in row-major order.
std::uint64_t pair_index(std::uint64_t v, std::uint64_t i, std::uint64_t j) {
    const std::uint64_t r = i - 1;
    return r * v - r * (r + 1) / 2 + (j - i - 1);
}

void check_vertex_count(std::uint64_t v) {
    if (v < 2) throw Error(ErrorCode::InvalidGraph, "need at least 2 vertices");
    if (v > (std::uint64_t{1} << 32)) throw Error(ErrorCode::TooLarge, "too many vertices");
}

}  // namespace

std::uint64_t pair_count(std::uint64_t v) {
    return v < 2 ? 0 : v * (v - 1) / 2;
}

GraphSpec canonical(GraphSpec g) {
    check_vertex_count(g.v);
    for (auto& [i, j] : g.edges) {
        if (i == j) throw Error(ErrorCode::InvalidGraph, "self-loop at " + std::to_string(i));
        if (i < 1 || j < 1 || i > g.v || j > g.v) {
            throw Error(ErrorCode::InvalidGraph,
                        "edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." + std::to_string(g.v));
        }
        if (i > j) std::swap(i, j);
    }
    std::sort(g.edges.begin(), g.edges.end());
    if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end()) {
        throw Error(ErrorCode::InvalidGraph, "duplicate edge");
    }
    return g;
}

BitSequence graph_to_bits(const GraphSpec& g) {
    const GraphSpec c = canonical(g);
    BitSequence bits(pair_count(c.v));
    for (const auto& [i, j] : c.edges) bits.set(pair_index(c.v, i, j), true);
    return bits;
}

GraphSpec bits_to_graph(const BitSequence& bits, std::uint64_t v) {
    check_vertex_count(v);
    if (bits.size() != pair_count(v)) {
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(bits.size()) + " bits for v=" + std::to_string(v) + " (need " +
                        std::to_string(pair_count(v)) + ")");
    }
    GraphSpec g{v, {}};
    std::uint64_t idx = 0;
    for (std::uint64_t i = 1; i < v; ++i) {
        for (std::uint64_t j = i + 1; j <= v; ++j, ++idx) {
            if (bits[idx]) g.edges.emplace_back(i, j);
        }
    }
    return g;
}

std::vector<std::uint8_t> encode_graph(const GraphSpec& g, double p, Method method,
                                       std::uint64_t block_len, unsigned threads) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::BadProbability, "p must lie strictly between 0 and 1");
    if (method == Method::Block && (block_len == 0 || block_len > UINT32_MAX)) {
        throw Error(ErrorCode::InvalidModel, "block length must be in [1, 2^32)");
    }
    ContainerHeader h;
    h.mode = method == Method::Block ? ContainerMode::GraphBlock : ContainerMode::GraphDirect;
    h.n_or_v = g.v;
    h.p = p;
    h.block_len = method == Method::Block ? static_cast<std::uint32_t>(block_len) : 0;
    return detail::build_container(graph_to_bits(g), h, threads);
}

GraphSpec decode_graph(std::span<const std::uint8_t> bytes) {
    const Decompressed d = decompress_file(bytes);
    if (!is_graph_mode(d.header.mode)) throw Error(ErrorCode::BadMode, "container does not hold a graph");
    return bits_to_graph(d.bits, d.header.n_or_v);
}

GraphSpec read_edge_list(std::istream& in) {
    std::string line;
    GraphSpec g;
    bool have_header = false;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        const auto fail = [&] { throw Error(ErrorCode::ParseError, "edge list line " + std::to_string(line_no)); };
        if (!have_header) {
            if (first != "v" || !(ls >> g.v)) fail();
            have_header = true;
        } else {
            std::uint64_t i = 0, j = 0;
            try {
                std::size_t used = 0;
                i = std::stoull(first, &used);
                if (used != first.size()) fail();
            } catch (const std::logic_error&) {
                fail();
            }
            if (!(ls >> j)) fail();
            g.edges.emplace_back(i, j);
        }
        std::string rest;
        if (ls >> rest) fail();
    }
    if (!have_header) throw Error(ErrorCode::ParseError, "missing \"v <count>\" line");
    return canonical(std::move(g));
}

void write_edge_list(std::ostream& out, const GraphSpec& g) {
    out << "v " << g.v << '\n';
    for (const auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

}  // namespace bzc
