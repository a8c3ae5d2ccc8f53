#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bzc/bit_sequence.hpp"
#include "bzc/codec.hpp"

namespace bzc {

// Simple undirected graph on vertices 1..v. Edges are stored with i < j.
struct GraphSpec {
    std::uint64_t v = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
};

std::uint64_t pair_count(std::uint64_t v);

// Sorts each pair as (min, max) and the list in row-major order. Throws
// InvalidGraph on loops, duplicates or vertices outside 1..v.
GraphSpec canonical(GraphSpec g);

// Row-major strict upper triangle: (1,2), (1,3), ..., (1,v), (2,3), ..., (v-1,v).
BitSequence graph_to_bits(const GraphSpec& g);
GraphSpec bits_to_graph(const BitSequence& bits, std::uint64_t v);

std::vector<std::uint8_t> encode_graph(const GraphSpec& g, double p, Method method,
                                       std::uint64_t block_len = 0, unsigned threads = 1);
GraphSpec decode_graph(std::span<const std::uint8_t> bytes);

// Edge-list text: first line "v <count>", then one "i j" pair per line.
GraphSpec read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const GraphSpec& g);

}  // namespace bzc
