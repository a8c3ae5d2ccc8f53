#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bzc/bit_sequence.hpp"

namespace bzc {

// Packs bits MSB-first into bytes. The last byte is zero-padded by finish().
class BitWriter {
public:
    void put(bool bit);
    void write(const BitSequence& bits);
    // Low `width` bits of value, most significant first. width <= 64.
    void write_uint(std::uint64_t value, unsigned width);

    [[nodiscard]] std::uint64_t bit_count() const noexcept { return bit_count_; }

    // Flushes the partial byte and returns the packed buffer.
    [[nodiscard]] std::vector<std::uint8_t> finish();

private:
    std::vector<std::uint8_t> bytes_;
    std::uint8_t acc_ = 0;
    unsigned used_ = 0;
    std::uint64_t bit_count_ = 0;
};

// Reads MSB-first bits from a borrowed buffer, never past `bit_count`.
class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_count);
    explicit BitReader(std::span<const std::uint8_t> bytes) : BitReader(bytes, bytes.size() * 8) {}

    bool get();
    BitSequence read(std::uint64_t count);
    std::uint64_t read_uint(unsigned width);

    [[nodiscard]] std::uint64_t position() const noexcept { return pos_; }
    [[nodiscard]] std::uint64_t remaining() const noexcept { return limit_ - pos_; }

private:
    void require(std::uint64_t count) const;

    std::span<const std::uint8_t> bytes_;
    std::uint64_t limit_;
    std::uint64_t pos_ = 0;
};

// Packs a whole BitSequence (convenience for tests and the codec).
std::vector<std::uint8_t> pack_bits(const BitSequence& bits);
BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::uint64_t bit_count);

enum class ContainerMode : std::uint8_t {
    SequenceDirect = 0,
    SequenceBlock = 1,
    GraphDirect = 2,
    GraphBlock = 3,
};

[[nodiscard]] constexpr bool is_block_mode(ContainerMode m) noexcept {
    return m == ContainerMode::SequenceBlock || m == ContainerMode::GraphBlock;
}
[[nodiscard]] constexpr bool is_graph_mode(ContainerMode m) noexcept {
    return m == ContainerMode::GraphDirect || m == ContainerMode::GraphBlock;
}

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'B', 'Z', 'C', '1'};
inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kHeaderSize = 34;

struct ContainerHeader {
    ContainerMode mode = ContainerMode::SequenceDirect;
    std::uint64_t n_or_v = 0;
    double p = 0.5;
    std::uint32_t block_len = 0;
    std::uint64_t payload_bit_count = 0;

    friend bool operator==(const ContainerHeader&, const ContainerHeader&) = default;
};

// Throws BadMode / BadProbability / InvalidModel when the header is not writable.
void validate_header(const ContainerHeader& h);

std::array<std::uint8_t, kHeaderSize> write_header(const ContainerHeader& h);
ContainerHeader read_header(std::span<const std::uint8_t> bytes);

}  // namespace bzc
