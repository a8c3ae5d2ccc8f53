#include "bzc/bitio.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bzc/error.hpp"

namespace bzc {

void BitWriter::put(bool bit) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (bit ? 1 : 0));
    ++bit_count_;
    if (++used_ == 8) {
        bytes_.push_back(acc_);
        acc_ = 0;
        used_ = 0;
    }
}

void BitWriter::write(const BitSequence& bits) {
    for (std::uint8_t b : bits.raw()) put(b != 0);
}

void BitWriter::write_uint(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) put(((value >> i) & 1u) != 0);
}

std::vector<std::uint8_t> BitWriter::finish() {
    if (used_ > 0) {
        bytes_.push_back(static_cast<std::uint8_t>(acc_ << (8 - used_)));
        acc_ = 0;
        used_ = 0;
    }
    return std::move(bytes_);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_count)
    : bytes_(bytes), limit_(bit_count) {
    if (bit_count > bytes.size() * 8) {
        throw Error(ErrorCode::PayloadExhausted, "declared bit count exceeds buffer");
    }
}

void BitReader::require(std::uint64_t count) const {
    if (count > limit_ - pos_) {
        throw Error(ErrorCode::PayloadExhausted,
                    "need " + std::to_string(count) + " bits, " + std::to_string(limit_ - pos_) + " left");
    }
}

bool BitReader::get() {
    require(1);
    const std::uint64_t p = pos_++;
    return ((bytes_[p >> 3] >> (7 - (p & 7))) & 1u) != 0;
}

BitSequence BitReader::read(std::uint64_t count) {
    require(count);
    BitSequence out(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t p = pos_ + i;
        out.set(i, ((bytes_[p >> 3] >> (7 - (p & 7))) & 1u) != 0);
    }
    pos_ += count;
    return out;
}

std::uint64_t BitReader::read_uint(unsigned width) {
    require(width);
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (get() ? 1u : 0u);
    return v;
}

std::vector<std::uint8_t> pack_bits(const BitSequence& bits) {
    BitWriter w;
    w.write(bits);
    return w.finish();
}

BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::uint64_t bit_count) {
    BitReader r(bytes, bit_count);
    return r.read(bit_count);
}

namespace {

template <typename T>
void put_le(std::uint8_t* out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

template <typename T>
T get_le(const std::uint8_t* in) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(in[i]) << (8 * i);
    return v;
}

void check_probability(double p) {
    if (!std::isfinite(p) || !(p > 0.0) || !(p < 1.0)) {
        throw Error(ErrorCode::BadProbability, "p must lie strictly between 0 and 1");
    }
}

void check_mode(std::uint8_t mode, std::uint32_t block_len) {
    if (mode > 3) throw Error(ErrorCode::BadMode, "mode byte " + std::to_string(mode));
    const bool block = is_block_mode(static_cast<ContainerMode>(mode));
    if (block != (block_len > 0)) {
        throw Error(ErrorCode::BadMode, "block_len must be positive exactly for block modes");
    }
}

}  // namespace

void validate_header(const ContainerHeader& h) {
    check_mode(static_cast<std::uint8_t>(h.mode), h.block_len);
    check_probability(h.p);
    if (h.n_or_v == 0) throw Error(ErrorCode::InvalidModel, "length must be positive");
}

std::array<std::uint8_t, kHeaderSize> write_header(const ContainerHeader& h) {
    validate_header(h);
    std::array<std::uint8_t, kHeaderSize> out{};
    std::copy(kContainerMagic.begin(), kContainerMagic.end(), out.begin());
    out[4] = kContainerVersion;
    out[5] = static_cast<std::uint8_t>(h.mode);
    put_le(out.data() + 6, h.n_or_v);
    put_le(out.data() + 14, std::bit_cast<std::uint64_t>(h.p));
    put_le(out.data() + 22, h.block_len);
    put_le(out.data() + 26, h.payload_bit_count);
    return out;
}

ContainerHeader read_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderSize) {
        throw Error(ErrorCode::PayloadExhausted, "container shorter than its header");
    }
    if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin())) {
        throw Error(ErrorCode::BadMagic);
    }
    if (bytes[4] != kContainerVersion) {
        throw Error(ErrorCode::BadVersion, "version " + std::to_string(bytes[4]));
    }
    ContainerHeader h;
    const std::uint32_t block_len = get_le<std::uint32_t>(bytes.data() + 22);
    check_mode(bytes[5], block_len);
    h.mode = static_cast<ContainerMode>(bytes[5]);
    h.n_or_v = get_le<std::uint64_t>(bytes.data() + 6);
    h.p = std::bit_cast<double>(get_le<std::uint64_t>(bytes.data() + 14));
    check_probability(h.p);
    h.block_len = block_len;
    h.payload_bit_count = get_le<std::uint64_t>(bytes.data() + 26);
    if (h.n_or_v == 0) throw Error(ErrorCode::InvalidModel, "length must be positive");
    return h;
}

}  // namespace bzc
