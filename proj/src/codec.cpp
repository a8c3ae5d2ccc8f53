#include "bzc/codec.hpp"

#include <algorithm>
#include <thread>

#include "bzc/combinatorics.hpp"
#include "bzc/countcode.hpp"
#include "bzc/error.hpp"

namespace bzc {

namespace {

void write_rank(BitWriter& out, const RankValue& r, std::uint64_t width) {
    if (width == 0) return;
    const std::uint64_t len = sgn(r) == 0 ? 0 : mpz_sizeinbase(r.get_mpz_t(), 2);
    for (std::uint64_t i = width; i > len; --i) out.put(false);
    if (len == 0) return;
    std::vector<std::uint8_t> bytes((len + 7) / 8);
    std::size_t count = 0;
    mpz_export(bytes.data(), &count, 1, 1, 1, 0, r.get_mpz_t());
    // The leading byte holds len mod 8 significant bits (8 when aligned).
    unsigned lead = static_cast<unsigned>(len % 8);
    if (lead == 0) lead = 8;
    for (unsigned b = lead; b-- > 0;) out.put(((bytes[0] >> b) & 1u) != 0);
    for (std::size_t i = 1; i < count; ++i) out.write_uint(bytes[i], 8);
}

RankValue read_rank(BitReader& in, std::uint64_t width) {
    RankValue r = 0;
    if (width == 0) return r;
    if (in.remaining() < width) {
        throw Error(ErrorCode::PayloadExhausted,
                    "need " + std::to_string(width) + " rank bits, " + std::to_string(in.remaining()) + " left");
    }
    std::vector<std::uint8_t> bytes((width + 7) / 8, 0);
    const unsigned lead = static_cast<unsigned>(width % 8 == 0 ? 8 : width % 8);
    bytes[0] = static_cast<std::uint8_t>(in.read_uint(lead));
    for (std::size_t i = 1; i < bytes.size(); ++i) bytes[i] = static_cast<std::uint8_t>(in.read_uint(8));
    mpz_import(r.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
    return r;
}

}  // namespace

void validate_model(const BernoulliModel& m) {
    if (m.n == 0) throw Error(ErrorCode::InvalidModel, "n must be at least 1");
    if (!(m.p > 0.0 && m.p < 1.0)) throw Error(ErrorCode::InvalidModel, "p must lie in (0,1)");
}

void encode_sequence(BitWriter& out, const BitSequence& x, const BernoulliModel& model) {
    validate_model(model);
    if (x.size() != model.n) {
        throw Error(ErrorCode::LengthMismatch,
                    "sequence has " + std::to_string(x.size()) + " bits, model n=" + std::to_string(model.n));
    }
    const CountCodeParams params = derive_params(model.n, model.p);
    const std::uint64_t k = x.popcount();
    encode_count(out, k, params);
    write_rank(out, rank(x, k), rank_bit_width(model.n, k));
}

BitSequence encode_sequence(const BitSequence& x, const BernoulliModel& model) {
    BitWriter w;
    encode_sequence(w, x, model);
    const std::uint64_t bits = w.bit_count();
    return unpack_bits(w.finish(), bits);
}

BitSequence decode_sequence(BitReader& in, const BernoulliModel& model) {
    validate_model(model);
    const CountCodeParams params = derive_params(model.n, model.p);
    const std::uint64_t k = decode_count(in, params).k;
    const RankValue r = read_rank(in, rank_bit_width(model.n, k));
    return unrank(r, model.n, k);
}

std::uint64_t codeword_length(std::uint64_t n, double p, std::uint64_t k) {
    return count_code_length(k, derive_params(n, p)) + rank_bit_width(n, k);
}

std::uint64_t block_count(std::uint64_t total_len, std::uint64_t block_len) {
    if (block_len == 0) throw Error(ErrorCode::InvalidModel, "block length must be at least 1");
    return (total_len + block_len - 1) / block_len;
}

void encode_blocks(BitWriter& out, const BitSequence& x, double p, std::uint64_t block_len, unsigned threads) {
    if (x.empty()) throw Error(ErrorCode::InvalidModel, "empty sequence");
    const std::uint64_t count = block_count(x.size(), block_len);
    const auto encode_one = [&](std::uint64_t b) {
        const std::uint64_t pos = b * block_len;
        const std::uint64_t m = std::min<std::uint64_t>(block_len, x.size() - pos);
        return encode_sequence(x.slice(pos, m), BernoulliModel{m, p});
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < count; ++b) out.write(encode_one(b));
        return;
    }
    std::vector<BitSequence> parts(count);
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t b = w; b < count; b += workers) parts[b] = encode_one(b);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    for (const BitSequence& part : parts) out.write(part);
}

BitSequence encode_blocks(const BitSequence& x, double p, std::uint64_t block_len, unsigned threads) {
    BitWriter w;
    encode_blocks(w, x, p, block_len, threads);
    const std::uint64_t bits = w.bit_count();
    return unpack_bits(w.finish(), bits);
}

BitSequence decode_blocks(BitReader& in, std::uint64_t total_len, double p, std::uint64_t block_len) {
    const std::uint64_t count = block_count(total_len, block_len);
    BitSequence out;
    out.reserve(total_len);
    for (std::uint64_t b = 0; b < count; ++b) {
        const std::uint64_t m = std::min(block_len, total_len - b * block_len);
        out.append(decode_sequence(in, BernoulliModel{m, p}));
    }
    return out;
}

namespace detail {

std::vector<std::uint8_t> build_container(const BitSequence& x, ContainerHeader header, unsigned threads) {
    BitWriter w;
    if (is_block_mode(header.mode)) {
        encode_blocks(w, x, header.p, header.block_len, threads);
    } else {
        encode_sequence(w, x, BernoulliModel{x.size(), header.p});
    }
    header.payload_bit_count = w.bit_count();
    validate_header(header);
    const auto head = write_header(header);
    std::vector<std::uint8_t> payload = w.finish();
    std::vector<std::uint8_t> out(kHeaderSize + payload.size());
    std::copy(head.begin(), head.end(), out.begin());
    std::copy(payload.begin(), payload.end(), out.begin() + kHeaderSize);
    return out;
}

}  // namespace detail

std::vector<std::uint8_t> compress_file(const BitSequence& x, double p, Method method,
                                        std::uint64_t block_len, unsigned threads) {
    ContainerHeader h;
    h.mode = method == Method::Block ? ContainerMode::SequenceBlock : ContainerMode::SequenceDirect;
    h.n_or_v = x.size();
    h.p = p;
    h.block_len = method == Method::Block ? static_cast<std::uint32_t>(block_len) : 0;
    if (method == Method::Block && (block_len == 0 || block_len > UINT32_MAX)) {
        throw Error(ErrorCode::InvalidModel, "block length must be in [1, 2^32)");
    }
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::BadProbability, "p must lie strictly between 0 and 1");
    validate_model(BernoulliModel{x.size(), p});
    return detail::build_container(x, h, threads);
}

Decompressed decompress_file(std::span<const std::uint8_t> bytes) {
    Decompressed out;
    out.header = read_header(bytes);
    const ContainerHeader& h = out.header;
    const auto payload = bytes.subspan(kHeaderSize);
    if (payload.size() * 8 < h.payload_bit_count) {
        throw Error(ErrorCode::PayloadExhausted, "payload shorter than declared bit count");
    }
    if (payload.size() != (h.payload_bit_count + 7) / 8) {
        throw Error(ErrorCode::LengthMismatch, "trailing bytes after payload");
    }
    std::uint64_t n = h.n_or_v;
    if (is_graph_mode(h.mode)) {
        if (h.n_or_v < 2 || h.n_or_v > (std::uint64_t{1} << 32)) {
            throw Error(ErrorCode::InvalidModel, "vertex count out of range");
        }
        n = h.n_or_v * (h.n_or_v - 1) / 2;
    }
    BitReader in(payload, h.payload_bit_count);
    out.bits = is_block_mode(h.mode) ? decode_blocks(in, n, h.p, h.block_len)
                                     : decode_sequence(in, BernoulliModel{n, h.p});
    if (in.remaining() != 0) {
        throw Error(ErrorCode::LengthMismatch, std::to_string(in.remaining()) + " payload bits left after decoding");
    }
    return out;
}

}  // namespace bzc
