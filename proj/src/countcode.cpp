#include "bzc/countcode.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bzc/error.hpp"

namespace bzc {

namespace {

void check_k(std::uint64_t k, const CountCodeParams& params) {
    if (k > params.n) {
        throw Error(ErrorCode::WeightOutOfRange,
                    "k=" + std::to_string(k) + " exceeds n=" + std::to_string(params.n));
    }
}

}  // namespace

unsigned floor_log2(std::uint64_t v) noexcept {
    return static_cast<unsigned>(std::bit_width(v)) - 1;
}

CountCodeParams derive_params(std::uint64_t n, double p) {
    if (n == 0) throw Error(ErrorCode::InvalidModel, "n must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::InvalidModel, "p must lie in (0,1)");
    CountCodeParams out;
    out.n = n;
    out.p = p;
    out.floor_np = static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * p));
    if (out.floor_np > n) out.floor_np = n;
    out.d_max = std::max(out.floor_np, n - out.floor_np);
    out.t_max = floor_log2(out.d_max + 1);
    // ceil(log2(t_max + 1)) is the bit width of t_max itself.
    out.t_width = std::max(1u, static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(out.t_max))));
    return out;
}

CountCode split_count(std::uint64_t k, const CountCodeParams& params) {
    check_k(k, params);
    CountCode c;
    c.f = static_cast<double>(k) > static_cast<double>(params.n) * params.p;
    c.d = k >= params.floor_np ? k - params.floor_np : params.floor_np - k;
    if (c.d == 0) c.f = false;
    c.t = floor_log2(c.d + 1);
    c.u = c.d + 1 - (std::uint64_t{1} << c.t);
    return c;
}

void encode_count(BitWriter& out, std::uint64_t k, const CountCodeParams& params) {
    const CountCode c = split_count(k, params);
    out.put(c.f);
    out.write_uint(c.t, params.t_width);
    out.write_uint(c.u, c.t);
}

BitSequence encode_count(std::uint64_t k, const CountCodeParams& params) {
    BitWriter w;
    encode_count(w, k, params);
    const std::uint64_t bits = w.bit_count();
    return unpack_bits(w.finish(), bits);
}

DecodedCount decode_count(BitReader& in, const CountCodeParams& params) {
    const std::uint64_t start = in.position();
    const bool f = in.get();
    const auto t = static_cast<unsigned>(in.read_uint(params.t_width));
    if (t > 63) throw Error(ErrorCode::KOutOfRange, "t=" + std::to_string(t));
    const std::uint64_t u = in.read_uint(t);
    const std::uint64_t d = (std::uint64_t{1} << t) + u - 1;
    if (f && d == 0) throw Error(ErrorCode::NonCanonical, "F=1 with d=0");
    std::uint64_t k;
    if (f) {
        if (d > params.n - params.floor_np) throw Error(ErrorCode::KOutOfRange, "k above n");
        k = params.floor_np + d;
    } else {
        if (d > params.floor_np) throw Error(ErrorCode::KOutOfRange, "k below 0");
        k = params.floor_np - d;
    }
    return {k, in.position() - start};
}

unsigned count_code_length(std::uint64_t k, const CountCodeParams& params) {
    const CountCode c = split_count(k, params);
    return 1 + params.t_width + c.t;
}

}  // namespace bzc
