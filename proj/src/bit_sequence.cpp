#include "bzc/bit_sequence.hpp"

#include <algorithm>
#include <numeric>

#include "bzc/error.hpp"

namespace bzc {

BitSequence BitSequence::from_string(std::string_view text) {
    BitSequence out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::ParseError, std::string("unexpected character '") + c + "' in bit string");
        }
        out.bits_.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

void BitSequence::append(const BitSequence& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::size_t BitSequence::popcount() const noexcept {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

BitSequence BitSequence::slice(std::size_t pos, std::size_t len) const {
    BitSequence out;
    if (pos >= bits_.size()) return out;
    len = std::min(len, bits_.size() - pos);
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
}

std::string BitSequence::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) s[i] = '1';
    }
    return s;
}

BitSequence concat(const BitSequence& a, const BitSequence& b) {
    BitSequence out = a;
    out.append(b);
    return out;
}

}  // namespace bzc
