#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bzc {

// Finite ordered bit string. Element 0 is the first bit written (X_1), which
// the enumerative code treats as the most significant position.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::size_t length, bool value = false) : bits_(length, value ? 1 : 0) {}

    // Accepts '0'/'1' characters only.
    static BitSequence from_string(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }

    [[nodiscard]] bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1 : 0; }

    void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
    void append(const BitSequence& other);
    void reserve(std::size_t n) { bits_.reserve(n); }
    void resize(std::size_t n, bool value = false) { bits_.resize(n, value ? 1 : 0); }

    [[nodiscard]] std::size_t popcount() const noexcept;
    [[nodiscard]] BitSequence slice(std::size_t pos, std::size_t len) const;
    [[nodiscard]] std::string to_string() const;

    // One byte per bit, each 0 or 1.
    [[nodiscard]] std::span<const std::uint8_t> raw() const noexcept { return bits_; }

    friend bool operator==(const BitSequence&, const BitSequence&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

BitSequence concat(const BitSequence& a, const BitSequence& b);

}  // namespace bzc
