#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bzc {

enum class ErrorCode {
    PayloadExhausted,
    BadMagic,
    BadVersion,
    BadMode,
    BadProbability,
    WeightMismatch,
    RankOutOfRange,
    InvalidModel,
    InvalidProbability,
    WeightOutOfRange,
    KOutOfRange,
    NonCanonical,
    LengthMismatch,
    InvalidGraph,
    DegenerateDistribution,
    TooLarge,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library. what() starts with the code name so
// callers (and the CLI) can print it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    explicit Error(ErrorCode code) : Error(code, std::string{}) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bzc
