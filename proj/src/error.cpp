#include "bzc/error.hpp"

namespace bzc {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::PayloadExhausted: return "PayloadExhausted";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::BadVersion: return "BadVersion";
        case ErrorCode::BadMode: return "BadMode";
        case ErrorCode::BadProbability: return "BadProbability";
        case ErrorCode::WeightMismatch: return "WeightMismatch";
        case ErrorCode::RankOutOfRange: return "RankOutOfRange";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::InvalidProbability: return "InvalidProbability";
        case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
        case ErrorCode::KOutOfRange: return "KOutOfRange";
        case ErrorCode::NonCanonical: return "NonCanonical";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::InvalidGraph: return "InvalidGraph";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace bzc
