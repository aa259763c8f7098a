#pragma once

#include <stdexcept>
#include <string>

namespace chambers {

enum class ErrorCode {
    NotPure,
    InfiniteOrder,
    NotTwoFinite,
    NotDistanceTwo,
    NotPrime,
    NonUniform,
    InvalidAdjacency,
    RankTooSmall,
    NonGeometric,
    SameVertex,
    IncompleteGraph,
    TooFewVertices,
    Disconnected,
    InternalOverlap,
    ResourceLimit,
    BadInput,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPure: return "NotPure";
        case ErrorCode::InfiniteOrder: return "InfiniteOrder";
        case ErrorCode::NotTwoFinite: return "NotTwoFinite";
        case ErrorCode::NotDistanceTwo: return "NotDistanceTwo";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NonUniform: return "NonUniform";
        case ErrorCode::InvalidAdjacency: return "InvalidAdjacency";
        case ErrorCode::RankTooSmall: return "RankTooSmall";
        case ErrorCode::NonGeometric: return "NonGeometric";
        case ErrorCode::SameVertex: return "SameVertex";
        case ErrorCode::IncompleteGraph: return "IncompleteGraph";
        case ErrorCode::TooFewVertices: return "TooFewVertices";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::InternalOverlap: return "InternalOverlap";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::BadInput: return "BadInput";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace chambers
