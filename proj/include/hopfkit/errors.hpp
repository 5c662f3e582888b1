#ifndef HOPFKIT_ERRORS_HPP
#define HOPFKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hopfkit {

// Domain error codes. The string form is what the CLI emits in
// {"error": code, ...}.
enum class ErrorCode {
    InvalidSimplex,
    DuplicateTetrahedron,
    BadDimension,
    NotACycle,
    NotNullHomologous,
    InvalidDualCurve,
    NotClosedOriented,
    InconsistentDegree,
    ChainingFailure,
    AmbiguousLinking,
    HopfUndefined,
    InconsistencyDetected,
    IntegralityViolation,
    InvalidMap,
    NonPositiveInput,
    NonPositiveVolume,
    NonPositiveHopfSize,
    InvalidParams,
    ZeroDenominator,
    NotCoprime,
    NotAnosov,
    TooLarge,
    ConstructionFailure,
    ParseError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSimplex: return "InvalidSimplex";
        case ErrorCode::DuplicateTetrahedron: return "DuplicateTetrahedron";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::NotACycle: return "NotACycle";
        case ErrorCode::NotNullHomologous: return "NotNullHomologous";
        case ErrorCode::InvalidDualCurve: return "InvalidDualCurve";
        case ErrorCode::NotClosedOriented: return "NotClosedOriented";
        case ErrorCode::InconsistentDegree: return "InconsistentDegree";
        case ErrorCode::ChainingFailure: return "ChainingFailure";
        case ErrorCode::AmbiguousLinking: return "AmbiguousLinking";
        case ErrorCode::HopfUndefined: return "HopfUndefined";
        case ErrorCode::InconsistencyDetected: return "InconsistencyDetected";
        case ErrorCode::IntegralityViolation: return "IntegralityViolation";
        case ErrorCode::InvalidMap: return "InvalidMap";
        case ErrorCode::NonPositiveInput: return "NonPositiveInput";
        case ErrorCode::NonPositiveVolume: return "NonPositiveVolume";
        case ErrorCode::NonPositiveHopfSize: return "NonPositiveHopfSize";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::NotAnosov: return "NotAnosov";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ConstructionFailure: return "ConstructionFailure";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace hopfkit

#endif
