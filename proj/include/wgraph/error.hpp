#ifndef WGRAPH_ERROR_HPP_
#define WGRAPH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace wgraph {

enum class ErrorCode {
    SelfLoop,
    UnknownVertex,
    Disconnected,
    DuplicateVertex,
    MalformedMatrix,
    NegativeWeight,
    MassNotOne,
    SizeMismatch,
    BadParameter,
    GraphMismatch,
    TooLarge,
    PreconditionViolated,
    WitnessRejected,
    NotAdjacent,
    ZeroContestedMass,
    IncompatibleMeasure,
    EpsilonTooSmall,
    RetryCapExhausted,
    NotAutomorphism,
    NotLatinSquare,
    NotAssociative,
    NoIdentity,
    NoInverse,
    NotGenerating,
    ParseError,
    ZeroDenominator,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::MalformedMatrix: return "MalformedMatrix";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::WitnessRejected: return "WitnessRejected";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::ZeroContestedMass: return "ZeroContestedMass";
    case ErrorCode::IncompatibleMeasure: return "IncompatibleMeasure";
    case ErrorCode::EpsilonTooSmall: return "EpsilonTooSmall";
    case ErrorCode::RetryCapExhausted: return "RetryCapExhausted";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotLatinSquare: return "NotLatinSquare";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::NotGenerating: return "NotGenerating";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace wgraph

#endif
