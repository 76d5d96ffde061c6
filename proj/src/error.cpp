#include "strongmorse/error.hpp"

namespace smorse {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::EmptyFacet: return "EmptyFacet";
    case ErrorCode::DuplicateVertexInFacet: return "DuplicateVertexInFacet";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownSimplex: return "UnknownSimplex";
    case ErrorCode::MatchingNotAcyclic: return "MatchingNotAcyclic";
    case ErrorCode::InvalidMatching: return "InvalidMatching";
    case ErrorCode::CyclicRelation: return "CyclicRelation";
    case ErrorCode::CriticalSimplexWasMatched: return "CriticalSimplexWasMatched";
    case ErrorCode::NotGraded: return "NotGraded";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::InvalidMorseFunction: return "InvalidMorseFunction";
    case ErrorCode::IllegalCollapseStep: return "IllegalCollapseStep";
    case ErrorCode::UnsupportedTrace: return "UnsupportedTrace";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::InputNotFound: return "InputNotFound";
    case ErrorCode::ParseFailure: return "ParseFailure";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorCode::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column)
{
}

} // namespace smorse
