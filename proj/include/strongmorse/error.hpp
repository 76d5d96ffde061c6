#ifndef STRONGMORSE_ERROR_HPP
#define STRONGMORSE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace smorse {

enum class ErrorCode {
    EmptyFacet,
    DuplicateVertexInFacet,
    UnknownVertex,
    UnknownSimplex,
    MatchingNotAcyclic,
    InvalidMatching,
    CyclicRelation,
    CriticalSimplexWasMatched,
    NotGraded,
    SizeLimitExceeded,
    InvalidMorseFunction,
    IllegalCollapseStep,
    UnsupportedTrace,
    SyntaxError,
    EmptyFile,
    InputNotFound,
    ParseFailure,
    VerificationFailure,
    ReplayMismatch,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace smorse

#endif
