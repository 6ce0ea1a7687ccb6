#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace taylor {

enum class ErrorKind {
    LengthMismatch,
    NonMonotoneNodes,
    OutOfRangeNode,
    InvalidInterval,
    InvalidBounds,
    InvalidArgument,
    NotNormalized,
    NonFiniteEvaluation,
    QuadratureNoConvergence,
    NoConvergence,
    DegenerateObjective,
    SyntaxError,
    UnknownIdentifier,
    DomainError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The message is prefixed with the
/// kind name, e.g. "DomainError: log of non-positive argument".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failures carry the byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(ErrorKind kind, std::size_t offset, const std::string& what);

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace taylor
