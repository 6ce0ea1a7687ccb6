#include "taylor/errors.hpp"

namespace taylor {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NonMonotoneNodes: return "NonMonotoneNodes";
        case ErrorKind::OutOfRangeNode: return "OutOfRangeNode";
        case ErrorKind::InvalidInterval: return "InvalidInterval";
        case ErrorKind::InvalidBounds: return "InvalidBounds";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NonFiniteEvaluation: return "NonFiniteEvaluation";
        case ErrorKind::QuadratureNoConvergence: return "QuadratureNoConvergence";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::DegenerateObjective: return "DegenerateObjective";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::DomainError: return "DomainError";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

SyntaxError::SyntaxError(ErrorKind kind, std::size_t offset, const std::string& what)
    : Error(kind, what + " at offset " + std::to_string(offset)), offset_(offset) {}

} // namespace taylor
