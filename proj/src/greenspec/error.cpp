#include "greenspec/error.hpp"

namespace greenspec {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidMesh: return "InvalidMesh";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::Parse: return "ParseError";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::Domain: return "DomainError";
        case ErrorCode::Continuity: return "ContinuityError";
        case ErrorCode::UnknownKernel: return "UnknownKernel";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NoRealCandidate: return "NoRealCandidate";
        case ErrorCode::DegenerateVector: return "DegenerateVector";
        case ErrorCode::ZeroFunction: return "ZeroFunction";
        case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
        case ErrorCode::NonDoubling: return "NonDoubling";
        case ErrorCode::NonPositiveError: return "NonPositiveError";
        case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

}  // namespace greenspec
