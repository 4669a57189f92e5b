#pragma once

#include <stdexcept>
#include <string>

namespace greenspec {

enum class ErrorCode {
    InvalidArgument,
    InvalidMesh,
    IndexOutOfRange,
    OutOfDomain,
    Parse,
    UnknownIdentifier,
    Domain,
    Continuity,
    UnknownKernel,
    NonConvergence,
    NoRealCandidate,
    DegenerateVector,
    ZeroFunction,
    ZeroEigenvalue,
    NonDoubling,
    NonPositiveError,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type of the library; the code drives the C API status
/// and the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with the byte offset into the source text.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : Error(ErrorCode::Parse, "parse error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace greenspec
