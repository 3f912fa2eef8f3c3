#pragma once

#include <stdexcept>
#include <string>

namespace autocam {

enum class ErrorCode {
    DegeneratePose,
    BehindCamera,
    DegenerateRadius,
    DegenerateRay,
    MalformedKeypoints,
    JointNotVisible,
    InsufficientHistory,
    EmptyUtterance,
    NonMonotoneTimestamp,
    NonPositiveRadius,
    DegenerateShoulders,
    DegenerateCandidate,
    UnreachableOrbit,
    GridTooLarge,
    InvalidConfig,
    VersionMismatch,
    CorruptRecord,
    EmptyRecording,
    UnknownSession,
    InvalidTransition,
    StaleSeq,
    MalformedPayload,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (CLI exit codes, wire error replies) can dispatch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace autocam
