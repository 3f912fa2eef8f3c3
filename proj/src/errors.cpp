#include "autocam/errors.hpp"

namespace autocam {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegeneratePose:       return "DegeneratePose";
        case ErrorCode::BehindCamera:         return "BehindCamera";
        case ErrorCode::DegenerateRadius:     return "DegenerateRadius";
        case ErrorCode::DegenerateRay:        return "DegenerateRay";
        case ErrorCode::MalformedKeypoints:   return "MalformedKeypoints";
        case ErrorCode::JointNotVisible:      return "JointNotVisible";
        case ErrorCode::InsufficientHistory:  return "InsufficientHistory";
        case ErrorCode::EmptyUtterance:       return "EmptyUtterance";
        case ErrorCode::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
        case ErrorCode::NonPositiveRadius:    return "NonPositiveRadius";
        case ErrorCode::DegenerateShoulders:  return "DegenerateShoulders";
        case ErrorCode::DegenerateCandidate:  return "DegenerateCandidate";
        case ErrorCode::UnreachableOrbit:     return "UnreachableOrbit";
        case ErrorCode::GridTooLarge:         return "GridTooLarge";
        case ErrorCode::InvalidConfig:        return "InvalidConfig";
        case ErrorCode::VersionMismatch:      return "VersionMismatch";
        case ErrorCode::CorruptRecord:        return "CorruptRecord";
        case ErrorCode::EmptyRecording:       return "EmptyRecording";
        case ErrorCode::UnknownSession:       return "UnknownSession";
        case ErrorCode::InvalidTransition:    return "InvalidTransition";
        case ErrorCode::StaleSeq:             return "StaleSeq";
        case ErrorCode::MalformedPayload:     return "MalformedPayload";
    }
    return "Unknown";
}

} // namespace autocam
