#include "volent/error.hpp"

namespace volent {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonHyperbolic: return "NonHyperbolic";
        case ErrorCode::BadThickness: return "BadThickness";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::FrontierTooClose: return "FrontierTooClose";
        case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
        case ErrorCode::VertexHit: return "VertexHit";
        case ErrorCode::NotIrreducible: return "NotIrreducible";
        case ErrorCode::PowerIterationStalled: return "PowerIterationStalled";
        case ErrorCode::BracketFailed: return "BracketFailed";
        case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorCode::NotHyperbolic: return "NotHyperbolic";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::PowerIterationStalled:
        case ErrorCode::BracketFailed:
        case ErrorCode::NotIrreducible:
        case ErrorCode::VertexHit:
            return false;
        default:
            return true;
    }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace volent
