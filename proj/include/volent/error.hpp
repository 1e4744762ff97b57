#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace volent {

enum class ErrorCode {
    InvalidArgument,
    NonHyperbolic,
    BadThickness,
    ResourceLimit,
    FrontierTooClose,
    WindowTooNarrow,
    VertexHit,
    NotIrreducible,
    PowerIterationStalled,
    BracketFailed,
    NotStronglyConnected,
    NotHyperbolic,
    Degenerate,
    ParseError,
};

std::string_view to_string(ErrorCode code);

// Input errors map to CLI exit code 2, numerical failures to 1.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace volent
