#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lchrs {

enum class ErrorCode {
    InvalidParameter,
    ZeroInversion,
    IndexOutOfRange,
    LengthMismatch,
    MalformedInput,
    OddT0,
    DegenerateInput,
    CountOutOfRange,
    IndexViolation,
    ZeroDenominator,
    InconsistentCount,
    Undecodable,
    CountMismatch,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ZeroInversion: return "ZeroInversion";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::OddT0: return "OddT0";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::IndexViolation: return "IndexViolation";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InconsistentCount: return "InconsistentCount";
    case ErrorCode::Undecodable: return "Undecodable";
    case ErrorCode::CountMismatch: return "CountMismatch";
    }
    return "Unknown";
}

//! Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const char* what)
{
    if (!condition)
        throw Error(code, what);
}

} // namespace lchrs
