#pragma once

#include <stdexcept>
#include <string>

namespace bpss {

enum class ErrorCode {
    TableMismatch,
    DegreeMismatch,
    MissingImage,
    ExponentOverflow,
    DegreeOverflow,
    OutOfRange,
    Parse,
    Precondition,
    NotComplex,
    NotWellDefined,
    InvalidArgument,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bpss
