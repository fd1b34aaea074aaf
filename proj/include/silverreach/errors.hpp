#pragma once

#include <stdexcept>
#include <string>

namespace silverreach {

enum class ErrorCode {
    InvalidArgument,
    MixedClass,
    NotMixed,
    DegenerateSystem,
    SingularGramian,
    DomainError,
    NonConvergence,
    InfeasibleDiscretization,
    HorizonTooShort,
};

/// Stable machine-readable name, e.g. "mixed_class".
const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace silverreach
