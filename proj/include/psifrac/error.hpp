#pragma once

#include <stdexcept>
#include <string>

namespace psifrac {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorCode {
    Domain,
    Validation,
    NonConvergence,
    Overflow,
    GridMismatch,
    Hypothesis,
    BoundViolation,
    Infeasible,
    UnboundedKernel,
    Parse,
    Io,
};

/// Short machine-readable token for a code, e.g. "domain".
const char* error_code_name(ErrorCode c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

#define PSIFRAC_DEFINE_ERROR(Name, Code)                                     \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
    };

PSIFRAC_DEFINE_ERROR(DomainError, Domain)
PSIFRAC_DEFINE_ERROR(ValidationError, Validation)
PSIFRAC_DEFINE_ERROR(NonConvergenceError, NonConvergence)
PSIFRAC_DEFINE_ERROR(OverflowError, Overflow)
PSIFRAC_DEFINE_ERROR(GridMismatchError, GridMismatch)
PSIFRAC_DEFINE_ERROR(HypothesisError, Hypothesis)
PSIFRAC_DEFINE_ERROR(BoundViolationError, BoundViolation)
PSIFRAC_DEFINE_ERROR(InfeasibleError, Infeasible)
PSIFRAC_DEFINE_ERROR(UnboundedKernelError, UnboundedKernel)
PSIFRAC_DEFINE_ERROR(ParseError, Parse)
PSIFRAC_DEFINE_ERROR(IoError, Io)

#undef PSIFRAC_DEFINE_ERROR

}  // namespace psifrac
