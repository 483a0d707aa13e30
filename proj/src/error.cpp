#include "psifrac/error.hpp"

namespace psifrac {

const char* error_code_name(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::NonConvergence: return "nonconvergence";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::GridMismatch: return "grid_mismatch";
        case ErrorCode::Hypothesis: return "hypothesis";
        case ErrorCode::BoundViolation: return "bound_violation";
        case ErrorCode::Infeasible: return "infeasible";
        case ErrorCode::UnboundedKernel: return "unbounded_kernel";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace psifrac
