#include "silverreach/errors.hpp"

namespace silverreach {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::MixedClass: return "mixed_class";
        case ErrorCode::NotMixed: return "not_mixed";
        case ErrorCode::DegenerateSystem: return "degenerate_system";
        case ErrorCode::SingularGramian: return "singular_gramian";
        case ErrorCode::DomainError: return "domain_error";
        case ErrorCode::NonConvergence: return "non_convergence";
        case ErrorCode::InfeasibleDiscretization: return "infeasible_discretization";
        case ErrorCode::HorizonTooShort: return "horizon_too_short";
    }
    return "unknown";
}

}  // namespace silverreach
