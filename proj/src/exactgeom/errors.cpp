#include "polynorm/errors.hpp"

namespace polynorm {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::NotFullDimensional: return "NotFullDimensional";
        case ErrorKind::InconsistentRepresentations: return "InconsistentRepresentations";
        case ErrorKind::NotSurjective: return "NotSurjective";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::DependentKernel: return "DependentKernel";
        case ErrorKind::DomainMismatch: return "DomainMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::SquareNotCommuting: return "SquareNotCommuting";
        case ErrorKind::NormTooLarge: return "NormTooLarge";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::Precondition: return "PreconditionFailed";
        case ErrorKind::LpFailure: return "LpFailure";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

}  // namespace polynorm
