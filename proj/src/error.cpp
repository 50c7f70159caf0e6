#include "selfc/error.hpp"

namespace selfc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedName: return "MalformedName";
        case ErrorCode::MalformedValue: return "MalformedValue";
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::DuplicateStepName: return "DuplicateStepName";
        case ErrorCode::DuplicatePrimitive: return "DuplicatePrimitive";
        case ErrorCode::DuplicateWrapper: return "DuplicateWrapper";
        case ErrorCode::DuplicateRefinement: return "DuplicateRefinement";
        case ErrorCode::UnknownAnchor: return "UnknownAnchor";
        case ErrorCode::UnknownWrapper: return "UnknownWrapper";
        case ErrorCode::UnknownRefinement: return "UnknownRefinement";
        case ErrorCode::UnknownParent: return "UnknownParent";
        case ErrorCode::UnknownPrimitive: return "UnknownPrimitive";
        case ErrorCode::UnknownBehavior: return "UnknownBehavior";
        case ErrorCode::UnknownTrait: return "UnknownTrait";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::UnresolvedReference: return "UnresolvedReference";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::RegistryFrozen: return "RegistryFrozen";
        case ErrorCode::RegistryNotFrozen: return "RegistryNotFrozen";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::NonPositiveY: return "NonPositiveY";
        case ErrorCode::ZeroFeatures: return "ZeroFeatures";
    }
    return "Unknown";
}

}  // namespace selfc
