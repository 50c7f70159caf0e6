#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfc {

/// Classified failure causes for composition, parsing, and analysis operations.
enum class ErrorCode {
    MalformedName,
    MalformedValue,
    MalformedInput,
    DuplicateStepName,
    DuplicatePrimitive,
    DuplicateWrapper,
    DuplicateRefinement,
    UnknownAnchor,
    UnknownWrapper,
    UnknownRefinement,
    UnknownParent,
    UnknownPrimitive,
    UnknownBehavior,
    UnknownTrait,
    InvariantViolation,
    UnresolvedReference,
    CycleDetected,
    RegistryFrozen,
    RegistryNotFrozen,
    InsufficientData,
    NonPositiveY,
    ZeroFeatures,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying an ErrorCode plus a human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Runtime failure raised by a primitive during execution. The executor
/// catches this and turns it into an aborted outcome; it never escapes exec.
class StepFailure : public std::runtime_error {
public:
    explicit StepFailure(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace selfc
