#pragma once

#include <string>
#include <vector>

#include "selfc/behavior.hpp"
#include "selfc/registry.hpp"
#include "selfc/value.hpp"

namespace selfc {

/// Result of running a behavior: either the pipeline completed and carries
/// the final value, or a step failed and the trace stops at that step.
struct ExecOutcome {
    enum class Status { Completed, Aborted };

    Status status = Status::Completed;
    Value result;                       // meaningful when completed
    std::string failed_step;            // set when aborted
    std::string error;                  // set when aborted
    std::vector<std::string> trace;     // step names actually executed

    bool completed() const noexcept { return status == Status::Completed; }
};

/// Runs the behavior's flattened primitive sequence strictly in order,
/// feeding each step's output to the next. The first StepFailure aborts
/// with the partial trace; flatten errors propagate as exceptions. The
/// registry must be frozen.
ExecOutcome exec(const Behavior& behavior, const Value& initial, const Registry& registry,
                 const BehaviorStore& store);

/// The step-name trace exec would produce if every primitive succeeded.
std::vector<std::string> trace_of(const Behavior& behavior, const BehaviorStore& store);

}  // namespace selfc
