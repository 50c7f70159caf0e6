#include "selfc/executor.hpp"

#include "selfc/error.hpp"

namespace selfc {

ExecOutcome exec(const Behavior& behavior, const Value& initial, const Registry& registry,
                 const BehaviorStore& store) {
    if (!registry.frozen()) {
        throw Error(ErrorCode::RegistryNotFrozen,
                    "registry must be frozen before executing \"" + behavior.name() + "\"");
    }
    auto pipeline = flatten(behavior, store);

    ExecOutcome outcome;
    outcome.result = initial;
    outcome.trace.reserve(pipeline.size());
    for (const auto& flat : pipeline) {
        Primitive effective = registry.primitive(flat.primitive);
        for (const auto& wrapper : flat.wrappers) {
            effective = registry.wrapper(wrapper)(effective);
        }
        try {
            outcome.result = effective.apply(outcome.result);
            outcome.trace.push_back(flat.step_name);
        } catch (const StepFailure& failure) {
            outcome.status = ExecOutcome::Status::Aborted;
            outcome.failed_step = flat.step_name;
            outcome.error = failure.what();
            outcome.trace.push_back(flat.step_name);
            outcome.result = Value();
            break;
        }
    }
    return outcome;
}

std::vector<std::string> trace_of(const Behavior& behavior, const BehaviorStore& store) {
    return flatten_names(behavior, store);
}

}  // namespace selfc
