#include <unordered_set>

#include "selfc/bdl.hpp"
#include "selfc/error.hpp"

namespace selfc::bdl {

namespace {

std::vector<std::string> composite_targets(const Behavior& behavior) {
    std::vector<std::string> targets;
    for (const auto& step : behavior.steps()) {
        const auto& base = step.payload.underlying();
        if (base.kind() == StepPayload::Kind::Composite) targets.push_back(base.target());
    }
    return targets;
}

// Store order, adjusted so every composite target is declared before its
// referer. The store is acyclic, so repeated sweeps always make progress.
std::vector<std::string> emission_order(const BehaviorStore& store) {
    std::vector<std::string> order;
    std::unordered_set<std::string> emitted;
    while (order.size() < store.order().size()) {
        bool progressed = false;
        for (const auto& name : store.order()) {
            if (emitted.contains(name)) continue;
            bool ready = true;
            for (const auto& target : composite_targets(store.at(name))) {
                if (!store.contains(target)) {
                    throw Error(ErrorCode::UnresolvedReference,
                                "behavior \"" + name + "\" references unknown behavior \"" +
                                    target + "\"");
                }
                if (!emitted.contains(target)) {
                    ready = false;
                    break;
                }
            }
            if (ready) {
                order.push_back(name);
                emitted.insert(name);
                progressed = true;
            }
        }
        if (!progressed) {
            throw Error(ErrorCode::CycleDetected, "store contains a composite reference cycle");
        }
    }
    return order;
}

}  // namespace

std::string render(const BehaviorStore& store) {
    std::string out;
    bool first = true;
    for (const auto& name : emission_order(store)) {
        const auto& behavior = store.at(name);
        if (!first) out += '\n';
        first = false;
        out += "behavior " + behavior.name();
        if (behavior.steps().empty()) {
            out += "\n";
            continue;
        }
        out += " {\n";
        for (const auto& step : behavior.steps()) {
            const auto& base = step.payload.underlying();
            if (step.name != base.target()) {
                throw Error(ErrorCode::InvariantViolation,
                            "behavior \"" + behavior.name() + "\" step \"" + step.name +
                                "\" is renamed and has no declarative spelling");
            }
            if (base.kind() == StepPayload::Kind::Composite) {
                out += "  add behavior " + base.target() + "\n";
            } else {
                out += "  add " + base.target() + "\n";
            }
            for (const auto& wrapper : step.payload.wrapper_stack()) {
                out += "  map " + step.name + " with " + wrapper + "\n";
            }
        }
        out += "}\n";
    }
    return out;
}

}  // namespace selfc::bdl
