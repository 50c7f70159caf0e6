#include "selfc/behavior.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "selfc/error.hpp"

namespace selfc {

namespace {

bool word_chars(std::string_view text) {
    if (text.empty()) return false;
    return std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

void require_step_name(std::string_view name) {
    if (!valid_step_name(name)) {
        throw Error(ErrorCode::MalformedName, "malformed step name \"" + std::string(name) + "\"");
    }
}

void require_behavior_name(std::string_view name) {
    if (!valid_behavior_name(name)) {
        throw Error(ErrorCode::MalformedName,
                    "malformed behavior name \"" + std::string(name) + "\"");
    }
}

void validate_step_list(const std::vector<Step>& steps) {
    std::unordered_set<std::string_view> seen;
    for (const auto& step : steps) {
        if (!valid_step_name(step.name)) {
            throw Error(ErrorCode::InvariantViolation,
                        "step list holds malformed name \"" + step.name + "\"");
        }
        if (!seen.insert(step.name).second) {
            throw Error(ErrorCode::InvariantViolation,
                        "step list holds duplicate name \"" + step.name + "\"");
        }
    }
}

}  // namespace

bool valid_step_name(std::string_view name) { return word_chars(name); }

bool valid_behavior_name(std::string_view name) {
    if (name.empty()) return false;
    std::size_t start = 0;
    while (true) {
        auto dot = name.find('.', start);
        auto segment = name.substr(start, dot == std::string_view::npos ? dot : dot - start);
        if (!word_chars(segment)) return false;
        if (dot == std::string_view::npos) return true;
        start = dot + 1;
    }
}

// ---------------------------------------------------------------------------
// StepPayload

StepPayload StepPayload::primitive(std::string name) {
    return StepPayload(Kind::Primitive, std::move(name));
}

StepPayload StepPayload::composite(std::string behavior_name) {
    return StepPayload(Kind::Composite, std::move(behavior_name));
}

StepPayload StepPayload::wrapped(std::string wrapper_name, StepPayload inner) {
    if (inner.underlying().kind() == Kind::Composite) {
        throw Error(ErrorCode::InvariantViolation,
                    "wrapper \"" + wrapper_name + "\" cannot apply to a composite payload");
    }
    StepPayload payload(Kind::Wrapped, std::move(wrapper_name));
    payload.inner_ = std::make_shared<const StepPayload>(std::move(inner));
    return payload;
}

const std::string& StepPayload::target() const {
    if (kind_ == Kind::Wrapped) {
        throw Error(ErrorCode::InvariantViolation, "wrapped payload has no direct target");
    }
    return name_;
}

const std::string& StepPayload::wrapper_name() const {
    if (kind_ != Kind::Wrapped) {
        throw Error(ErrorCode::InvariantViolation, "payload is not wrapped");
    }
    return name_;
}

const StepPayload& StepPayload::inner() const {
    if (kind_ != Kind::Wrapped) {
        throw Error(ErrorCode::InvariantViolation, "payload is not wrapped");
    }
    return *inner_;
}

const StepPayload& StepPayload::underlying() const {
    const StepPayload* p = this;
    while (p->kind_ == Kind::Wrapped) p = p->inner_.get();
    return *p;
}

std::vector<std::string> StepPayload::wrapper_stack() const {
    std::vector<std::string> stack;
    for (const StepPayload* p = this; p->kind_ == Kind::Wrapped; p = p->inner_.get()) {
        stack.push_back(p->name_);
    }
    std::reverse(stack.begin(), stack.end());  // innermost (applied first) first
    return stack;
}

bool operator==(const StepPayload& lhs, const StepPayload& rhs) {
    if (lhs.kind_ != rhs.kind_ || lhs.name_ != rhs.name_) return false;
    if (lhs.kind_ != StepPayload::Kind::Wrapped) return true;
    return *lhs.inner_ == *rhs.inner_;
}

// ---------------------------------------------------------------------------
// Step

Step Step::primitive(std::string primitive_name) {
    require_step_name(primitive_name);
    auto payload = StepPayload::primitive(primitive_name);
    return Step{std::move(primitive_name), std::move(payload)};
}

Step Step::primitive(std::string primitive_name, std::string rename) {
    require_step_name(rename);
    return Step{std::move(rename), StepPayload::primitive(std::move(primitive_name))};
}

Step Step::composite(std::string behavior_name) {
    require_behavior_name(behavior_name);
    // A qualified behavior name cannot double as a step name; rename instead.
    require_step_name(behavior_name);
    auto payload = StepPayload::composite(behavior_name);
    return Step{std::move(behavior_name), std::move(payload)};
}

Step Step::composite(std::string behavior_name, std::string rename) {
    require_behavior_name(behavior_name);
    require_step_name(rename);
    return Step{std::move(rename), StepPayload::composite(std::move(behavior_name))};
}

// ---------------------------------------------------------------------------
// Trait

void Trait::validate() const {
    std::unordered_set<std::string_view> seen;
    for (const auto& action : actions) {
        if (!seen.insert(action.step_name).second) {
            throw Error(ErrorCode::DuplicateStepName,
                        "trait lists step \"" + action.step_name + "\" twice");
        }
    }
}

// ---------------------------------------------------------------------------
// Behavior

Behavior::Behavior(std::string name) : name_(std::move(name)) {
    require_behavior_name(name_);
}

bool Behavior::has_step(std::string_view step_name) const {
    return std::any_of(steps_.begin(), steps_.end(),
                       [&](const Step& s) { return s.name == step_name; });
}

std::size_t Behavior::index_of(std::string_view step_name) const {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (steps_[i].name == step_name) return i;
    }
    throw Error(ErrorCode::UnknownAnchor,
                "no step named \"" + std::string(step_name) + "\" in behavior \"" + name_ + "\"");
}

Behavior Behavior::derive(std::string child_name) const {
    Behavior child(std::move(child_name));
    child.parent_ = name_;
    child.depth_ = depth_ + 1;
    child.steps_ = steps_;
    return child;
}

void Behavior::ensure_free_name(const Step& step, std::string_view allow_at_anchor) const {
    for (const auto& existing : steps_) {
        if (existing.name == step.name && existing.name != allow_at_anchor) {
            throw Error(ErrorCode::DuplicateStepName,
                        "behavior \"" + name_ + "\" already has a step named \"" + step.name + "\"");
        }
    }
}

Behavior& Behavior::add(Step step) {
    ensure_free_name(step);
    steps_.push_back(std::move(step));
    return *this;
}

Behavior& Behavior::insert(std::string_view anchor, Position position, Step step) {
    auto index = index_of(anchor);
    ensure_free_name(step);
    if (position == Position::After) ++index;
    steps_.insert(steps_.begin() + static_cast<std::ptrdiff_t>(index), std::move(step));
    return *this;
}

Behavior& Behavior::update(std::string_view anchor, Step step) {
    auto index = index_of(anchor);
    ensure_free_name(step, anchor);
    steps_[index] = std::move(step);
    return *this;
}

Behavior& Behavior::remove(std::string_view anchor) {
    auto index = index_of(anchor);
    steps_.erase(steps_.begin() + static_cast<std::ptrdiff_t>(index));
    return *this;
}

Behavior& Behavior::map_step(std::string_view anchor, const Registry& registry,
                             std::string_view wrapper_name) {
    auto index = index_of(anchor);
    if (!registry.has_wrapper(wrapper_name)) {
        throw Error(ErrorCode::UnknownWrapper,
                    "no wrapper named \"" + std::string(wrapper_name) + "\"");
    }
    // Wrap a copy so a rejected wrap leaves the step untouched.
    auto wrapped = StepPayload::wrapped(std::string(wrapper_name), steps_[index].payload);
    steps_[index].payload = std::move(wrapped);
    return *this;
}

Behavior& Behavior::assign(const Trait& trait, std::vector<std::string>* warnings) {
    trait.validate();
    for (const auto& action : trait.actions) {
        if (!action.replacement.has_value()) {
            if (has_step(action.step_name)) {
                remove(action.step_name);
            } else if (warnings != nullptr) {
                warnings->push_back("assign: behavior \"" + name_ + "\" has no step \"" +
                                    action.step_name + "\" to remove");
            }
            continue;
        }
        if (has_step(action.step_name)) {
            update(action.step_name, *action.replacement);
        } else {
            add(*action.replacement);
        }
    }
    return *this;
}

Behavior& Behavior::apply_refinement(const RefinementRegistry& registry, std::string_view name) {
    const auto& procedure = registry.find(name);
    auto candidate = steps_;
    procedure(candidate);
    validate_step_list(candidate);
    steps_ = std::move(candidate);
    return *this;
}

// ---------------------------------------------------------------------------
// RefinementRegistry

void RefinementRegistry::register_refinement(std::string name, Procedure procedure) {
    if (frozen_) {
        throw Error(ErrorCode::RegistryFrozen,
                    "cannot register refinement \"" + name + "\": registry is frozen");
    }
    if (procedures_.contains(name)) {
        throw Error(ErrorCode::DuplicateRefinement,
                    "refinement \"" + name + "\" is already registered");
    }
    procedures_.emplace(std::move(name), std::move(procedure));
}

bool RefinementRegistry::contains(std::string_view name) const {
    return procedures_.contains(std::string(name));
}

const RefinementRegistry::Procedure& RefinementRegistry::find(std::string_view name) const {
    auto it = procedures_.find(std::string(name));
    if (it == procedures_.end()) {
        throw Error(ErrorCode::UnknownRefinement,
                    "no refinement named \"" + std::string(name) + "\"");
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// BehaviorStore

namespace {

// Walks composite references from `candidate`, resolving through the store
// except that `candidate` shadows any stored behavior with the same name.
// Any cycle closed by writing `candidate` must pass through it, so a single
// traversal from it finds the cycle.
void check_acyclic(const Behavior& candidate, const BehaviorStore& store) {
    std::unordered_set<std::string> on_path;
    std::unordered_set<std::string> done;

    std::function<void(const Behavior&)> visit = [&](const Behavior& behavior) {
        on_path.insert(behavior.name());
        for (const auto& step : behavior.steps()) {
            const auto& base = step.payload.underlying();
            if (base.kind() != StepPayload::Kind::Composite) continue;
            const auto& target = base.target();
            if (on_path.contains(target)) {
                throw Error(ErrorCode::CycleDetected,
                            "composite reference cycle through \"" + target + "\"");
            }
            if (done.contains(target)) continue;
            if (target == candidate.name()) {
                visit(candidate);
            } else if (store.contains(target)) {
                visit(store.at(target));
            }
            // Unresolved targets are leaves here; flatten reports them.
        }
        on_path.erase(behavior.name());
        done.insert(behavior.name());
    };

    visit(candidate);
}

}  // namespace

Behavior& BehaviorStore::put(Behavior behavior) {
    check_acyclic(behavior, *this);
    auto name = behavior.name();
    auto it = by_name_.find(name);
    if (it == by_name_.end()) {
        order_.push_back(name);
        it = by_name_.emplace(name, std::move(behavior)).first;
    } else {
        it->second = std::move(behavior);
    }
    return it->second;
}

bool BehaviorStore::contains(std::string_view name) const {
    return by_name_.contains(std::string(name));
}

const Behavior& BehaviorStore::at(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) {
        throw Error(ErrorCode::UnknownBehavior, "no behavior named \"" + std::string(name) + "\"");
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// flatten

namespace {

void expand(const Behavior& behavior, const BehaviorStore& store,
            std::unordered_set<std::string>& on_path, std::vector<FlatStep>& out) {
    on_path.insert(behavior.name());
    for (const auto& step : behavior.steps()) {
        const auto& base = step.payload.underlying();
        if (base.kind() == StepPayload::Kind::Primitive) {
            out.push_back(FlatStep{step.name, base.target(), step.payload.wrapper_stack()});
            continue;
        }
        const auto& target = base.target();
        if (on_path.contains(target)) {
            throw Error(ErrorCode::CycleDetected,
                        "composite reference cycle through \"" + target + "\"");
        }
        if (!store.contains(target)) {
            throw Error(ErrorCode::UnresolvedReference,
                        "behavior \"" + behavior.name() + "\" step \"" + step.name +
                            "\" references unknown behavior \"" + target + "\"");
        }
        expand(store.at(target), store, on_path, out);
    }
    on_path.erase(behavior.name());
}

}  // namespace

std::vector<FlatStep> flatten(const Behavior& behavior, const BehaviorStore& store) {
    std::vector<FlatStep> out;
    std::unordered_set<std::string> on_path;
    expand(behavior, store, on_path, out);
    return out;
}

std::vector<std::string> flatten_names(const Behavior& behavior, const BehaviorStore& store) {
    auto flat = flatten(behavior, store);
    std::vector<std::string> names;
    names.reserve(flat.size());
    for (auto& entry : flat) names.push_back(std::move(entry.step_name));
    return names;
}

}  // namespace selfc
