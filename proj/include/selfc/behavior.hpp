#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "selfc/registry.hpp"

namespace selfc {

class BehaviorStore;
class RefinementRegistry;

/// Step names are plain identifiers: letters, digits, or underscores.
bool valid_step_name(std::string_view name);

/// Behavior names are dot-qualified identifiers, e.g. "User.getName".
bool valid_behavior_name(std::string_view name);

/// What a step executes: a primitive by name, a nested behavior by name,
/// or a wrapped payload. Wrappers only ever apply to payloads that bottom
/// out in a primitive; composites are pipelines, not single callables.
class StepPayload {
public:
    enum class Kind { Primitive, Composite, Wrapped };

    static StepPayload primitive(std::string name);
    static StepPayload composite(std::string behavior_name);
    static StepPayload wrapped(std::string wrapper_name, StepPayload inner);

    Kind kind() const noexcept { return kind_; }

    /// Primitive or behavior name; invalid for wrapped payloads.
    const std::string& target() const;
    /// Wrapper name; invalid unless kind is Wrapped.
    const std::string& wrapper_name() const;
    /// The payload beneath one wrapper; invalid unless kind is Wrapped.
    const StepPayload& inner() const;

    /// Strips all wrappers down to the primitive or composite beneath.
    const StepPayload& underlying() const;
    /// Wrapper names in the order they were applied (innermost first).
    std::vector<std::string> wrapper_stack() const;

    friend bool operator==(const StepPayload& lhs, const StepPayload& rhs);
    friend bool operator!=(const StepPayload& lhs, const StepPayload& rhs) { return !(lhs == rhs); }

private:
    StepPayload(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;                            // target or wrapper name
    std::shared_ptr<const StepPayload> inner_;    // set when wrapped
};

/// One named element of a behavior's step sequence.
struct Step {
    std::string name;
    StepPayload payload;

    /// Step backed by a primitive; the step is addressed by the primitive's
    /// name unless a rename is given.
    static Step primitive(std::string primitive_name);
    static Step primitive(std::string primitive_name, std::string rename);

    /// Step that inlines another behavior at execution time.
    static Step composite(std::string behavior_name);
    static Step composite(std::string behavior_name, std::string rename);

    friend bool operator==(const Step& lhs, const Step& rhs) {
        return lhs.name == rhs.name && lhs.payload == rhs.payload;
    }
};

/// An ordered set of step replace/remove actions applied as one implicit
/// refinement. Action order is application order.
struct Trait {
    struct Action {
        std::string step_name;
        std::optional<Step> replacement;  // empty means remove
    };

    std::vector<Action> actions;

    /// Validates that no step name appears twice.
    void validate() const;
};

enum class Position { Before, After };

/// A named, ordered pipeline of uniquely named steps with lineage metadata.
///
/// Behaviors are plain values: copying one yields an independent pipeline,
/// and deriving takes a snapshot that later edits on either side never touch.
/// Refinement methods return *this so call sites can chain them.
class Behavior {
public:
    explicit Behavior(std::string name);

    const std::string& name() const noexcept { return name_; }
    const std::optional<std::string>& parent() const noexcept { return parent_; }
    int depth() const noexcept { return depth_; }
    const std::vector<Step>& steps() const noexcept { return steps_; }

    bool has_step(std::string_view step_name) const;
    /// Index of the named step; Error{UnknownAnchor} when absent.
    std::size_t index_of(std::string_view step_name) const;

    /// Snapshot inheritance: the child copies this behavior's steps at call
    /// time and records this behavior as its parent, one level deeper.
    Behavior derive(std::string child_name) const;

    /// Appends a step at the tail.
    Behavior& add(Step step);

    /// Places a step immediately before or after the anchor step.
    Behavior& insert(std::string_view anchor, Position position, Step step);

    /// Replaces the anchored step in place. The slot keeps its position but
    /// takes the new step's name; the old name stops being addressable.
    Behavior& update(std::string_view anchor, Step step);

    /// Deletes the anchored step, preserving the order of the rest.
    Behavior& remove(std::string_view anchor);

    /// Wraps the anchored step's payload with a registered wrapper
    /// combinator. Name and position are untouched.
    Behavior& map_step(std::string_view anchor, const Registry& registry,
                       std::string_view wrapper_name);

    /// Applies a trait action by action: remove deletes the named step when
    /// present (a warning when absent), replace updates in place when
    /// present and appends at the tail when absent.
    Behavior& assign(const Trait& trait, std::vector<std::string>* warnings = nullptr);

    /// Runs a registered custom refinement against the step list, then
    /// re-validates the behavior invariants.
    Behavior& apply_refinement(const RefinementRegistry& registry, std::string_view name);

    friend bool operator==(const Behavior& lhs, const Behavior& rhs) {
        return lhs.name_ == rhs.name_ && lhs.parent_ == rhs.parent_ &&
               lhs.depth_ == rhs.depth_ && lhs.steps_ == rhs.steps_;
    }

private:
    void ensure_free_name(const Step& step, std::string_view allow_at_anchor = {}) const;

    std::string name_;
    std::optional<std::string> parent_;
    int depth_ = 0;
    std::vector<Step> steps_;
};

/// Catalog of custom refinement procedures. A procedure gets mutable access
/// to the step list; the caller re-checks behavior invariants afterwards.
class RefinementRegistry {
public:
    using Procedure = std::function<void(std::vector<Step>&)>;

    void register_refinement(std::string name, Procedure procedure);

    void freeze() noexcept { frozen_ = true; }
    bool frozen() const noexcept { return frozen_; }

    bool contains(std::string_view name) const;
    const Procedure& find(std::string_view name) const;

private:
    std::unordered_map<std::string, Procedure> procedures_;
    bool frozen_ = false;
};

/// Name-keyed collection of behaviors; composite steps resolve through it.
/// Insertion order is remembered and doubles as declaration order.
class BehaviorStore {
public:
    /// Inserts or replaces a behavior. Rejects the write with
    /// Error{CycleDetected} if it would close a composite reference cycle.
    Behavior& put(Behavior behavior);

    bool contains(std::string_view name) const;
    const Behavior& at(std::string_view name) const;

    bool empty() const noexcept { return order_.empty(); }
    std::size_t size() const noexcept { return order_.size(); }
    /// Names in first-insertion order.
    const std::vector<std::string>& order() const noexcept { return order_; }

private:
    std::vector<std::string> order_;
    std::unordered_map<std::string, Behavior> by_name_;
};

/// One entry of a flattened pipeline: the addressable step name, the
/// primitive that runs, and any wrappers in application order.
struct FlatStep {
    std::string step_name;
    std::string primitive;
    std::vector<std::string> wrappers;

    friend bool operator==(const FlatStep& lhs, const FlatStep& rhs) {
        return lhs.step_name == rhs.step_name && lhs.primitive == rhs.primitive &&
               lhs.wrappers == rhs.wrappers;
    }
};

/// Depth-first expansion of composites into the linear primitive sequence,
/// preserving order. Errors: UnresolvedReference, CycleDetected.
std::vector<FlatStep> flatten(const Behavior& behavior, const BehaviorStore& store);

/// Just the step names of flatten, in order.
std::vector<std::string> flatten_names(const Behavior& behavior, const BehaviorStore& store);

}  // namespace selfc
