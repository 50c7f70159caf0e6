#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "selfc/value.hpp"

namespace selfc {

/// A named step implementation. apply must be deterministic for a given
/// input; it reports runtime failure by throwing StepFailure.
struct Primitive {
    std::string name;
    std::function<Value(const Value&)> apply;
};

/// Transforms one primitive into another, e.g. to repeat it or bracket it
/// with bookkeeping. Wrapping must preserve determinism.
using WrapperFn = std::function<Primitive(const Primitive&)>;

/// Name-resolved catalog of primitives and wrapper combinators.
///
/// Registration happens during an initialization phase; freeze() ends that
/// phase and makes the catalog read-only, which is what execution requires.
class Registry {
public:
    void register_primitive(std::string name, std::function<Value(const Value&)> apply);
    void register_primitive(Primitive primitive);
    void register_wrapper(std::string name, WrapperFn wrap);

    /// Idempotent; lookups keep working after freezing.
    void freeze() noexcept { frozen_ = true; }
    bool frozen() const noexcept { return frozen_; }

    bool has_primitive(std::string_view name) const;
    bool has_wrapper(std::string_view name) const;

    const Primitive& primitive(std::string_view name) const;
    const WrapperFn& wrapper(std::string_view name) const;

    /// Registered primitive names in registration order.
    const std::vector<std::string>& primitive_names() const { return primitive_order_; }

private:
    std::unordered_map<std::string, Primitive> primitives_;
    std::unordered_map<std::string, WrapperFn> wrappers_;
    std::vector<std::string> primitive_order_;
    bool frozen_ = false;
};

/// A primitive that appends its own name to a list value and returns the
/// extended list. Pipelines built from these reproduce their flatten name
/// sequence in the result, which is the central execution oracle.
Primitive trace_primitive(std::string name);

/// Wrapper that invokes the wrapped primitive a fixed number of times,
/// threading the value through each invocation.
WrapperFn repeat_wrapper(int times);

/// Registers the stock wrappers: "identity", "repeat2", and
/// "logEntryExit" (brackets list values with enter:/exit: markers).
void register_builtin_wrappers(Registry& registry);

}  // namespace selfc
