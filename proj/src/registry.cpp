#include "selfc/registry.hpp"

#include <utility>

#include "selfc/error.hpp"

namespace selfc {

void Registry::register_primitive(std::string name, std::function<Value(const Value&)> apply) {
    register_primitive(Primitive{std::move(name), std::move(apply)});
}

void Registry::register_primitive(Primitive primitive) {
    if (frozen_) {
        throw Error(ErrorCode::RegistryFrozen,
                    "cannot register primitive \"" + primitive.name + "\": registry is frozen");
    }
    if (primitives_.contains(primitive.name)) {
        throw Error(ErrorCode::DuplicatePrimitive,
                    "primitive \"" + primitive.name + "\" is already registered");
    }
    primitive_order_.push_back(primitive.name);
    auto name = primitive.name;
    primitives_.emplace(std::move(name), std::move(primitive));
}

void Registry::register_wrapper(std::string name, WrapperFn wrap) {
    if (frozen_) {
        throw Error(ErrorCode::RegistryFrozen,
                    "cannot register wrapper \"" + name + "\": registry is frozen");
    }
    if (wrappers_.contains(name)) {
        throw Error(ErrorCode::DuplicateWrapper, "wrapper \"" + name + "\" is already registered");
    }
    wrappers_.emplace(std::move(name), std::move(wrap));
}

bool Registry::has_primitive(std::string_view name) const {
    return primitives_.contains(std::string(name));
}

bool Registry::has_wrapper(std::string_view name) const {
    return wrappers_.contains(std::string(name));
}

const Primitive& Registry::primitive(std::string_view name) const {
    auto it = primitives_.find(std::string(name));
    if (it == primitives_.end()) {
        throw Error(ErrorCode::UnknownPrimitive, "no primitive named \"" + std::string(name) + "\"");
    }
    return it->second;
}

const WrapperFn& Registry::wrapper(std::string_view name) const {
    auto it = wrappers_.find(std::string(name));
    if (it == wrappers_.end()) {
        throw Error(ErrorCode::UnknownWrapper, "no wrapper named \"" + std::string(name) + "\"");
    }
    return it->second;
}

Primitive trace_primitive(std::string name) {
    auto apply = [name](const Value& input) {
        if (!input.is_list()) {
            throw StepFailure("trace primitive \"" + name + "\" expects a list value");
        }
        Value out = input;
        out.as_list().emplace_back(name);
        return out;
    };
    return Primitive{std::move(name), std::move(apply)};
}

WrapperFn repeat_wrapper(int times) {
    return [times](const Primitive& inner) {
        auto apply = [times, inner](const Value& input) {
            Value v = input;
            for (int i = 0; i < times; ++i) v = inner.apply(v);
            return v;
        };
        return Primitive{inner.name, std::move(apply)};
    };
}

void register_builtin_wrappers(Registry& registry) {
    registry.register_wrapper("identity", [](const Primitive& inner) { return inner; });
    registry.register_wrapper("repeat2", repeat_wrapper(2));
    registry.register_wrapper("logEntryExit", [](const Primitive& inner) {
        auto apply = [inner](const Value& input) {
            if (!input.is_list()) return inner.apply(input);
            Value v = input;
            v.as_list().emplace_back("enter:" + inner.name);
            v = inner.apply(v);
            if (!v.is_list()) return v;
            v.as_list().emplace_back("exit:" + inner.name);
            return v;
        };
        return Primitive{inner.name, std::move(apply)};
    });
}

}  // namespace selfc
