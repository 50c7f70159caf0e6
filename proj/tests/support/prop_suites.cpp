#include "prop_suites.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

#include "selfc/behavior.hpp"
#include "selfc/error.hpp"
#include "selfc/executor.hpp"

namespace props {

using namespace selfc;

namespace {

const std::vector<std::string>& primitive_pool() {
    static const std::vector<std::string> pool = [] {
        std::vector<std::string> names;
        for (int i = 0; i < 12; ++i) names.push_back("t" + std::to_string(i));
        return names;
    }();
    return pool;
}

const Registry& pool_registry() {
    static const Registry registry = [] {
        Registry r;
        for (const auto& name : primitive_pool()) r.register_primitive(trace_primitive(name));
        register_builtin_wrappers(r);
        r.freeze();
        return r;
    }();
    return registry;
}

class Rand {
public:
    explicit Rand(unsigned seed) : engine_(seed) {}

    int below(int bound) {
        return std::uniform_int_distribution<int>(0, bound - 1)(engine_);
    }
    bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(engine_) < p; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(below(static_cast<int>(items.size())))];
    }

private:
    std::mt19937 engine_;
};

bool unique_names(const Behavior& behavior) {
    std::unordered_set<std::string_view> seen;
    for (const auto& step : behavior.steps()) {
        if (!seen.insert(step.name).second) return false;
    }
    return true;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& name : names) {
        if (!out.empty()) out += ",";
        out += name;
    }
    return out;
}

// Some generated ops are deliberately invalid (bogus anchors, duplicate
// names, wrap-a-composite); those must throw Error and leave no trace.
Step random_step(Rand& rand, int& fresh, bool allow_composite,
                 const std::vector<std::string>& behaviors) {
    if (allow_composite && !behaviors.empty() && rand.chance(0.25)) {
        return Step::composite(rand.pick(behaviors), "s" + std::to_string(fresh++));
    }
    const auto& primitive = rand.pick(primitive_pool());
    if (rand.chance(0.5)) return Step::primitive(primitive, "s" + std::to_string(fresh++));
    return Step::primitive(primitive);
}

std::string random_anchor(Rand& rand, const Behavior& behavior) {
    if (behavior.steps().empty() || rand.chance(0.15)) return "bogusAnchor";
    return behavior.steps()[static_cast<std::size_t>(
                                rand.below(static_cast<int>(behavior.steps().size())))]
        .name;
}

}  // namespace

Result refinement_sequences(int sequences, unsigned seed) {
    Rand rand(seed);
    const auto& registry = pool_registry();
    const std::vector<std::string> wrappers{"identity", "repeat2", "logEntryExit"};

    for (int s = 0; s < sequences; ++s) {
        BehaviorStore store;
        std::vector<std::string> names;
        int fresh = 0;

        Behavior root("b0");
        root.add(Step::primitive(primitive_pool()[0]));
        store.put(root);
        names.push_back("b0");

        const int op_count = 3 + rand.below(8);
        for (int op = 0; op < op_count; ++op) {
            const auto& target = rand.pick(names);
            Behavior working = store.at(target);
            bool mutated = false;
            try {
                switch (rand.below(7)) {
                    case 0:
                        working.add(random_step(rand, fresh, true, names));
                        mutated = true;
                        break;
                    case 1:
                        working.insert(random_anchor(rand, working),
                                       rand.chance(0.5) ? Position::Before : Position::After,
                                       random_step(rand, fresh, true, names));
                        mutated = true;
                        break;
                    case 2:
                        working.update(random_anchor(rand, working),
                                       random_step(rand, fresh, false, names));
                        mutated = true;
                        break;
                    case 3:
                        working.remove(random_anchor(rand, working));
                        mutated = true;
                        break;
                    case 4:
                        working.map_step(random_anchor(rand, working), registry,
                                         rand.pick(wrappers));
                        mutated = true;
                        break;
                    case 5: {
                        Trait trait;
                        trait.actions.push_back(
                            {random_anchor(rand, working),
                             rand.chance(0.5)
                                 ? std::optional<Step>(random_step(rand, fresh, false, names))
                                 : std::nullopt});
                        working.assign(trait);
                        mutated = true;
                        break;
                    }
                    case 6: {
                        auto child_name = "b" + std::to_string(names.size());
                        auto child = working.derive(child_name);
                        store.put(child);
                        names.push_back(child_name);
                        if (!unique_names(child)) {
                            return {false, "duplicate step names after derive of " + target};
                        }
                        break;
                    }
                }
                if (mutated) {
                    if (!unique_names(working)) {
                        return {false, "duplicate step names in " + target + " after op"};
                    }
                    store.put(std::move(working));
                }
            } catch (const Error&) {
                // Rejected op: the store must be untouched by it.
            }
        }

        // Acyclicity: everything the store accepted still flattens.
        for (const auto& name : names) {
            try {
                flatten(store.at(name), store);
            } catch (const Error& e) {
                return {false, "flatten of " + name + " failed after sequence " +
                                   std::to_string(s) + ": " + e.what()};
            }
            if (!unique_names(store.at(name))) {
                return {false, "duplicate step names in stored " + name};
            }
        }
    }
    return {};
}

Result derivation_isolation(int cases, unsigned seed) {
    Rand rand(seed);
    for (int c = 0; c < cases; ++c) {
        BehaviorStore store;
        int fresh = 0;

        Behavior parent("parent");
        const int width = 1 + rand.below(6);
        for (int i = 0; i < width; ++i) {
            try {
                parent.add(random_step(rand, fresh, false, {}));
            } catch (const Error&) {
            }
        }
        store.put(parent);

        auto child = parent.derive("child");
        if (flatten_names(child, store) != flatten_names(parent, store)) {
            return {false, "derive changed the flatten sequence"};
        }

        auto mutate = [&](Behavior& b) {
            try {
                switch (rand.below(4)) {
                    case 0: b.add(random_step(rand, fresh, false, {})); break;
                    case 1: b.remove(random_anchor(rand, b)); break;
                    case 2:
                        b.update(random_anchor(rand, b), random_step(rand, fresh, false, {}));
                        break;
                    case 3:
                        b.insert(random_anchor(rand, b), Position::After,
                                 random_step(rand, fresh, false, {}));
                        break;
                }
            } catch (const Error&) {
            }
        };

        auto parent_before = flatten_names(parent, store);
        for (int i = 0; i < 4; ++i) mutate(child);
        if (flatten_names(parent, store) != parent_before) {
            return {false, "child edits leaked into the parent"};
        }

        auto child_before = flatten_names(child, store);
        for (int i = 0; i < 4; ++i) mutate(parent);
        if (flatten_names(child, store) != child_before) {
            return {false, "parent edits leaked into the child"};
        }
    }
    return {};
}

Result trait_equivalence(int cases, unsigned seed) {
    Rand rand(seed);
    for (int c = 0; c < cases; ++c) {
        int fresh = 0;
        Behavior base("base");
        const int width = 1 + rand.below(5);
        for (int i = 0; i < width; ++i) {
            try {
                base.add(random_step(rand, fresh, false, {}));
            } catch (const Error&) {
            }
        }

        Trait trait;
        std::unordered_set<std::string> keys;
        const int action_count = 1 + rand.below(4);
        for (int i = 0; i < action_count; ++i) {
            auto key = rand.chance(0.6) ? random_anchor(rand, base)
                                        : "k" + std::to_string(rand.below(4));
            if (!keys.insert(key).second) continue;
            if (rand.chance(0.4)) {
                trait.actions.push_back({key, std::nullopt});
            } else {
                trait.actions.push_back({key, random_step(rand, fresh, false, {})});
            }
        }

        Behavior via_assign = base;
        Behavior via_ops = base;
        std::optional<ErrorCode> assign_error;
        std::optional<ErrorCode> ops_error;
        try {
            via_assign.assign(trait);
        } catch (const Error& e) {
            assign_error = e.code();
        }
        try {
            for (const auto& action : trait.actions) {
                if (!action.replacement.has_value()) {
                    if (via_ops.has_step(action.step_name)) via_ops.remove(action.step_name);
                } else if (via_ops.has_step(action.step_name)) {
                    via_ops.update(action.step_name, *action.replacement);
                } else {
                    via_ops.add(*action.replacement);
                }
            }
        } catch (const Error& e) {
            ops_error = e.code();
        }

        if (assign_error != ops_error) {
            return {false, "assign and expanded ops disagreed on failure in case " +
                               std::to_string(c)};
        }
        if (!assign_error && via_assign.steps() != via_ops.steps()) {
            return {false, "assign and expanded ops built different sequences in case " +
                               std::to_string(c)};
        }
    }
    return {};
}

Result trace_oracle(int cases, unsigned seed) {
    Rand rand(seed);
    const auto& registry = pool_registry();

    for (int c = 0; c < cases; ++c) {
        BehaviorStore store;
        std::vector<std::string> names;
        std::vector<int> levels;

        const int behavior_count = 1 + rand.below(6);
        for (int i = 0; i < behavior_count; ++i) {
            auto name = "c" + std::to_string(i);
            Behavior behavior(name);
            int level = 1;

            auto available = primitive_pool();
            std::vector<std::string> nestable;
            for (std::size_t j = 0; j < names.size(); ++j) {
                if (levels[j] < 5) nestable.push_back(names[j]);
            }

            const int width = 1 + rand.below(8);
            for (int w = 0; w < width; ++w) {
                if (!nestable.empty() && rand.chance(0.3)) {
                    auto pick = static_cast<std::size_t>(
                        rand.below(static_cast<int>(nestable.size())));
                    auto target = nestable[pick];
                    nestable.erase(nestable.begin() + static_cast<std::ptrdiff_t>(pick));
                    behavior.add(Step::composite(target));
                    for (std::size_t j = 0; j < names.size(); ++j) {
                        if (names[j] == target) level = std::max(level, levels[j] + 1);
                    }
                } else if (!available.empty()) {
                    auto pick = static_cast<std::size_t>(
                        rand.below(static_cast<int>(available.size())));
                    behavior.add(Step::primitive(available[pick]));
                    available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
                }
            }
            store.put(behavior);
            names.push_back(name);
            levels.push_back(level);
        }

        const auto& target = store.at(rand.pick(names));
        auto expected = flatten_names(target, store);
        auto outcome = exec(target, Value::list(), registry, store);
        if (!outcome.completed()) {
            return {false, "exec aborted on generated store in case " + std::to_string(c)};
        }
        if (outcome.result != text_list(expected)) {
            return {false, "exec result diverged from flatten [" + join(expected) +
                               "] in case " + std::to_string(c)};
        }
        if (outcome.trace != expected || trace_of(target, store) != expected) {
            return {false, "trace diverged from flatten in case " + std::to_string(c)};
        }
    }
    return {};
}

}  // namespace props
