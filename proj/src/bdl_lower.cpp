#include <unordered_set>
#include <utility>

#include "selfc/bdl.hpp"
#include "selfc/error.hpp"

namespace selfc::bdl {

namespace {

// Shared evaluator behind lower and lint. lower stops at the first error;
// lint recovers after every finding and adds file-level style checks.
class Evaluator {
public:
    Evaluator(const Registry& registry, const RefinementRegistry& refinements, bool recover)
        : registry_(registry), refinements_(refinements), recover_(recover) {}

    LowerResult run(const Ast& ast) {
        for (const auto& decl : ast.decls) {
            if (stopped_) break;
            std::visit([&](const auto& d) { evaluate(d); }, decl);
        }
        if (recover_) report_unused_traits();
        return std::move(result_);
    }

private:
    void report(Severity severity, std::string code, std::string message, SourceSpan span) {
        result_.diagnostics.push_back(
            Diagnostic{severity, std::move(code), std::move(message), span});
        if (severity == Severity::Error && !recover_) stopped_ = true;
    }

    void report(const Error& error, SourceSpan span) {
        report(Severity::Error, std::string(to_string(error.code())), error.what(), span);
    }

    // Builds the concrete step for an add/before/after/update operand.
    std::optional<Step> resolve_stepref(const StepRef& ref, const Behavior& current) {
        if (ref.is_behavior) {
            if (ref.name == current.name()) {
                report(Severity::Error, "CycleDetected",
                       "behavior \"" + ref.name + "\" cannot contain itself", ref.span);
                return std::nullopt;
            }
            if (!result_.store.contains(ref.name)) {
                report(Severity::Error, "UnknownBehavior",
                       "no behavior named \"" + ref.name + "\" declared before this point",
                       ref.span);
                return std::nullopt;
            }
            return Step::composite(ref.name);
        }
        if (!registry_.has_primitive(ref.name)) {
            report(Severity::Error, "UnknownPrimitive",
                   "no primitive named \"" + ref.name + "\"", ref.span);
            return std::nullopt;
        }
        return Step::primitive(ref.name);
    }

    void apply_refinement(Behavior& behavior, const Refinement& r) {
        switch (r.kind) {
            case Refinement::Kind::Add:
            case Refinement::Kind::Before:
            case Refinement::Kind::After:
            case Refinement::Kind::Update: {
                auto step = resolve_stepref(*r.step, behavior);
                if (!step.has_value()) return;
                if (r.kind == Refinement::Kind::Add) {
                    behavior.add(std::move(*step));
                } else if (r.kind == Refinement::Kind::Update) {
                    behavior.update(r.anchor, std::move(*step));
                } else {
                    auto position = r.kind == Refinement::Kind::Before ? Position::Before
                                                                       : Position::After;
                    behavior.insert(r.anchor, position, std::move(*step));
                }
                return;
            }
            case Refinement::Kind::Delete:
                behavior.remove(r.anchor);
                return;
            case Refinement::Kind::Map:
                behavior.map_step(r.anchor, registry_, r.wrapper);
                return;
            case Refinement::Kind::Assign: {
                auto it = result_.traits.find(r.target);
                if (it == result_.traits.end()) {
                    report(Severity::Error, "UnknownTrait",
                           "no trait named \"" + r.target + "\"", r.span);
                    return;
                }
                used_traits_.insert(r.target);
                std::vector<std::string> warnings;
                behavior.assign(it->second, &warnings);
                for (const auto& warning : warnings) {
                    report(Severity::Warning, "AbsentStep", warning, r.span);
                }
                return;
            }
            case Refinement::Kind::Apply:
                behavior.apply_refinement(refinements_, r.target);
                return;
        }
    }

    void apply_all(Behavior& behavior, const std::vector<Refinement>& refinements) {
        for (const auto& r : refinements) {
            if (stopped_) return;
            try {
                apply_refinement(behavior, r);
            } catch (const Error& error) {
                report(error, r.span);
            }
        }
    }

    void commit(Behavior behavior, SourceSpan span) {
        try {
            result_.store.put(std::move(behavior));
        } catch (const Error& error) {
            report(error, span);
        }
    }

    void evaluate(const BehaviorDecl& decl) {
        if (recover_ && result_.store.contains(decl.name)) {
            report(Severity::Warning, "Redefinition",
                   "behavior \"" + decl.name + "\" shadows an earlier declaration",
                   decl.name_span);
        }
        std::optional<Behavior> behavior;
        try {
            if (decl.extends.has_value()) {
                if (!result_.store.contains(*decl.extends)) {
                    report(Severity::Error, "UnknownParent",
                           "no behavior named \"" + *decl.extends +
                               "\" declared before this point",
                           decl.extends_span);
                    if (!recover_) return;
                    behavior.emplace(decl.name);  // degrade to a root, keep checking
                } else {
                    behavior.emplace(result_.store.at(*decl.extends).derive(decl.name));
                }
            } else {
                behavior.emplace(decl.name);
            }
        } catch (const Error& error) {
            report(error, decl.name_span);
            return;
        }
        apply_all(*behavior, decl.refinements);
        if (stopped_) return;
        commit(std::move(*behavior), decl.name_span);
    }

    void evaluate(const RefineBlock& block) {
        if (!result_.store.contains(block.target)) {
            report(Severity::Error, "UnknownBehavior",
                   "no behavior named \"" + block.target + "\" declared before this point",
                   block.name_span);
            return;
        }
        Behavior behavior = result_.store.at(block.target);
        apply_all(behavior, block.refinements);
        if (stopped_) return;
        commit(std::move(behavior), block.name_span);
    }

    void evaluate(const TraitDecl& decl) {
        if (recover_ && result_.traits.contains(decl.name)) {
            report(Severity::Warning, "Redefinition",
                   "trait \"" + decl.name + "\" shadows an earlier declaration", decl.name_span);
        }
        Trait trait;
        std::unordered_set<std::string> seen;
        for (const auto& entry : decl.entries) {
            if (!seen.insert(entry.key).second) {
                report(Severity::Error, "DuplicateStepName",
                       "trait \"" + decl.name + "\" lists step \"" + entry.key + "\" twice",
                       entry.span);
                if (!recover_) return;
                continue;
            }
            if (entry.replacement.has_value()) {
                if (!registry_.has_primitive(*entry.replacement)) {
                    report(Severity::Error, "UnknownPrimitive",
                           "no primitive named \"" + *entry.replacement + "\"", entry.span);
                    if (!recover_) return;
                    continue;
                }
                trait.actions.push_back(
                    Trait::Action{entry.key, Step::primitive(*entry.replacement)});
            } else {
                trait.actions.push_back(Trait::Action{entry.key, std::nullopt});
            }
        }
        if (stopped_) return;
        trait_decls_.emplace_back(decl.name, decl.name_span);
        result_.traits.insert_or_assign(decl.name, std::move(trait));
    }

    void report_unused_traits() {
        std::unordered_set<std::string> reported;
        for (const auto& [name, span] : trait_decls_) {
            if (!used_traits_.contains(name) && reported.insert(name).second) {
                report(Severity::Warning, "UnusedTrait",
                       "trait \"" + name + "\" is declared but never assigned", span);
            }
        }
    }

    const Registry& registry_;
    const RefinementRegistry& refinements_;
    bool recover_;
    bool stopped_ = false;
    LowerResult result_;
    std::unordered_set<std::string> used_traits_;
    std::vector<std::pair<std::string, SourceSpan>> trait_decls_;
};

}  // namespace

LowerResult lower(const Ast& ast, const Registry& registry,
                  const RefinementRegistry& refinements) {
    return Evaluator(registry, refinements, /*recover=*/false).run(ast);
}

std::vector<Diagnostic> lint(const Ast& ast, const Registry& registry,
                             const RefinementRegistry& refinements) {
    return Evaluator(registry, refinements, /*recover=*/true).run(ast).diagnostics;
}

}  // namespace selfc::bdl
