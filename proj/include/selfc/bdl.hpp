#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "selfc/behavior.hpp"
#include "selfc/registry.hpp"

namespace selfc::bdl {

/// Half-open source range with 1-based line/column of its start.
struct SourceSpan {
    int line = 1;
    int column = 1;
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;
};

/// "file:line:col: severity[code]: message"
std::string format(const Diagnostic& diagnostic, std::string_view file);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// A step operand: a primitive name, or "behavior NAME" for a composite.
struct StepRef {
    std::string name;
    bool is_behavior = false;
    SourceSpan span;
};

/// One refinement statement inside a behavior declaration or refine block.
struct Refinement {
    enum class Kind { Add, Before, After, Update, Delete, Map, Assign, Apply };

    Kind kind = Kind::Add;
    std::string anchor;            // before/after/update/delete/map
    std::optional<StepRef> step;   // add/before/after/update
    std::string wrapper;           // map
    std::string target;            // assign: trait name; apply: refinement name
    SourceSpan span;
};

struct BehaviorDecl {
    std::string name;
    std::optional<std::string> extends;
    std::vector<Refinement> refinements;
    SourceSpan span;
    SourceSpan name_span;
    SourceSpan extends_span;
};

struct TraitEntry {
    std::string key;
    std::optional<std::string> replacement;  // empty means null (remove)
    SourceSpan span;
};

struct TraitDecl {
    std::string name;
    std::vector<TraitEntry> entries;
    SourceSpan span;
    SourceSpan name_span;
};

struct RefineBlock {
    std::string target;
    std::vector<Refinement> refinements;
    SourceSpan span;
    SourceSpan name_span;
};

using Decl = std::variant<BehaviorDecl, TraitDecl, RefineBlock>;

struct Ast {
    std::vector<Decl> decls;
};

struct ParseResult {
    Ast ast;
    std::vector<Diagnostic> diagnostics;
};

/// Parses BDL source. Syntax errors become diagnostics and parsing resumes
/// at the next statement boundary, so the result always carries an AST.
ParseResult parse(std::string_view source);

struct LowerResult {
    BehaviorStore store;
    std::unordered_map<std::string, Trait> traits;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

/// Evaluates declarations top to bottom through the behavior operations.
/// "extends" derives from the named parent; forward references are errors.
/// Stops at the first error-severity diagnostic.
LowerResult lower(const Ast& ast, const Registry& registry,
                  const RefinementRegistry& refinements = {});

/// Static checks over the whole file: unknown anchors and names, duplicate
/// steps, composite cycles, unused traits, and redefinition shadowing.
/// Unlike lower it recovers after every finding and reports them all.
std::vector<Diagnostic> lint(const Ast& ast, const Registry& registry,
                             const RefinementRegistry& refinements = {});

/// Deterministic pretty-printer: one behavior declaration per store entry,
/// in store order, rebuilt from its final step sequence. Lowering the output
/// reproduces every behavior's flatten sequence. Steps renamed away from
/// their payload name have no BDL spelling and raise an error.
std::string render(const BehaviorStore& store);

}  // namespace selfc::bdl
