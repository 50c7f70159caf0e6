#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "selfc/analysis.hpp"
#include "selfc/bdl.hpp"
#include "selfc/behavior.hpp"
#include "selfc/corpus.hpp"
#include "selfc/error.hpp"
#include "selfc/executor.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw selfc::Error(selfc::ErrorCode::MalformedInput, "cannot open \"" + path + "\"");
    }
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

selfc::RefinementRegistry make_refinements() {
    selfc::RefinementRegistry refinements;
    // Demo custom refinement: drop every step whose name starts with "add".
    refinements.register_refinement("deleteAddition", [](std::vector<selfc::Step>& steps) {
        std::erase_if(steps, [](const selfc::Step& s) { return s.name.rfind("add", 0) == 0; });
    });
    refinements.freeze();
    return refinements;
}

void print_diagnostics(const std::vector<selfc::bdl::Diagnostic>& diagnostics,
                       const std::string& file) {
    for (const auto& d : diagnostics) {
        std::cerr << selfc::bdl::format(d, file) << '\n';
    }
}

// Parses and lowers a BDL file against the demo registry; nonzero exit
// status is reported through the return flag.
bool load_file(const std::string& path, const selfc::Registry& registry,
               const selfc::RefinementRegistry& refinements, selfc::BehaviorStore& store) {
    auto source = read_file(path);
    auto parsed = selfc::bdl::parse(source);
    print_diagnostics(parsed.diagnostics, path);
    if (selfc::bdl::has_errors(parsed.diagnostics)) return false;
    auto lowered = selfc::bdl::lower(parsed.ast, registry, refinements);
    print_diagnostics(lowered.diagnostics, path);
    if (!lowered.ok()) return false;
    store = std::move(lowered.store);
    return true;
}

std::string names_json(const std::vector<std::string>& names) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& name : names) array.push_back(name);
    return array.dump();
}

int run_lint(const std::string& file) {
    auto source = read_file(file);
    auto parsed = selfc::bdl::parse(source);
    auto registry = selfc::corpus::make_registry();
    auto refinements = make_refinements();
    auto diagnostics = parsed.diagnostics;
    for (auto& d : selfc::bdl::lint(parsed.ast, registry, refinements)) {
        diagnostics.push_back(std::move(d));
    }
    print_diagnostics(diagnostics, file);
    return selfc::bdl::has_errors(diagnostics) ? kExitDiagnostics : kExitOk;
}

void print_tree(const selfc::BehaviorStore& store, const std::string& name, int indent) {
    std::cout << std::string(static_cast<std::size_t>(indent) * 2, ' ') << name << '\n';
    for (const auto& child : store.order()) {
        const auto& behavior = store.at(child);
        if (behavior.parent() == name) print_tree(store, child, indent + 1);
    }
}

int run_tree(const std::string& file, bool dot) {
    auto registry = selfc::corpus::make_registry();
    auto refinements = make_refinements();
    selfc::BehaviorStore store;
    if (!load_file(file, registry, refinements, store)) return kExitDiagnostics;
    if (dot) {
        std::cout << "digraph behaviors {\n";
        for (const auto& name : store.order()) {
            std::cout << "  \"" << name << "\";\n";
        }
        for (const auto& name : store.order()) {
            const auto& behavior = store.at(name);
            if (behavior.parent().has_value() && store.contains(*behavior.parent())) {
                std::cout << "  \"" << *behavior.parent() << "\" -> \"" << name << "\";\n";
            }
        }
        std::cout << "}\n";
        return kExitOk;
    }
    for (const auto& name : store.order()) {
        const auto& behavior = store.at(name);
        bool root = !behavior.parent().has_value() || !store.contains(*behavior.parent());
        if (root) print_tree(store, name, 0);
    }
    return kExitOk;
}

int run_flatten(const std::string& file, const std::string& behavior_name) {
    auto registry = selfc::corpus::make_registry();
    auto refinements = make_refinements();
    selfc::BehaviorStore store;
    if (!load_file(file, registry, refinements, store)) return kExitDiagnostics;
    std::cout << names_json(selfc::flatten_names(store.at(behavior_name), store)) << '\n';
    return kExitOk;
}

int run_exec(const std::string& file, const std::string& behavior_name,
             const std::string& input, bool trace) {
    auto registry = selfc::corpus::make_registry();
    auto refinements = make_refinements();
    selfc::BehaviorStore store;
    if (!load_file(file, registry, refinements, store)) return kExitDiagnostics;
    auto initial = selfc::Value::from_json(input);
    auto outcome = selfc::exec(store.at(behavior_name), initial, registry, store);
    if (trace) std::cout << names_json(outcome.trace) << '\n';
    if (!outcome.completed()) {
        std::cerr << "error[StepFailure]: behavior \"" << behavior_name
                  << "\" aborted at step \"" << outcome.failed_step
                  << "\": " << outcome.error << '\n';
        return kExitDiagnostics;
    }
    std::cout << outcome.result.to_json() << '\n';
    return kExitOk;
}

int run_fit(const std::string& data, const std::vector<int>& levels) {
    std::ifstream input(data);
    if (!input) {
        throw selfc::Error(selfc::ErrorCode::MalformedInput, "cannot open \"" + data + "\"");
    }
    auto rows = selfc::analysis::read_growth_csv(input);
    std::vector<std::pair<double, double>> points;
    points.reserve(rows.size());
    for (const auto& row : rows) {
        points.emplace_back(row.level, static_cast<double>(selfc::analysis::growth_total(row)));
    }
    auto fit = selfc::analysis::fit_exponential(points);
    std::vector<std::pair<int, double>> projections;
    for (int level : levels) projections.emplace_back(level, selfc::analysis::project(fit, level));
    std::cerr << "note: r2 is measured on ln(y); the regression is log-linear\n";
    std::cout << selfc::analysis::fit_report_json(fit, projections) << '\n';
    return kExitOk;
}

int run_growth(const std::vector<long>& parents, const std::vector<long>& children,
               std::vector<long> refine, const std::vector<int>& levels) {
    if (parents.size() != children.size() || parents.empty()) {
        throw selfc::Error(selfc::ErrorCode::MalformedInput,
                           "--parents and --children need the same nonzero length");
    }
    if (refine.size() == 1) refine.assign(parents.size(), refine.front());
    if (refine.size() != parents.size()) {
        throw selfc::Error(selfc::ErrorCode::MalformedInput,
                           "--refine needs one value, or one per level");
    }
    std::vector<selfc::analysis::GrowthRow> rows;
    std::vector<std::pair<double, double>> points;
    auto table = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < parents.size(); ++i) {
        selfc::analysis::GrowthRow row{static_cast<int>(i) + 1, parents[i], children[i],
                                       refine[i]};
        auto total = selfc::analysis::growth_total(row);
        points.emplace_back(row.level, static_cast<double>(total));
        table.push_back({{"level", row.level},
                         {"parents", row.parents},
                         {"children", row.children},
                         {"refinement_sloc", row.refinement_sloc},
                         {"total", total}});
    }
    auto fit = selfc::analysis::fit_exponential(points);
    nlohmann::ordered_json report;
    report["rows"] = table;
    report["fit"] = {{"a", fit.a}, {"b", fit.b}, {"r2", fit.r2}};
    auto projections = nlohmann::ordered_json::array();
    for (int level : levels) {
        projections.push_back({{"level", level}, {"value", selfc::analysis::project(fit, level)}});
    }
    report["projections"] = projections;
    std::cerr << "note: r2 is measured on ln(y); the regression is log-linear\n";
    std::cout << report.dump() << '\n';
    return kExitOk;
}

int run_corpus_verify() {
    auto registry = selfc::corpus::make_registry();
    auto store = selfc::corpus::load(registry);
    bool all_ok = false;
    for (const auto& line : selfc::corpus::verify(store, all_ok)) {
        std::cout << line << '\n';
    }
    return all_ok ? kExitOk : kExitDiagnostics;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavior pipeline toolkit: lint, inspect, run, and analyze "
                 "declarative step pipelines"};
    app.require_subcommand(1);

    std::string file;
    std::string behavior_name;
    std::string input = "[]";
    std::string data;
    bool dot = false;
    bool trace = false;
    std::vector<int> levels;
    std::vector<long> parents;
    std::vector<long> children;
    std::vector<long> refine;

    auto* lint_cmd = app.add_subcommand("lint", "Check a BDL file and report diagnostics");
    lint_cmd->add_option("file", file, "BDL file")->required();

    auto* tree_cmd = app.add_subcommand("tree", "Show the derivation hierarchy of a BDL file");
    tree_cmd->add_option("file", file, "BDL file")->required();
    tree_cmd->add_flag("--dot", dot, "Emit Graphviz DOT instead of text");

    auto* flatten_cmd =
        app.add_subcommand("flatten", "Print a behavior's flattened step names");
    flatten_cmd->add_option("file", file, "BDL file")->required();
    flatten_cmd->add_option("behavior", behavior_name, "Behavior name")->required();

    auto* exec_cmd = app.add_subcommand("exec", "Execute a behavior");
    exec_cmd->add_option("file", file, "BDL file")->required();
    exec_cmd->add_option("behavior", behavior_name, "Behavior name")->required();
    exec_cmd->add_option("--input", input, "Initial value as JSON (default: empty list)");
    exec_cmd->add_flag("--trace", trace, "Print the executed step names before the result");

    auto* fit_cmd = app.add_subcommand("fit", "Fit an exponential to growth data");
    fit_cmd->add_option("--data", data, "Growth CSV (level,parents,children,refinement_sloc)")
        ->required();
    fit_cmd->add_option("--project", levels, "Levels to project")->delimiter(',');

    auto* growth_cmd =
        app.add_subcommand("growth", "Compute per-level growth totals, fit, and project");
    growth_cmd->add_option("--parents", parents, "Parent count per level")
        ->required()
        ->delimiter(',');
    growth_cmd->add_option("--children", children, "Child count per level")
        ->required()
        ->delimiter(',');
    growth_cmd->add_option("--refine", refine, "Refinement SLOC per level (or one for all)")
        ->required()
        ->delimiter(',');
    growth_cmd->add_option("--levels", levels, "Levels to project")->delimiter(',');

    auto* corpus_cmd = app.add_subcommand("corpus", "Built-in demo corpus");
    auto* verify_cmd =
        corpus_cmd->add_subcommand("verify", "Check corpus traces against the goldens");
    corpus_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (lint_cmd->parsed()) return run_lint(file);
        if (tree_cmd->parsed()) return run_tree(file, dot);
        if (flatten_cmd->parsed()) return run_flatten(file, behavior_name);
        if (exec_cmd->parsed()) return run_exec(file, behavior_name, input, trace);
        if (fit_cmd->parsed()) return run_fit(data, levels);
        if (growth_cmd->parsed()) return run_growth(parents, children, refine, levels);
        if (verify_cmd->parsed()) return run_corpus_verify();
    } catch (const selfc::Error& e) {
        std::cerr << "error[" << selfc::to_string(e.code()) << "]: " << e.what() << '\n';
        return kExitDiagnostics;
    }
    return kExitUsage;
}
