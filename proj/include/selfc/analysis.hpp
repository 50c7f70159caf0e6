#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selfc/behavior.hpp"
#include "selfc/registry.hpp"

namespace selfc::analysis {

/// One inheritance level of the growth model: how many parent behaviors
/// exist, how many children they spawn, and the refinement line count each
/// child needs.
struct GrowthRow {
    int level = 1;
    long parents = 1;
    long children = 1;
    long refinement_sloc = 1;
};

/// Total line cost of one level: parents x children x per-refinement lines.
long growth_total(const GrowthRow& row);

/// Coefficients of y = a * e^(b*x) with the goodness of fit measured on
/// ln(y), where the regression actually happens.
struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double r2 = 0.0;
};

/// Log-linear least squares: fits ln(y) = ln(a) + b*x. Needs at least two
/// points with distinct x and strictly positive y.
FitResult fit_exponential(std::span<const std::pair<double, double>> points);

/// Extrapolates the fitted curve: a * e^(b*level).
double project(const FitResult& fit, int level);

/// Line counts of one implementation approach over a feature set.
struct FeatureCost {
    long coordination_sloc = 0;
    long crosscutting_sloc = 0;
    long feature_count = 1;
};

/// Cross-cutting lines spent per feature.
double avg_sloc_per_feature(const FeatureCost& cost);

/// Shape measurements over a behavior store.
struct HierarchyStats {
    int depth = 0;                           // max derivation depth
    std::map<std::string, int> fanout;       // children derived per behavior
    std::map<std::string, int> step_reuse;   // leaf behaviors whose flatten holds the step
};

HierarchyStats hierarchy_stats(const BehaviorStore& store);

/// A named list of primitives to run before a target operation.
struct Aspect {
    std::string name;
    std::vector<std::string> advice;
};

/// Builds the advice-then-target pipeline an aspect weaver would produce:
/// the returned behavior flattens to advice names followed by the target.
Behavior apply_before_advice(const Aspect& aspect, const std::string& target,
                             const Registry& registry);

/// True iff both behaviors flatten to the same step-name sequence.
bool equivalent_traces(const Behavior& lhs, const Behavior& rhs, const BehaviorStore& store);

/// Reads rows from CSV with header "level,parents,children,refinement_sloc".
std::vector<GrowthRow> read_growth_csv(std::istream& input);

/// {"a": .., "b": .., "r2": .., "projections": [{"level": .., "value": ..}]}
std::string fit_report_json(const FitResult& fit,
                            const std::vector<std::pair<int, double>>& projections);

}  // namespace selfc::analysis
