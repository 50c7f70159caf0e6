#include "selfc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "selfc/error.hpp"

namespace selfc::analysis {

namespace {

void validate_row(const GrowthRow& row) {
    if (row.level < 1 || row.parents < 1 || row.children < 1 || row.refinement_sloc < 1) {
        throw Error(ErrorCode::MalformedInput,
                    "growth row counts must be positive (level " + std::to_string(row.level) +
                        ")");
    }
}

}  // namespace

long growth_total(const GrowthRow& row) {
    validate_row(row);
    return row.parents * row.children * row.refinement_sloc;
}

FitResult fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw Error(ErrorCode::InsufficientData,
                    "exponential fit needs at least two points, got " +
                        std::to_string(points.size()));
    }
    for (const auto& [x, y] : points) {
        if (!(y > 0.0)) {
            throw Error(ErrorCode::NonPositiveY,
                        "exponential fit needs y > 0, got y = " + std::to_string(y));
        }
    }

    const auto n = static_cast<double>(points.size());
    double sum_x = 0.0;
    double sum_ln_y = 0.0;
    for (const auto& [x, y] : points) {
        sum_x += x;
        sum_ln_y += std::log(y);
    }
    const double mean_x = sum_x / n;
    const double mean_ln_y = sum_ln_y / n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = x - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - mean_ln_y);
    }
    if (sxx == 0.0) {
        throw Error(ErrorCode::InsufficientData, "exponential fit needs at least two distinct x");
    }

    FitResult fit;
    fit.b = sxy / sxx;
    const double ln_a = mean_ln_y - fit.b * mean_x;
    fit.a = std::exp(ln_a);

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (const auto& [x, y] : points) {
        const double ln_y = std::log(y);
        const double predicted = ln_a + fit.b * x;
        ss_res += (ln_y - predicted) * (ln_y - predicted);
        ss_tot += (ln_y - mean_ln_y) * (ln_y - mean_ln_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

double project(const FitResult& fit, int level) { return fit.a * std::exp(fit.b * level); }

double avg_sloc_per_feature(const FeatureCost& cost) {
    if (cost.feature_count < 1) {
        throw Error(ErrorCode::ZeroFeatures, "feature count must be at least 1");
    }
    return static_cast<double>(cost.crosscutting_sloc) / static_cast<double>(cost.feature_count);
}

HierarchyStats hierarchy_stats(const BehaviorStore& store) {
    if (store.empty()) {
        throw Error(ErrorCode::MalformedInput, "hierarchy stats need a nonempty store");
    }
    HierarchyStats stats;
    for (const auto& name : store.order()) {
        const auto& behavior = store.at(name);
        stats.depth = std::max(stats.depth, behavior.depth());
        stats.fanout.emplace(name, 0);
        if (behavior.parent().has_value()) {
            ++stats.fanout[*behavior.parent()];
        }
    }
    // Reuse counts look at final behaviors only: the ones nothing derives from.
    for (const auto& name : store.order()) {
        if (stats.fanout[name] != 0) continue;
        std::unordered_set<std::string> seen;
        for (auto& step_name : flatten_names(store.at(name), store)) {
            if (seen.insert(step_name).second) ++stats.step_reuse[step_name];
        }
    }
    return stats;
}

Behavior apply_before_advice(const Aspect& aspect, const std::string& target,
                             const Registry& registry) {
    if (aspect.advice.empty()) {
        throw Error(ErrorCode::MalformedInput, "aspect \"" + aspect.name + "\" has no advice");
    }
    for (const auto& name : aspect.advice) registry.primitive(name);
    registry.primitive(target);

    Behavior woven(aspect.name + "." + target);
    for (const auto& name : aspect.advice) woven.add(Step::primitive(name));
    woven.add(Step::primitive(target));
    return woven;
}

bool equivalent_traces(const Behavior& lhs, const Behavior& rhs, const BehaviorStore& store) {
    return flatten_names(lhs, store) == flatten_names(rhs, store);
}

namespace {

long parse_count(const std::string& field, int line_number) {
    try {
        std::size_t used = 0;
        long value = std::stol(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedInput, "growth CSV line " + std::to_string(line_number) +
                                                   ": not a count: \"" + field + "\"");
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        fields.push_back(field);
    }
    return fields;
}

}  // namespace

std::vector<GrowthRow> read_growth_csv(std::istream& input) {
    std::string line;
    if (!std::getline(input, line)) {
        throw Error(ErrorCode::MalformedInput, "growth CSV is empty");
    }
    if (split_csv_line(line) !=
        std::vector<std::string>{"level", "parents", "children", "refinement_sloc"}) {
        throw Error(ErrorCode::MalformedInput,
                    "growth CSV must start with header "
                    "\"level,parents,children,refinement_sloc\"");
    }
    std::vector<GrowthRow> rows;
    int line_number = 1;
    while (std::getline(input, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw Error(ErrorCode::MalformedInput, "growth CSV line " +
                                                       std::to_string(line_number) +
                                                       ": expected 4 fields");
        }
        GrowthRow row;
        row.level = static_cast<int>(parse_count(fields[0], line_number));
        row.parents = parse_count(fields[1], line_number);
        row.children = parse_count(fields[2], line_number);
        row.refinement_sloc = parse_count(fields[3], line_number);
        validate_row(row);
        rows.push_back(row);
    }
    return rows;
}

std::string fit_report_json(const FitResult& fit,
                            const std::vector<std::pair<int, double>>& projections) {
    nlohmann::ordered_json report;
    report["a"] = fit.a;
    report["b"] = fit.b;
    report["r2"] = fit.r2;
    auto list = nlohmann::ordered_json::array();
    for (const auto& [level, value] : projections) {
        list.push_back({{"level", level}, {"value", value}});
    }
    report["projections"] = list;
    return report.dump();
}

}  // namespace selfc::analysis
