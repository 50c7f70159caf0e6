#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfc/analysis.hpp"
#include "selfc/behavior.hpp"
#include "selfc/registry.hpp"

namespace selfc::corpus {

/// The built-in demo hierarchy: database read features for users and posts,
/// derived through a four-level chain of shared concerns.
std::string_view corpus_bdl();

/// Hand-derived step-name sequences the corpus features must flatten to,
/// frozen ahead of the implementation and never computed from it.
const std::vector<std::pair<std::string, std::vector<std::string>>>& golden_traces();

/// Registry with every demo primitive installed as a trace primitive and
/// the stock wrappers registered, already frozen.
Registry make_registry();

/// Parses and lowers corpus_bdl(); throws on any diagnostic error.
BehaviorStore load(const Registry& registry);

/// One feature rebuilt on the aspect baseline: the advice list plus target
/// that weaves into the same pipeline the derived behavior flattens to.
struct AspectFeature {
    std::string feature;               // behavior name in the corpus store
    analysis::Aspect aspect;
    std::string target;
    bool authenticated = true;
};

const std::vector<AspectFeature>& aspect_features();

/// Compares every corpus feature against its golden trace. Returns one
/// "ok <name>" or "mismatch <name> ..." line per feature.
std::vector<std::string> verify(const BehaviorStore& store, bool& all_ok);

}  // namespace selfc::corpus
