#include "selfc/corpus.hpp"

#include <sstream>

#include "selfc/bdl.hpp"
#include "selfc/error.hpp"

namespace selfc::corpus {

std::string_view corpus_bdl() {
    // Connection management -> operation -> object -> feature, with the
    // feature level carrying the per-feature variability.
    return R"(# Database read features for users and posts.

behavior DBQuery {
  add logging
}

behavior DBQueryRead extends DBQuery {
  add auth
  add cacheLookup
}

behavior DBQueryReadUser extends DBQueryRead {
  add userIdValidation
}

behavior User.getName extends DBQueryReadUser {
  add readUserNameQuery
}

behavior User.getProfile extends DBQueryReadUser {
  add readUserProfileQuery
}

behavior User.getPosts extends DBQueryReadUser {
  add readUserPosts
}

behavior User.getOnline extends DBQueryReadUser {
  add readUserOnline
  delete auth
}

behavior DBQueryReadPost extends DBQueryRead {
  add postNumberValidation
  add rangeValidation
}

behavior DBQueryReadPostRecents extends DBQueryReadPost {
  add ReadRecentsQuery
}

behavior DBQueryReadPostPopular extends DBQueryReadPost {
  add ReadPopularQuery
}

behavior Post.getRecentSummary extends DBQueryReadPostRecents {
  update ReadRecentsQuery ReadRecentsSummaryQuery
}

behavior Post.getRecentsWithoutImage extends DBQueryReadPostRecents {
  update ReadRecentsQuery ReadRecentsSummaryWithoutImageQuery
}

behavior Post.getPopularSummary extends DBQueryReadPostPopular {
  update ReadPopularQuery ReadPopularSummaryQuery
  delete auth
}

behavior Post.getPopularWithoutImage extends DBQueryReadPostPopular {
  update ReadPopularQuery ReadPopularWithoutImageQuery
  delete auth
}
)";
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& golden_traces() {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> traces = {
        {"User.getName",
         {"logging", "auth", "cacheLookup", "userIdValidation", "readUserNameQuery"}},
        {"User.getProfile",
         {"logging", "auth", "cacheLookup", "userIdValidation", "readUserProfileQuery"}},
        {"User.getPosts",
         {"logging", "auth", "cacheLookup", "userIdValidation", "readUserPosts"}},
        {"User.getOnline", {"logging", "cacheLookup", "userIdValidation", "readUserOnline"}},
        {"Post.getRecentSummary",
         {"logging", "auth", "cacheLookup", "postNumberValidation", "rangeValidation",
          "ReadRecentsSummaryQuery"}},
        {"Post.getRecentsWithoutImage",
         {"logging", "auth", "cacheLookup", "postNumberValidation", "rangeValidation",
          "ReadRecentsSummaryWithoutImageQuery"}},
        {"Post.getPopularSummary",
         {"logging", "cacheLookup", "postNumberValidation", "rangeValidation",
          "ReadPopularSummaryQuery"}},
        {"Post.getPopularWithoutImage",
         {"logging", "cacheLookup", "postNumberValidation", "rangeValidation",
          "ReadPopularWithoutImageQuery"}},
    };
    return traces;
}

Registry make_registry() {
    Registry registry;
    for (const char* name :
         {"logging", "auth", "cacheLookup", "userIdValidation", "postNumberValidation",
          "rangeValidation", "readUserNameQuery", "readUserProfileQuery", "readUserPosts",
          "readUserOnline", "ReadRecentsQuery", "ReadPopularQuery", "ReadRecentsSummaryQuery",
          "ReadRecentsSummaryWithoutImageQuery", "ReadPopularSummaryQuery",
          "ReadPopularWithoutImageQuery",
          // write-side demo primitives
          "validate", "monit", "writeBack", "cacheMonit", "beforeValidate", "afterValidate",
          "createUserSQLExec", "createMsgSQLExec", "2factorAuth", "geographicalBlock"}) {
        registry.register_primitive(trace_primitive(name));
    }
    register_builtin_wrappers(registry);
    registry.register_wrapper("validateWrapper", [](const Primitive& inner) { return inner; });
    registry.freeze();
    return registry;
}

BehaviorStore load(const Registry& registry) {
    auto parsed = bdl::parse(corpus_bdl());
    if (bdl::has_errors(parsed.diagnostics)) {
        throw Error(ErrorCode::MalformedInput, "corpus failed to parse: " +
                                                   parsed.diagnostics.front().message);
    }
    auto lowered = bdl::lower(parsed.ast, registry);
    if (!lowered.ok()) {
        for (const auto& d : lowered.diagnostics) {
            if (d.severity == bdl::Severity::Error) {
                throw Error(ErrorCode::MalformedInput, "corpus failed to lower: " + d.message);
            }
        }
    }
    return std::move(lowered.store);
}

const std::vector<AspectFeature>& aspect_features() {
    static const std::vector<AspectFeature> features = [] {
        analysis::Aspect read_user{"ReadUser",
                                   {"logging", "auth", "cacheLookup", "userIdValidation"}};
        analysis::Aspect read_user_no_auth{"ReadUserWithoutAuth",
                                           {"logging", "cacheLookup", "userIdValidation"}};
        analysis::Aspect read_post{"ReadPost",
                                   {"logging", "auth", "cacheLookup", "postNumberValidation",
                                    "rangeValidation"}};
        analysis::Aspect read_post_no_auth{
            "ReadPostWithoutAuth",
            {"logging", "cacheLookup", "postNumberValidation", "rangeValidation"}};
        return std::vector<AspectFeature>{
            {"User.getName", read_user, "readUserNameQuery", true},
            {"User.getProfile", read_user, "readUserProfileQuery", true},
            {"User.getPosts", read_user, "readUserPosts", true},
            {"User.getOnline", read_user_no_auth, "readUserOnline", false},
            {"Post.getRecentSummary", read_post, "ReadRecentsSummaryQuery", true},
            {"Post.getRecentsWithoutImage", read_post, "ReadRecentsSummaryWithoutImageQuery",
             true},
            {"Post.getPopularSummary", read_post_no_auth, "ReadPopularSummaryQuery", false},
            {"Post.getPopularWithoutImage", read_post_no_auth, "ReadPopularWithoutImageQuery",
             false},
        };
    }();
    return features;
}

std::vector<std::string> verify(const BehaviorStore& store, bool& all_ok) {
    std::vector<std::string> lines;
    all_ok = true;
    for (const auto& [feature, expected] : golden_traces()) {
        if (!store.contains(feature)) {
            all_ok = false;
            lines.push_back("mismatch " + feature + ": behavior missing from store");
            continue;
        }
        auto actual = flatten_names(store.at(feature), store);
        if (actual == expected) {
            lines.push_back("ok " + feature);
            continue;
        }
        all_ok = false;
        std::ostringstream line;
        line << "mismatch " << feature << ": expected [";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            line << (i ? ", " : "") << expected[i];
        }
        line << "] got [";
        for (std::size_t i = 0; i < actual.size(); ++i) {
            line << (i ? ", " : "") << actual[i];
        }
        line << "]";
        lines.push_back(line.str());
    }
    return lines;
}

}  // namespace selfc::corpus
