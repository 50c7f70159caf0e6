#include "doctest.h"

#include "selfc/corpus.hpp"
#include "selfc/executor.hpp"

using namespace selfc;

TEST_CASE("corpus features flatten to their golden traces") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);

    for (const auto& [feature, expected] : corpus::golden_traces()) {
        CAPTURE(feature);
        REQUIRE(store.contains(feature));
        CHECK(flatten_names(store.at(feature), store) == expected);
    }

    bool all_ok = false;
    auto lines = corpus::verify(store, all_ok);
    CHECK(all_ok);
    CHECK(lines.size() == corpus::golden_traces().size());
}

TEST_CASE("corpus features execute to their golden traces") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);

    for (const auto& [feature, expected] : corpus::golden_traces()) {
        CAPTURE(feature);
        auto outcome = exec(store.at(feature), Value::list(), registry, store);
        REQUIRE(outcome.completed());
        CHECK(outcome.result == text_list(expected));
        CHECK(outcome.trace == expected);
    }
}

TEST_CASE("corpus hierarchy is four levels deep") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);
    CHECK(store.at("DBQuery").depth() == 0);
    CHECK(store.at("DBQueryRead").depth() == 1);
    CHECK(store.at("DBQueryReadUser").depth() == 2);
    CHECK(store.at("User.getName").depth() == 3);
    CHECK(store.at("Post.getPopularWithoutImage").depth() == 4);
}

// The full write-side lifecycle: construct, inherit, refine twice, execute.
TEST_CASE("write pipeline lifecycle") {
    auto registry = corpus::make_registry();
    BehaviorStore store;

    Behavior db_query("DBQuery");
    db_query.add(Step::primitive("auth"))
        .add(Step::primitive("validate"))
        .add(Step::primitive("monit"));

    auto write_query = db_query.derive("WriteDBQuery");
    write_query.add(Step::primitive("writeBack"));
    write_query.update("monit", Step::primitive("cacheMonit"));
    write_query.insert("validate", Position::Before, Step::primitive("beforeValidate"));
    write_query.insert("validate", Position::After, Step::primitive("afterValidate"));
    write_query.map_step("validate", registry, "validateWrapper");
    write_query.remove("beforeValidate");

    CHECK(trace_of(write_query, store) ==
          std::vector<std::string>{"auth", "validate", "afterValidate", "cacheMonit",
                                   "writeBack"});

    auto create_post = write_query.derive("CreatePost");
    auto create_message = write_query.derive("CreateMessage");
    create_post.add(Step::primitive("createUserSQLExec"));
    create_message.add(Step::primitive("createMsgSQLExec"));
    create_post.update("auth", Step::primitive("2factorAuth"));
    create_message.insert("auth", Position::Before, Step::primitive("geographicalBlock"));

    const std::vector<std::string> create_post_golden{
        "2factorAuth", "validate", "afterValidate", "cacheMonit", "writeBack",
        "createUserSQLExec"};
    const std::vector<std::string> create_message_golden{
        "geographicalBlock", "auth",     "validate",         "afterValidate",
        "cacheMonit",        "writeBack", "createMsgSQLExec"};

    CHECK(trace_of(create_post, store) == create_post_golden);
    CHECK(trace_of(create_message, store) == create_message_golden);

    auto post_outcome = exec(create_post, Value::list(), registry, store);
    REQUIRE(post_outcome.completed());
    CHECK(post_outcome.result == text_list(create_post_golden));

    auto message_outcome = exec(create_message, Value::list(), registry, store);
    REQUIRE(message_outcome.completed());
    CHECK(message_outcome.result == text_list(create_message_golden));

    // The refinements never touched the parent pipelines.
    CHECK(trace_of(db_query, store) == std::vector<std::string>{"auth", "validate", "monit"});
    CHECK(trace_of(write_query, store) ==
          std::vector<std::string>{"auth", "validate", "afterValidate", "cacheMonit",
                                   "writeBack"});
}
