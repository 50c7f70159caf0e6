#include <cmath>
#include <sstream>

#include "doctest.h"

#include "selfc/analysis.hpp"
#include "selfc/corpus.hpp"
#include "selfc/error.hpp"

using namespace selfc;
using namespace selfc::analysis;

TEST_CASE("growth totals multiply out") {
    CHECK(growth_total({1, 1, 2, 5}) == 10);
    CHECK(growth_total({2, 2, 5, 5}) == 50);
    CHECK(growth_total({3, 5, 10, 5}) == 250);
    CHECK(growth_total({1, 1, 2, 10}) == 20);
    CHECK(growth_total({2, 2, 5, 15}) == 150);
    CHECK(growth_total({3, 5, 10, 20}) == 1000);
    CHECK(growth_total({1, 1, 1, 1}) == 1);
    CHECK_THROWS_AS(growth_total({1, 0, 2, 5}), Error);
}

TEST_CASE("exponential fit recovers exact geometric data") {
    const std::vector<std::pair<double, double>> self_rows{{1, 10}, {2, 50}, {3, 250}};
    auto fit = fit_exponential(self_rows);
    CHECK(fit.a == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.b == doctest::Approx(std::log(5.0)).epsilon(1e-9));
    CHECK(fit.r2 == 1.0);
}

TEST_CASE("exponential fit on the steeper baseline rows") {
    const std::vector<std::pair<double, double>> aop_rows{{1, 20}, {2, 150}, {3, 1000}};
    auto fit = fit_exponential(aop_rows);
    CHECK(fit.a == doctest::Approx(2.8845).epsilon(1e-4));
    CHECK(fit.b == doctest::Approx(1.956).epsilon(1e-4));
    CHECK(fit.r2 > 0.999);
    CHECK(fit.r2 < 1.0);
}

TEST_CASE("fit rejects degenerate input") {
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1, 10}}), Error);
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1, 10}, {1, 20}}),
                    Error);
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1, 10}, {2, 0}}),
                    Error);
    CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1, 10}, {2, -4}}),
                    Error);
}

TEST_CASE("projection extrapolates the fitted curve") {
    const std::vector<std::pair<double, double>> self_rows{{1, 10}, {2, 50}, {3, 250}};
    auto fit = fit_exponential(self_rows);
    CHECK(project(fit, 4) == doctest::Approx(1250.0).epsilon(1e-3));
    CHECK(project(fit, 5) == doctest::Approx(6249.0).epsilon(1e-3));

    const std::vector<std::pair<double, double>> aop_rows{{1, 20}, {2, 150}, {3, 1000}};
    auto aop_fit = fit_exponential(aop_rows);
    CHECK(project(aop_fit, 4) == doctest::Approx(7211.0).epsilon(1e-3));
    CHECK(project(aop_fit, 5) == doctest::Approx(50988.0).epsilon(1e-3));

    FitResult flat{7.0, 0.0, 1.0};
    CHECK(project(flat, 9) == doctest::Approx(7.0));
}

TEST_CASE("per-feature averages") {
    CHECK(avg_sloc_per_feature({26, 18, 8}) == 2.25);
    CHECK(avg_sloc_per_feature({14, 6, 8}) == 0.75);
    CHECK(avg_sloc_per_feature({5, 0, 8}) == 0.0);
    CHECK_THROWS_AS(avg_sloc_per_feature({1, 1, 0}), Error);
}

TEST_CASE("hierarchy stats over the corpus") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);
    auto stats = hierarchy_stats(store);

    CHECK(stats.depth == 4);
    CHECK(stats.fanout.at("DBQueryRead") == 2);
    CHECK(stats.fanout.at("DBQueryReadUser") == 4);
    CHECK(stats.fanout.at("User.getName") == 0);

    // Brute-force oracle: count leaf flattens containing each step.
    int logging_count = 0;
    for (const auto& name : store.order()) {
        if (stats.fanout.at(name) != 0) continue;
        auto names = flatten_names(store.at(name), store);
        for (const auto& n : names) {
            if (n == "logging") {
                ++logging_count;
                break;
            }
        }
    }
    CHECK(logging_count == 8);
    CHECK(stats.step_reuse.at("logging") == 8);
    CHECK(stats.step_reuse.at("auth") == 5);
    CHECK(stats.step_reuse.at("readUserNameQuery") == 1);
}

TEST_CASE("hierarchy stats of a single root") {
    BehaviorStore store;
    store.put(Behavior("Solo"));
    auto stats = hierarchy_stats(store);
    CHECK(stats.depth == 0);
    CHECK(stats.fanout.at("Solo") == 0);
    CHECK(stats.step_reuse.empty());

    BehaviorStore empty;
    CHECK_THROWS_AS(hierarchy_stats(empty), Error);
}

TEST_CASE("before advice weaves advice then target") {
    auto registry = corpus::make_registry();
    BehaviorStore store;

    Aspect read_user{"ReadUser", {"logging", "auth", "cacheLookup", "userIdValidation"}};
    auto woven = apply_before_advice(read_user, "readUserNameQuery", registry);
    CHECK(flatten_names(woven, store) ==
          std::vector<std::string>{"logging", "auth", "cacheLookup", "userIdValidation",
                                   "readUserNameQuery"});

    Aspect no_auth{"ReadUserWithoutAuth", {"logging", "cacheLookup", "userIdValidation"}};
    auto woven_no_auth = apply_before_advice(no_auth, "readUserOnline", registry);
    auto names = flatten_names(woven_no_auth, store);
    CHECK(std::find(names.begin(), names.end(), "auth") == names.end());

    CHECK_THROWS_AS(apply_before_advice(Aspect{"empty", {}}, "auth", registry), Error);
    CHECK_THROWS_AS(apply_before_advice(Aspect{"bad", {"ghost"}}, "auth", registry), Error);
}

TEST_CASE("trace equivalence of derived and woven features") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);

    for (const auto& feature : corpus::aspect_features()) {
        CAPTURE(feature.feature);
        auto woven = apply_before_advice(feature.aspect, feature.target, registry);
        CHECK(equivalent_traces(store.at(feature.feature), woven, store));
    }

    const auto& any = store.at("User.getName");
    CHECK(equivalent_traces(any, any, store));
}

TEST_CASE("trace equivalence is an equivalence relation") {
    auto registry = corpus::make_registry();
    auto store = corpus::load(registry);
    // A slice of the store is plenty; every pair is checked both ways.
    std::vector<std::string> names(store.order().begin(), store.order().begin() + 6);

    for (const auto& x : names) {
        CHECK(equivalent_traces(store.at(x), store.at(x), store));
        for (const auto& y : names) {
            CHECK(equivalent_traces(store.at(x), store.at(y), store) ==
                  equivalent_traces(store.at(y), store.at(x), store));
            for (const auto& z : names) {
                if (equivalent_traces(store.at(x), store.at(y), store) &&
                    equivalent_traces(store.at(y), store.at(z), store)) {
                    CHECK(equivalent_traces(store.at(x), store.at(z), store));
                }
            }
        }
    }
}

TEST_CASE("growth CSV parsing") {
    std::istringstream good("level,parents,children,refinement_sloc\n1,1,2,5\n2,2,5,5\n");
    auto rows = read_growth_csv(good);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].children == 5);
    CHECK(growth_total(rows[0]) == 10);

    std::istringstream bad_header("lvl,parents,children,sloc\n1,1,2,5\n");
    CHECK_THROWS_AS(read_growth_csv(bad_header), Error);
    std::istringstream bad_field("level,parents,children,refinement_sloc\n1,x,2,5\n");
    CHECK_THROWS_AS(read_growth_csv(bad_field), Error);
    std::istringstream bad_count("level,parents,children,refinement_sloc\n1,0,2,5\n");
    CHECK_THROWS_AS(read_growth_csv(bad_count), Error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_growth_csv(empty), Error);
}

TEST_CASE("fit report shape") {
    auto json = fit_report_json({2.0, 1.5, 1.0}, {{4, 1250.0}});
    CHECK(json == R"({"a":2.0,"b":1.5,"r2":1.0,"projections":[{"level":4,"value":1250.0}]})");
}
