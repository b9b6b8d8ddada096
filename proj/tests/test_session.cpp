#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qtorus/verify.hpp"

using namespace qtorus;

TEST_CASE("range strings parse or are rejected") {
    CHECK(parse_range("-2:2") == std::pair<int32_t, int32_t>{-2, 2});
    CHECK(parse_range("0:0") == std::pair<int32_t, int32_t>{0, 0});
    CHECK(parse_range("1:-1") == std::pair<int32_t, int32_t>{1, -1});
    CHECK_THROWS_AS(parse_range("-2"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:b"), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:3"), ConfigError);
    CHECK_THROWS_AS(parse_range(""), ConfigError);
    CHECK_THROWS_AS(parse_range("1: 2"), ConfigError);
}

TEST_CASE("configuration guardrails reject out-of-scale sessions") {
    SessionConfig ok;
    CHECK_NOTHROW(ok.validate());

    SessionConfig c = ok;
    c.tau = 2;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = ok;
    c.N = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.N = 17;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = ok;
    c.lo = -17;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.lo = -2;
    c.hi = 17;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    c = ok;
    c.degree_bound = 9;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.degree_bound = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);

    // An empty window is allowed by validation: table export uses it.
    c = ok;
    c.lo = 2;
    c.hi = -2;
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("suite names are fixed and unknown suites are rejected") {
    const auto& names = suite_names();
    REQUIRE(names.size() == 5);
    CHECK(names[0] == "generators");
    CHECK(names[1] == "pairs");
    CHECK(names[2] == "operators");
    CHECK(names[3] == "action");
    CHECK(names[4] == "thetasum");

    SessionConfig cfg;
    CHECK_THROWS_AS(run_suite("nonsense", cfg), ConfigError);
    SessionConfig bad;
    bad.degree_bound = 99;
    CHECK_THROWS_AS(run_suite("thetasum", bad), ConfigError);
}

TEST_CASE("theta power sum suite passes on its fixed grid") {
    SessionConfig cfg;
    SuiteResult r = run_suite("thetasum", cfg);
    CHECK(r.ok);
    CHECK(r.report["schema_version"] == 1);
    CHECK(r.report["suite"] == "thetasum");
    CHECK(r.report["config"]["qmode"] == "generic");
    CHECK(r.report["result"]["checked"] == 169);
    CHECK(r.report["result"]["failures"].empty());
    CHECK(r.report["ok"] == true);

    cfg.mode = QMode::root_of_unity(2);
    CHECK(run_suite("thetasum", cfg).ok);
}

TEST_CASE("the combined suite passes on a small session and reports the centers") {
    SessionConfig cfg;
    cfg.N = 1;
    cfg.lo = -1;
    cfg.hi = 1;
    cfg.degree_bound = 2;
    cfg.extra_samples = 2;
    SuiteResult r = run_suite("all", cfg);
    CHECK(r.ok);
    CHECK(r.report["suite"] == "all");
    CHECK(r.report["ok"] == true);
    REQUIRE(r.report["result"]["suites"].size() == 5);

    const auto& suites = r.report["result"]["suites"];
    for (size_t k = 0; k < 5; ++k) {
        CHECK(suites[k]["suite"] == suite_names()[k]);
        CHECK(suites[k]["ok"] == true);
    }

    // The pair suite records the one corrected identity.
    const auto& pairs = suites[1]["result"];
    REQUIRE(pairs["corrections"].size() == 1);
    CHECK(pairs["corrections"][0]["identity"] == "a*a*.ae");

    // The action suite pins gamma(0) = 1/2 and leaves gamma_y unconstrained.
    const auto& action = suites[3]["result"];
    CHECK(action["gamma_y"] == "0");
    CHECK(action["gamma_y_constrained"] == false);
    CHECK(action["gamma0_is_minus_half"] == false);
    bool saw_zero = false;
    for (const auto& cv : action["central_values"])
        if (cv["u"] == 0) {
            saw_zero = true;
            CHECK(cv["value"] == "1/2");
        }
    CHECK(saw_zero);
}

TEST_CASE("suite reports are byte-identical across runs") {
    SessionConfig cfg;
    cfg.N = 1;
    cfg.lo = -1;
    cfg.hi = 1;
    cfg.degree_bound = 2;
    cfg.seed = 7;
    SuiteResult a = run_suite("pairs", cfg);
    SuiteResult b = run_suite("pairs", cfg);
    CHECK(a.report.dump() == b.report.dump());

    cfg.parallel = false;
    SuiteResult c = run_suite("pairs", cfg);
    CHECK(a.report.dump() == c.report.dump());
}

TEST_CASE("table export is windowed, deterministic, and shaped as promised") {
    SessionConfig cfg;
    cfg.N = 1;
    cfg.lo = 0;
    cfg.hi = 0;

    nlohmann::ordered_json t = export_tables(cfg);
    REQUIRE(t.is_array());
    CHECK(!t.empty());

    bool saw_gh = false;
    for (const auto& e : t) {
        REQUIRE(e.contains("a"));
        REQUIRE(e.contains("b"));
        REQUIRE(e.contains("bracket"));
        if (e["a"]["family"] == "g" && e["b"]["family"] == "h") {
            CHECK(e["a"]["i"] == 1);
            CHECK(e["b"]["i"] == 1);
            saw_gh = true;
        }
    }
    CHECK(saw_gh);

    CHECK(export_tables(cfg).dump() == t.dump());

    SessionConfig empty = cfg;
    empty.lo = 1;
    empty.hi = -1;
    nlohmann::ordered_json none = export_tables(empty);
    CHECK(none.is_array());
    CHECK(none.empty());
}
