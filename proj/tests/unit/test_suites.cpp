#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "critline/suites.hpp"

using namespace critline;
using namespace critline::suites;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("range parsing") {
    CHECK(parse_range("1..5") == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(parse_range("1..9:4") == std::vector<double>{1, 5, 9});
    CHECK(parse_range("0.5") == std::vector<double>{0.5});
    CHECK(parse_range("10,20,40") == std::vector<double>{10, 20, 40});
    CHECK_THROWS_AS(parse_range(""), ConfigError);
    CHECK_THROWS_AS(parse_range("5..1"), ConfigError);
    CHECK_THROWS_AS(parse_range("abc"), ConfigError);
    Grid g;
    parse_grid("q=7,11,N=1..3", g);
    CHECK(g.at("q") == std::vector<double>{7, 11});
    CHECK(g.at("N") == std::vector<double>{1, 2, 3});
    Grid e;
    CHECK_THROWS_AS(parse_grid("", e), ConfigError);
    CHECK_THROWS_AS(parse_grid("q=", e), ConfigError);
}

TEST_CASE("suite registry") {
    std::set<std::string> ids;
    for (const auto& s : suite_list()) {
        ids.insert(s.id);
        CHECK(!s.statement.empty());
    }
    CHECK(ids == std::set<std::string>{"lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma6", "lemma7", "lemma9",
                                       "lemma10", "theorem1", "exponent-scan"});
    CHECK_THROWS_AS(suite_info("lemma8"), ConfigError);
    SuiteConfig bad{.suite = "lemma7"};
    bad.grid["nonsense"] = {1};
    CHECK_THROWS_AS(run_suite(bad, report::Manifest{}), ConfigError);
}

TEST_CASE("deterministic reports") {
    const auto dir = std::filesystem::temp_directory_path() / "critline_test_suites";
    std::filesystem::remove_all(dir);
    SuiteConfig c{.suite = "lemma9", .seed = 3};
    c.grid["q"] = {15, 21};
    c.grid["vmax"] = {4};
    const report::Manifest m;
    const auto a = run_suite(c, m);
    a.write(dir / "a");
    c.jobs = 3;
    const auto b = run_suite(c, m);
    b.write(dir / "b");
    CHECK(slurp(dir / "a" / "report.json") == slurp(dir / "b" / "report.json"));
    CHECK(slurp(dir / "a" / "report.csv") == slurp(dir / "b" / "report.csv"));
    CHECK(a.cases > 0);
    CHECK(exit_code(a) == kExitPass);
    std::filesystem::remove_all(dir);
}

TEST_CASE("failure injection and exit codes") {
    report::Manifest m;
    m.slack.c_osc = 1e-6;
    SuiteConfig c{.suite = "lemma5"};
    c.grid["V"] = {4};
    c.grid["t"] = {10};
    const auto r = run_suite(c, m);
    CHECK(r.row_failures > 0);
    CHECK(exit_code(r) == kExitFailure);
    report::Report ex;
    ex.exhausted = true;
    CHECK(exit_code(ex) == kExitExhausted);
    c.failures_only = true;
    const auto f = run_suite(c, m);
    CHECK(f.rows.size() == f.row_failures);
}

TEST_CASE("manifest round trip") {
    report::Manifest m;
    m.slack.c0 = 5.5;
    m.slack.c_osc = 73.25;
    m.observed["c_osc"] = 36.625;
    m.seed = 9;
    const auto path = std::filesystem::temp_directory_path() / "critline_manifest_test.json";
    m.save(path);
    const auto back = report::Manifest::load(path);
    CHECK(back.slack.c0 == 5.5);
    CHECK(back.slack.c_osc == 73.25);
    CHECK(back.observed.at("c_osc") == 36.625);
    CHECK(back.seed == 9);
    CHECK(back.to_json() == m.to_json());
    std::filesystem::remove(path);
}

TEST_CASE("number formatting") {
    CHECK(report::format_number(3.0) == "3");
    CHECK(report::format_number(0.1) == "0.1");
    CHECK(std::stod(report::format_number(1.0 / 3)) == 1.0 / 3);
}
