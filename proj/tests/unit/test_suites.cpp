#include <doctest.h>

#include "relmon/suites.hpp"

using namespace relmon;

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 14);
    CHECK_THROWS_AS(run_suite("nosuch"), UnknownSuite);
}

TEST_CASE("a suite report is a function of its options") {
    SuiteOptions o;
    o.seed = 9;
    CHECK(run_suite("kan-coherence", o).to_json() == run_suite("kan-coherence", o).to_json());
    Report r = run_suite("semiring", o);
    CHECK(r.ok());
    CHECK(r.find("semiring/Z/add-associative"));
}

TEST_CASE("size cap shrinks the enumeration") {
    SuiteOptions small;
    small.size_cap = 1;
    Report a = run_suite("vec", small), b = run_suite("vec");
    CHECK(a.ok());
    CHECK(a.find("vec/bool/laws/associativity")->count < b.find("vec/bool/laws/associativity")->count);
}

TEST_CASE("budget overflows become skipped checks") {
    std::uint64_t before = budget();
    SuiteOptions tiny;
    tiny.budget = 10;
    Report r = run_suite("state", tiny);
    CHECK(r.ok());
    bool skipped = false;
    for (const auto& c : r.checks()) skipped = skipped || c.status == Status::skipped;
    CHECK(skipped);
    CHECK(budget() == before);
}
