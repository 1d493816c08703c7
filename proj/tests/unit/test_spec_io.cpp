#include <doctest.h>

#include "relmon/spec_io.hpp"

using namespace relmon;

namespace {

std::string spec_path(const std::string& name) { return std::string(RELMON_SPEC_DIR) + "/" + name; }

json base_doc() {
    return json::parse(R"({
      "schema": "relmon/1",
      "category": {"builtin": "fin_skeleton", "k": 1},
      "functors": {"J": {"builtin": "inclusion"}}
    })");
}

std::string pointer_of(const json& doc) {
    try {
        load_spec(doc);
    } catch (const SpecError& e) {
        return e.pointer;
    }
    return "";
}

}  // namespace

TEST_CASE("sample specs give the expected class counts") {
    Spec plus = load_spec_file(spec_path("plus_constant.json"));
    CHECK(check_spec(plus).ok());
    CHECK(kan_query(plus, "F", 2)["classes"] == 4);
    CHECK(kan_query(plus, "F", 1)["classes"] == 1);

    Spec empty = load_spec_file(spec_path("empty.json"));
    CHECK(kan_query(empty, "Empty", 2)["classes"] == 0);

    Spec p = load_spec_file(spec_path("powerset_truncated.json"));
    CHECK(check_spec(p).ok());
    json q = kan_query(p, "P", 3);
    CHECK(q["classes"] == 7);
    CHECK(q["representatives"].size() == 7);
    REQUIRE(p.relmonad);
    CHECK(p.relmonad->T(2) == 4);
}

TEST_CASE("an explicit category and arrow load and pass their laws") {
    Spec s = load_spec_file(spec_path("two_point_arrow.json"));
    CHECK(s.category->hom(0, 1) == 1);
    CHECK(s.category->hom(1, 0) == 0);
    REQUIRE(s.arrow);
    CHECK(check_spec(s).ok());
    CHECK(*s.arrow == hom_arrow(s.category));
}

TEST_CASE("malformed documents are refused with a JSON pointer") {
    json d = base_doc();
    d["functors"]["J"]["bogus"] = 1;
    CHECK(pointer_of(d) == "/functors/J/bogus");

    d = base_doc();
    d["extra"] = true;
    CHECK(pointer_of(d) == "/extra");

    d = base_doc();
    d["schema"] = "relmon/2";
    CHECK(pointer_of(d) == "/schema");

    d = base_doc();
    d.erase("category");
    CHECK(pointer_of(d) == "/category");

    d = base_doc();
    d["functors"]["G"] = json::parse(R"({"objects": [1, 2], "arrows": [[[[0]], [[5]]], [[], [[0, 1]]]]})");
    CHECK(pointer_of(d) == "/functors/G/arrows/0/1/0/0");

    d = base_doc();
    d["j"] = "Nope";
    CHECK(pointer_of(d) == "/j");

    CHECK_THROWS_AS(load_spec_file(spec_path("missing.json")), SpecError);
}

TEST_CASE("an unlawful payload loads but fails its check") {
    json d = json::parse(R"({
      "schema": "relmon/1",
      "category": {"builtin": "fin_skeleton", "k": 1},
      "functors": {"G": {"objects": [2, 2], "arrows": [[[[1, 0]], [[0, 0]]], [[], [[0, 1]]]]}}
    })");
    Spec s = load_spec(d);
    Report r = check_spec(s);
    CHECK_FALSE(r.ok());
    CHECK(r.first_failure()->law == "functor:G/preserves-identity");
}
