#include <doctest.h>

#include <set>

#include "relmon/finset.hpp"

using namespace relmon;

TEST_CASE("compose follows tables") {
    FinFn g(1, {0, 0});
    FinFn f(2, {1, 0});
    FinFn h = compose(g, f);
    CHECK(h.table() == std::vector<Elem>{0, 0});
    CHECK(h.dom() == 2);
    CHECK(h.cod() == 1);
    CHECK(compose(FinFn::identity(2), f) == f);
    CHECK(compose(f, FinFn::identity(2)) == f);
}

TEST_CASE("compose rejects mismatched endpoints") {
    FinFn g(1, {0, 0, 0});
    FinFn f(2, {1, 0});
    CHECK_THROWS_AS(compose(g, f), CompositionError);
    try {
        compose(g, f);
    } catch (const CompositionError& e) {
        CHECK(e.outer_dom == 3);
        CHECK(e.inner_cod == 2);
    }
}

TEST_CASE("enumerate_fns counts and order") {
    std::vector<std::vector<Elem>> seen;
    for (const auto& f : enumerate_fns(2, 2)) seen.push_back(f.table());
    CHECK(seen == std::vector<std::vector<Elem>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    std::size_t n = 0;
    for (const auto& f : enumerate_fns(0, 0)) {
        CHECK(f.dom() == 0);
        ++n;
    }
    CHECK(n == 1);

    n = 0;
    for (const auto& f : enumerate_fns(1, 3)) {
        (void)f;
        ++n;
    }
    CHECK(n == 3);

    n = 0;
    for (const auto& f : enumerate_fns(2, 0)) {
        (void)f;
        ++n;
    }
    CHECK(n == 0);
}

TEST_CASE("enumerate_fns is complete and duplicate free") {
    for (std::size_t a = 0; a <= 3; ++a)
        for (std::size_t b = 0; b <= 3; ++b) {
            std::set<std::vector<Elem>> s;
            std::uint64_t idx = 0;
            for (const auto& f : enumerate_fns(a, b)) {
                s.insert(f.table());
                CHECK(fn_index(f) == idx);
                CHECK(fn_from_index(idx, a, b) == f);
                ++idx;
            }
            std::size_t expect = 1;
            for (std::size_t i = 0; i < a; ++i) expect *= b;
            CHECK(s.size() == expect);
            CHECK(idx == expect);
        }
}

TEST_CASE("enumeration budget is enforced") {
    auto old = budget();
    set_budget(100);
    CHECK_THROWS_AS(enumerate_fns(3, 5), EnumerationOverflow);
    try {
        enumerate_fns(3, 5);
    } catch (const EnumerationOverflow& e) {
        CHECK(e.count == 125);
    }
    set_budget(old);
}

TEST_CASE("composition is associative and unital on small sets") {
    for (std::size_t a = 0; a <= 2; ++a)
        for (std::size_t b = 0; b <= 2; ++b)
            for (std::size_t c = 0; c <= 2; ++c)
                for (std::size_t d = 0; d <= 2; ++d)
                    for (const auto& f : enumerate_fns(a, b))
                        for (const auto& g : enumerate_fns(b, c))
                            for (const auto& h : enumerate_fns(c, d)) {
                                CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
                                CHECK(compose(FinFn::identity(b), f) == f);
                            }
    // size 3 triples on a single carrier
    for (const auto& f : enumerate_fns(3, 3))
        for (const auto& g : enumerate_fns(3, 3)) {
            FinFn gf = compose(g, f);
            for (Elem i = 0; i < 3; ++i) CHECK(gf(i) == g(f(i)));
        }
}

TEST_CASE("products coproducts exponentials") {
    Product p = product(2, 3);
    CHECK(p.size == 6);
    CHECK(p.pair(1, 2) == 5);
    CHECK(p.proj1(5) == 1);
    CHECK(p.proj2(5) == 2);

    Coproduct c = coproduct(0, 3);
    CHECK(c.size == 3);
    CHECK(c.inr == FinFn::identity(3));
    Coproduct c2 = coproduct(2, 1);
    CHECK(c2.inl.table() == std::vector<Elem>{0, 1});
    CHECK(c2.inr.table() == std::vector<Elem>{2});

    Exponential e = exponential(2, 2);
    CHECK(e.size == 4);
    // f = [1,0] has index 2
    CHECK(e.eval(2 * 2 + 1) == 0);
    CHECK(e.eval(2 * 2 + 0) == 1);
}

TEST_CASE("eval after curry recovers the map") {
    for (std::size_t c = 0; c <= 2; ++c)
        for (std::size_t a = 0; a <= 2; ++a)
            for (std::size_t b = 0; b <= 2; ++b) {
                Exponential e = exponential(a, b);
                for (const auto& h : enumerate_fns(c * a, b)) {
                    FinFn k = curry(h, c, a);
                    FinFn back = compose(e.eval, product_map(k, FinFn::identity(a)));
                    CHECK(back == h);
                    CHECK(uncurry(k, a, b) == h);
                }
            }
}

TEST_CASE("bijection inverse") {
    FinFn f(3, {2, 0, 1});
    CHECK(compose(f.inverse(), f) == FinFn::identity(3));
    CHECK(compose(f, f.inverse()) == FinFn::identity(3));
    CHECK_THROWS_AS(FinFn(2, {0, 0}).inverse(), ShapeError);
    CHECK_THROWS_AS(FinFn(2, {0, 2}), ShapeError);
}

TEST_CASE("labels are presentation only") {
    FinSet a(2, {"x", "y"});
    FinSet b(2);
    CHECK(a == b);
    CHECK(a.label(1) == "y");
    CHECK_THROWS_AS(FinSet(2, {"x", "x"}), ShapeError);
}
