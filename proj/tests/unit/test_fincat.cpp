#include <doctest.h>

#include "relmon/fincat.hpp"

using namespace relmon;

TEST_CASE("fin_skeleton shapes") {
    auto c2 = fin_skeleton(2);
    CHECK(c2->size() == 3);
    CHECK(c2->hom(2, 2) == 4);
    CHECK(c2->hom(0, 2) == 1);
    auto c0 = fin_skeleton(0);
    CHECK(c0->size() == 1);
    CHECK(c0->hom(0, 0) == 1);
    CHECK_THROWS_AS(fin_skeleton(5), PreconditionError);
}

TEST_CASE("fin_skeleton passes category laws") {
    for (std::size_t k = 0; k <= 3; ++k) CHECK(check_category(*fin_skeleton(k)).ok());
}

TEST_CASE("subuniverse composition agrees with compose") {
    auto c = subuniverse({0, 1, 2, 3});
    CHECK(c->hom(2, 1) == 1);
    for (Obj x = 0; x < 4; ++x)
        for (Obj y = 0; y < 4; ++y)
            for (Obj z = 0; z < 4; ++z)
                for (Elem f = 0; f < c->hom(x, y); ++f)
                    for (Elem g = 0; g < c->hom(y, z); ++g) {
                        FinFn ff = concrete_arrow(*c, x, y, f);
                        FinFn gg = concrete_arrow(*c, y, z, g);
                        CHECK(concrete_arrow(*c, x, z, c->comp(x, y, z, g, f)) == compose(gg, ff));
                    }
}

TEST_CASE("op and discrete categories") {
    auto c = fin_skeleton(2);
    auto o = op_category(c);
    CHECK(*op_category(o) == *c);
    CHECK(o->hom(0, 2) == c->hom(2, 0));
    CHECK(check_category(*o).ok());
    auto d = discrete_category({"a", "b"});
    CHECK(d->hom(0, 1) == 0);
    CHECK(d->hom(1, 1) == 1);
    CHECK(check_category(*d).ok());
}

TEST_CASE("generators generate") {
    auto c = fin_skeleton(3);
    const auto& gens = c->generators();
    CHECK(!gens.empty());
    CHECK(gens.size() < c->arrow_count());
}

TEST_CASE("functor checks catch a scrambled arrow map") {
    auto c = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c);
    CHECK(check_functor(j).ok());
    // Swap the images of the two constant maps 2 -> 2.
    auto bad = make_set_functor(c, j.objects(), [&](Obj x, Obj y, Elem i) {
        if (x == 2 && y == 2 && (i == 0 || i == 3)) return j.map(x, y, 3 - i);
        return j.map(x, y, i);
    });
    Report r = check_functor(bad);
    CHECK_FALSE(r.ok());
    CHECK(!r.first_failure()->witness.is_null());
}

TEST_CASE("identity natural transformation passes") {
    auto c = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c);
    CHECK(check_nat(identity_nat(j)).ok());
}

TEST_CASE("natural transformation enumeration") {
    auto c = fin_skeleton(1);
    SetFunctor one = constant_functor(c, 1);
    CHECK(functor_category_homs(one, one).size() == 1);
    SetFunctor empty = constant_functor(c, 0);
    CHECK(functor_category_homs(empty, inclusion_functor(c)).size() == 1);
    CHECK(functor_category_homs(one, empty).empty());
}

// Every functor op(fin_skeleton(k)) -> FinSet with small values, built from arbitrary
// contravariant actions of concrete sets: G = hom(-, n) composed with S -> S maps.
TEST_CASE("Yoneda count on presheaves") {
    for (std::size_t k = 0; k <= 2; ++k) {
        auto c = fin_skeleton(k);
        auto o = op_category(c);
        for (Obj x = 0; x <= k; ++x) {
            for (Obj n = 0; n <= k; ++n) {
                SetFunctor g = representable(c, o, n);
                CHECK(check_functor(g).ok());
                auto homs = functor_category_homs(representable(c, o, x), g);
                CHECK(homs.size() == g.at(x));
                for (const auto& t : homs) CHECK(check_nat(t).ok());
            }
            // A presheaf that is not representable: constant 3.
            SetFunctor g3 = constant_functor(o, 3);
            CHECK(functor_category_homs(representable(c, o, x), g3).size() == 3);
        }
    }
}

TEST_CASE("natural transformation enumeration matches brute force") {
    auto c = fin_skeleton(1);
    SetFunctor j = inclusion_functor(c);
    // Brute force over all component tuples J => J.
    std::size_t count = 0;
    for (const auto& c0 : enumerate_fns(0, 0))
        for (const auto& c1 : enumerate_fns(1, 1)) {
            NatTrans t{j, j, {c0, c1}};
            if (check_nat(t).ok()) ++count;
        }
    CHECK(functor_category_homs(j, j).size() == count);
}

TEST_CASE("poset category") {
    auto p = poset_category({"a", "b"}, {{true, true}, {false, true}});
    CHECK(check_category(*p).ok());
    CHECK(p->hom(0, 1) == 1);
    CHECK(p->hom(1, 0) == 0);
}
