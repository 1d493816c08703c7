#include <doctest.h>

#include "relmon/arrows.hpp"

using namespace relmon;

namespace {

CatPtr two_point_poset() { return poset_category({"a", "b"}, {{true, true}, {false, true}}); }

ArrowData maybe_arrow(std::size_t k) { return kleisli_arrow(restrict(maybe_monad(), inclusion_functor(fin_skeleton(k)))); }

// Kleisli composition of X -> Y+1 and Y -> Z+1 by hand, nothing being the last point.
FinFn maybe_bind(const FinFn& l, const FinFn& r, std::size_t z) {
    std::vector<Elem> t(r.dom());
    for (Elem x = 0; x < r.dom(); ++x) t[x] = r(x) == l.dom() ? static_cast<Elem>(z) : l(r(x));
    return FinFn(z + 1, std::move(t));
}

}  // namespace

TEST_CASE("arrow laws hold for the hom, maybe-Kleisli and state arrows") {
    for (std::size_t k : {0, 1, 2}) {
        CHECK(check_arrow_laws(hom_arrow(fin_skeleton(k))).ok());
        CHECK(check_arrow_laws(maybe_arrow(k)).ok());
    }
    CHECK(check_arrow_laws(hom_arrow(two_point_poset())).ok());
    ArrowData st = state_arrow(2, fin_skeleton(2));
    CHECK(st.cell(2, 2) == 256);
    CHECK(st.cell(1, 2) == 16);
    Report r = check_arrow_laws(st);
    CHECK(r.ok());
    std::uint64_t quads = 0;
    for (Obj x = 0; x < 3; ++x)
        for (Obj y = 0; y < 3; ++y)
            for (Obj z = 0; z < 3; ++z)
                for (Obj w = 0; w < 3; ++w) quads += st.cell(x, y) * st.cell(y, z) * st.cell(z, w);
    CHECK(r.find("associativity")->count == quads);
}

TEST_CASE("the hom arrow's composition is the base composition") {
    CatPtr c = fin_skeleton(2);
    ArrowData a = hom_arrow(c);
    for (Obj x = 0; x < 3; ++x)
        for (Obj y = 0; y < 3; ++y)
            for (Obj z = 0; z < 3; ++z)
                for (Elem g = 0; g < c->hom(y, z); ++g)
                    for (Elem f = 0; f < c->hom(x, y); ++f) {
                        FinFn gf = compose(concrete_arrow(*c, y, z, g), concrete_arrow(*c, x, y, f));
                        CHECK(a.compose(x, y, z, g, f) == concrete_index(*c, gf));
                    }
}

TEST_CASE("swapping one composition triple breaks associativity") {
    ArrowData a = maybe_arrow(2);
    std::size_t n = 3;
    auto& t = a.comp[(2 * n + 2) * n + 2];
    std::size_t r = a.cell(2, 2);
    std::vector<Elem> swapped(t.size());
    for (Elem s = 0; s < r; ++s)
        for (Elem q = 0; q < r; ++q) swapped[s * r + q] = t[q * r + s];
    t = swapped;
    Report rep = check_arrow_laws(a);
    CHECK_FALSE(rep.ok());
    const Check* as = rep.find("associativity");
    REQUIRE(as);
    CHECK(as->status == Status::fail);
    CHECK(as->witness.contains("t"));
}

TEST_CASE("arrow and relative monad on the Yoneda embedding round-trip exactly") {
    std::vector<ArrowData> arrows{hom_arrow(fin_skeleton(2)), hom_arrow(two_point_poset()), maybe_arrow(1),
                                  maybe_arrow(2), state_arrow(2, fin_skeleton(1)), state_arrow(1, fin_skeleton(2))};
    for (const auto& a : arrows) {
        CAPTURE(a.name);
        CHECK(roundtrip_check(a).ok());
        PresheafRelMonad t = arrow_to_relmon(a);
        CHECK(check_presheaf_relmonad(t).ok());
        CHECK(roundtrip_check(t).ok());
        CHECK(check_arrow_laws(relmon_to_arrow(t)).ok());
    }
}

TEST_CASE("the trivial relative monad on Y gives the hom arrow") {
    for (CatPtr c : {fin_skeleton(1), fin_skeleton(2), two_point_poset()}) {
        PresheafRelMonad t = yoneda_trivial_relmonad(c);
        CHECK(check_presheaf_relmonad(t).ok());
        CHECK(relmon_to_arrow(t) == hom_arrow(c));
        CHECK(roundtrip_check(t).ok());
    }
}

TEST_CASE("star on the maybe-Kleisli arrow is Kleisli composition") {
    CatPtr c = fin_skeleton(2);
    ArrowData a = maybe_arrow(2);
    PresheafRelMonad t = arrow_to_relmon(a);
    for (Obj x = 0; x < 3; ++x)
        for (Obj y = 0; y < 3; ++y)
            for (Obj z = 0; z < 3; ++z)
                for (const auto& k : functor_category_homs(t.yoneda[y], t.t[z])) {
                    FinFn l = fn_from_index(k.at(y)(c->id(y)), y, z + 1);
                    NatTrans ks = t.star(y, z, k);
                    for (Elem r = 0; r < a.cell(x, y); ++r) {
                        FinFn rf = fn_from_index(r, x, y + 1);
                        CHECK(ks.at(x)(r) == fn_index(maybe_bind(l, rf, z)));
                    }
                }
}

TEST_CASE("a non-functorial presheaf is refused by the naturality pre-check") {
    CatPtr c = fin_skeleton(1);
    PresheafRelMonad t = yoneda_trivial_relmonad(c);
    // T 1 with T 1 0 = {0, 1}, the identity at 0 collapsing to 0 and every restriction landing on 1.
    std::vector<std::vector<FinFn>> arrows(4);
    for (Obj x = 0; x < 2; ++x)
        for (Obj y = 0; y < 2; ++y)
            for (Elem i = 0; i < t.opc->hom(x, y); ++i) {
                std::size_t cod = y == 0 ? 2 : 1;
                std::size_t dom = x == 0 ? 2 : 1;
                arrows[x * 2 + y].push_back(x == 0 && y == 0 ? FinFn::constant(2, 2, 0)
                                                             : FinFn::constant(dom, cod, cod - 1));
            }
    t.t[1] = SetFunctor(t.opc, {2, 1}, arrows, "broken");
    t.unit[1] = NatTrans{t.yoneda[1], t.t[1], {FinFn(2, {1}), FinFn(1, {0})}};
    CHECK_FALSE(check_presheaf_relmonad(t).ok());
    CHECK_THROWS_AS(relmon_to_arrow(t), NaturalityError);
}

TEST_CASE("morphism transport") {
    SUBCASE("identity") {
        ArrowData a = maybe_arrow(2);
        ArrowMorphism id = identity_arrow_morphism(a);
        CHECK(transport_check(id).ok());
        PresheafMorphism p = transport_morphism(id);
        PresheafRelMonad t = arrow_to_relmon(a);
        for (Obj x = 0; x < 3; ++x) CHECK(p.comp[x] == identity_nat(t.t[x]));
    }
    SUBCASE("maybe to powerset") {
        for (std::size_t k : {1, 2}) {
            RelMonadMorphism s = restrict_morphism(maybe_to_powerset(), inclusion_functor(fin_skeleton(k)));
            ArrowMorphism m = kleisli_arrow_morphism(s);
            Report r = transport_check(m);
            CHECK(r.ok());
            CHECK(r.find("relmon/preserves-star")->count > 0);
        }
    }
    SUBCASE("broken cell fails pure preservation") {
        RelMonadMorphism s = restrict_morphism(maybe_to_powerset(), inclusion_functor(fin_skeleton(2)));
        ArrowMorphism m = kleisli_arrow_morphism(s);
        // tau on R(1,1): send pure id (just 0) to the empty subset.
        std::vector<Elem> tab = m.cells[1 * 3 + 1].table();
        tab[m.src.pure_of(1, 1, 0)] = 0;
        m.cells[1 * 3 + 1] = FinFn(m.cells[1 * 3 + 1].cod(), tab);
        Report r = transport_check(m);
        const Check* pure = r.find("arrow/preserves-pure");
        REQUIRE(pure);
        CHECK(pure->status == Status::fail);
        CHECK(pure->witness["X"] == "1");
    }
}

TEST_CASE("presheaf enumeration and the Yoneda count") {
    for (auto [k, cap] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 2}}) {
        CatPtr c = fin_skeleton(k);
        CatPtr opc = op_category(c);
        auto gs = enumerate_presheaves(opc, cap);
        auto ys = yoneda_presheaves(c, opc);
        for (const auto& g : gs)
            for (Obj x = 0; x < c->size(); ++x) CHECK(functor_category_homs(ys[x], g).size() == g.at(x));
    }
    // On the arrow 0 -> 1 with sizes <= 2: sum of |G0|^|G1|.
    CHECK(enumerate_presheaves(op_category(fin_skeleton(1)), 2).size() == 11);
    CHECK(enumerate_presheaves(op_category(discrete_category({"*"})), 3).size() == 4);
}

TEST_CASE("Yoneda embedding is well-behaved on tiny bases") {
    for (CatPtr c : {discrete_category({"*"}), fin_skeleton(1), two_point_poset()}) {
        Report r = yoneda_wellbehaved_check(c);
        CAPTURE(r.to_json().dump());
        CHECK(r.ok());
        CHECK(r.find("k-inverse-right")->count > 0);
        CHECK(r.find("l-bijective")->count > 0);
    }
}

TEST_CASE("Freyd category is the Kleisli category") {
    SUBCASE("hom arrow") {
        CatPtr c = fin_skeleton(2);
        ArrowData a = hom_arrow(c);
        CatPtr f = freyd_category(a);
        for (Obj x = 0; x < 3; ++x) {
            CHECK(f->id(x) == c->id(x));
            for (Obj y = 0; y < 3; ++y) CHECK(f->hom(x, y) == c->hom(x, y));
        }
        CHECK(freyd_is_kleisli_check(a).ok());
    }
    SUBCASE("maybe") {
        RelMonad t = restrict(maybe_monad(), inclusion_functor(fin_skeleton(2)));
        ArrowData a = kleisli_arrow(t);
        KleisliCat k = kleisli_build(t);
        CatPtr f = freyd_category(a);
        for (Obj x = 0; x < 3; ++x) {
            CHECK(f->id(x) == k.cat->id(x));
            for (Obj y = 0; y < 3; ++y)
                for (Obj z = 0; z < 3; ++z)
                    for (Elem g = 0; g < f->hom(y, z); ++g)
                        for (Elem h = 0; h < f->hom(x, y); ++h) CHECK(f->comp(x, y, z, g, h) == k.cat->comp(x, y, z, g, h));
        }
        CHECK(freyd_is_kleisli_check(a).ok());
    }
    SUBCASE("state") {
        Report r = freyd_is_kleisli_check(state_arrow(2, fin_skeleton(2)));
        CAPTURE(r.to_json().dump());
        CHECK(r.ok());
        CHECK(r.find("isomorphism"));
    }
}
