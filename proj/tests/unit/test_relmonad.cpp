#include <doctest.h>

#include "relmon/relmonad.hpp"

using namespace relmon;

TEST_CASE("trivial relative monad passes and a broken star fails") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    RelMonad t = trivial_relmonad(j);
    CHECK(check_relmonad_laws(t).ok());

    std::vector<FinFn> unit;
    for (Obj x = 0; x < 3; ++x) unit.push_back(t.unit(x));
    StarFn constant_star = [&](Obj x, Obj y, const FinFn&) {
        return t.T(y) == 0 ? FinFn::empty(0) : FinFn::constant(t.T(x), t.T(y), 0);
    };
    RelMonad broken("broken", j, j.objects(), unit, constant_star);
    Report r = check_relmonad_laws(broken);
    CHECK(!r.ok());
    const Check* f = r.first_failure();
    REQUIRE(f != nullptr);
    CHECK(f->witness.contains("X"));
}

TEST_CASE("restriction") {
    auto c = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c);
    RelMonad id = restrict(identity_monad(), j);
    RelMonad triv = trivial_relmonad(j);
    for (Obj x = 0; x < 3; ++x) {
        CHECK(id.T(x) == triv.T(x));
        CHECK(id.unit(x) == triv.unit(x));
        for (Obj y = 0; y < 3; ++y)
            for (const auto& k : enumerate_fns(j.at(x), j.at(y))) CHECK(id.star(x, y, k) == triv.star(x, y, k));
    }
    RelMonad p = restrict(powerset_monad(), j);
    for (Obj x = 0; x < 3; ++x) CHECK(p.T(x) == (std::size_t{1} << x));
    CHECK(check_relmonad_laws(p).ok());
    CHECK(check_relmonad_laws(restrict(maybe_monad(), inclusion_functor(fin_skeleton(3)))).ok());
    CHECK_THROWS_AS(restrict(powerset_monad(2), inclusion_functor(fin_skeleton(3))), OutOfUniverse);
}

TEST_CASE("derived functor action") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    RelMonad p = restrict(powerset_monad(), j);
    CHECK(check_functor(p.functor()).ok());
    // T f is the direct image.
    for (Elem i = 0; i < j.src()->hom(2, 2); ++i) CHECK(functor_action(p, 2, 2, i) == powerset_map(j.map(2, 2, i)));
}

TEST_CASE("monads on finite sets") {
    CHECK(check_monad_laws(identity_monad(), 3).ok());
    CHECK(check_monad_laws(maybe_monad(), 3).ok());
    CHECK(check_monad_laws(powerset_monad(), 2).ok());
    CHECK(check_monad_morphism(maybe_to_powerset(), 3).ok());
}

TEST_CASE("morphisms and their monoid form agree") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    Kan kan(j);
    RelMonadMorphism s = restrict_morphism(maybe_to_powerset(), j);
    CHECK(check_morphism(s).ok());
    CHECK(monoid_morphism_check(kan, s).ok());
    RelMonad p = restrict(powerset_monad(), j);
    CHECK(check_morphism(identity_morphism(p)).ok());
    CHECK(monoid_morphism_check(kan, identity_morphism(p)).ok());

    RelMonadMorphism bad = s;
    std::vector<Elem> t = bad.comp[2].table();
    t[0] = 3;  // just 0 goes to {0, 1}
    bad.comp[2] = FinFn(4, t);
    CHECK(!check_morphism(bad).ok());
    CHECK(!monoid_morphism_check(kan, bad).ok());
}

TEST_CASE("mu and star correspond") {
    auto c = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c);
    Kan kan(j);
    RelMonad triv = trivial_relmonad(j);
    Report r = mu_star_roundtrip(kan, triv);
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
    auto mu = mu_from_star(kan, triv);
    for (Obj x = 0; x < 3; ++x) CHECK(mu[x] == kan.lambda_bar(j.at(x)));

    RelMonad p = restrict(powerset_monad(), j);
    Report rp = mu_star_roundtrip(kan, p);
    CHECK_MESSAGE(rp.ok(), rp.to_json().dump());

    // A wrong class map breaks the monoid laws.
    auto mp = mu_from_star(kan, p);
    std::vector<Elem> t = mp[1].table();
    t[0] = t[0] == 0 ? 1 : 0;
    mp[1] = FinFn(mp[1].cod(), t);
    CHECK(!skew_monoid_laws(kan, p, mp).ok());
}

TEST_CASE("extension along the finite-set inclusion") {
    {
        auto kan = std::make_shared<const Kan>(inclusion_functor(fin_skeleton(2)));
        Monad m = extend(kan, trivial_relmonad(kan->J()), 2);
        for (std::size_t x = 0; x <= 2; ++x) CHECK(m.obj(x) == x);
        CHECK(check_monad_laws(m, 2).ok());
    }
    {
        auto kan = std::make_shared<const Kan>(inclusion_functor(fin_skeleton(2)));
        RelMonad p = restrict(powerset_monad(), kan->J());
        CHECK(kan->lan(p.functor(), 3)->size() == 7);
        auto stats = std::make_shared<ExtendStats>();
        Monad m = extend(kan, p, 2, stats);
        Report r = check_monad_laws(m, 2);
        CHECK_MESSAGE(r.ok(), r.to_json().dump());
        CHECK(stats->alpha_formula + stats->alpha_table > 0);
        CHECK_THROWS_AS(m.obj(3), OutOfUniverse);
    }
    {
        auto kan = std::make_shared<const Kan>(inclusion_functor(fin_skeleton(3)));
        RelMonad p = restrict(powerset_monad(), kan->J());
        Monad m = extend(kan, p, 3);
        CHECK(m.obj(3) == 8);
        CHECK(check_monad_laws(m, 3, LawMode::sampled(1, 200)).ok());
    }
}

TEST_CASE("extension of a morphism") {
    auto kan = std::make_shared<const Kan>(inclusion_functor(fin_skeleton(2)));
    RelMonadMorphism s = restrict_morphism(maybe_to_powerset(), kan->J());
    Monad a = extend(kan, s.src, 2), b = extend(kan, s.tgt, 2);
    CHECK(check_monad_morphism(extend_morphism(kan, s, a, b), 2).ok());
}

TEST_CASE("coreflection") {
    auto kan = std::make_shared<const Kan>(inclusion_functor(fin_skeleton(2)));
    RelMonad p = restrict(powerset_monad(), kan->J());
    Report r = coreflection_check(kan, p, powerset_monad());
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
    const Check* b = r.find("counit/bijectivity");
    REQUIRE(b != nullptr);
    CHECK(b->detail["bijective_at_size"]["2"] == true);
    CHECK(b->detail["bijective_at_size"]["3"] == false);

    Report rm = coreflection_check(kan, trivial_relmonad(kan->J()), maybe_monad());
    CHECK_MESSAGE(rm.ok(), rm.to_json().dump());
    CHECK(rm.find("counit/bijectivity")->detail["bijective_at_size"]["3"] == true);
}

TEST_CASE("mu-flat composite") {
    Kan kan(inclusion_functor(fin_skeleton(2)));
    CHECK(mu_flat_check(kan, identity_monad()).ok());
    CHECK(mu_flat_check(kan, powerset_monad()).ok());
    CHECK(mu_flat_check(kan, maybe_monad()).ok());
}
