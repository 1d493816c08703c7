#include <doctest.h>

#include <random>
#include <set>

#include "relmon/builtins.hpp"
#include "relmon/kan.hpp"

using namespace relmon;

namespace {

bool is_identity(const FinFn& f) { return f == FinFn::identity(f.dom()) && f.cod() == f.dom(); }

// Brute-force coend count: label propagation over the raw element graph using all arrows.
std::size_t brute_classes(const SetFunctor& j, const SetFunctor& f, std::size_t x) {
    const FinCat& c = *j.src();
    std::vector<std::tuple<Obj, std::uint64_t, Elem>> elems;
    for (Obj z = 0; z < c.size(); ++z)
        for (std::uint64_t g = 0; g < fn_count(j.at(z), x); ++g)
            for (Elem e = 0; e < f.at(z); ++e) elems.emplace_back(z, g, e);
    auto idx = [&](Obj z, std::uint64_t g, Elem e) {
        return std::find(elems.begin(), elems.end(), std::make_tuple(z, g, e)) - elems.begin();
    };
    std::vector<std::size_t> comp(elems.size());
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Obj z = 0; z < c.size(); ++z)
            for (Obj w = 0; w < c.size(); ++w)
                for (Elem h = 0; h < c.hom(z, w); ++h)
                    for (std::uint64_t g = 0; g < fn_count(j.at(w), x); ++g) {
                        FinFn gg = fn_from_index(g, j.at(w), x);
                        std::uint64_t gz = fn_index(compose(gg, j.map(z, w, h)));
                        for (Elem e = 0; e < f.at(z); ++e) {
                            auto a = idx(z, gz, e), b = idx(w, g, f.map(z, w, h)(e));
                            auto m = std::min(comp[a], comp[b]);
                            if (comp[a] != comp[b]) {
                                comp[a] = comp[b] = m;
                                changed = true;
                            }
                        }
                    }
    }
    return std::set<std::size_t>(comp.begin(), comp.end()).size();
}

}  // namespace

TEST_CASE("lan carrier sizes on small examples") {
    auto c2 = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c2);
    CHECK(lan_object(j, j, 1)->size() == 1);
    CHECK(lan_object(j, j, 1)->size() == brute_classes(j, j, 1));

    auto u = subuniverse({0, 1, 2});
    SetFunctor plus = endo_on(u, endo_plus(1));
    SetFunctor incl = inclusion_functor(u);
    auto l = lan_object(plus, incl, 2);
    CHECK(l->size() == 4);
    CHECK(l->size() == brute_classes(plus, incl, 2));

    CHECK(lan_object(j, constant_functor(c2, 0), 2)->size() == 0);
}

TEST_CASE("union-find quotient matches a brute-force closure over all arrows") {
    auto u = subuniverse({0, 1, 2});
    std::mt19937_64 rng(7);
    std::vector<SetFunctor> js = {inclusion_functor(u), endo_on(u, endo_plus(1)), endo_on(u, endo_times(2))};
    for (const auto& j : js)
        for (int t = 0; t < 4; ++t) {
            SetFunctor f = random_functor(u, rng, 5);
            for (std::size_t x = 0; x <= 2; ++x) {
                auto l = lan_object(j, f, x);
                CHECK(l->size() == brute_classes(j, f, x));
                CHECK(l->check_quotient().ok());
            }
        }
}

TEST_CASE("representatives are lexicographic minima") {
    auto c2 = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c2);
    auto l = lan_object(j, j, 2);
    for (Elem k = 0; k < l->size(); ++k) {
        CoendElement r = l->rep(k);
        CHECK(l->class_of(r.z, r.g, r.x) == k);
        for (Obj z = 0; z < r.z; ++z)
            for (std::uint64_t g = 0; g < l->fn_space(z); ++g)
                for (Elem e = 0; e < j.at(z); ++e) CHECK(l->class_of_index(z, g, e) != k);
    }
    CHECK_THROWS_AS(l->class_of(1, FinFn(3, {0}), 0), ShapeError);
}

TEST_CASE("iota") {
    auto u = subuniverse({0, 1, 2});
    SetFunctor j = inclusion_functor(u);
    SetFunctor one = constant_functor(u, 1);
    auto l = lan_object(j, one, 2);
    for (const auto& g : enumerate_fns(2, 2)) {
        FinFn i = l->iota(2, g);
        CHECK(i.dom() == 1);
    }
    // g' = g . J h gives iota g' = iota g . F h.
    SetFunctor f = endo_on(u, endo_plus(1));
    auto lf = lan_object(j, f, 2);
    for (Elem h = 0; h < u->hom(1, 2); ++h)
        for (const auto& g : enumerate_fns(2, 2)) {
            FinFn gp = compose(g, j.map(1, 2, h));
            CHECK(lf->iota(1, gp) == compose(lf->iota(2, g), f.map(1, 2, h)));
        }
    auto le = lan_object(j, constant_functor(u, 0), 2);
    CHECK(le->iota(1, FinFn(2, {1})).dom() == 0);
    CHECK_THROWS_AS(lf->iota(1, FinFn(3, {0})), ShapeError);
}

TEST_CASE("factorization through the coend") {
    auto u = subuniverse({0, 1, 2});
    SetFunctor j = inclusion_functor(u);
    SetFunctor f = endo_on(u, endo_plus(1));
    Kan kan(j);
    for (std::size_t x = 0; x <= 2; ++x) {
        auto l = kan.lan(f, x);
        FinFn id = lan_factorize(*l, [&](Obj z, const FinFn& g) { return l->iota(z, g); }, l->size());
        CHECK(is_identity(id));

        auto lj = kan.lan(j, x);
        FinFn ev = lan_factorize(*lj, [](Obj, const FinFn& g) { return g; }, x);
        CHECK(ev == kan.lambda_bar(x));

        // Post-composition law with a random map out of the carrier.
        std::mt19937_64 rng(x + 11);
        std::vector<Elem> t(l->size());
        for (auto& v : t) v = static_cast<Elem>(rng() % 3);
        FinFn m(3, t);
        auto theta = [&](Obj z, const FinFn& g) { return compose(m, l->iota(z, g)); };
        CHECK(lan_factorize(*l, theta, 3) == m);
        CHECK(lan_factorize_unchecked(*l, theta, 3) == m);
    }
    // A non-natural family is rejected with a generator witness.
    auto l = kan.lan(f, 2);
    auto bad = [&](Obj z, const FinFn& g) {
        std::vector<Elem> t(f.at(z), 0);
        if (z == 2 && g.table() == std::vector<Elem>{0, 1}) t[0] = 1;
        return FinFn(2, t);
    };
    try {
        lan_factorize(*l, bad, 2);
        FAIL("expected FactorizeError");
    } catch (const FactorizeError& e) {
        CHECK(e.witness.contains("generator"));
    }
}

TEST_CASE("factorization is the unique map through every injection") {
    auto c1 = fin_skeleton(1);
    SetFunctor j = inclusion_functor(c1);
    SetFunctor f = endo_on(c1, endo_plus(1));
    Kan kan(j);
    auto l = kan.lan(f, 2);
    // Every natural family comes from some u; enumerate all u and check uniqueness per family.
    std::size_t y = 2;
    for (const auto& u : enumerate_fns(l->size(), y)) {
        auto theta = [&](Obj z, const FinFn& g) { return compose(u, l->iota(z, g)); };
        FinFn got = lan_factorize(*l, theta, y);
        CHECK(got == u);
        std::size_t solutions = 0;
        for (const auto& v : enumerate_fns(l->size(), y)) {
            bool ok = true;
            for (Obj z = 0; z < c1->size() && ok; ++z)
                for (const auto& g : enumerate_fns(j.at(z), 2))
                    if (compose(v, l->iota(z, g)) != theta(z, g)) ok = false;
            solutions += ok;
        }
        CHECK(solutions == 1);
    }
}

TEST_CASE("lan is functorial") {
    auto u = subuniverse({0, 1, 2});
    SetFunctor j = inclusion_functor(u);
    Kan kan(j);
    std::mt19937_64 rng(3);
    SetFunctor f = random_functor(u, rng, 4);
    for (std::size_t x = 0; x <= 2; ++x) CHECK(is_identity(kan.lan_map(f, FinFn::identity(x))));
    for (int t = 0; t < 10; ++t) {
        FinFn a(3, {static_cast<Elem>(rng() % 3), static_cast<Elem>(rng() % 3)});
        FinFn b(2, {static_cast<Elem>(rng() % 2), static_cast<Elem>(rng() % 2), static_cast<Elem>(rng() % 2)});
        CHECK(kan.lan_map(f, compose(b, a)) == compose(kan.lan_map(f, b), kan.lan_map(f, a)));
    }
    for (std::size_t x = 0; x <= 2; ++x) CHECK(is_identity(kan.lan_nat(identity_nat(f), x)));
    CHECK(check_functor(kan.tensor(f, j)).ok());
}

TEST_CASE("structure maps on the truncated finite-set inclusion") {
    auto c2 = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c2);
    Kan kan(j);
    for (Obj x = 0; x < 3; ++x) {
        StructureMaps s = structure_maps(kan, j, j, x);
        CHECK(is_identity(compose(s.lambda_bar, kan.rho(j, x))));
    }
    // alpha-bar on constant functors is a bijection.
    SetFunctor k2 = constant_functor(c2, 2), k3 = constant_functor(c2, 3);
    for (std::size_t x = 0; x <= 2; ++x) CHECK(bijection_failure(kan.alpha_bar(k2, k3, x)).is_null());
    CHECK(check_nat(kan.rho_nat(j)).ok());
    CHECK(check_nat(kan.lambda_nat(j)).ok());
    CHECK(check_nat(kan.alpha_nat(j, j, k2)).ok());
}

TEST_CASE("evaluation under J X = X x S is not injective") {
    auto u = subuniverse({0, 1, 2, 4});
    SetFunctor j = endo_on(u, endo_times(2));
    Kan kan(j);
    FinFn lb = kan.lambda_bar(2);
    CHECK(lb.dom() == 8);  // X^S x S
    json w = bijection_failure(lb);
    REQUIRE(!w.is_null());
    CHECK(w["kind"] == "not-injective");
    // rho is not a bijection either.
    CHECK(!bijection_failure(kan.rho(j, 1)).is_null());
}

TEST_CASE("skew coherence holds") {
    std::mt19937_64 rng(5);
    {
        auto c2 = fin_skeleton(2);
        SetFunctor j = inclusion_functor(c2);
        Kan kan(j);
        for (int t = 0; t < 3; ++t) {
            SetFunctor f = random_functor(c2, rng, 3), g = random_functor(c2, rng, 3);
            for (Obj x = 0; x < 3; ++x) {
                Report r = skew_coherence_check(kan, f, g, j, j, x);
                CHECK_MESSAGE(r.ok(), r.to_json().dump());
            }
        }
    }
    {
        auto u = subuniverse({0, 1, 2});
        SetFunctor j = endo_on(u, endo_plus(1));
        Kan kan(j);
        for (int t = 0; t < 3; ++t) {
            SetFunctor f = random_functor(u, rng, 3), g = random_functor(u, rng, 3);
            SetFunctor h = random_functor(u, rng, 2), k = random_functor(u, rng, 2);
            Report r = skew_coherence_check(kan, f, g, h, k, static_cast<Obj>(t % 2));
            CHECK_MESSAGE(r.ok(), r.to_json().dump());
        }
        SetFunctor e = constant_functor(u, 0);
        CHECK(skew_coherence_check(kan, e, e, e, e, 1).ok());
        // alpha-bar fails to be a bijection somewhere.
        bool found = false;
        SetFunctor incl = inclusion_functor(u);
        for (std::size_t x = 0; x <= 2 && !found; ++x)
            found = !bijection_failure(kan.alpha_bar(incl, incl, x)).is_null();
        CHECK(found);
    }
}

TEST_CASE("well-behavedness verdicts") {
    {
        auto c3 = fin_skeleton(3);
        SetFunctor j = inclusion_functor(c3);
        WellBehaved wb = wellbehaved_check(j, WellBehavedBounds{3, {j, endo_on(c3, endo_powerset())}});
        CHECK(wb.ff.status == Status::pass);
        CHECK(wb.dense.status == Status::pass);
        CHECK(wb.lan_pres.status == Status::pass);
        CHECK(wb.lan_pres.verified > 0);
        CHECK(wb.lan_pres.out_of_universe > 0);
        CHECK(wb.report().ok());
    }
    {
        auto u = subuniverse({0, 1, 2});
        WellBehaved wb = wellbehaved_check(endo_on(u, endo_times(2)), WellBehavedBounds{2, {}});
        CHECK(wb.dense.status == Status::fail);
        CHECK(!wb.dense.witness.is_null());
    }
    {
        auto d = discrete_category({"*"});
        SetFunctor j = make_set_functor(d, {1}, [](Obj, Obj, Elem) { return FinFn::identity(1); }, "J");
        WellBehaved wb = wellbehaved_check(j);
        CHECK(wb.ff.status == Status::pass);
        CHECK(wb.dense.status == Status::pass);
        CHECK(wb.lan_pres.status == Status::pass);
    }
}

TEST_CASE("inverse structure maps") {
    auto c2 = fin_skeleton(2);
    SetFunctor j = inclusion_functor(c2);
    Kan kan(j);
    for (Obj x = 0; x < 3; ++x) {
        FinFn r = kan.rho(j, x), ri = rho_inverse(kan, j, x);
        CHECK(is_identity(compose(ri, r)));
        CHECK(is_identity(compose(r, ri)));
    }
    for (std::size_t x = 0; x <= 2; ++x) {
        FinFn lb = kan.lambda_bar(x), li = lambda_bar_inverse(kan, x);
        CHECK(is_identity(compose(li, lb)));
        CHECK(is_identity(compose(lb, li)));
    }
    SetFunctor k2 = constant_functor(c2, 2), k1 = constant_functor(c2, 1);
    for (std::size_t x = 0; x <= 2; ++x) {
        FinFn a = kan.alpha_bar(k2, k1, x), ai = alpha_bar_inverse(kan, k2, k1, x);
        CHECK(is_identity(compose(ai, a)));
        CHECK(is_identity(compose(a, ai)));
    }
    // alpha-bar^-1 for F = G = J at |X| = 1 stays inside the truncation.
    FinFn a = kan.alpha_bar(j, j, 1), ai = alpha_bar_inverse(kan, j, j, 1);
    CHECK(is_identity(compose(ai, a)));
    CHECK(is_identity(compose(a, ai)));

    // Refusals name the missing condition.
    auto u = subuniverse({0, 1, 2});
    Kan bad(endo_on(u, endo_times(2)));
    CHECK_THROWS_AS(alpha_bar_inverse(bad, j, j, 1), PreconditionError);
    Kan nounit(inclusion_functor(subuniverse({0, 2})));
    CHECK_THROWS_AS(lambda_bar_inverse(nounit, 2), PreconditionError);
}
