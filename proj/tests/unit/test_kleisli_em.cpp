#include <doctest.h>

#include "relmon/kleisli_em.hpp"
#include "relmon/semiring.hpp"
#include "relmon/state.hpp"
#include "relmon/vec.hpp"

using namespace relmon;

namespace {

RelMonad powerset_flat(std::size_t k) { return restrict(powerset_monad(), inclusion_functor(fin_skeleton(k))); }

}  // namespace

TEST_CASE("Kleisli categories of the instances") {
    FiniteSemiring b = bool_semiring();
    std::vector<RelMonad> ts = {trivial_relmonad(inclusion_functor(fin_skeleton(2))),
                                vec_relmonad(b, inclusion_functor(fin_skeleton(2))),
                                powerset_flat(2),
                                restrict(maybe_monad(), inclusion_functor(fin_skeleton(2))),
                                state_relmonad(2),
                                cont_relmonad(2)};
    for (const auto& t : ts) {
        CAPTURE(t.name());
        Report r = kleisli_adjunction_check(t);
        CHECK_MESSAGE(r.ok(), r.to_json().dump());
    }
}

TEST_CASE("Kleisli of Vec over Bool composes by matrix product") {
    FiniteSemiring b = bool_semiring();
    KleisliCat kl = kleisli_build(vec_relmonad(b, inclusion_functor(fin_skeleton(2))));
    for (Elem f = 0; f < kl.cat->hom(2, 2); ++f)
        for (Elem g = 0; g < kl.cat->hom(2, 2); ++g) {
            Matrix lhs = kleisli_matrix(b, kl.arrow(2, 2, kl.cat->comp(2, 2, 2, g, f)), 2);
            CHECK(lhs == matmul(b, kleisli_matrix(b, kl.arrow(2, 2, f), 2), kleisli_matrix(b, kl.arrow(2, 2, g), 2)));
        }
}

TEST_CASE("Kleisli of the trivial relative monad is the base") {
    CatPtr base = fin_skeleton(2);
    KleisliCat kl = kleisli_build(trivial_relmonad(inclusion_functor(base)));
    for (Obj x = 0; x < 3; ++x) {
        CHECK(kl.cat->id(x) == base->id(x));
        for (Obj y = 0; y < 3; ++y) {
            REQUIRE(kl.cat->hom(x, y) == base->hom(x, y));
            for (Obj z = 0; z < 3; ++z)
                for (Elem f = 0; f < base->hom(x, y); ++f)
                    for (Elem g = 0; g < base->hom(y, z); ++g) CHECK(kl.cat->comp(x, y, z, g, f) == base->comp(x, y, z, g, f));
        }
    }
}

TEST_CASE("a broken star breaks the Kleisli category") {
    RelMonad p = powerset_flat(2);
    RelMonad bad("broken", p.J(), p.sizes(), {p.unit(0), p.unit(1), p.unit(2)}, [p](Obj x, Obj y, const FinFn& k) {
        if (x == 2 && y == 2 && fn_index(k) == 5) return p.star(x, y, fn_from_index(6, 2, 4));
        return p.star(x, y, k);
    });
    Report r = check_category(*kleisli_build(bad).cat);
    CHECK(!r.ok());
}

TEST_CASE("EM-algebras and the alternative format") {
    RelMonad p = powerset_flat(2);
    for (Obj x = 0; x < 3; ++x) CHECK(em_check(p, free_algebra(p, x)).ok());
    auto kan = std::make_shared<const Kan>(p.J());
    EMAltContext c(kan, p);
    for (std::size_t x = 0; x <= 2; ++x) {
        Report r = em_alt_roundtrip(c, x);
        CHECK_MESSAGE(r.ok(), r.to_json().dump());
    }
    // Algebras of P-flat on two points are the join-semilattice structures: two labellings of the bottom.
    CHECK(enumerate_em_algebras(p, 2).size() == 2);
    // Free algebra round trip.
    EMAlgebra fa = free_algebra(p, 2);
    CHECK(alt_to_em(c, em_to_alt(c, fa)) == fa);
    // A structure breaking the unit law.
    EMAlgebra bad = fa;
    bad.chi[1][1] = FinFn::constant(2, 4, 0);
    CHECK(!em_check(p, bad).ok());
}

TEST_CASE("state relative monad algebras") {
    Report r = state_em_check(2, 2);
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
    CHECK(r.find("same-families")->detail["families"] == 256);
    CHECK(r.find("lawful-count")->detail["alt"] == 1);
}

TEST_CASE("Kleisli is initial and EM terminal among splittings") {
    for (const RelMonad& t : {trivial_relmonad(inclusion_functor(fin_skeleton(2))),
                              restrict(maybe_monad(), inclusion_functor(fin_skeleton(1))),
                              powerset_flat(1)}) {
        CAPTURE(t.name());
        KleisliCat kl = kleisli_build(t);
        std::size_t top = 0;
        for (auto v : t.sizes()) top = std::max(top, v);
        EMCat em = em_category(t, top);
        Splitting ks = kleisli_splitting(kl);
        Splitting es = em_splitting(em);
        CHECK(check_splitting(t, ks).ok());
        CHECK(check_splitting(t, es).ok());
        SplittingMorphisms a = splitting_morphisms(t, kl, em, ks);
        CHECK_MESSAGE(a.report.ok(), a.report.to_json().dump());
        CHECK(a.from_kleisli == identity_cat_functor(kl.cat));
        SplittingMorphisms b = splitting_morphisms(t, kl, em, es);
        CHECK_MESSAGE(b.report.ok(), b.report.to_json().dump());
        CHECK(b.to_em == identity_cat_functor(em.cat));
        // Kleisli -> EM sends each object to its free algebra.
        for (Obj x = 0; x < t.base()->size(); ++x) CHECK(b.from_kleisli.obj[x] == es.left.obj[x]);
    }
}

TEST_CASE("comparisons along restriction and extension") {
    Report f = comparison_flat(powerset_monad(), inclusion_functor(fin_skeleton(2)));
    CHECK_MESSAGE(f.ok(), f.to_json().dump());
    Report g = comparison_flat(maybe_monad(), inclusion_functor(fin_skeleton(2)));
    CHECK_MESSAGE(g.ok(), g.to_json().dump());
    RelMonad p = powerset_flat(2);
    auto kan = std::make_shared<const Kan>(p.J());
    Report s = comparison_sharp(kan, p, 4);
    CHECK_MESSAGE(s.ok(), s.to_json().dump());
    RelMonad t = trivial_relmonad(inclusion_functor(fin_skeleton(2)));
    auto kt = std::make_shared<const Kan>(t.J());
    Report st = comparison_sharp(kt, t, 3);
    CHECK_MESSAGE(st.ok(), st.to_json().dump());
}

TEST_CASE("Vec over Bool algebras are join semilattices") {
    FiniteSemiring b = bool_semiring();
    RelMonad v = vec_relmonad(b, inclusion_functor(fin_skeleton(2)));
    // Oracle: labelled partial orders with a least element in which every pair has a least upper bound.
    auto semilattices = [](std::size_t n) {
        std::size_t count = 0;
        for (std::uint32_t rel = 0; rel < (1u << (n * n)); ++rel) {
            auto le = [&](std::size_t a, std::size_t c) { return (rel >> (a * n + c)) & 1u; };
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a) {
                ok = le(a, a);
                for (std::size_t c = 0; c < n && ok; ++c) {
                    if (a != c && le(a, c) && le(c, a)) ok = false;
                    for (std::size_t d = 0; d < n && ok; ++d)
                        if (le(a, c) && le(c, d) && !le(a, d)) ok = false;
                }
            }
            if (!ok) continue;
            bool bottom = false;
            for (std::size_t a = 0; a < n; ++a) {
                bool all = true;
                for (std::size_t c = 0; c < n; ++c) all = all && le(a, c);
                bottom = bottom || all;
            }
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t c = 0; c < n && ok; ++c) {
                    std::size_t joins = 0;
                    for (std::size_t u = 0; u < n; ++u) {
                        if (!le(a, u) || !le(c, u)) continue;
                        bool least = true;
                        for (std::size_t v = 0; v < n; ++v)
                            if (le(a, v) && le(c, v) && !le(u, v)) least = false;
                        if (least) ++joins;
                    }
                    ok = joins == 1;
                }
            if (ok && bottom) ++count;
        }
        return count;
    };
    std::vector<std::size_t> counts, expected;
    std::vector<Semimodule> all;
    for (std::size_t n = 1; n <= 4; ++n) {
        auto ms = bool_semimodules(n);
        counts.push_back(ms.size());
        expected.push_back(semilattices(n));
        all.insert(all.end(), ms.begin(), ms.end());
    }
    CHECK(counts == expected);
    CHECK(expected[2] == 6);
    Report r = vec_em_bridge(b, v, all);
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
    // The two-point join semilattice: recovering + gives back the table.
    Semimodule two{2, 0, {0, 1, 1, 1}, {0, 0, 0, 1}};
    CHECK(em_to_module(b, v, module_to_em(b, v, two)).add == two.add);
    Semimodule broken = two;
    broken.add = {0, 1, 1, 0};
    CHECK_THROWS_AS(module_to_em(b, v, broken), PreconditionError);
}
