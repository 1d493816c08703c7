#include <doctest.h>

#include "relmon/reflect.hpp"
#include "relmon/state.hpp"
#include "relmon/vec.hpp"

using namespace relmon;

namespace {

std::vector<std::vector<Elem>> all_vectors(const FiniteSemiring& r, std::size_t m) {
    std::vector<std::vector<Elem>> out;
    for (std::uint64_t i = 0; i < fn_count(m, r.n); ++i) out.push_back(vec_decode(r, i, m));
    return out;
}

}  // namespace

TEST_CASE("deep to shallow to deep is exact") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    for (const RelMonad& t : {vec_relmonad(bool_semiring(), j), restrict(maybe_monad(), j), restrict(powerset_monad(), j),
                              state_relmonad(2)}) {
        CAPTURE(t.name());
        Report r = reflection_roundtrip(t);
        CHECK(r.ok());
        CHECK(r.find("deep-shallow-deep/star")->count > 0);
    }
}

TEST_CASE("the shallow law suite agrees with the deep one on a broken star") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    RelMonad t = restrict(maybe_monad(), j);
    std::vector<FinFn> unit;
    for (Obj x = 0; x < 3; ++x) unit.push_back(t.unit(x));
    StarFn bad = [t](Obj x, Obj y, const FinFn& k) {
        FinFn s = t.star(x, y, k);
        std::vector<Elem> tab = s.table();
        if (!tab.empty()) tab.back() = 0;  // nothing no longer goes to nothing
        return FinFn(s.cod(), tab);
    };
    RelMonad broken("broken", j, t.sizes(), unit, bad);
    CHECK_FALSE(check_relmonad_laws(broken).ok());
    CHECK_FALSE(shallow_laws(shallow_from_deep(broken), deep_generator(broken)).ok());
    CHECK(reflection_roundtrip(broken).ok());
}

TEST_CASE("tabulating the callable Vec instance gives the table-driven one") {
    SetFunctor j = inclusion_functor(fin_skeleton(2));
    for (const FiniteSemiring& r : {bool_semiring(), zmod_semiring(3), tropical_semiring(2)}) {
        CAPTURE(r.name);
        std::vector<std::vector<std::vector<Elem>>> carriers;
        for (std::size_t m = 0; m < 3; ++m) carriers.push_back(all_vectors(r, m));
        RelMonad deep = deep_from_shallow(vec_shallow(r), j, std::vector<std::size_t>{0, 1, 2}, carriers);
        CHECK(same_relmonad(vec_relmonad(r, j), deep).ok());
        CHECK(check_relmonad_laws(deep).ok());
    }
}

TEST_CASE("a carrier missing a value is refused") {
    SetFunctor j = inclusion_functor(fin_skeleton(1));
    FiniteSemiring r = bool_semiring();
    std::vector<std::vector<std::vector<Elem>>> carriers{all_vectors(r, 0), {{0}}};
    CHECK_THROWS_AS(deep_from_shallow(vec_shallow(r), j, std::vector<std::size_t>{0, 1}, carriers), ShapeError);
}
