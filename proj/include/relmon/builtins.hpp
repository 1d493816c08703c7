#pragma once

#include <functional>
#include <random>
#include <string>

#include "relmon/fincat.hpp"

namespace relmon {

// An endofunctor of FinSet given by its action on sizes and on maps.
struct SetEndo {
    std::string name;
    std::function<std::size_t(std::size_t)> obj;
    std::function<FinFn(const FinFn&)> map;
};

SetEndo endo_identity();
SetEndo endo_plus(std::size_t e);    // X + E, new points after X
SetEndo endo_times(std::size_t s);   // X x S, pairs (x, s) at x*S + s
SetEndo endo_exp(std::size_t s);     // X^S
SetEndo endo_constant(std::size_t c);
SetEndo endo_powerset();             // subsets as characteristic-function indices
SetEndo endo_compose(const SetEndo& outer, const SetEndo& inner);

// E . F
SetFunctor apply_endo(const SetEndo& e, const SetFunctor& f);
// E . J for the inclusion J of a concrete category.
SetFunctor endo_on(const CatPtr& c, const SetEndo& e);

// Subsets of an m-element set are indexed like characteristic functions m -> 2:
// element i is bit (m-1-i).
std::uint64_t subset_bit(std::size_t m, Elem i);
FinFn powerset_map(const FinFn& f);

// Seeded random functor on a concrete category, drawn from constants, the inclusion,
// X+E, X*S, powerset and their composites, with every value kept at most max_value.
SetFunctor random_functor(const CatPtr& c, std::mt19937_64& rng, std::size_t max_value = 8);

}  // namespace relmon
