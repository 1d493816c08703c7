#pragma once

#include <map>

#include "relmon/relmonad.hpp"
#include "relmon/shallow.hpp"

namespace relmon {

// A tabulated relative monad as callables: objects of the base, values are elements of T X.
ShallowRelMonad<Obj, Elem> shallow_from_deep(const RelMonad& t);
// Every object, every value, and all (or sampled) maps J X -> T Y.
ShallowGen<Obj, Elem> deep_generator(const RelMonad& t, const LawMode& mode = {});

// Tabulates a callable instance on a finite slice: objects[x] stands for base object x of J and
// carriers[x] lists the values making up T x, in the order that numbers them. A star result outside
// the listed carrier raises ShapeError.
template <typename O, typename V>
RelMonad deep_from_shallow(const ShallowRelMonad<O, V>& s, const SetFunctor& j, const std::vector<O>& objects,
                           const std::vector<std::vector<V>>& carriers) {
    std::size_t n = j.src()->size();
    if (objects.size() != n || carriers.size() != n) throw ShapeError("deep_from_shallow: one object and carrier per base object");
    auto lookup = std::make_shared<std::vector<std::map<V, Elem>>>(n);
    for (Obj x = 0; x < n; ++x) {
        if (s.arity(objects[x]) != j.at(x)) throw ShapeError("deep_from_shallow: arity differs from J");
        for (Elem i = 0; i < carriers[x].size(); ++i) (*lookup)[x].emplace(carriers[x][i], i);
    }
    auto find = [lookup](Obj x, const V& v) {
        auto it = (*lookup)[x].find(v);
        if (it == (*lookup)[x].end()) throw ShapeError("deep_from_shallow: value outside the listed carrier");
        return it->second;
    };
    std::vector<std::size_t> sizes;
    std::vector<FinFn> unit;
    for (Obj x = 0; x < n; ++x) {
        sizes.push_back(carriers[x].size());
        std::vector<Elem> tab;
        for (std::size_t i = 0; i < j.at(x); ++i) tab.push_back(find(x, s.unit(objects[x], i)));
        unit.emplace_back(sizes.back(), std::move(tab));
    }
    StarFn star = [s, objects, carriers, find](Obj x, Obj y, const FinFn& k) {
        std::vector<V> kv;
        for (Elem e : k.table()) kv.push_back(carriers[y][e]);
        std::vector<Elem> tab;
        for (const V& v : carriers[x]) tab.push_back(find(y, s.star(objects[x], objects[y], kv, v)));
        return FinFn(carriers[y].size(), std::move(tab));
    };
    return RelMonad(s.name, j, std::move(sizes), std::move(unit), std::move(star));
}

// Units and stars of a and b agree on every (or every sampled) map.
Report same_relmonad(const RelMonad& a, const RelMonad& b, const LawMode& mode = {});
// deep -> shallow -> deep is the identity, and the shallow law suite agrees with the deep one.
Report reflection_roundtrip(const RelMonad& t, const LawMode& mode = {});

}  // namespace relmon
