#pragma once

#include <functional>
#include <string>
#include <vector>

#include "relmon/report.hpp"

namespace relmon {

// A relative monad given by callables, for carriers that are too big (or infinite) to tabulate.
// J X is the finite set {0, ..., arity(X)-1}; a map k : J X -> T Y is the vector of its values.
template <typename Obj, typename Val>
struct ShallowRelMonad {
    std::string name;
    std::function<std::size_t(const Obj&)> arity;
    std::function<Val(const Obj&, std::size_t)> unit;
    std::function<Val(const Obj& x, const Obj& y, const std::vector<Val>& k, const Val& v)> star;
};

// Finite slices of the instance to quantify over.
template <typename Obj, typename Val>
struct ShallowGen {
    std::vector<Obj> objects;
    std::function<std::vector<Val>(const Obj&)> values;
    std::function<std::vector<std::vector<Val>>(const Obj& x, const Obj& y)> homs;
    std::function<json(const Val&)> show;
    std::function<json(const Obj&)> show_obj;
};

template <typename Obj, typename Val>
Report shallow_laws(const ShallowRelMonad<Obj, Val>& t, const ShallowGen<Obj, Val>& gen) {
    Report r("shallow-laws");
    LawCheck right("right-unit"), left("left-unit"), assoc("associativity");
    auto showk = [&](const std::vector<Val>& k) {
        json a = json::array();
        for (const auto& v : k) a.push_back(gen.show(v));
        return a;
    };
    for (const Obj& x : gen.objects) {
        std::vector<Val> eta;
        for (std::size_t i = 0; i < t.arity(x); ++i) eta.push_back(t.unit(x, i));
        for (const Val& v : gen.values(x))
            left.expect(t.star(x, x, eta, v) == v, [&] { return json{{"X", gen.show_obj(x)}, {"v", gen.show(v)}}; });
        for (const Obj& y : gen.objects)
            for (const auto& k : gen.homs(x, y))
                for (std::size_t i = 0; i < t.arity(x); ++i)
                    right.expect(t.star(x, y, k, eta[i]) == k[i],
                                 [&] { return json{{"X", gen.show_obj(x)}, {"k", showk(k)}, {"i", i}}; });
    }
    for (const Obj& x : gen.objects) {
        std::vector<Val> vs = gen.values(x);
        for (const Obj& y : gen.objects) {
            auto ks = gen.homs(x, y);
            // k* v for every k and v, computed once.
            std::vector<std::vector<Val>> kv(ks.size());
            for (std::size_t a = 0; a < ks.size(); ++a)
                for (const Val& v : vs) kv[a].push_back(t.star(x, y, ks[a], v));
            for (const Obj& z : gen.objects)
                for (const auto& l : gen.homs(y, z))
                    for (std::size_t a = 0; a < ks.size(); ++a) {
                        std::vector<Val> lk;
                        lk.reserve(ks[a].size());
                        for (const Val& e : ks[a]) lk.push_back(t.star(y, z, l, e));
                        for (std::size_t b = 0; b < vs.size(); ++b)
                            assoc.expect(t.star(x, z, lk, vs[b]) == t.star(y, z, l, kv[a][b]), [&] {
                                return json{{"X", gen.show_obj(x)}, {"Y", gen.show_obj(y)}, {"Z", gen.show_obj(z)},
                                            {"k", showk(ks[a])}, {"l", showk(l)}, {"v", gen.show(vs[b])}};
                            });
                    }
        }
    }
    r.add(right);
    r.add(left);
    r.add(assoc);
    return r;
}

}  // namespace relmon
