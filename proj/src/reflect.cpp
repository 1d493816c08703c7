#include "relmon/reflect.hpp"

namespace relmon {

ShallowRelMonad<Obj, Elem> shallow_from_deep(const RelMonad& t) {
    ShallowRelMonad<Obj, Elem> s;
    s.name = t.name();
    s.arity = [t](const Obj& x) { return t.J().at(x); };
    s.unit = [t](const Obj& x, std::size_t i) { return t.unit(x)(static_cast<Elem>(i)); };
    s.star = [t](const Obj& x, const Obj& y, const std::vector<Elem>& k, const Elem& v) {
        return t.star(x, y, FinFn(t.T(y), k))(v);
    };
    return s;
}

ShallowGen<Obj, Elem> deep_generator(const RelMonad& t, const LawMode& mode) {
    ShallowGen<Obj, Elem> g;
    for (Obj x = 0; x < t.base()->size(); ++x) g.objects.push_back(x);
    g.values = [t](const Obj& x) {
        std::vector<Elem> out(t.T(x));
        for (Elem i = 0; i < out.size(); ++i) out[i] = i;
        return out;
    };
    g.homs = [t, mode](const Obj& x, const Obj& y) {
        std::mt19937_64 rng(mode.seed * 7919 + x * 31 + y);
        std::vector<std::vector<Elem>> out;
        for (const auto& k : law_inputs(t.J().at(x), t.T(y), mode, rng)) out.push_back(k.table());
        return out;
    };
    g.show = [](const Elem& v) { return json(v); };
    auto base = t.base();
    g.show_obj = [base](const Obj& x) { return json(base->name(x)); };
    return g;
}

Report same_relmonad(const RelMonad& a, const RelMonad& b, const LawMode& mode) {
    Report r("same-relmonad");
    const FinCat& c = *a.base();
    std::size_t n = c.size();
    if (a.sizes() != b.sizes() || a.J().objects() != b.J().objects()) {
        r.fail("carriers", json{{"a", a.sizes()}, {"b", b.sizes()}});
        return r;
    }
    LawCheck unit("unit");
    LawCheck star("star");
    std::mt19937_64 rng(mode.seed);
    for (Obj x = 0; x < n; ++x) unit.expect(a.unit(x) == b.unit(x), [&] { return json{{"X", c.name(x)}}; });
    try {
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (const auto& k : law_inputs(a.J().at(x), a.T(y), mode, rng))
                    star.expect(a.star(x, y, k) == b.star(x, y, k),
                                [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", k.table()}}; });
    } catch (const EnumerationOverflow& e) {
        r.add(unit);
        r.skip("star", std::string("budget: ") + e.what());
        return r;
    }
    r.add(unit);
    r.add(star, mode.to_json());
    return r;
}

Report reflection_roundtrip(const RelMonad& t, const LawMode& mode) {
    Report r("reflection");
    std::size_t n = t.base()->size();
    ShallowRelMonad<Obj, Elem> s = shallow_from_deep(t);
    std::vector<Obj> objects;
    std::vector<std::vector<Elem>> carriers;
    for (Obj x = 0; x < n; ++x) {
        objects.push_back(x);
        std::vector<Elem> vs(t.T(x));
        for (Elem i = 0; i < vs.size(); ++i) vs[i] = i;
        carriers.push_back(std::move(vs));
    }
    RelMonad back = deep_from_shallow(s, t.J(), objects, carriers);
    r.merge(same_relmonad(t, back, mode), "deep-shallow-deep");
    try {
        bool deep_ok = check_relmonad_laws(t, mode).ok();
        bool shallow_ok = shallow_laws(s, deep_generator(t, mode)).ok();
        r.expect("laws-agree", deep_ok == shallow_ok, json{{"deep", deep_ok}, {"shallow", shallow_ok}});
    } catch (const EnumerationOverflow& e) {
        r.skip("laws-agree", std::string("budget: ") + e.what());
    }
    return r;
}

}  // namespace relmon
