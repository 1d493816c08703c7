#include "relmon/builtins.hpp"

#include <algorithm>

namespace relmon {

SetEndo endo_identity() {
    return SetEndo{"Id", [](std::size_t x) { return x; }, [](const FinFn& f) { return f; }};
}

SetEndo endo_plus(std::size_t e) {
    return SetEndo{"+" + std::to_string(e), [e](std::size_t x) { return x + e; },
                   [e](const FinFn& f) { return coproduct_map(f, FinFn::identity(e)); }};
}

SetEndo endo_times(std::size_t s) {
    return SetEndo{"*" + std::to_string(s), [s](std::size_t x) { return x * s; },
                   [s](const FinFn& f) { return product_map(f, FinFn::identity(s)); }};
}

SetEndo endo_exp(std::size_t s) {
    return SetEndo{"^" + std::to_string(s),
                   [s](std::size_t x) { return static_cast<std::size_t>(fn_count(s, x)); },
                   [s](const FinFn& f) {
                       std::size_t n = fn_count(s, f.dom());
                       std::vector<Elem> t(n), digits(s);
                       for (std::uint64_t g = 0; g < n; ++g) {
                           if (s > 0) decode_tuple(g, f.dom(), digits);
                           for (auto& d : digits) d = f(d);
                           t[g] = static_cast<Elem>(encode_tuple(digits, f.cod()));
                       }
                       return FinFn(fn_count(s, f.cod()), std::move(t));
                   }};
}

SetEndo endo_constant(std::size_t c) {
    return SetEndo{"K" + std::to_string(c), [c](std::size_t) { return c; },
                   [c](const FinFn&) { return FinFn::identity(c); }};
}

std::uint64_t subset_bit(std::size_t m, Elem i) { return std::uint64_t{1} << (m - 1 - i); }

FinFn powerset_map(const FinFn& f) {
    std::size_t a = f.dom(), b = f.cod();
    if (a > 20 || b > 20) throw EnumerationOverflow(std::uint64_t{1} << std::min<std::size_t>(std::max(a, b), 63), budget(), "powerset too large");
    std::vector<Elem> t(std::size_t{1} << a);
    for (std::uint64_t s = 0; s < t.size(); ++s) {
        std::uint64_t img = 0;
        for (Elem i = 0; i < a; ++i)
            if (s & subset_bit(a, i)) img |= subset_bit(b, f(i));
        t[s] = static_cast<Elem>(img);
    }
    return FinFn(std::size_t{1} << b, std::move(t));
}

SetEndo endo_powerset() {
    return SetEndo{"P", [](std::size_t x) { return std::size_t{1} << x; }, [](const FinFn& f) { return powerset_map(f); }};
}

SetEndo endo_compose(const SetEndo& outer, const SetEndo& inner) {
    return SetEndo{outer.name + "(" + inner.name + ")", [o = outer.obj, i = inner.obj](std::size_t x) { return o(i(x)); },
                   [o = outer.map, i = inner.map](const FinFn& f) { return o(i(f)); }};
}

SetFunctor apply_endo(const SetEndo& e, const SetFunctor& f) {
    std::vector<std::size_t> obj(f.objects().size());
    for (std::size_t z = 0; z < obj.size(); ++z) obj[z] = e.obj(f.at(static_cast<Obj>(z)));
    return make_set_functor(
        f.src(), obj, [&](Obj x, Obj y, Elem i) { return e.map(f.map(x, y, i)); },
        e.name + "(" + f.name() + ")");
}

SetFunctor endo_on(const CatPtr& c, const SetEndo& e) {
    return apply_endo(e, inclusion_functor(c)).renamed(e.name);
}

SetFunctor random_functor(const CatPtr& c, std::mt19937_64& rng, std::size_t max_value) {
    std::size_t top = 0;
    for (auto s : *c->concrete()) top = std::max(top, s);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    for (int attempt = 0; attempt < 64; ++attempt) {
        SetEndo e = endo_identity();
        int depth = 1 + static_cast<int>(pick(2));
        for (int d = 0; d < depth; ++d) {
            SetEndo step;
            switch (pick(5)) {
                case 0: step = endo_constant(pick(3)); break;
                case 1: step = endo_identity(); break;
                case 2: step = endo_plus(1 + pick(2)); break;
                case 3: step = endo_times(1 + pick(2)); break;
                default: step = endo_powerset(); break;
            }
            e = endo_compose(step, e);
        }
        bool ok = true;
        std::size_t v = 0;
        for (std::size_t s = 0; s <= top && ok; ++s) {
            if (s > 16) { ok = false; break; }
            v = e.obj(s);
            ok = v <= max_value;
        }
        if (ok) return endo_on(c, e);
    }
    return endo_on(c, endo_identity());
}

}  // namespace relmon
