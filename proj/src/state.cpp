#include "relmon/state.hpp"

namespace relmon {

RelMonad state_relmonad(std::size_t s, const std::vector<std::size_t>& sizes) {
    return trivial_relmonad(endo_on(subuniverse(sizes), endo_times(s)), "State" + std::to_string(s));
}

Monad state_monad(std::size_t s, std::size_t max_size) {
    Monad m;
    m.name = "StateMonad" + std::to_string(s);
    m.max_size = max_size;
    m.obj = [s](std::size_t x) { return static_cast<std::size_t>(fn_count(s, x * s)); };
    m.unit = [s](std::size_t x) {
        FinFn pairs(x * s, [&] {
            std::vector<Elem> t(x * s);
            for (Elem i = 0; i < t.size(); ++i) t[i] = i;
            return t;
        }());
        return curry(pairs, x, s);
    };
    m.star = [s](const FinFn& k, std::size_t y) {
        std::size_t x = k.dom();
        std::size_t tx = fn_count(s, x * s), ty = fn_count(s, y * s);
        std::vector<Elem> f(s), g(s), out(tx);
        for (std::uint64_t a = 0; a < tx; ++a) {
            if (s > 0) decode_tuple(a, x * s, f);
            // Run f, then the computation k picks for its result, from each start state.
            for (std::size_t t = 0; t < s; ++t) {
                Elem i = static_cast<Elem>(f[t] / s), t1 = static_cast<Elem>(f[t] % s);
                decode_tuple(k(i), y * s, g);
                f[t] = g[t1];
            }
            out[a] = static_cast<Elem>(encode_tuple(f, y * s));
        }
        return FinFn(ty, std::move(out));
    };
    return m;
}

Report state_kleisli_iso(std::size_t s, const std::vector<std::size_t>& sizes) {
    Report r("state-kleisli-iso");
    Monad m = state_monad(s);
    LawCheck bij("bijective-on-homs"), ids("preserves-identity"), comp("preserves-composition"), inv("inverse-preserves");
    std::vector<std::vector<std::vector<FinFn>>> homs(sizes.size(), std::vector<std::vector<FinFn>>(sizes.size()));
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        std::size_t x = sizes[a];
        // Identity of Kl(T) is id on X x S.
        ids.expect(curry(FinFn::identity(x * s), x, s) == m.unit(x), [&] { return json{{"X", x}}; });
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            std::size_t y = sizes[b];
            std::uint64_t count = 0;
            for (const auto& h : enumerate_fns(x * s, y * s)) {
                FinFn c = curry(h, x, s);
                bij.expect(uncurry(c, s, y * s) == h, [&] { return json{{"h", h.table()}}; });
                homs[a][b].push_back(c);
                ++count;
            }
            // Curried homs are all of X -> (Y x S)^S.
            bij.expect(count == fn_count(x, m.obj(y)), [&] { return json{{"X", x}, {"Y", y}}; });
            for (const auto& k : enumerate_fns(x, m.obj(y)))
                bij.expect(curry(uncurry(k, s, y * s), x, s) == k, [&] { return json{{"k", k.table()}}; });
        }
    }
    for (std::size_t a = 0; a < sizes.size(); ++a)
        for (std::size_t b = 0; b < sizes.size(); ++b)
            for (std::size_t c = 0; c < sizes.size(); ++c) {
                std::size_t x = sizes[a], y = sizes[b], z = sizes[c];
                std::size_t i = 0;
                for (const auto& h : enumerate_fns(x * s, y * s)) {
                    const FinFn& ch = homs[a][b][i++];
                    std::size_t j = 0;
                    for (const auto& l : enumerate_fns(y * s, z * s)) {
                        const FinFn& cl = homs[b][c][j++];
                        // l . h in Kl(T) is plain composition; in Kl(T') it is star(curry l) . curry h.
                        FinFn lhs = curry(compose(l, h), x, s);
                        FinFn rhs = compose(m.star(cl, z), ch);
                        comp.expect(lhs == rhs, [&] { return json{{"h", h.table()}, {"l", l.table()}}; });
                        inv.expect(uncurry(rhs, s, z * s) == compose(l, h));
                    }
                }
            }
    r.add(bij);
    r.add(ids);
    r.add(comp);
    r.add(inv);
    return r;
}

RelMonad cont_relmonad(std::size_t rr, const std::vector<std::size_t>& sizes) {
    CatPtr sub = subuniverse(sizes);
    CatPtr base = op_category(sub);
    std::vector<std::size_t> obj;
    for (auto x : sizes) obj.push_back(fn_count(x, rr));
    // An op-arrow X -> Y is a map f : Y -> X, acting by phi |-> phi . f.
    SetFunctor j = make_set_functor(
        base, obj,
        [&](Obj x, Obj y, Elem i) {
            FinFn f = concrete_arrow(*sub, y, x, i);
            std::vector<Elem> t(obj[x]);
            for (std::uint64_t p = 0; p < obj[x]; ++p)
                t[p] = static_cast<Elem>(fn_index(compose(fn_from_index(p, sizes[x], rr), f)));
            return FinFn(obj[y], std::move(t));
        },
        "R^-");
    return trivial_relmonad(j, "Cont" + std::to_string(rr));
}

Report cont_kleisli_counts(std::size_t rr, const std::vector<std::size_t>& sizes) {
    Report r("cont-kleisli-counts");
    RelMonad t = cont_relmonad(rr, sizes);
    LawCheck lc("hom-counts");
    for (Obj a = 0; a < sizes.size(); ++a)
        for (Obj b = 0; b < sizes.size(); ++b) {
            std::uint64_t kl = fn_count(t.J().at(a), t.T(b));
            std::uint64_t cont = fn_count(sizes[b], fn_count(fn_count(sizes[a], rr), rr));
            lc.expect(kl == cont, [&] { return json{{"X", sizes[a]}, {"Y", sizes[b]}, {"relative", kl}, {"cont", cont}}; });
        }
    r.add(lc);
    return r;
}

}  // namespace relmon
