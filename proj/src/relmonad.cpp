#include "relmon/relmonad.hpp"

#include <map>
#include <mutex>

namespace relmon {

json LawMode::to_json() const {
    if (exhaustive) return json{{"mode", "exhaustive"}};
    return json{{"mode", "sampled"}, {"seed", seed}, {"samples", samples}};
}

FinFn random_fn(std::size_t a, std::size_t b, std::mt19937_64& rng) {
    std::vector<Elem> t(a);
    for (auto& v : t) v = static_cast<Elem>(rng() % b);
    return FinFn(b, std::move(t));
}

std::vector<FinFn> law_inputs(std::size_t a, std::size_t b, const LawMode& mode, std::mt19937_64& rng) {
    if (b == 0 && a > 0) return {};
    std::uint64_t count = 0;
    bool huge = false;
    try {
        count = fn_count(a, b);
    } catch (const EnumerationOverflow&) {
        if (mode.exhaustive) throw;
        huge = true;
    }
    std::vector<FinFn> out;
    if (!huge && (mode.exhaustive || count <= mode.samples)) {
        out.reserve(count);
        for (const auto& f : enumerate_fns(a, b)) out.push_back(f);
        return out;
    }
    for (std::size_t i = 0; i < mode.samples; ++i) out.push_back(random_fn(a, b, rng));
    return out;
}

namespace {

json fn_json(const FinFn& f) { return json{{"table", f.table()}, {"cod", f.cod()}}; }

// Index pairs to test: all of them, or a seeded sample.
std::vector<std::pair<std::size_t, std::size_t>> pairs(std::size_t n, std::size_t m, const LawMode& mode,
                                                       std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0 || m == 0) return out;
    if (mode.exhaustive || n * m <= mode.samples) {
        if (mode.exhaustive && n * m > budget()) throw EnumerationOverflow(n * m, budget(), "law check pairs");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) out.emplace_back(i, j);
        return out;
    }
    for (std::size_t s = 0; s < mode.samples; ++s) out.emplace_back(rng() % n, rng() % m);
    return out;
}

}  // namespace

// ---------------- RelMonad ----------------

RelMonad::RelMonad(std::string name, SetFunctor j, std::vector<std::size_t> t, std::vector<FinFn> unit, StarFn star)
    : impl_(std::make_shared<Impl>()) {
    std::size_t n = j.src()->size();
    if (t.size() != n || unit.size() != n) throw ShapeError("RelMonad " + name + ": table sizes do not match the base");
    for (Obj x = 0; x < n; ++x)
        if (unit[x].dom() != j.at(x) || unit[x].cod() != t[x])
            throw ShapeError("RelMonad " + name + ": unit at " + j.src()->name(x) + " is not J X -> T X");
    impl_->name = std::move(name);
    impl_->j = std::move(j);
    impl_->t = std::move(t);
    impl_->unit = std::move(unit);
    impl_->star = std::move(star);
}

FinFn RelMonad::star(Obj x, Obj y, const FinFn& k) const {
    if (k.dom() != J().at(x) || k.cod() != T(y))
        throw ShapeError("star: " + to_string(k) + " is not J X -> T Y for " + base()->name(x) + ", " + base()->name(y));
    FinFn r = impl_->star(x, y, k);
    if (r.dom() != T(x) || r.cod() != T(y)) throw ShapeError("star of " + name() + " returned a map of the wrong shape");
    return r;
}

FinFn functor_action(const RelMonad& t, Obj x, Obj y, Elem i) {
    return t.star(x, y, compose(t.unit(y), t.J().map(x, y, i)));
}

const SetFunctor& RelMonad::functor() const {
    std::call_once(impl_->once, [&] {
        impl_->functor = make_set_functor(
            base(), impl_->t, [&](Obj x, Obj y, Elem i) { return functor_action(*this, x, y, i); }, "T[" + name() + "]");
    });
    return impl_->functor;
}

NatTrans RelMonad::unit_nat() const { return NatTrans{J(), functor(), impl_->unit}; }

RelMonad trivial_relmonad(const SetFunctor& j, std::string name) {
    std::vector<FinFn> unit;
    for (Obj x = 0; x < j.src()->size(); ++x) unit.push_back(FinFn::identity(j.at(x)));
    return RelMonad(std::move(name), j, j.objects(), std::move(unit), [](Obj, Obj, const FinFn& k) { return k; });
}

Report check_relmonad_laws(const RelMonad& t, const LawMode& mode) {
    Report r("relmonad-laws");
    std::mt19937_64 rng(mode.seed);
    const FinCat& c = *t.base();
    std::size_t n = c.size();
    LawCheck right("right-unit"), left("left-unit"), assoc("associativity");
    LawCheck fid("functor-identity"), fcomp("functor-composition"), unat("unit-natural");
    try {
        for (Obj x = 0; x < n; ++x)
            left.expect(t.star(x, x, t.unit(x)) == FinFn::identity(t.T(x)), [&] { return json{{"X", c.name(x)}}; });
        std::vector<std::vector<std::vector<FinFn>>> ks(n, std::vector<std::vector<FinFn>>(n));
        std::vector<std::vector<std::vector<FinFn>>> stars(n, std::vector<std::vector<FinFn>>(n));
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                ks[x][y] = law_inputs(t.J().at(x), t.T(y), mode, rng);
                for (const auto& k : ks[x][y]) {
                    FinFn s = t.star(x, y, k);
                    right.expect(compose(s, t.unit(x)) == k,
                                 [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", fn_json(k)}}; });
                    stars[x][y].push_back(std::move(s));
                }
            }
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (Obj z = 0; z < n; ++z)
                    for (auto [i, j] : pairs(ks[x][y].size(), ks[y][z].size(), mode, rng)) {
                        const FinFn& k = ks[x][y][i];
                        const FinFn& l = ks[y][z][j];
                        const FinFn& ls = stars[y][z][j];
                        assoc.expect(t.star(x, z, compose(ls, k)) == compose(ls, stars[x][y][i]), [&] {
                            return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}, {"k", fn_json(k)},
                                        {"l", fn_json(l)}};
                        });
                    }
    } catch (const EnumerationOverflow& e) {
        r.skip("laws", std::string("budget: ") + e.what());
        return r;
    }
    r.add(right, mode.to_json());
    r.add(left);
    r.add(assoc, mode.to_json());
    // Derived functoriality and naturality of the unit.
    for (Obj x = 0; x < n; ++x)
        fid.expect(functor_action(t, x, x, c.id(x)) == FinFn::identity(t.T(x)), [&] { return json{{"X", c.name(x)}}; });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem f = 0; f < c.hom(x, y); ++f) {
                FinFn tf = functor_action(t, x, y, f);
                unat.expect(compose(t.unit(y), t.J().map(x, y, f)) == compose(tf, t.unit(x)),
                            [&] { return json{{"arrow", to_json(Arrow{x, y, f})}}; });
                for (Obj z = 0; z < n; ++z)
                    for (Elem g = 0; g < c.hom(y, z); ++g)
                        fcomp.expect(functor_action(t, x, z, c.comp(x, y, z, g, f)) ==
                                         compose(functor_action(t, y, z, g), tf),
                                     [&] { return json{{"f", to_json(Arrow{x, y, f})}, {"g", to_json(Arrow{y, z, g})}}; });
            }
    r.add(fid);
    r.add(fcomp);
    r.add(unat);
    return r;
}

NatTrans RelMonadMorphism::as_nat() const { return NatTrans{src.functor(), tgt.functor(), comp}; }

RelMonadMorphism identity_morphism(const RelMonad& t) {
    std::vector<FinFn> comp;
    for (Obj x = 0; x < t.base()->size(); ++x) comp.push_back(FinFn::identity(t.T(x)));
    return RelMonadMorphism{t, t, std::move(comp)};
}

Report check_morphism(const RelMonadMorphism& m, const LawMode& mode) {
    Report r("relmonad-morphism");
    const FinCat& c = *m.src.base();
    std::size_t n = c.size();
    if (!same_category(m.src.base(), m.tgt.base()) || m.comp.size() != n) {
        r.fail("shape", json{{"reason", "monads over different bases"}});
        return r;
    }
    for (Obj x = 0; x < n; ++x)
        if (m.comp[x].dom() != m.src.T(x) || m.comp[x].cod() != m.tgt.T(x)) {
            r.fail("shape", json{{"X", c.name(x)}});
            return r;
        }
    std::mt19937_64 rng(mode.seed);
    LawCheck unit("unit-preservation"), mult("multiplication-preservation"), nat("naturality");
    for (Obj x = 0; x < n; ++x)
        unit.expect(compose(m.comp[x], m.src.unit(x)) == m.tgt.unit(x), [&] { return json{{"X", c.name(x)}}; });
    try {
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (const auto& k : law_inputs(m.src.J().at(x), m.src.T(y), mode, rng))
                    mult.expect(compose(m.comp[y], m.src.star(x, y, k)) ==
                                    compose(m.tgt.star(x, y, compose(m.comp[y], k)), m.comp[x]),
                                [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", fn_json(k)}}; });
    } catch (const EnumerationOverflow& e) {
        r.skip("multiplication-preservation", std::string("budget: ") + e.what());
    }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem f = 0; f < c.hom(x, y); ++f)
                nat.expect(compose(m.comp[y], functor_action(m.src, x, y, f)) ==
                               compose(functor_action(m.tgt, x, y, f), m.comp[x]),
                           [&] { return json{{"arrow", to_json(Arrow{x, y, f})}}; });
    r.add(unit);
    if (!r.find("multiplication-preservation")) r.add(mult, mode.to_json());
    r.add(nat);
    return r;
}

// ---------------- monads on FinSet ----------------

FinFn Monad::fmap(const FinFn& f) const { return star(compose(unit(f.cod()), f), f.cod()); }

FinFn Monad::mu(std::size_t x) const { return star(FinFn::identity(obj(x)), x); }

SetEndo Monad::endo() const {
    Monad self = *this;
    return SetEndo{name, obj, [self](const FinFn& f) { return self.fmap(f); }};
}

Monad identity_monad() {
    return Monad{"Id", [](std::size_t x) { return x; }, [](std::size_t x) { return FinFn::identity(x); },
                 [](const FinFn& k, std::size_t) { return k; }, 64};
}

Monad maybe_monad() {
    return Monad{"Maybe", [](std::size_t x) { return x + 1; },
                 [](std::size_t x) {
                     std::vector<Elem> t(x);
                     for (Elem i = 0; i < x; ++i) t[i] = i;
                     return FinFn(x + 1, std::move(t));
                 },
                 [](const FinFn& k, std::size_t y) {
                     std::vector<Elem> t(k.table());
                     t.push_back(static_cast<Elem>(y));
                     return FinFn(y + 1, std::move(t));
                 },
                 32};
}

Monad powerset_monad(std::size_t max_size) {
    return Monad{"P", [](std::size_t x) { return std::size_t{1} << x; },
                 [](std::size_t x) {
                     std::vector<Elem> t(x);
                     for (Elem i = 0; i < x; ++i) t[i] = static_cast<Elem>(subset_bit(x, i));
                     return FinFn(std::size_t{1} << x, std::move(t));
                 },
                 [](const FinFn& k, std::size_t y) {
                     std::size_t x = k.dom();
                     std::vector<Elem> t(std::size_t{1} << x);
                     for (std::uint64_t s = 0; s < t.size(); ++s) {
                         Elem u = 0;
                         for (Elem i = 0; i < x; ++i)
                             if (s & subset_bit(x, i)) u |= k(i);
                         t[s] = u;
                     }
                     return FinFn(std::size_t{1} << y, std::move(t));
                 },
                 max_size};
}

Report check_monad_laws(const Monad& m, std::size_t max_size, const LawMode& mode) {
    Report r("monad-laws");
    std::mt19937_64 rng(mode.seed);
    LawCheck right("right-unit"), left("left-unit"), assoc("associativity");
    try {
        std::size_t n = max_size + 1;
        std::vector<std::vector<std::vector<FinFn>>> ks(n, std::vector<std::vector<FinFn>>(n)), stars = ks;
        for (std::size_t x = 0; x < n; ++x) {
            left.expect(m.star(m.unit(x), x) == FinFn::identity(m.obj(x)), [&] { return json{{"X", x}}; });
            for (std::size_t y = 0; y < n; ++y) {
                ks[x][y] = law_inputs(x, m.obj(y), mode, rng);
                for (const auto& k : ks[x][y]) {
                    FinFn s = m.star(k, y);
                    right.expect(compose(s, m.unit(x)) == k, [&] { return json{{"X", x}, {"Y", y}, {"k", fn_json(k)}}; });
                    stars[x][y].push_back(std::move(s));
                }
            }
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    for (auto [i, j] : pairs(ks[x][y].size(), ks[y][z].size(), mode, rng)) {
                        const FinFn& ls = stars[y][z][j];
                        assoc.expect(m.star(compose(ls, ks[x][y][i]), z) == compose(ls, stars[x][y][i]), [&] {
                            return json{{"X", x}, {"Y", y}, {"Z", z}, {"k", fn_json(ks[x][y][i])}, {"l", fn_json(ks[y][z][j])}};
                        });
                    }
    } catch (const EnumerationOverflow& e) {
        r.skip("laws", std::string("budget: ") + e.what());
        return r;
    }
    r.add(right, mode.to_json());
    r.add(left);
    r.add(assoc, mode.to_json());
    return r;
}

MonadMorphism maybe_to_powerset() {
    return MonadMorphism{maybe_monad(), powerset_monad(), [](std::size_t x) {
                             std::vector<Elem> t(x + 1, 0);
                             for (Elem i = 0; i < x; ++i) t[i] = static_cast<Elem>(subset_bit(x, i));
                             return FinFn(std::size_t{1} << x, std::move(t));
                         }};
}

Report check_monad_morphism(const MonadMorphism& s, std::size_t max_size, const LawMode& mode) {
    Report r("monad-morphism");
    std::mt19937_64 rng(mode.seed);
    LawCheck unit("unit-preservation"), mult("multiplication-preservation"), nat("naturality");
    for (std::size_t x = 0; x <= max_size; ++x) {
        FinFn cx = s.comp(x);
        unit.expect(compose(cx, s.src.unit(x)) == s.tgt.unit(x), [&] { return json{{"X", x}}; });
        for (std::size_t y = 0; y <= max_size; ++y) {
            FinFn cy = s.comp(y);
            for (const auto& k : law_inputs(x, s.src.obj(y), mode, rng))
                mult.expect(compose(cy, s.src.star(k, y)) == compose(s.tgt.star(compose(cy, k), y), cx),
                            [&] { return json{{"X", x}, {"Y", y}, {"k", fn_json(k)}}; });
            for (const auto& f : law_inputs(x, y, mode, rng))
                nat.expect(compose(cy, s.src.fmap(f)) == compose(s.tgt.fmap(f), cx),
                           [&] { return json{{"f", fn_json(f)}}; });
        }
    }
    r.add(unit);
    r.add(mult, mode.to_json());
    r.add(nat, mode.to_json());
    return r;
}

RelMonad restrict(const Monad& m, const SetFunctor& j) {
    std::size_t n = j.src()->size();
    std::vector<std::size_t> t(n);
    std::vector<FinFn> unit;
    for (Obj x = 0; x < n; ++x) {
        if (j.at(x) > m.max_size) throw OutOfUniverse(j.at(x), "restrict: J X lies outside the universe of " + m.name);
        t[x] = m.obj(j.at(x));
        unit.push_back(m.unit(j.at(x)));
    }
    std::vector<std::size_t> jsz = j.objects();
    return RelMonad(m.name + "-flat", j, std::move(t), std::move(unit),
                    [m, jsz](Obj, Obj y, const FinFn& k) { return m.star(k, jsz[y]); });
}

RelMonadMorphism restrict_morphism(const MonadMorphism& s, const SetFunctor& j) {
    RelMonadMorphism out{restrict(s.src, j), restrict(s.tgt, j), {}};
    for (Obj x = 0; x < j.src()->size(); ++x) out.comp.push_back(s.comp(j.at(x)));
    return out;
}

// ---------------- skew monoids ----------------

std::vector<FinFn> mu_from_star(const Kan& kan, const RelMonad& t) {
    const SetFunctor& tf = t.functor();
    std::vector<FinFn> mu;
    for (Obj x = 0; x < t.base()->size(); ++x) {
        LanPtr l = kan.lan(tf, t.T(x));
        mu.push_back(lan_factorize(*l, [&](Obj z, const FinFn& g) { return t.star(z, x, g); }, t.T(x)));
    }
    return mu;
}

StarFn star_from_mu(const Kan& kan, const RelMonad& t, std::vector<FinFn> mu) {
    const Kan* k = &kan;
    SetFunctor tf = t.functor();
    std::vector<std::size_t> sizes = t.sizes();
    return [k, tf, sizes, mu = std::move(mu)](Obj x, Obj y, const FinFn& g) {
        return compose(mu[y], k->lan(tf, sizes[y])->iota(x, g));
    };
}

NatTrans mu_nat(const Kan& kan, const RelMonad& t, const std::vector<FinFn>& mu) {
    const SetFunctor& tf = t.functor();
    return NatTrans{kan.tensor(tf, tf), tf, mu};
}

Report skew_monoid_laws(const Kan& kan, const RelMonad& t, const std::vector<FinFn>& mu) {
    Report r("skew-monoid");
    const SetFunctor& tf = t.functor();
    const FinCat& c = *t.base();
    NatTrans mn = mu_nat(kan, t, mu);
    r.merge(check_nat(mn), "mu");
    NatTrans en = t.unit_nat();
    LawCheck ru("right-unit"), lu("left-unit"), as("associativity");
    for (Obj x = 0; x < c.size(); ++x) {
        std::size_t tx = t.T(x);
        auto where = [&] { return json{{"X", c.name(x)}}; };
        ru.expect(compose(mu[x], compose(kan.lan_map(tf, t.unit(x)), kan.rho(tf, x))) == FinFn::identity(tx), where);
        lu.expect(compose(mu[x], kan.lan_nat(en, tx)) == kan.lambda_bar(tx), where);
        FinFn lhs = compose(mu[x], compose(kan.lan_map(tf, mu[x]), kan.alpha_bar(tf, tf, tx)));
        FinFn rhs = compose(mu[x], kan.lan_nat(mn, tx));
        as.expect(lhs == rhs, where);
    }
    r.add(ru);
    r.add(lu);
    r.add(as);
    return r;
}

Report mu_star_roundtrip(const Kan& kan, const RelMonad& t, const LawMode& mode) {
    Report r("mu-star");
    std::mt19937_64 rng(mode.seed);
    const FinCat& c = *t.base();
    std::vector<FinFn> mu = mu_from_star(kan, t);
    StarFn s2 = star_from_mu(kan, t, mu);
    LawCheck st("star-roundtrip");
    for (Obj x = 0; x < c.size(); ++x)
        for (Obj y = 0; y < c.size(); ++y)
            for (const auto& k : law_inputs(t.J().at(x), t.T(y), mode, rng))
                st.expect(s2(x, y, k) == t.star(x, y, k),
                          [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", fn_json(k)}}; });
    r.add(st, mode.to_json());
    RelMonad back(t.name() + "-from-mu", t.J(), t.sizes(), [&] {
        std::vector<FinFn> u;
        for (Obj x = 0; x < c.size(); ++x) u.push_back(t.unit(x));
        return u;
    }(), s2);
    std::vector<FinFn> mu2 = mu_from_star(kan, back);
    LawCheck mt("mu-roundtrip");
    for (Obj x = 0; x < c.size(); ++x) mt.expect(mu2[x] == mu[x], [&] { return json{{"X", c.name(x)}}; });
    r.add(mt);
    r.merge(skew_monoid_laws(kan, t, mu), "monoid");
    return r;
}

Report monoid_morphism_check(const Kan& kan, const RelMonadMorphism& s) {
    Report r("monoid-morphism");
    const FinCat& c = *s.src.base();
    std::vector<FinFn> mu = mu_from_star(kan, s.src), mu2 = mu_from_star(kan, s.tgt);
    NatTrans sn = s.as_nat();
    const SetFunctor& t2 = s.tgt.functor();
    LawCheck unit("unit"), mult("multiplication");
    for (Obj x = 0; x < c.size(); ++x) {
        auto where = [&] { return json{{"X", c.name(x)}}; };
        unit.expect(compose(s.comp[x], s.src.unit(x)) == s.tgt.unit(x), where);
        FinFn ss = compose(kan.lan_map(t2, s.comp[x]), kan.lan_nat(sn, s.src.T(x)));
        mult.expect(compose(s.comp[x], mu[x]) == compose(mu2[x], ss), where);
    }
    r.add(unit);
    r.add(mult);
    return r;
}

// ---------------- extension ----------------

json ExtendStats::to_json() const {
    return json{{"alpha_inverse_by_formula", alpha_formula}, {"alpha_inverse_by_table", alpha_table}};
}

namespace {

struct ExtendState {
    std::shared_ptr<const Kan> kan;
    SetFunctor t;
    NatTrans eta;
    NatTrans mu;
    std::size_t max_size;
    std::shared_ptr<ExtendStats> stats;
    std::mutex m;
    std::map<std::size_t, FinFn> units, mus;

    void guard(std::size_t x) const {
        if (x > max_size) throw OutOfUniverse(x, "extended monad is defined on sets of size <= " + std::to_string(max_size));
    }

    FinFn alpha_inverse(std::size_t x) {
        FinFn a = kan->alpha_bar(t, t, x);
        std::optional<FinFn> inv;
        try {
            inv = alpha_bar_inverse(*kan, t, t, x);
        } catch (const OutOfUniverse&) {
        } catch (const PreconditionError&) {
        }
        if (inv && compose(a, *inv) == FinFn::identity(a.cod()) && compose(*inv, a) == FinFn::identity(a.dom())) {
            ++stats->alpha_formula;
            return *inv;
        }
        if (!bijection_failure(a).is_null())
            throw PreconditionError("extend: alpha-bar_{T,T} at size " + std::to_string(x) + " is not invertible");
        ++stats->alpha_table;
        return a.inverse();
    }

    FinFn unit(std::size_t x) {
        guard(x);
        std::lock_guard<std::mutex> lock(m);
        auto it = units.find(x);
        if (it != units.end()) return it->second;
        FinFn u = compose(kan->lan_nat(eta, x), lambda_bar_inverse(*kan, x));
        return units.emplace(x, u).first->second;
    }

    FinFn mult(std::size_t x) {
        guard(x);
        std::lock_guard<std::mutex> lock(m);
        auto it = mus.find(x);
        if (it != mus.end()) return it->second;
        FinFn u = compose(kan->lan_nat(mu, x), alpha_inverse(x));
        return mus.emplace(x, u).first->second;
    }
};

}  // namespace

Monad extend(std::shared_ptr<const Kan> kan, const RelMonad& t, std::size_t max_size, std::shared_ptr<ExtendStats> stats) {
    if (!unit_object(kan->J()))
        throw PreconditionError("extend: lambda-bar^-1 unavailable (no one-element object in the base)");
    if (!stats) stats = std::make_shared<ExtendStats>();
    auto st = std::make_shared<ExtendState>();
    st->kan = kan;
    st->t = t.functor();
    st->eta = t.unit_nat();
    st->mu = mu_nat(*kan, t, mu_from_star(*kan, t));
    st->max_size = max_size;
    st->stats = stats;
    Monad m;
    m.name = t.name() + "-sharp";
    m.max_size = max_size;
    m.obj = [st](std::size_t x) {
        st->guard(x);
        return st->kan->lan(st->t, x)->size();
    };
    m.unit = [st](std::size_t x) { return st->unit(x); };
    m.star = [st](const FinFn& k, std::size_t y) { return compose(st->mult(y), st->kan->lan_map(st->t, k)); };
    return m;
}

MonadMorphism extend_morphism(std::shared_ptr<const Kan> kan, const RelMonadMorphism& s, const Monad& src_sharp,
                              const Monad& tgt_sharp) {
    NatTrans sn = s.as_nat();
    return MonadMorphism{src_sharp, tgt_sharp, [kan, sn](std::size_t x) { return kan->lan_nat(sn, x); }};
}

FinFn alpha_alpha(const Kan& kan, const Monad& m, const SetFunctor& tj, std::size_t y) {
    LanPtr l = kan.lan(tj, y);
    LanPtr lj = kan.lan(kan.J(), y);
    std::vector<Elem> t(l->size());
    std::map<std::pair<Obj, std::uint64_t>, FinFn> memo;
    for (Elem k = 0; k < l->size(); ++k) {
        auto key = std::make_pair(l->rep_object(k), l->rep_fn_index(k));
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, m.fmap(lj->iota_index(key.first, key.second))).first;
        t[k] = it->second(l->rep_point(k));
    }
    return FinFn(m.obj(lj->size()), std::move(t));
}

FinFn counit_component(const Kan& kan, const Monad& m, const SetFunctor& tj, std::size_t y) {
    return compose(m.fmap(kan.lambda_bar(y)), alpha_alpha(kan, m, tj, y));
}

Report coreflection_check(std::shared_ptr<const Kan> kan, const RelMonad& t, const Monad& m,
                          const CoreflectionBounds& bounds) {
    Report r("coreflection");
    const SetFunctor& j = kan->J();
    const FinCat& c = *j.src();
    std::size_t max = bounds.max_size;

    // Unit rho_T : T -> (T#)flat.
    Monad sharp = extend(kan, t, max);
    RelMonad flat_sharp = restrict(sharp, j);
    RelMonadMorphism unit{t, flat_sharp, {}};
    for (Obj x = 0; x < c.size(); ++x) unit.comp.push_back(kan->rho(t.functor(), x));
    r.merge(check_morphism(unit, bounds.mode), "unit");
    LawCheck ub("unit/bijective");
    for (Obj x = 0; x < c.size(); ++x)
        ub.expect(bijection_failure(unit.comp[x]).is_null(),
                  [&] { return json{{"X", c.name(x)}, {"failure", bijection_failure(unit.comp[x])}}; });
    r.add(ub);

    // counit_{T#} . Lan rho_T = id.
    LawCheck tri1("triangle-sharp");
    NatTrans rho_nat{t.functor(), flat_sharp.functor(), unit.comp};
    for (std::size_t y = 0; y <= max; ++y) {
        FinFn lhs = compose(counit_component(*kan, sharp, flat_sharp.functor(), y), kan->lan_nat(rho_nat, y));
        tri1.expect(lhs == FinFn::identity(kan->lan(t.functor(), y)->size()), [&] { return json{{"Y", y}}; });
    }
    r.add(tri1);

    // Counit (m flat)# -> m.
    RelMonad mflat = restrict(m, j);
    Monad mfs = extend(kan, mflat, max);
    SetFunctor tj = mflat.functor();
    MonadMorphism counit{mfs, m, [kan, m, tj](std::size_t y) { return counit_component(*kan, m, tj, y); }};
    r.merge(check_monad_morphism(counit, max, bounds.mode), "counit");
    json bij = json::object();
    for (std::size_t y = 0; y <= max + 1; ++y)
        bij[std::to_string(y)] = bijection_failure(counit_component(*kan, m, tj, y)).is_null();
    r.pass("counit/bijectivity", max + 2, json{{"bijective_at_size", bij}});

    // counit_{JX} . rho_{T J} = id.
    LawCheck tri2("triangle-flat");
    for (Obj x = 0; x < c.size(); ++x) {
        FinFn lhs = compose(counit_component(*kan, m, tj, j.at(x)), kan->rho(tj, x));
        tri2.expect(lhs == FinFn::identity(m.obj(j.at(x))), [&] { return json{{"X", c.name(x)}}; });
    }
    r.add(tri2);
    return r;
}

Report mu_flat_check(const Kan& kan, const Monad& m) {
    Report r("mu-flat");
    const SetFunctor& j = kan.J();
    const FinCat& c = *j.src();
    RelMonad mflat = restrict(m, j);
    std::vector<FinFn> mu = mu_from_star(kan, mflat);
    const SetFunctor& tj = mflat.functor();
    LawCheck eq("composite-equals-mu");
    for (Obj x = 0; x < c.size(); ++x) {
        std::size_t y = m.obj(j.at(x));
        FinFn lhs = compose(m.mu(j.at(x)), compose(m.fmap(kan.lambda_bar(y)), alpha_alpha(kan, m, tj, y)));
        eq.expect(lhs == mu[x], [&] { return json{{"X", c.name(x)}}; });
    }
    r.add(eq);
    return r;
}

}  // namespace relmon
