#include "relmon/kleisli_em.hpp"

#include <map>
#include <set>

#include "relmon/semiring.hpp"
#include "relmon/vec.hpp"
#include "relmon/state.hpp"

namespace relmon {

namespace {

Elem idx(const FinFn& f) { return static_cast<Elem>(fn_index(f)); }

std::size_t fn_count_size(std::size_t a, std::size_t b) { return static_cast<std::size_t>(fn_count(a, b)); }

// Mixed-radix counter over `radix`; returns false after the last tuple.
bool next_tuple(std::vector<std::uint64_t>& digits, const std::vector<std::uint64_t>& radix) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

// The positions of T z pinned by the unit law chi f . eta = f, or nullopt when f is not constant on
// the fibres of eta.
std::optional<std::vector<std::optional<Elem>>> pinned(const FinFn& eta, const FinFn& f) {
    std::vector<std::optional<Elem>> out(eta.cod());
    for (Elem e = 0; e < eta.dom(); ++e) {
        auto& slot = out[eta(e)];
        if (slot && *slot != f(e)) return std::nullopt;
        slot = f(e);
    }
    return out;
}

// The c-th map extending the pinned values, free positions read as base-`x` digits.
FinFn fill(const std::vector<std::optional<Elem>>& pins, std::size_t x, std::uint64_t c) {
    std::vector<Elem> t(pins.size());
    for (std::size_t i = pins.size(); i-- > 0;) {
        if (pins[i]) {
            t[i] = *pins[i];
        } else {
            t[i] = static_cast<Elem>(c % x);
            c /= x;
        }
    }
    return FinFn(x, std::move(t));
}

std::uint64_t free_count(const std::vector<std::optional<Elem>>& pins, std::size_t x) {
    std::uint64_t free = 0;
    for (const auto& p : pins)
        if (!p) ++free;
    return checked_pow(x, free, budget());
}

// Records a pass or fail with the given data attached either way.
void expect_with(Report& r, const std::string& law, bool ok, json data) {
    if (ok)
        r.pass(law, 1, std::move(data));
    else
        r.fail(law, std::move(data));
}

}  // namespace

// ---------------- Kleisli ----------------

KleisliCat kleisli_build(const RelMonad& t) {
    const FinCat& b = *t.base();
    std::size_t n = b.size();
    std::vector<std::size_t> hom(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) hom[x * n + y] = fn_count_size(t.J().at(x), t.T(y));
    std::uint64_t work = 0;
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                work += checked_mul(hom[x * n + y], hom[y * n + z], budget());
                if (work > budget()) throw EnumerationOverflow(work, budget(), "kleisli_build: composition table");
            }
    std::vector<std::vector<FinFn>> stars(n * n);
    for (Obj y = 0; y < n; ++y)
        for (Obj z = 0; z < n; ++z)
            for (std::uint64_t g = 0; g < hom[y * n + z]; ++g)
                stars[y * n + z].push_back(t.star(y, z, fn_from_index(g, t.J().at(y), t.T(z))));
    std::vector<std::vector<Elem>> comp(n * n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                auto& c = comp[(x * n + y) * n + z];
                std::size_t hxy = hom[x * n + y];
                c.resize(hxy * hom[y * n + z]);
                for (std::size_t f = 0; f < hxy; ++f) {
                    FinFn ff = fn_from_index(f, t.J().at(x), t.T(y));
                    for (std::size_t g = 0; g < hom[y * n + z]; ++g)
                        c[g * hxy + f] = idx(compose(stars[y * n + z][g], ff));
                }
            }
    std::vector<Elem> ids(n);
    for (Obj x = 0; x < n; ++x) ids[x] = idx(t.unit(x));
    return KleisliCat{t, std::make_shared<FinCat>(b.names(), std::move(hom), std::move(comp), std::move(ids))};
}

CatFunctor kleisli_left(const KleisliCat& k) {
    const RelMonad& t = k.t;
    std::size_t n = t.base()->size();
    CatFunctor f{t.base(), k.cat, {}, std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) f.obj.push_back(x);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem i = 0; i < t.base()->hom(x, y); ++i)
                f.arrows[x * n + y].push_back(idx(compose(t.unit(y), t.J().map(x, y, i))));
    return f;
}

SetFunctor kleisli_right(const KleisliCat& k) {
    return make_set_functor(
        k.cat, k.t.sizes(), [&](Obj x, Obj y, Elem i) { return k.t.star(x, y, k.arrow(x, y, i)); },
        k.t.name() + "-kleisli-right");
}

Report kleisli_adjunction_check(const RelMonad& t) {
    Report r("kleisli");
    KleisliCat kl = kleisli_build(t);
    CatFunctor left = kleisli_left(kl);
    SetFunctor right = kleisli_right(kl);
    r.merge(check_category(*kl.cat), "category");
    r.merge(check_cat_functor(left), "left");
    r.merge(check_functor(right), "right");
    const FinCat& b = *t.base();
    std::size_t n = b.size();
    LawCheck rl("right-after-left"), nat_x("phi-natural-left"), nat_y("phi-natural-right");
    for (Obj x = 0; x < n; ++x) {
        rl.expect(right.at(x) == t.T(x), [&] { return json{{"object", b.name(x)}}; });
        for (Obj y = 0; y < n; ++y)
            for (Elem i = 0; i < b.hom(x, y); ++i)
                rl.expect(right.map(x, y, left.map(x, y, i)) == t.functor().map(x, y, i),
                          [&] { return json{{"arrow", to_json(Arrow{x, y, i})}}; });
    }
    const FinCat& k = *kl.cat;
    for (Obj w = 0; w < n; ++w)
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                for (Elem f = 0; f < b.hom(w, x); ++f)
                    for (Elem a = 0; a < k.hom(x, y); ++a)
                        nat_x.expect(k.comp(w, x, y, a, left.map(w, x, f)) ==
                                         idx(compose(kl.arrow(x, y, a), t.J().map(w, x, f))),
                                     [&] { return json{{"f", to_json(Arrow{w, x, f})}, {"k", a}}; });
                for (Elem a = 0; a < k.hom(w, x); ++a)
                    for (Elem h = 0; h < k.hom(x, y); ++h)
                        nat_y.expect(k.comp(w, x, y, h, a) == idx(compose(right.map(x, y, h), kl.arrow(w, x, a))),
                                     [&] { return json{{"k", to_json(Arrow{w, x, a})}, {"h", to_json(Arrow{x, y, h})}}; });
            }
    r.add(rl);
    r.add(nat_x);
    r.add(nat_y);
    return r;
}

// ---------------- EM-algebras ----------------

json to_json(const EMAlgebra& a) {
    json chi = json::array();
    for (const auto& row : a.chi) {
        json rj = json::array();
        for (const auto& f : row) rj.push_back(f.table());
        chi.push_back(rj);
    }
    return json{{"carrier", a.carrier}, {"chi", chi}};
}

EMAlgebra free_algebra(const RelMonad& t, Obj x) {
    EMAlgebra a;
    a.carrier = t.T(x);
    std::size_t n = t.base()->size();
    a.chi.resize(n);
    for (Obj z = 0; z < n; ++z)
        for (const auto& f : enumerate_fns(t.J().at(z), a.carrier)) a.chi[z].push_back(t.star(z, x, f));
    return a;
}

namespace {

template <typename Unit, typename Assoc>
void em_laws(const RelMonad& t, const EMAlgebra& a, const LawMode& mode, Unit&& on_unit, Assoc&& on_assoc) {
    std::size_t n = t.base()->size();
    std::mt19937_64 rng(mode.seed);
    for (Obj z = 0; z < n; ++z) {
        std::uint64_t fi = 0;
        for (const auto& f : enumerate_fns(t.J().at(z), a.carrier)) {
            if (!on_unit(z, f, compose(a.chi[z][fi], t.unit(z)) == f)) return;
            ++fi;
        }
    }
    for (Obj w = 0; w < n; ++w)
        for (Obj z = 0; z < n; ++z) {
            std::vector<FinFn> ks = law_inputs(t.J().at(w), t.T(z), mode, rng);
            std::vector<FinFn> kstars;
            kstars.reserve(ks.size());
            for (const auto& k : ks) kstars.push_back(t.star(w, z, k));
            for (const auto& cf : a.chi[z])
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    bool ok = a.at(w, compose(cf, ks[i])) == compose(cf, kstars[i]);
                    if (!on_assoc(w, z, cf, ks[i], ok)) return;
                }
        }
}

}  // namespace

Report em_check(const RelMonad& t, const EMAlgebra& a, const LawMode& mode) {
    Report r("em-algebra");
    LawCheck unit("unit"), assoc("associativity");
    em_laws(
        t, a, mode,
        [&](Obj z, const FinFn& f, bool ok) {
            unit.expect(ok, [&] { return json{{"Z", t.base()->name(z)}, {"f", f.table()}}; });
            return true;
        },
        [&](Obj w, Obj z, const FinFn& cf, const FinFn& k, bool ok) {
            assoc.expect(ok, [&] {
                return json{{"W", t.base()->name(w)}, {"Z", t.base()->name(z)}, {"chi_f", cf.table()}, {"k", k.table()}};
            });
            return true;
        });
    r.add(unit);
    r.add(assoc);
    return r;
}

bool em_lawful(const RelMonad& t, const EMAlgebra& a) {
    bool ok = true;
    auto stop = [&](auto&&... args) {
        bool v = std::get<sizeof...(args) - 1>(std::forward_as_tuple(args...));
        ok = ok && v;
        return ok;
    };
    em_laws(t, a, LawMode::all(), stop, stop);
    return ok;
}

bool is_em_morphism(const RelMonad& t, const EMAlgebra& a, const EMAlgebra& b, const FinFn& h) {
    std::size_t n = t.base()->size();
    for (Obj z = 0; z < n; ++z) {
        std::uint64_t fi = 0;
        for (const auto& f : enumerate_fns(t.J().at(z), a.carrier)) {
            if (compose(h, a.chi[z][fi]) != b.at(z, compose(h, f))) return false;
            ++fi;
        }
    }
    return true;
}

std::vector<EMAlgebra> enumerate_em_algebras(const RelMonad& t, std::size_t carrier) {
    std::size_t n = t.base()->size();
    std::vector<std::vector<std::optional<Elem>>> pins;
    std::vector<std::uint64_t> radix;
    std::vector<std::pair<Obj, std::uint64_t>> slots;
    std::uint64_t total = 1;
    for (Obj z = 0; z < n; ++z) {
        std::uint64_t fi = 0;
        for (const auto& f : enumerate_fns(t.J().at(z), carrier)) {
            auto p = pinned(t.unit(z), f);
            if (!p) return {};
            std::uint64_t c = free_count(*p, carrier);
            if (c == 0) return {};
            total = checked_mul(total, c, budget());
            pins.push_back(std::move(*p));
            radix.push_back(c);
            slots.emplace_back(z, fi++);
        }
    }
    std::vector<EMAlgebra> out;
    EMAlgebra a;
    a.carrier = carrier;
    a.chi.resize(n);
    for (Obj z = 0; z < n; ++z) a.chi[z].resize(fn_count_size(t.J().at(z), carrier));
    std::vector<std::uint64_t> digits(slots.size(), 0);
    for (std::size_t i = 0; i < slots.size(); ++i) a.chi[slots[i].first][slots[i].second] = fill(pins[i], carrier, 0);
    while (true) {
        if (em_lawful(t, a)) out.push_back(a);
        // Advance the odometer and refresh only the slots that changed.
        std::size_t i = digits.size();
        bool more = false;
        while (i-- > 0) {
            if (++digits[i] < radix[i]) {
                a.chi[slots[i].first][slots[i].second] = fill(pins[i], carrier, digits[i]);
                more = true;
                break;
            }
            digits[i] = 0;
            a.chi[slots[i].first][slots[i].second] = fill(pins[i], carrier, 0);
        }
        if (!more) break;
    }
    return out;
}

// ---------------- EM-alt ----------------

EMAltContext::EMAltContext(std::shared_ptr<const Kan> k, RelMonad tm)
    : kan(std::move(k)), t(std::move(tm)), mu(mu_nat(*kan, t, mu_from_star(*kan, t))) {}

Report em_alt_check(const EMAltContext& c, const EMAltAlgebra& a) {
    Report r("em-alt-algebra");
    const Kan& kan = *c.kan;
    std::size_t x = a.carrier;
    FinFn lhs = compose(a.x, kan.lan_nat(c.t.unit_nat(), x));
    FinFn lb = kan.lambda_bar(x);
    r.expect("unit", lhs == lb, lhs == lb ? json() : json{{"x", a.x.table()}, {"lhs", lhs.table()}, {"rhs", lb.table()}});
    FinFn m1 = compose(a.x, kan.lan_nat(c.mu, x));
    FinFn m2 = compose(a.x, compose(kan.lan_map(c.t.functor(), a.x), kan.alpha_bar(c.t.functor(), c.t.functor(), x)));
    r.expect("associativity", m1 == m2,
             m1 == m2 ? json() : json{{"x", a.x.table()}, {"lhs", m1.table()}, {"rhs", m2.table()}});
    return r;
}

bool is_em_alt_morphism(const EMAltContext& c, const EMAltAlgebra& a, const EMAltAlgebra& b, const FinFn& h) {
    return compose(h, a.x) == compose(b.x, c.kan->lan_map(c.t.functor(), h));
}

EMAltAlgebra em_to_alt(const EMAltContext& c, const EMAlgebra& a) {
    LanPtr lan = c.kan->lan(c.t.functor(), a.carrier);
    FinFn x = lan_factorize(*lan, [&](Obj z, const FinFn& g) { return a.at(z, g); }, a.carrier);
    return EMAltAlgebra{a.carrier, std::move(x)};
}

EMAlgebra alt_to_em(const EMAltContext& c, const EMAltAlgebra& a) {
    LanPtr lan = c.kan->lan(c.t.functor(), a.carrier);
    std::size_t n = c.t.base()->size();
    EMAlgebra e;
    e.carrier = a.carrier;
    e.chi.resize(n);
    for (Obj z = 0; z < n; ++z)
        for (std::uint64_t g = 0; g < lan->fn_space(z); ++g) e.chi[z].push_back(compose(a.x, lan->iota_index(z, g)));
    return e;
}

Report em_alt_roundtrip(const EMAltContext& c, std::size_t carrier) {
    Report r("em-alt");
    LanPtr lan = c.kan->lan(c.t.functor(), carrier);
    std::uint64_t count = fn_count(lan->size(), carrier);
    if (count > budget()) throw EnumerationOverflow(count, budget(), "em_alt_roundtrip: maps Lan T X -> X");
    LawCheck agree("laws-agree"), alt_em_alt("alt-em-alt"), em_alt_em("em-alt-em"), mor("morphisms-agree");
    std::vector<EMAltAlgebra> lawful;
    for (const auto& x : enumerate_fns(lan->size(), carrier)) {
        EMAltAlgebra a{carrier, x};
        EMAlgebra e = alt_to_em(c, a);
        bool la = em_alt_check(c, a).ok();
        bool le = em_lawful(c.t, e);
        agree.expect(la == le, [&] { return json{{"x", x.table()}, {"alt", la}, {"em", le}}; });
        alt_em_alt.expect(em_to_alt(c, e) == a, [&] { return json{{"x", x.table()}}; });
        if (la) lawful.push_back(a);
    }
    r.add(agree, json{{"maps", count}, {"lawful", lawful.size()}});
    r.add(alt_em_alt);
    try {
        std::vector<EMAlgebra> ems = enumerate_em_algebras(c.t, carrier);
        for (const auto& e : ems) {
            EMAltAlgebra a = em_to_alt(c, e);
            em_alt_em.expect(alt_to_em(c, a) == e, [&] { return to_json(e); });
        }
        r.add(em_alt_em);
        expect_with(r, "same-count", ems.size() == lawful.size(), json{{"em", ems.size()}, {"alt", lawful.size()}});
    } catch (const EnumerationOverflow& e) {
        r.skip("em-alt-em", "budget", json{{"count", e.count}, {"budget", e.budget}});
    }
    for (const auto& a : lawful)
        for (const auto& b : lawful) {
            EMAlgebra ea = alt_to_em(c, a), eb = alt_to_em(c, b);
            for (const auto& h : enumerate_fns(carrier, carrier))
                mor.expect(is_em_alt_morphism(c, a, b, h) == is_em_morphism(c.t, ea, eb, h),
                           [&] { return json{{"x", a.x.table()}, {"y", b.x.table()}, {"h", h.table()}}; });
        }
    r.add(mor);
    return r;
}

// ---------------- splittings ----------------

namespace {

// phi^-1 as a table from fn index to arrow index; nullopt if phi is not a bijection.
std::optional<std::vector<Elem>> invert_phi(const std::vector<std::uint64_t>& phi, std::uint64_t cod) {
    if (phi.size() != cod) return std::nullopt;
    std::vector<Elem> inv(cod, 0);
    std::vector<bool> seen(cod, false);
    for (Elem a = 0; a < phi.size(); ++a) {
        if (phi[a] >= cod || seen[phi[a]]) return std::nullopt;
        seen[phi[a]] = true;
        inv[phi[a]] = a;
    }
    return inv;
}

}  // namespace

Report check_splitting(const RelMonad& t, const Splitting& s) {
    Report r("splitting");
    r.merge(check_cat_functor(s.left), "left");
    r.merge(check_functor(s.right), "right");
    const FinCat& b = *t.base();
    const FinCat& d = *s.d;
    std::size_t n = b.size(), m = d.size();
    LawCheck obj("right-after-left"), bij("phi-bijective"), natx("phi-natural-left"), naty("phi-natural-right"),
        unit("induced-unit"), star("induced-star");
    for (Obj x = 0; x < n; ++x) obj.expect(s.right.at(s.left.obj[x]) == t.T(x), [&] { return json{{"object", b.name(x)}}; });
    r.add(obj);
    if (obj.failed()) return r;
    std::vector<std::vector<std::vector<Elem>>> inv(n, std::vector<std::vector<Elem>>(m));
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < m; ++y) {
            std::uint64_t cod = fn_count(t.J().at(x), s.right.at(y));
            bool sized = s.phi[x][y].size() == d.hom(s.left.obj[x], y);
            auto iv = sized ? invert_phi(s.phi[x][y], cod) : std::nullopt;
            bij.expect(iv.has_value(), [&] { return json{{"x", b.name(x)}, {"y", d.name(y)}}; });
            if (iv) inv[x][y] = std::move(*iv);
        }
    r.add(bij);
    if (bij.failed()) return r;
    for (Obj w = 0; w < n; ++w)
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < m; ++y)
                for (Elem f = 0; f < b.hom(w, x); ++f)
                    for (Elem a = 0; a < d.hom(s.left.obj[x], y); ++a) {
                        Elem da = d.comp(s.left.obj[w], s.left.obj[x], y, a, s.left.map(w, x, f));
                        FinFn rhs = compose(fn_from_index(s.phi[x][y][a], t.J().at(x), s.right.at(y)), t.J().map(w, x, f));
                        natx.expect(s.phi[w][y][da] == fn_index(rhs),
                                    [&] { return json{{"f", to_json(Arrow{w, x, f})}, {"a", a}, {"y", d.name(y)}}; });
                    }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < m; ++y)
            for (Obj y2 = 0; y2 < m; ++y2)
                for (Elem a = 0; a < d.hom(s.left.obj[x], y); ++a)
                    for (Elem h = 0; h < d.hom(y, y2); ++h) {
                        Elem ha = d.comp(s.left.obj[x], y, y2, h, a);
                        FinFn rhs = compose(s.right.map(y, y2, h), fn_from_index(s.phi[x][y][a], t.J().at(x), s.right.at(y)));
                        naty.expect(s.phi[x][y2][ha] == fn_index(rhs),
                                    [&] { return json{{"x", b.name(x)}, {"a", a}, {"h", to_json(Arrow{y, y2, h})}}; });
                    }
    for (Obj x = 0; x < n; ++x) {
        Obj lx = s.left.obj[x];
        FinFn u = fn_from_index(s.phi[x][lx][d.id(lx)], t.J().at(x), t.T(x));
        unit.expect(u == t.unit(x), [&] { return json{{"x", b.name(x)}, {"unit", u.table()}}; });
        for (Obj y = 0; y < n; ++y) {
            Obj ly = s.left.obj[y];
            std::uint64_t ki = 0;
            for (const auto& k : enumerate_fns(t.J().at(x), t.T(y))) {
                const FinFn& rk = s.right.map(lx, ly, inv[x][ly][ki++]);
                star.expect(rk == t.star(x, y, k), [&] { return json{{"x", b.name(x)}, {"y", b.name(y)}, {"k", k.table()}}; });
            }
        }
    }
    r.add(natx);
    r.add(naty);
    r.add(unit);
    r.add(star);
    return r;
}

Splitting kleisli_splitting(const KleisliCat& k) {
    Splitting s{"kleisli", k.cat, kleisli_left(k), kleisli_right(k), {}};
    std::size_t n = k.cat->size();
    s.phi.assign(n, std::vector<std::vector<std::uint64_t>>(n));
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (std::uint64_t i = 0; i < k.cat->hom(x, y); ++i) s.phi[x][y].push_back(i);
    return s;
}

std::optional<Obj> EMCat::find(const EMAlgebra& a) const {
    for (Obj i = 0; i < algebras.size(); ++i)
        if (algebras[i] == a) return i;
    return std::nullopt;
}

std::optional<Elem> EMCat::find_map(Obj a, Obj b, const FinFn& h) const {
    const auto& v = maps[a * algebras.size() + b];
    for (Elem i = 0; i < v.size(); ++i)
        if (v[i] == h) return i;
    return std::nullopt;
}

EMCat em_category(const RelMonad& t, std::size_t max_carrier) {
    EMCat em;
    em.t = t;
    for (std::size_t x = 0; x <= max_carrier; ++x)
        for (auto& a : enumerate_em_algebras(t, x)) em.algebras.push_back(std::move(a));
    std::size_t n = em.algebras.size();
    em.maps.resize(n * n);
    std::vector<std::size_t> hom(n * n);
    std::vector<std::map<FinFn, Elem>> index(n * n);
    for (Obj a = 0; a < n; ++a)
        for (Obj b = 0; b < n; ++b) {
            for (const auto& h : enumerate_fns(em.algebras[a].carrier, em.algebras[b].carrier))
                if (is_em_morphism(t, em.algebras[a], em.algebras[b], h)) {
                    index[a * n + b].emplace(h, static_cast<Elem>(em.maps[a * n + b].size()));
                    em.maps[a * n + b].push_back(h);
                }
            hom[a * n + b] = em.maps[a * n + b].size();
        }
    std::vector<std::vector<Elem>> comp(n * n * n);
    for (Obj a = 0; a < n; ++a)
        for (Obj b = 0; b < n; ++b)
            for (Obj c = 0; c < n; ++c) {
                auto& v = comp[(a * n + b) * n + c];
                std::size_t hab = hom[a * n + b];
                v.resize(hab * hom[b * n + c]);
                for (std::size_t f = 0; f < hab; ++f)
                    for (std::size_t g = 0; g < hom[b * n + c]; ++g)
                        v[g * hab + f] = index[a * n + c].at(compose(em.maps[b * n + c][g], em.maps[a * n + b][f]));
            }
    std::vector<Elem> ids(n);
    std::vector<std::string> names(n);
    for (Obj a = 0; a < n; ++a) {
        ids[a] = index[a * n + a].at(FinFn::identity(em.algebras[a].carrier));
        names[a] = "A" + std::to_string(a) + "/" + std::to_string(em.algebras[a].carrier);
    }
    em.cat = std::make_shared<FinCat>(std::move(names), std::move(hom), std::move(comp), std::move(ids));
    return em;
}

Splitting em_splitting(const EMCat& em) {
    const RelMonad& t = em.t;
    std::size_t n = t.base()->size(), m = em.algebras.size();
    Splitting s;
    s.name = "eilenberg-moore";
    s.d = em.cat;
    s.left = CatFunctor{t.base(), em.cat, {}, std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) {
        auto o = em.find(free_algebra(t, x));
        if (!o) throw OutOfUniverse(t.T(x), "em_splitting: free algebra on " + t.base()->name(x) + " is not enumerated");
        s.left.obj.push_back(*o);
    }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem i = 0; i < t.base()->hom(x, y); ++i) {
                auto a = em.find_map(s.left.obj[x], s.left.obj[y], t.functor().map(x, y, i));
                if (!a) throw PreconditionError("em_splitting: T f is not an algebra map");
                s.left.arrows[x * n + y].push_back(*a);
            }
    std::vector<std::size_t> carriers;
    for (const auto& a : em.algebras) carriers.push_back(a.carrier);
    s.right = make_set_functor(em.cat, carriers, [&](Obj a, Obj b, Elem i) { return em.map(a, b, i); }, "forget");
    s.phi.assign(n, std::vector<std::vector<std::uint64_t>>(m));
    for (Obj x = 0; x < n; ++x)
        for (Obj a = 0; a < m; ++a)
            for (Elem i = 0; i < em.cat->hom(s.left.obj[x], a); ++i)
                s.phi[x][a].push_back(fn_index(compose(em.map(s.left.obj[x], a, i), t.unit(x))));
    return s;
}

SplittingMorphisms splitting_morphisms(const RelMonad& t, const KleisliCat& kl, const EMCat& em, const Splitting& s) {
    SplittingMorphisms out;
    Report& r = out.report;
    r = Report("splitting-morphisms");
    Report sc = check_splitting(t, s);
    r.merge(sc, "splitting");
    if (!sc.ok()) return out;
    const FinCat& b = *t.base();
    const FinCat& d = *s.d;
    std::size_t n = b.size(), m = d.size();
    std::vector<std::vector<std::vector<Elem>>> inv(n, std::vector<std::vector<Elem>>(m));
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < m; ++y) inv[x][y] = *invert_phi(s.phi[x][y], fn_count(t.J().at(x), s.right.at(y)));

    // V : Kl(T) -> d
    CatFunctor klL = kleisli_left(kl);
    CatFunctor& v = out.from_kleisli;
    v = CatFunctor{kl.cat, s.d, s.left.obj, std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem k = 0; k < kl.cat->hom(x, y); ++k) v.arrows[x * n + y].push_back(inv[x][s.left.obj[y]][k]);
    r.merge(check_cat_functor(v), "from-kleisli/functor");
    LawCheck vl("from-kleisli/commutes-with-left"), vr("from-kleisli/commutes-with-right"),
        vp("from-kleisli/preserves-phi");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            for (Elem f = 0; f < b.hom(x, y); ++f)
                vl.expect(v.map(x, y, klL.map(x, y, f)) == s.left.map(x, y, f), [&] { return json{{"f", to_json(Arrow{x, y, f})}}; });
            for (Elem k = 0; k < kl.cat->hom(x, y); ++k) {
                Elem a = v.map(x, y, k);
                vr.expect(s.right.map(s.left.obj[x], s.left.obj[y], a) == t.star(x, y, kl.arrow(x, y, k)),
                          [&] { return json{{"k", to_json(Arrow{x, y, k})}}; });
                vp.expect(s.phi[x][s.left.obj[y]][a] == k, [&] { return json{{"k", to_json(Arrow{x, y, k})}}; });
            }
        }
    r.add(vl);
    r.add(vr);
    r.add(vp);

    // Uniqueness of V: candidate arrows per Kleisli arrow, then all combinations.
    {
        std::vector<std::vector<Elem>> cands;
        std::vector<std::tuple<Obj, Obj, Elem>> where;
        std::map<std::tuple<Obj, Obj, Elem>, Elem> left_image;
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (Elem f = 0; f < b.hom(x, y); ++f) left_image[{x, y, klL.map(x, y, f)}] = s.left.map(x, y, f);
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (Elem k = 0; k < kl.cat->hom(x, y); ++k) {
                    std::vector<Elem> c;
                    Obj lx = s.left.obj[x], ly = s.left.obj[y];
                    FinFn ks = t.star(x, y, kl.arrow(x, y, k));
                    auto li = left_image.find({x, y, k});
                    for (Elem a = 0; a < d.hom(lx, ly); ++a)
                        if (s.phi[x][ly][a] == k && s.right.map(lx, ly, a) == ks &&
                            (li == left_image.end() || li->second == a))
                            c.push_back(a);
                    cands.push_back(std::move(c));
                    where.emplace_back(x, y, k);
                }
        try {
            std::uint64_t total = 1;
            for (const auto& c : cands) total = checked_mul(total, c.size(), budget());
            std::uint64_t functors = 0;
            if (total > 0) {
                std::vector<std::uint64_t> digits(cands.size(), 0), radix;
                for (const auto& c : cands) radix.push_back(c.size());
                do {
                    CatFunctor cand{kl.cat, s.d, s.left.obj, std::vector<std::vector<Elem>>(n * n)};
                    for (std::size_t i = 0; i < cands.size(); ++i) {
                        auto [x, y, k] = where[i];
                        cand.arrows[x * n + y].push_back(cands[i][digits[i]]);
                    }
                    if (check_cat_functor(cand).ok()) ++functors;
                } while (next_tuple(digits, radix));
            }
            expect_with(r, "from-kleisli/uniqueness", functors == 1, json{{"candidates", total}, {"functors", functors}});
        } catch (const EnumerationOverflow& e) {
            r.skip("from-kleisli/uniqueness", "budget", json{{"count", e.count}, {"budget", e.budget}});
        }
    }

    // W : d -> EM(T)
    CatFunctor& w = out.to_em;
    w = CatFunctor{s.d, em.cat, {}, std::vector<std::vector<Elem>>(m * m)};
    Splitting ems = em_splitting(em);
    LawCheck lands("to-em/lands-in-em");
    for (Obj y = 0; y < m; ++y) {
        EMAlgebra a;
        a.carrier = s.right.at(y);
        a.chi.resize(n);
        for (Obj z = 0; z < n; ++z)
            for (std::uint64_t fi = 0; fi < fn_count(t.J().at(z), a.carrier); ++fi)
                a.chi[z].push_back(s.right.map(s.left.obj[z], y, inv[z][y][fi]));
        auto o = em.find(a);
        lands.expect(o.has_value(), [&] { return json{{"object", d.name(y)}, {"algebra", to_json(a)}}; });
        w.obj.push_back(o.value_or(0));
    }
    r.add(lands);
    if (lands.failed()) return out;
    LawCheck maps("to-em/maps-are-algebra-maps");
    for (Obj y = 0; y < m; ++y)
        for (Obj y2 = 0; y2 < m; ++y2)
            for (Elem h = 0; h < d.hom(y, y2); ++h) {
                auto a = em.find_map(w.obj[y], w.obj[y2], s.right.map(y, y2, h));
                maps.expect(a.has_value(), [&] { return json{{"h", to_json(Arrow{y, y2, h})}}; });
                w.arrows[y * m + y2].push_back(a.value_or(0));
            }
    r.add(maps);
    if (maps.failed()) return out;
    r.merge(check_cat_functor(w), "to-em/functor");
    LawCheck wl("to-em/commutes-with-left"), wr("to-em/commutes-with-right"), wp("to-em/preserves-phi");
    for (Obj x = 0; x < n; ++x) {
        wl.expect(w.obj[s.left.obj[x]] == ems.left.obj[x], [&] { return json{{"object", b.name(x)}}; });
        for (Obj y = 0; y < n; ++y)
            for (Elem f = 0; f < b.hom(x, y); ++f)
                wl.expect(w.map(s.left.obj[x], s.left.obj[y], s.left.map(x, y, f)) == ems.left.map(x, y, f),
                          [&] { return json{{"f", to_json(Arrow{x, y, f})}}; });
    }
    for (Obj y = 0; y < m; ++y)
        for (Obj y2 = 0; y2 < m; ++y2)
            for (Elem h = 0; h < d.hom(y, y2); ++h)
                wr.expect(em.map(w.obj[y], w.obj[y2], w.map(y, y2, h)) == s.right.map(y, y2, h),
                          [&] { return json{{"h", to_json(Arrow{y, y2, h})}}; });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < m; ++y)
            for (Elem a = 0; a < d.hom(s.left.obj[x], y); ++a)
                wp.expect(ems.phi[x][w.obj[y]][w.map(s.left.obj[x], y, a)] == s.phi[x][y][a],
                          [&] { return json{{"x", b.name(x)}, {"y", d.name(y)}, {"a", a}}; });
    r.add(wl);
    r.add(wr);
    r.add(wp);

    // Uniqueness of W: per object, the algebras on R y compatible with the free algebras and L; then all
    // assignments whose arrows are algebra maps.
    {
        std::vector<std::vector<Obj>> cands(m);
        for (Obj y = 0; y < m; ++y)
            for (Obj c = 0; c < em.algebras.size(); ++c) {
                if (em.algebras[c].carrier != s.right.at(y)) continue;
                bool ok = true;
                for (Obj x = 0; x < n && ok; ++x) {
                    if (s.left.obj[x] == y && ems.left.obj[x] != c) ok = false;
                    for (Elem a = 0; ok && a < d.hom(s.left.obj[x], y); ++a)
                        if (!em.find_map(ems.left.obj[x], c, s.right.map(s.left.obj[x], y, a))) ok = false;
                }
                if (ok) cands[y].push_back(c);
            }
        try {
            std::uint64_t total = 1;
            for (const auto& c : cands) total = checked_mul(total, c.size(), budget());
            std::uint64_t functors = 0;
            if (total > 0) {
                std::vector<std::uint64_t> digits(m, 0), radix;
                for (const auto& c : cands) radix.push_back(c.size());
                do {
                    CatFunctor cand{s.d, em.cat, {}, std::vector<std::vector<Elem>>(m * m)};
                    for (Obj y = 0; y < m; ++y) cand.obj.push_back(cands[y][digits[y]]);
                    bool ok = true;
                    for (Obj y = 0; y < m && ok; ++y)
                        for (Obj y2 = 0; y2 < m && ok; ++y2)
                            for (Elem h = 0; ok && h < d.hom(y, y2); ++h) {
                                auto a = em.find_map(cand.obj[y], cand.obj[y2], s.right.map(y, y2, h));
                                if (!a) ok = false;
                                else cand.arrows[y * m + y2].push_back(*a);
                            }
                    if (ok && check_cat_functor(cand).ok()) ++functors;
                } while (!cands.empty() && next_tuple(digits, radix));
                if (cands.empty()) functors = 1;
            }
            expect_with(r, "to-em/uniqueness", functors == 1, json{{"candidates", total}, {"functors", functors}});
        } catch (const EnumerationOverflow& e) {
            r.skip("to-em/uniqueness", "budget", json{{"count", e.count}, {"budget", e.budget}});
        }
    }
    return out;
}

// ---------------- monad algebras and comparisons ----------------

Report monad_algebra_check(const Monad& m, const MonadAlgebra& a) {
    Report r("monad-algebra");
    FinFn u = compose(a.a, m.unit(a.carrier));
    r.expect("unit", u == FinFn::identity(a.carrier), json{{"a", a.a.table()}});
    FinFn l = compose(a.a, m.mu(a.carrier));
    FinFn rr = compose(a.a, m.fmap(a.a));
    r.expect("associativity", l == rr, json{{"a", a.a.table()}});
    return r;
}

std::vector<MonadAlgebra> enumerate_monad_algebras(const Monad& m, std::size_t carrier) {
    auto pins = pinned(m.unit(carrier), FinFn::identity(carrier));
    if (!pins) return {};
    std::uint64_t c = free_count(*pins, carrier);
    std::vector<MonadAlgebra> out;
    for (std::uint64_t i = 0; i < c; ++i) {
        MonadAlgebra a{carrier, fill(*pins, carrier, i)};
        if (monad_algebra_check(m, a).ok()) out.push_back(std::move(a));
    }
    return out;
}

namespace {

bool is_monad_algebra_map(const Monad& m, const MonadAlgebra& a, const MonadAlgebra& b, const FinFn& h) {
    return compose(h, a.a) == compose(b.a, m.fmap(h));
}

std::size_t max_image(const SetFunctor& j) {
    std::size_t k = 0;
    for (auto v : j.objects()) k = std::max(k, v);
    return k;
}

}  // namespace

Report comparison_flat(const Monad& m, const SetFunctor& j, std::size_t max_carrier) {
    Report r("comparison-flat");
    RelMonad flat = restrict(m, j);
    std::size_t top = max_image(j);
    RelMonad whole = restrict(m, inclusion_functor(fin_skeleton(top)));
    KleisliCat klf = kleisli_build(flat), klm = kleisli_build(whole);
    CatFunctor lf = kleisli_left(klf), lm = kleisli_left(klm);
    const FinCat& b = *j.src();
    std::size_t n = b.size();
    CatFunctor dd{klf.cat, klm.cat, {}, std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) dd.obj.push_back(static_cast<Obj>(j.at(x)));
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem k = 0; k < klf.cat->hom(x, y); ++k) dd.arrows[x * n + y].push_back(k);
    r.merge(check_cat_functor(dd), "D/functor");
    LawCheck dl("D/commutes-with-left"), dr("D/commutes-with-right");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            for (Elem f = 0; f < b.hom(x, y); ++f) {
                Elem jf = idx(j.map(x, y, f));
                dl.expect(dd.map(x, y, lf.map(x, y, f)) == lm.map(dd.obj[x], dd.obj[y], jf),
                          [&] { return json{{"f", to_json(Arrow{x, y, f})}}; });
            }
            for (Elem k = 0; k < klf.cat->hom(x, y); ++k) {
                FinFn kk = klf.arrow(x, y, k);
                dr.expect(flat.star(x, y, kk) == whole.star(dd.obj[x], dd.obj[y], kk),
                          [&] { return json{{"k", to_json(Arrow{x, y, k})}}; });
            }
        }
    r.add(dl);
    r.add(dr);
    LawCheck lands("E/lands-in-em"), maps("E/preserves-maps");
    std::vector<std::pair<MonadAlgebra, EMAlgebra>> algs;
    for (std::size_t a = 0; a <= max_carrier; ++a)
        for (auto& alg : enumerate_monad_algebras(m, a)) {
            EMAlgebra e;
            e.carrier = a;
            e.chi.resize(n);
            for (Obj z = 0; z < n; ++z)
                for (const auto& f : enumerate_fns(j.at(z), a)) e.chi[z].push_back(compose(alg.a, m.fmap(f)));
            lands.expect(em_lawful(flat, e), [&] { return json{{"a", alg.a.table()}}; });
            algs.emplace_back(std::move(alg), std::move(e));
        }
    for (const auto& [a, ea] : algs)
        for (const auto& [bb, eb] : algs)
            for (const auto& h : enumerate_fns(a.carrier, bb.carrier))
                if (is_monad_algebra_map(m, a, bb, h))
                    maps.expect(is_em_morphism(flat, ea, eb, h),
                                [&] { return json{{"a", a.a.table()}, {"b", bb.a.table()}, {"h", h.table()}}; });
    r.add(lands, json{{"algebras", algs.size()}});
    r.add(maps);
    return r;
}

Report comparison_sharp(std::shared_ptr<const Kan> kan, const RelMonad& t, std::size_t max_size, std::size_t max_carrier) {
    Report r("comparison-sharp");
    Monad sharp = extend(kan, t, max_size);
    std::size_t top = max_image(t.J());
    RelMonad whole = restrict(sharp, inclusion_functor(fin_skeleton(top)));
    KleisliCat kl = kleisli_build(t), kls = kleisli_build(whole);
    CatFunctor lt = kleisli_left(kl), ls = kleisli_left(kls);
    const FinCat& b = *t.base();
    std::size_t n = b.size();
    const SetFunctor& tf = t.functor();
    std::vector<FinFn> rho(n);
    for (Obj y = 0; y < n; ++y) rho[y] = kan->rho(tf, y);
    CatFunctor dd{kl.cat, kls.cat, {}, std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) dd.obj.push_back(static_cast<Obj>(t.J().at(x)));
    LawCheck ff("D/fully-faithful"), dl("D/commutes-with-left"), dr("D/commutes-with-right");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            std::set<Elem> image;
            for (Elem k = 0; k < kl.cat->hom(x, y); ++k) {
                Elem dk = idx(compose(rho[y], kl.arrow(x, y, k)));
                dd.arrows[x * n + y].push_back(dk);
                image.insert(dk);
            }
            ff.expect(image.size() == kl.cat->hom(x, y) && image.size() == kls.cat->hom(dd.obj[x], dd.obj[y]),
                      [&] { return json{{"x", b.name(x)}, {"y", b.name(y)}, {"image", image.size()},
                                        {"target", kls.cat->hom(dd.obj[x], dd.obj[y])}}; });
        }
    r.merge(check_cat_functor(dd), "D/functor");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            for (Elem f = 0; f < b.hom(x, y); ++f)
                dl.expect(dd.map(x, y, lt.map(x, y, f)) == ls.map(dd.obj[x], dd.obj[y], idx(t.J().map(x, y, f))),
                          [&] { return json{{"f", to_json(Arrow{x, y, f})}}; });
            for (Elem k = 0; k < kl.cat->hom(x, y); ++k) {
                FinFn lhs = compose(rho[y], t.star(x, y, kl.arrow(x, y, k)));
                FinFn rhs = compose(whole.star(dd.obj[x], dd.obj[y], kls.arrow(dd.obj[x], dd.obj[y], dd.map(x, y, k))), rho[x]);
                dr.expect(lhs == rhs, [&] { return json{{"k", to_json(Arrow{x, y, k})}}; });
            }
        }
    r.add(ff);
    r.add(dl);
    r.add(dr);

    EMAltContext c(kan, t);
    LawCheck e_lands("E/lands-in-em"), einv_lands("E-inverse/lands-in-em"), e1("E-inverse-after-E"),
        e2("E-after-E-inverse"), maps("E/maps-agree"), free("E/free-algebra-roundtrip");
    for (std::size_t a = 0; a <= max_carrier; ++a) {
        std::vector<MonadAlgebra> sh = enumerate_monad_algebras(sharp, a);
        for (const auto& alg : sh) {
            EMAlgebra e = alt_to_em(c, EMAltAlgebra{a, alg.a});
            e_lands.expect(em_lawful(t, e), [&] { return json{{"x", alg.a.table()}}; });
            e1.expect(em_to_alt(c, e).x == alg.a, [&] { return json{{"x", alg.a.table()}}; });
        }
        for (const auto& x : sh)
            for (const auto& y : sh) {
                EMAlgebra ex = alt_to_em(c, EMAltAlgebra{a, x.a}), ey = alt_to_em(c, EMAltAlgebra{a, y.a});
                for (const auto& h : enumerate_fns(a, a))
                    maps.expect(is_monad_algebra_map(sharp, x, y, h) == is_em_morphism(t, ex, ey, h),
                                [&] { return json{{"x", x.a.table()}, {"y", y.a.table()}, {"h", h.table()}}; });
            }
        try {
            std::vector<EMAlgebra> rel = enumerate_em_algebras(t, a);
            for (const auto& e : rel) {
                EMAltAlgebra x = em_to_alt(c, e);
                einv_lands.expect(monad_algebra_check(sharp, MonadAlgebra{a, x.x}).ok(), [&] { return to_json(e); });
                e2.expect(alt_to_em(c, x) == e, [&] { return to_json(e); });
            }
            expect_with(r, "E/bijective-on-objects/" + std::to_string(a), rel.size() == sh.size(),
                     json{{"em_sharp", sh.size()}, {"em", rel.size()}});
        } catch (const EnumerationOverflow& e) {
            r.skip("E/bijective-on-objects/" + std::to_string(a), "budget", json{{"count", e.count}, {"budget", e.budget}});
        }
    }
    // Free T#-algebras (T# X, mu#) on sets whose T# T# X is still in range.
    for (std::size_t x = 0; x <= max_size; ++x) {
        try {
            std::size_t tx = sharp.obj(x);
            if (tx > max_size) break;
            MonadAlgebra fa{tx, sharp.mu(x)};
            EMAlgebra e = alt_to_em(c, EMAltAlgebra{tx, fa.a});
            free.expect(em_to_alt(c, e).x == fa.a, [&] { return json{{"X", x}}; });
        } catch (const OutOfUniverse&) {
            break;
        }
    }
    r.add(e_lands);
    r.add(e1);
    r.add(einv_lands);
    r.add(e2);
    r.add(maps);
    r.add(free);
    return r;
}

// ---------------- semimodules ----------------

Report semimodule_check(const FiniteSemiring& r, const Semimodule& m) {
    Report rep("semimodule");
    std::size_t n = m.size;
    auto add = [&](Elem a, Elem b) { return m.add[a * n + b]; };
    auto sm = [&](Elem s, Elem a) { return m.smul[s * n + a]; };
    bool shape = m.add.size() == n * n && m.smul.size() == r.n * n && m.zero < n;
    for (Elem v : m.add) shape = shape && v < n;
    for (Elem v : m.smul) shape = shape && v < n;
    rep.expect("shape", shape);
    if (!shape) return rep;
    LawCheck comm("add-commutative"), assoc("add-associative"), unit("add-unit"), dist1("distributes-over-module-add"),
        dist2("distributes-over-ring-add"), mulassoc("scalar-associative"), one("scalar-one"), zero("scalar-zero"),
        zero2("zero-absorbs");
    for (Elem a = 0; a < n; ++a) {
        unit.expect(add(m.zero, a) == a, [&] { return json{{"a", a}}; });
        one.expect(sm(r.one, a) == a, [&] { return json{{"a", a}}; });
        zero.expect(sm(r.zero, a) == m.zero, [&] { return json{{"a", a}}; });
        for (Elem b = 0; b < n; ++b) {
            comm.expect(add(a, b) == add(b, a), [&] { return json{{"a", a}, {"b", b}}; });
            for (Elem c = 0; c < n; ++c)
                assoc.expect(add(add(a, b), c) == add(a, add(b, c)), [&] { return json{{"a", a}, {"b", b}, {"c", c}}; });
            for (Elem s = 0; s < r.n; ++s)
                dist1.expect(sm(s, add(a, b)) == add(sm(s, a), sm(s, b)), [&] { return json{{"r", s}, {"a", a}, {"b", b}}; });
        }
        for (Elem s = 0; s < r.n; ++s)
            for (Elem u = 0; u < r.n; ++u) {
                dist2.expect(sm(r.add(s, u), a) == add(sm(s, a), sm(u, a)), [&] { return json{{"r", s}, {"s", u}, {"a", a}}; });
                mulassoc.expect(sm(r.mul(s, u), a) == sm(s, sm(u, a)), [&] { return json{{"r", s}, {"s", u}, {"a", a}}; });
            }
    }
    for (Elem s = 0; s < r.n; ++s) zero2.expect(sm(s, m.zero) == m.zero, [&] { return json{{"r", s}}; });
    for (const auto* c : {&comm, &assoc, &unit, &dist1, &dist2, &mulassoc, &one, &zero, &zero2}) rep.add(*c);
    return rep;
}

std::vector<Semimodule> bool_semimodules(std::size_t n) {
    std::vector<Semimodule> out;
    if (n == 0) return out;
    FiniteSemiring b = bool_semiring();
    for (Elem z = 0; z < n; ++z) {
        std::vector<std::pair<Elem, Elem>> free;
        for (Elem a = 0; a < n; ++a)
            for (Elem c = a + 1; c < n; ++c)
                if (a != z && c != z) free.emplace_back(a, c);
        std::uint64_t count = checked_pow(n, free.size(), budget());
        for (std::uint64_t i = 0; i < count; ++i) {
            Semimodule m;
            m.size = n;
            m.zero = z;
            m.add.assign(n * n, 0);
            for (Elem a = 0; a < n; ++a) {
                m.add[a * n + a] = a;
                m.add[z * n + a] = a;
                m.add[a * n + z] = a;
            }
            std::uint64_t c = i;
            for (auto [a, d] : free) {
                Elem v = static_cast<Elem>(c % n);
                c /= n;
                m.add[a * n + d] = v;
                m.add[d * n + a] = v;
            }
            m.smul.assign(b.n * n, 0);
            for (Elem a = 0; a < n; ++a) {
                m.smul[b.zero * n + a] = z;
                m.smul[b.one * n + a] = a;
            }
            if (semimodule_check(b, m).ok()) out.push_back(std::move(m));
        }
    }
    return out;
}

EMAlgebra module_to_em(const FiniteSemiring& r, const RelMonad& vec, const Semimodule& m) {
    Report laws = semimodule_check(r, m);
    if (!laws.ok())
        throw PreconditionError("module_to_em: not a module: " + laws.first_failure()->law + " " +
                                laws.first_failure()->witness.dump());
    std::size_t n = vec.base()->size();
    EMAlgebra a;
    a.carrier = m.size;
    a.chi.resize(n);
    for (Obj z = 0; z < n; ++z) {
        std::size_t dim = vec.J().at(z);
        for (const auto& f : enumerate_fns(dim, m.size)) {
            std::vector<Elem> t(vec.T(z));
            for (std::uint64_t v = 0; v < t.size(); ++v) {
                std::vector<Elem> g = vec_decode(r, v, dim);
                Elem acc = m.zero;
                for (std::size_t i = 0; i < dim; ++i) acc = m.add[acc * m.size + m.smul[g[i] * m.size + f(i)]];
                t[v] = acc;
            }
            a.chi[z].push_back(FinFn(m.size, std::move(t)));
        }
    }
    return a;
}

Semimodule em_to_module(const FiniteSemiring& r, const RelMonad& vec, const EMAlgebra& a) {
    std::optional<Obj> o0, o1, o2;
    for (Obj z = 0; z < vec.base()->size(); ++z) {
        std::size_t d = vec.J().at(z);
        if (d == 0 && !o0) o0 = z;
        if (d == 1 && !o1) o1 = z;
        if (d == 2 && !o2) o2 = z;
    }
    if (!o0 || !o1 || !o2) throw OutOfUniverse(2, "em_to_module: needs dimensions 0, 1 and 2");
    std::size_t n = a.carrier;
    Semimodule m;
    m.size = n;
    m.zero = a.chi[*o0][0](0);
    m.add.resize(n * n);
    m.smul.resize(r.n * n);
    std::uint64_t both = vec_encode(r, {r.one, r.one});
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) m.add[x * n + y] = a.at(*o2, FinFn(n, {x, y}))(static_cast<Elem>(both));
        for (Elem s = 0; s < r.n; ++s) m.smul[s * n + x] = a.at(*o1, FinFn(n, {x}))(static_cast<Elem>(vec_encode(r, {s})));
    }
    return m;
}

Report vec_em_bridge(const FiniteSemiring& r, const RelMonad& vec, const std::vector<Semimodule>& modules,
                     std::size_t max_carrier) {
    Report rep("vec-em-bridge");
    LawCheck laws("em-laws"), mem("module-em-module"), eme("em-module-em"), lawful("lawful-structures-are-modules");
    for (const auto& m : modules) {
        EMAlgebra a = module_to_em(r, vec, m);
        laws.expect(em_lawful(vec, a), [&] { return json{{"zero", m.zero}, {"add", m.add}}; });
        Semimodule back = em_to_module(r, vec, a);
        mem.expect(back == m, [&] { return json{{"zero", m.zero}, {"add", m.add}, {"recovered", back.add}}; });
        eme.expect(module_to_em(r, vec, back) == a, [&] { return json{{"zero", m.zero}, {"add", m.add}}; });
    }
    std::uint64_t structures = 0;
    for (std::size_t x = 0; x <= max_carrier; ++x)
        for (const auto& a : enumerate_em_algebras(vec, x)) {
            ++structures;
            Semimodule m = em_to_module(r, vec, a);
            bool ok = semimodule_check(r, m).ok() && module_to_em(r, vec, m) == a;
            lawful.expect(ok, [&] { return to_json(a); });
        }
    rep.add(laws, json{{"modules", modules.size()}});
    rep.add(mem);
    rep.add(eme);
    rep.add(lawful, json{{"structures", structures}});
    return rep;
}

// ---------------- state ----------------

Report state_em_check(std::size_t s, std::size_t x) {
    Report r("state-em");
    RelMonad t = state_relmonad(s, {0, 1, 2});
    auto kan = std::make_shared<const Kan>(t.J());
    EMAltContext c(kan, t);
    LanPtr lan = kan->lan(t.functor(), x);
    std::size_t xs = fn_count_size(s, x);
    expect_with(r, "lan-carrier", lan->size() == xs * s, json{{"lan", lan->size()}, {"X^S x S", xs * s}});
    if (lan->size() != xs * s) return r;

    std::set<std::vector<std::vector<FinFn>>> from_alt, from_pairs;
    std::uint64_t lawful_alt = 0, lawful_pairs = 0, maps = 0;
    LawCheck roundtrip("alt-roundtrip"), eval("lawful-is-evaluation");
    for (const auto& xm : enumerate_fns(lan->size(), x)) {
        ++maps;
        EMAltAlgebra a{x, xm};
        EMAlgebra e = alt_to_em(c, a);
        roundtrip.expect(em_to_alt(c, e) == a, [&] { return json{{"x", xm.table()}}; });
        if (em_lawful(t, e)) ++lawful_alt;
        from_alt.insert(e.chi);
    }
    std::size_t n = t.base()->size();
    std::vector<Elem> digits(s);
    for (const auto& p : enumerate_fns(xs * s, x)) {
        EMAlgebra e;
        e.carrier = x;
        e.chi.resize(n);
        for (Obj z = 0; z < n; ++z) {
            std::size_t zs = t.J().at(z);
            for (const auto& f : enumerate_fns(zs, x)) {
                std::vector<Elem> out(zs);
                for (Elem el = 0; el < zs; ++el) {
                    Elem zi = static_cast<Elem>(el / s), st = static_cast<Elem>(el % s);
                    for (std::size_t q = 0; q < s; ++q) digits[q] = f(static_cast<Elem>(zi * s + q));
                    std::uint64_t phi = encode_tuple(digits, x);
                    out[el] = p(static_cast<Elem>(phi * s + st));
                }
                e.chi[z].push_back(FinFn(x, std::move(out)));
            }
        }
        if (em_lawful(t, e)) {
            ++lawful_pairs;
            bool is_eval = true;
            for (std::uint64_t phi = 0; phi < xs; ++phi) {
                decode_tuple(phi, x, digits);
                for (std::size_t st = 0; st < s; ++st)
                    is_eval = is_eval && p(static_cast<Elem>(phi * s + st)) == digits[st];
            }
            eval.expect(is_eval, [&] { return json{{"map", p.table()}}; });
        }
        from_pairs.insert(e.chi);
    }
    std::uint64_t pair_maps = fn_count(xs * s, x);
    r.add(roundtrip);
    expect_with(r, "alt-injective", from_alt.size() == maps, json{{"maps", maps}, {"families", from_alt.size()}});
    expect_with(r, "pairs-injective", from_pairs.size() == pair_maps, json{{"maps", pair_maps}, {"families", from_pairs.size()}});
    expect_with(r, "same-families", from_alt == from_pairs, json{{"families", from_alt.size()}});
    expect_with(r, "lawful-count", lawful_alt == lawful_pairs && lawful_alt >= 1,
             json{{"alt", lawful_alt}, {"pairs", lawful_pairs}});
    r.add(eval);
    return r;
}

}  // namespace relmon
