#include "relmon/arrows.hpp"

#include <boost/pending/disjoint_sets.hpp>

namespace relmon {

namespace {

std::vector<Elem> flatten(const NatTrans& t) {
    std::vector<Elem> out;
    for (const auto& f : t.comp) out.insert(out.end(), f.table().begin(), f.table().end());
    return out;
}

json nat_json(const NatTrans& t) {
    json out = json::array();
    for (const auto& f : t.comp) out.push_back(f.table());
    return out;
}

bool same_functor(const SetFunctor& a, const SetFunctor& b) {
    if (a.objects() != b.objects()) return false;
    const FinCat& c = *a.src();
    for (Obj x = 0; x < c.size(); ++x)
        for (Obj y = 0; y < c.size(); ++y)
            for (Elem i = 0; i < c.hom(x, y); ++i)
                if (a.map(x, y, i) != b.map(x, y, i)) return false;
    return true;
}

std::size_t to_size(std::uint64_t v) { return static_cast<std::size_t>(v); }

// All index pairs, or a seeded sample when sampling and there are more than mode.samples.
std::vector<std::pair<std::size_t, std::size_t>> index_pairs(std::size_t n, std::size_t m, const LawMode& mode,
                                                             std::mt19937_64& rng) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n == 0 || m == 0) return out;
    if (mode.exhaustive || n * m <= mode.samples) {
        if (n * m > budget()) throw EnumerationOverflow(n * m, budget(), "law check pairs");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) out.emplace_back(i, j);
        return out;
    }
    for (std::size_t s = 0; s < mode.samples; ++s) out.emplace_back(rng() % n, rng() % m);
    return out;
}

std::vector<std::size_t> sample_indices(std::size_t n, const LawMode& mode, std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    if (mode.exhaustive || n <= mode.samples) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    for (std::size_t s = 0; s < mode.samples; ++s) out.push_back(rng() % n);
    return out;
}

// Nat(P, Q) with a lookup from flattened components to position.
struct NatSet {
    std::vector<NatTrans> nats;
    std::map<std::vector<Elem>, Elem> index;

    NatSet() = default;
    NatSet(const SetFunctor& p, const SetFunctor& q) : nats(functor_category_homs(p, q)) {
        for (Elem i = 0; i < nats.size(); ++i) index.emplace(flatten(nats[i]), i);
    }
    std::optional<Elem> find(const NatTrans& t) const {
        auto it = index.find(flatten(t));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return nats.size(); }
};

// Y h : Y x => Y y for h : x -> y.
NatTrans yoneda_map(const FinCat& c, const SetFunctor& yx, const SetFunctor& yy, Obj x, Obj y, Elem h) {
    NatTrans t{yx, yy, {}};
    for (Obj z = 0; z < c.size(); ++z) {
        std::vector<Elem> tab(c.hom(z, x));
        for (Elem g = 0; g < tab.size(); ++g) tab[g] = c.comp(z, x, y, h, g);
        t.comp.emplace_back(c.hom(z, y), std::move(tab));
    }
    return t;
}

}  // namespace

bool operator==(const ArrowData& a, const ArrowData& b) {
    return same_category(a.base, b.base) && a.cells == b.cells && a.pure == b.pure && a.comp == b.comp;
}

// ---------------- arrow laws ----------------

namespace {

json shape_failure(const ArrowData& a) {
    std::size_t n = a.n();
    const FinCat& c = *a.base;
    if (a.cells.size() != n * n || a.pure.size() != n * n || a.comp.size() != n * n * n)
        return json{{"reason", "table counts"}};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            const auto& p = a.pure[x * n + y];
            if (p.size() != c.hom(x, y)) return json{{"reason", "pure size"}, {"X", c.name(x)}, {"Y", c.name(y)}};
            for (Elem v : p)
                if (v >= a.cell(x, y)) return json{{"reason", "pure value"}, {"X", c.name(x)}, {"Y", c.name(y)}};
            for (Obj z = 0; z < n; ++z) {
                const auto& t = a.comp[(x * n + y) * n + z];
                if (t.size() != a.cell(x, y) * a.cell(y, z))
                    return json{{"reason", "composition size"}, {"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}};
                for (Elem v : t)
                    if (v >= a.cell(x, z))
                        return json{{"reason", "composition value"}, {"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}};
            }
        }
    return nullptr;
}

}  // namespace

Report check_arrow_laws(const ArrowData& a) {
    Report r("arrow-laws");
    json bad = shape_failure(a);
    if (!bad.is_null()) {
        r.fail("well-typed", bad);
        return r;
    }
    r.pass("well-typed");
    const FinCat& c = *a.base;
    std::size_t n = a.n();
    LawCheck pf("pure-functoriality");
    LawCheck ru("right-unit");
    LawCheck lu("left-unit");
    LawCheck as("associativity");
    LawCheck di("dinaturality");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                for (Elem f = 0; f < c.hom(x, y); ++f)
                    for (Elem g = 0; g < c.hom(y, z); ++g)
                        pf.expect(a.pure_of(x, z, c.comp(x, y, z, g, f)) ==
                                      a.compose(x, y, z, a.pure_of(y, z, g), a.pure_of(x, y, f)),
                                  [&] {
                                      return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}, {"f", f}, {"g", g}};
                                  });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem s = 0; s < a.cell(x, y); ++s) {
                ru.expect(a.compose(x, x, y, s, a.pure_of(x, x, c.id(x))) == s,
                          [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"s", s}}; });
                lu.expect(a.compose(x, y, y, a.pure_of(y, y, c.id(y)), s) == s,
                          [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"r", s}}; });
            }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                for (Obj w = 0; w < n; ++w) {
                    const auto& xyz = a.comp[(x * n + y) * n + z];
                    const auto& xzw = a.comp[(x * n + z) * n + w];
                    const auto& yzw = a.comp[(y * n + z) * n + w];
                    const auto& xyw = a.comp[(x * n + y) * n + w];
                    std::size_t rxy = a.cell(x, y), rxz = a.cell(x, z), ryz = a.cell(y, z);
                    for (Elem t = 0; t < a.cell(z, w); ++t)
                        for (Elem s = 0; s < ryz; ++s) {
                            Elem ts = yzw[t * ryz + s];
                            for (Elem q = 0; q < rxy; ++q)
                                as.expect(xzw[t * rxz + xyz[s * rxy + q]] == xyw[ts * rxy + q], [&] {
                                    return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}, {"W", c.name(w)},
                                                {"r", q}, {"s", s}, {"t", t}};
                                });
                        }
                }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj y2 = 0; y2 < n; ++y2)
                for (Obj z = 0; z < n; ++z)
                    for (Elem f = 0; f < c.hom(y, y2); ++f) {
                        Elem pf_ = a.pure_of(y, y2, f);
                        for (Elem s = 0; s < a.cell(y2, z); ++s) {
                            Elem sf = a.compose(y, y2, z, s, pf_);
                            for (Elem q = 0; q < a.cell(x, y); ++q)
                                di.expect(a.compose(x, y, z, sf, q) == a.compose(x, y2, z, s, a.compose(x, y, y2, pf_, q)),
                                          [&] {
                                              return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Y'", c.name(y2)},
                                                          {"Z", c.name(z)}, {"f", f}, {"s", s}, {"r", q}};
                                          });
                        }
                    }
    r.add(pf);
    r.add(ru);
    r.add(lu);
    r.add(as);
    r.add(di);
    return r;
}

// ---------------- instances ----------------

ArrowData hom_arrow(const CatPtr& base) {
    const FinCat& c = *base;
    std::size_t n = c.size();
    ArrowData a{"hom", base, std::vector<std::size_t>(n * n), std::vector<std::vector<Elem>>(n * n),
                std::vector<std::vector<Elem>>(n * n * n)};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            a.cells[x * n + y] = c.hom(x, y);
            for (Elem f = 0; f < c.hom(x, y); ++f) a.pure[x * n + y].push_back(f);
        }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                auto& t = a.comp[(x * n + y) * n + z];
                t.resize(c.hom(x, y) * c.hom(y, z));
                for (Elem g = 0; g < c.hom(y, z); ++g)
                    for (Elem f = 0; f < c.hom(x, y); ++f) t[g * c.hom(x, y) + f] = c.comp(x, y, z, g, f);
            }
    return a;
}

ArrowData kleisli_arrow(const RelMonad& t) {
    KleisliCat k = kleisli_build(t);
    CatFunctor left = kleisli_left(k);
    const FinCat& kc = *k.cat;
    std::size_t n = kc.size();
    ArrowData a{"kleisli(" + t.name() + ")", t.base(), std::vector<std::size_t>(n * n), left.arrows,
                std::vector<std::vector<Elem>>(n * n * n)};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) a.cells[x * n + y] = kc.hom(x, y);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                auto& c = a.comp[(x * n + y) * n + z];
                c.resize(kc.hom(x, y) * kc.hom(y, z));
                for (Elem g = 0; g < kc.hom(y, z); ++g)
                    for (Elem f = 0; f < kc.hom(x, y); ++f) c[g * kc.hom(x, y) + f] = kc.comp(x, y, z, g, f);
            }
    return a;
}

ArrowData state_arrow(std::size_t s, const CatPtr& base) {
    const auto* sizes = base->concrete();
    if (!sizes) throw PreconditionError("state_arrow: base must be a concrete subuniverse");
    const FinCat& c = *base;
    std::size_t n = c.size();
    ArrowData a{"state(" + std::to_string(s) + ")", base, std::vector<std::size_t>(n * n),
                std::vector<std::vector<Elem>>(n * n), std::vector<std::vector<Elem>>(n * n * n)};
    std::vector<std::vector<FinFn>> fns(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            std::size_t dx = (*sizes)[x] * s, dy = (*sizes)[y] * s;
            a.cells[x * n + y] = to_size(fn_count(dx, dy));
            for (const auto& f : enumerate_fns(dx, dy)) fns[x * n + y].push_back(f);
            for (Elem h = 0; h < c.hom(x, y); ++h) {
                FinFn f = concrete_arrow(c, x, y, h);
                std::vector<Elem> t(dx);
                for (Elem e = 0; e < (*sizes)[x]; ++e)
                    for (Elem q = 0; q < s; ++q) t[e * s + q] = static_cast<Elem>(f(e) * s + q);
                a.pure[x * n + y].push_back(static_cast<Elem>(fn_index(FinFn(dy, std::move(t)))));
            }
        }
    std::uint64_t work = 0;
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                work += checked_mul(a.cell(x, y), a.cell(y, z), budget());
                if (work > budget()) throw EnumerationOverflow(work, budget(), "state_arrow: composition table");
                auto& t = a.comp[(x * n + y) * n + z];
                std::size_t rxy = a.cell(x, y);
                t.resize(rxy * a.cell(y, z));
                for (Elem g = 0; g < a.cell(y, z); ++g)
                    for (Elem f = 0; f < rxy; ++f)
                        t[g * rxy + f] =
                            static_cast<Elem>(fn_index(compose(fns[y * n + z][g], fns[x * n + y][f])));
            }
    return a;
}

// ---------------- presheaf relative monads ----------------

std::vector<SetFunctor> yoneda_presheaves(const CatPtr& base, const CatPtr& opc) {
    std::vector<SetFunctor> out;
    for (Obj x = 0; x < base->size(); ++x) out.push_back(representable(base, opc, x));
    return out;
}

NatTrans yoneda_nat(const SetFunctor& yx, const SetFunctor& g, Obj x, Elem a) {
    NatTrans t{yx, g, {}};
    for (Obj z = 0; z < yx.objects().size(); ++z) {
        std::vector<Elem> tab(yx.at(z));
        for (Elem f = 0; f < tab.size(); ++f) tab[f] = g.map(x, z, f)(a);
        t.comp.emplace_back(g.at(z), std::move(tab));
    }
    return t;
}

PresheafRelMonad yoneda_trivial_relmonad(const CatPtr& base) {
    PresheafRelMonad t;
    t.name = "yoneda";
    t.base = base;
    t.opc = op_category(base);
    t.yoneda = yoneda_presheaves(base, t.opc);
    t.t = t.yoneda;
    for (const auto& y : t.yoneda) t.unit.push_back(identity_nat(y));
    t.star = [](Obj, Obj, const NatTrans& k) { return k; };
    return t;
}

Report check_presheaf_relmonad(const PresheafRelMonad& t, const LawMode& mode) {
    Report r("presheaf-relmonad");
    const FinCat& c = *t.base;
    std::size_t n = c.size();
    LawCheck fun("presheaf-functoriality");
    LawCheck un("unit-natural");
    for (Obj x = 0; x < n; ++x) {
        Report f = check_functor(t.t[x]);
        fun.expect(f.ok(), [&] { return json{{"X", c.name(x)}, {"law", f.first_failure()->law}}; });
        un.expect(check_nat(t.unit[x]).ok(), [&] { return json{{"X", c.name(x)}}; });
    }
    r.add(fun);
    r.add(un);
    if (fun.failed() || un.failed()) return r;
    std::mt19937_64 rng(mode.seed);
    LawCheck sn("star-natural");
    LawCheck ru("right-unit");
    LawCheck lu("left-unit");
    LawCheck as("associativity");
    try {
        std::vector<std::vector<NatTrans>> ks(n * n), stars(n * n);
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                ks[x * n + y] = functor_category_homs(t.yoneda[x], t.t[y]);
                for (const auto& k : ks[x * n + y]) {
                    NatTrans s = t.star(x, y, k);
                    sn.expect(check_nat(s).ok(),
                              [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", nat_json(k)}}; });
                    ru.expect(vertical(s, t.unit[x]) == k,
                              [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", nat_json(k)}}; });
                    stars[x * n + y].push_back(std::move(s));
                }
            }
        for (Obj x = 0; x < n; ++x)
            lu.expect(t.star(x, x, t.unit[x]) == identity_nat(t.t[x]), [&] { return json{{"X", c.name(x)}}; });
        if (!sn.failed())
            for (Obj x = 0; x < n; ++x)
                for (Obj y = 0; y < n; ++y)
                    for (Obj z = 0; z < n; ++z)
                        for (auto [i, j] : index_pairs(ks[x * n + y].size(), ks[y * n + z].size(), mode, rng)) {
                            const NatTrans& k = ks[x * n + y][i];
                            const NatTrans& ls = stars[y * n + z][j];
                            as.expect(t.star(x, z, vertical(ls, k)) == vertical(ls, stars[x * n + y][i]), [&] {
                                return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}, {"k", nat_json(k)},
                                            {"l", nat_json(ks[y * n + z][j])}};
                            });
                        }
    } catch (const EnumerationOverflow& e) {
        r.skip("laws", std::string("budget: ") + e.what());
        return r;
    }
    r.add(sn);
    r.add(ru, mode.to_json());
    r.add(lu);
    r.add(as, mode.to_json());
    return r;
}

std::optional<Elem> PresheafKleisli::find(Obj x, Obj y, const NatTrans& k) const {
    const auto& m = index[x * t.base->size() + y];
    auto it = m.find(flatten(k));
    if (it == m.end()) return std::nullopt;
    return it->second;
}

PresheafKleisli presheaf_kleisli(const PresheafRelMonad& t) {
    const FinCat& b = *t.base;
    std::size_t n = b.size();
    PresheafKleisli kl{t, nullptr, std::vector<std::vector<NatTrans>>(n * n),
                       std::vector<std::map<std::vector<Elem>, Elem>>(n * n)};
    std::vector<std::size_t> hom(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            NatSet s(t.yoneda[x], t.t[y]);
            hom[x * n + y] = s.size();
            kl.homs[x * n + y] = std::move(s.nats);
            kl.index[x * n + y] = std::move(s.index);
        }
    std::uint64_t work = 0;
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                work += checked_mul(hom[x * n + y], hom[y * n + z], budget());
                if (work > budget()) throw EnumerationOverflow(work, budget(), "presheaf_kleisli: composition table");
            }
    std::vector<std::vector<NatTrans>> stars(n * n);
    for (Obj y = 0; y < n; ++y)
        for (Obj z = 0; z < n; ++z)
            for (const auto& l : kl.homs[y * n + z]) stars[y * n + z].push_back(t.star(y, z, l));
    std::vector<std::vector<Elem>> comp(n * n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                auto& cmp = comp[(x * n + y) * n + z];
                std::size_t hxy = hom[x * n + y];
                cmp.resize(hxy * hom[y * n + z]);
                for (std::size_t g = 0; g < hom[y * n + z]; ++g)
                    for (std::size_t f = 0; f < hxy; ++f) {
                        auto i = kl.find(x, z, vertical(stars[y * n + z][g], kl.homs[x * n + y][f]));
                        if (!i) throw ShapeError("presheaf_kleisli: composite is not a natural transformation");
                        cmp[g * hxy + f] = *i;
                    }
            }
    std::vector<Elem> ids(n);
    for (Obj x = 0; x < n; ++x) {
        auto i = kl.find(x, x, t.unit[x]);
        if (!i) throw ShapeError("presheaf_kleisli: unit is not a natural transformation");
        ids[x] = *i;
    }
    kl.cat = std::make_shared<FinCat>(b.names(), std::move(hom), std::move(comp), std::move(ids));
    return kl;
}

// ---------------- the correspondence ----------------

PresheafRelMonad arrow_to_relmon(const ArrowData& a) {
    auto ap = std::make_shared<const ArrowData>(a);
    const FinCat& c = *a.base;
    std::size_t n = c.size();
    PresheafRelMonad t;
    t.name = "relmon(" + a.name + ")";
    t.base = a.base;
    t.opc = op_category(a.base);
    t.yoneda = yoneda_presheaves(a.base, t.opc);
    // T X W = R(W, X); a base arrow h : W' -> W acts by r |-> r << pure h.
    for (Obj x = 0; x < n; ++x) {
        std::vector<std::size_t> obj(n);
        for (Obj w = 0; w < n; ++w) obj[w] = a.cell(w, x);
        t.t.push_back(make_set_functor(
            t.opc, std::move(obj),
            [&](Obj w, Obj w2, Elem h) {
                std::vector<Elem> tab(a.cell(w, x));
                Elem ph = a.pure_of(w2, w, h);
                for (Elem q = 0; q < tab.size(); ++q) tab[q] = a.compose(w2, w, x, q, ph);
                return FinFn(a.cell(w2, x), std::move(tab));
            },
            "T(" + c.name(x) + ")"));
    }
    for (Obj x = 0; x < n; ++x) {
        NatTrans u{t.yoneda[x], t.t[x], {}};
        for (Obj w = 0; w < n; ++w) u.comp.emplace_back(a.cell(w, x), a.pure[w * n + x]);
        t.unit.push_back(std::move(u));
    }
    auto presheaves = std::make_shared<const std::vector<SetFunctor>>(t.t);
    t.star = [ap, presheaves](Obj x, Obj z, const NatTrans& k) {
        const ArrowData& a = *ap;
        std::size_t n = a.n();
        Elem kid = k.at(x)(a.base->id(x));
        NatTrans s{(*presheaves)[x], (*presheaves)[z], {}};
        for (Obj w = 0; w < n; ++w) {
            std::vector<Elem> tab(a.cell(w, x));
            for (Elem q = 0; q < tab.size(); ++q) tab[q] = a.compose(w, x, z, kid, q);
            s.comp.emplace_back(a.cell(w, z), std::move(tab));
        }
        return s;
    };
    return t;
}

ArrowData relmon_to_arrow(const PresheafRelMonad& t) {
    const FinCat& c = *t.base;
    std::size_t n = c.size();
    ArrowData a{"arrow(" + t.name + ")", t.base, std::vector<std::size_t>(n * n), std::vector<std::vector<Elem>>(n * n),
                std::vector<std::vector<Elem>>(n * n * n)};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            a.cells[x * n + y] = t.t[y].at(x);
            a.pure[x * n + y] = t.unit[y].at(x).table();
        }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) a.comp[(x * n + y) * n + z].resize(a.cell(x, y) * a.cell(y, z));
    // s << r = (lambda f. T _ f s)* r, one star per (Y, Z, s).
    for (Obj y = 0; y < n; ++y)
        for (Obj z = 0; z < n; ++z)
            for (Elem s = 0; s < a.cell(y, z); ++s) {
                NatTrans k = yoneda_nat(t.yoneda[y], t.t[z], y, s);
                Report nat = check_nat(k);
                if (!nat.ok())
                    throw NaturalityError("relmon_to_arrow: lambda f. T _ f s is not natural",
                                          json{{"Y", c.name(y)}, {"Z", c.name(z)}, {"s", s},
                                               {"failure", nat.first_failure()->witness}});
                NatTrans ks = t.star(y, z, k);
                for (Obj x = 0; x < n; ++x) {
                    auto& cmp = a.comp[(x * n + y) * n + z];
                    for (Elem q = 0; q < a.cell(x, y); ++q) cmp[s * a.cell(x, y) + q] = ks.at(x)(q);
                }
            }
    return a;
}

namespace {

json first_table_difference(const ArrowData& a, const ArrowData& b) {
    if (!same_category(a.base, b.base)) return json{{"table", "base"}};
    if (a.cells != b.cells) return json{{"table", "cells"}};
    std::size_t n = a.n();
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            if (a.pure[x * n + y] != b.pure[x * n + y])
                return json{{"table", "pure"}, {"X", a.base->name(x)}, {"Y", a.base->name(y)}};
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                if (a.comp[(x * n + y) * n + z] != b.comp[(x * n + y) * n + z])
                    return json{{"table", "composition"}, {"X", a.base->name(x)}, {"Y", a.base->name(y)},
                                {"Z", a.base->name(z)}};
    return nullptr;
}

}  // namespace

Report roundtrip_check(const ArrowData& a) {
    Report r("arrow-roundtrip");
    try {
        ArrowData b = relmon_to_arrow(arrow_to_relmon(a));
        json d = first_table_difference(a, b);
        if (d.is_null())
            r.pass("arrow-relmon-arrow", 1, json{{"cells", a.cells}});
        else
            r.fail("arrow-relmon-arrow", d);
    } catch (const NaturalityError& e) {
        r.fail("arrow-relmon-arrow", json{{"naturality", e.witness}});
    }
    return r;
}

Report roundtrip_check(const PresheafRelMonad& t, const LawMode& mode) {
    Report r("relmon-roundtrip");
    const FinCat& c = *t.base;
    std::size_t n = c.size();
    PresheafRelMonad u;
    try {
        u = arrow_to_relmon(relmon_to_arrow(t));
    } catch (const NaturalityError& e) {
        r.fail("naturality-precheck", e.witness);
        return r;
    }
    r.pass("naturality-precheck");
    LawCheck pre("presheaves");
    LawCheck unit("unit");
    LawCheck star("star");
    std::mt19937_64 rng(mode.seed);
    for (Obj x = 0; x < n; ++x) {
        pre.expect(same_functor(t.t[x], u.t[x]), [&] { return json{{"X", c.name(x)}}; });
        unit.expect(t.unit[x] == u.unit[x], [&] { return json{{"X", c.name(x)}}; });
    }
    try {
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                auto ks = functor_category_homs(t.yoneda[x], t.t[y]);
                for (std::size_t i : sample_indices(ks.size(), mode, rng))
                    star.expect(t.star(x, y, ks[i]) == u.star(x, y, ks[i]),
                                [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", nat_json(ks[i])}}; });
            }
    } catch (const EnumerationOverflow& e) {
        r.skip("star", std::string("budget: ") + e.what());
    }
    r.add(pre);
    r.add(unit);
    if (!r.find("star")) r.add(star, mode.to_json());
    return r;
}

// ---------------- morphisms ----------------

Report check_arrow_morphism(const ArrowMorphism& m) {
    Report r("arrow-morphism");
    const ArrowData& a = m.src;
    const ArrowData& b = m.tgt;
    const FinCat& c = *a.base;
    std::size_t n = a.n();
    bool typed = same_category(a.base, b.base) && m.cells.size() == n * n;
    for (Obj x = 0; typed && x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            if (m.cells[x * n + y].dom() != a.cell(x, y) || m.cells[x * n + y].cod() != b.cell(x, y)) typed = false;
    if (!typed) {
        r.fail("well-typed", json{{"reason", "cell maps do not match R and R'"}});
        return r;
    }
    LawCheck pure("preserves-pure");
    LawCheck comp("preserves-composition");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem f = 0; f < c.hom(x, y); ++f)
                pure.expect(m.cells[x * n + y](a.pure_of(x, y, f)) == b.pure_of(x, y, f),
                            [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"f", f}}; });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                const FinFn& txy = m.cells[x * n + y];
                const FinFn& tyz = m.cells[y * n + z];
                const FinFn& txz = m.cells[x * n + z];
                for (Elem s = 0; s < a.cell(y, z); ++s)
                    for (Elem q = 0; q < a.cell(x, y); ++q)
                        comp.expect(txz(a.compose(x, y, z, s, q)) == b.compose(x, y, z, tyz(s), txy(q)), [&] {
                            return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"Z", c.name(z)}, {"s", s}, {"r", q}};
                        });
            }
    r.add(pure);
    r.add(comp);
    return r;
}

ArrowMorphism identity_arrow_morphism(const ArrowData& a) {
    ArrowMorphism m{a, a, {}};
    for (std::size_t c : a.cells) m.cells.push_back(FinFn::identity(c));
    return m;
}

ArrowMorphism kleisli_arrow_morphism(const RelMonadMorphism& s) {
    ArrowMorphism m{kleisli_arrow(s.src), kleisli_arrow(s.tgt), {}};
    std::size_t n = m.src.n();
    const SetFunctor& j = s.src.J();
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            std::vector<Elem> tab(m.src.cell(x, y));
            for (Elem i = 0; i < tab.size(); ++i)
                tab[i] = static_cast<Elem>(fn_index(compose(s.comp[y], fn_from_index(i, j.at(x), s.src.T(y)))));
            m.cells.emplace_back(m.tgt.cell(x, y), std::move(tab));
        }
    return m;
}

Report check_presheaf_morphism(const PresheafMorphism& m, const LawMode& mode) {
    Report r("presheaf-morphism");
    const FinCat& c = *m.src.base;
    std::size_t n = c.size();
    LawCheck nat("natural");
    LawCheck unit("preserves-unit");
    LawCheck star("preserves-star");
    for (Obj x = 0; x < n; ++x) {
        nat.expect(check_nat(m.comp[x]).ok(), [&] { return json{{"X", c.name(x)}}; });
        unit.expect(vertical(m.comp[x], m.src.unit[x]) == m.tgt.unit[x], [&] { return json{{"X", c.name(x)}}; });
    }
    std::mt19937_64 rng(mode.seed);
    try {
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                auto ks = functor_category_homs(m.src.yoneda[x], m.src.t[y]);
                for (std::size_t i : sample_indices(ks.size(), mode, rng)) {
                    const NatTrans& k = ks[i];
                    star.expect(vertical(m.comp[y], m.src.star(x, y, k)) ==
                                    vertical(m.tgt.star(x, y, vertical(m.comp[y], k)), m.comp[x]),
                                [&] { return json{{"X", c.name(x)}, {"Y", c.name(y)}, {"k", nat_json(k)}}; });
                }
            }
    } catch (const EnumerationOverflow& e) {
        r.add(nat);
        r.add(unit);
        r.skip("preserves-star", std::string("budget: ") + e.what());
        return r;
    }
    r.add(nat);
    r.add(unit);
    r.add(star, mode.to_json());
    return r;
}

PresheafMorphism transport_morphism(const ArrowMorphism& m) {
    PresheafMorphism p{arrow_to_relmon(m.src), arrow_to_relmon(m.tgt), {}};
    std::size_t n = m.src.n();
    for (Obj x = 0; x < n; ++x) {
        NatTrans s{p.src.t[x], p.tgt.t[x], {}};
        for (Obj w = 0; w < n; ++w) s.comp.push_back(m.cells[w * n + x]);
        p.comp.push_back(std::move(s));
    }
    return p;
}

ArrowMorphism transport_back(const PresheafMorphism& m, const ArrowData& src, const ArrowData& tgt) {
    ArrowMorphism a{src, tgt, {}};
    std::size_t n = src.n();
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) a.cells.push_back(m.comp[y].at(x));
    return a;
}

Report transport_check(const ArrowMorphism& m, const LawMode& mode) {
    Report r("transport");
    r.merge(check_arrow_morphism(m), "arrow");
    if (!r.ok()) return r;
    PresheafMorphism p = transport_morphism(m);
    r.merge(check_presheaf_morphism(p, mode), "relmon");
    ArrowMorphism back = transport_back(p, m.src, m.tgt);
    r.expect("arrow-relmon-arrow", back.cells == m.cells);
    PresheafMorphism again = transport_morphism(back);
    bool same = again.comp.size() == p.comp.size();
    for (std::size_t x = 0; same && x < p.comp.size(); ++x) same = again.comp[x] == p.comp[x];
    r.expect("relmon-arrow-relmon", same);
    return r;
}

// ---------------- Yoneda embedding ----------------

std::vector<SetFunctor> enumerate_presheaves(const CatPtr& opc, std::size_t max_size) {
    const FinCat& c = *opc;
    std::size_t n = c.size();
    const std::vector<Arrow>& gens = c.generators();
    // Every arrow as gens[k] . prefix, in an order where prefixes come first.
    struct Step {
        Arrow arrow;
        std::size_t gen;
        Arrow prefix;
    };
    std::vector<Step> order;
    {
        std::vector<std::vector<char>> seen(n * n);
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) seen[x * n + y].assign(c.hom(x, y), 0);
        std::vector<Arrow> queue;
        for (Obj x = 0; x < n; ++x) {
            seen[x * n + x][c.id(x)] = 1;
            queue.push_back(Arrow{x, x, c.id(x)});
        }
        for (std::size_t q = 0; q < queue.size(); ++q) {
            Arrow s = queue[q];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const Arrow& g = gens[k];
                if (g.src != s.tgt) continue;
                Arrow a{s.src, g.tgt, c.comp(s.src, s.tgt, g.tgt, g.index, s.index)};
                char& m = seen[a.src * n + a.tgt][a.index];
                if (m) continue;
                m = 1;
                order.push_back(Step{a, k, s});
                queue.push_back(a);
            }
        }
    }
    std::vector<SetFunctor> out;
    std::vector<std::size_t> sizes(n, 0);
    std::uint64_t work = 0;
    while (true) {
        std::vector<std::uint64_t> counts;
        std::uint64_t total = 1;
        for (const Arrow& g : gens) {
            counts.push_back(fn_count(sizes[g.src], sizes[g.tgt]));
            total = checked_mul(total, counts.back(), budget());
        }
        work += total;
        if (work > budget()) throw EnumerationOverflow(work, budget(), "enumerate_presheaves");
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<FinFn> gfn(gens.size());
            std::uint64_t rest = code;
            for (std::size_t k = gens.size(); k-- > 0;) {
                gfn[k] = fn_from_index(rest % counts[k], sizes[gens[k].src], sizes[gens[k].tgt]);
                rest /= counts[k];
            }
            std::vector<std::vector<FinFn>> arrows(n * n);
            for (Obj x = 0; x < n; ++x)
                for (Obj y = 0; y < n; ++y) arrows[x * n + y].resize(c.hom(x, y));
            for (Obj x = 0; x < n; ++x) arrows[x * n + x][c.id(x)] = FinFn::identity(sizes[x]);
            for (const Step& s : order)
                arrows[s.arrow.src * n + s.arrow.tgt][s.arrow.index] =
                    compose(gfn[s.gen], arrows[s.prefix.src * n + s.prefix.tgt][s.prefix.index]);
            SetFunctor g(opc, sizes, std::move(arrows), "G" + std::to_string(out.size()));
            if (check_functor(g).ok()) out.push_back(std::move(g));
        }
        std::size_t i = 0;
        while (i < n && sizes[i] == max_size) sizes[i++] = 0;
        if (i == n) break;
        ++sizes[i];
    }
    return out;
}

namespace {

// Classes of (W, a, b) with a < asz[W], b < bsz[W] under the relation generated by `relate`.
struct Quotient {
    std::vector<std::size_t> offset;
    std::vector<std::size_t> bsz;
    std::vector<Elem> cls;
    std::vector<std::size_t> rep;  // a raw element per class
    std::size_t raw(Obj w, std::size_t a, std::size_t b) const { return offset[w] + a * bsz[w] + b; }
    Elem of(Obj w, std::size_t a, std::size_t b) const { return cls[raw(w, a, b)]; }
    std::size_t size() const { return rep.size(); }
};

template <typename Relate>
Quotient quotient(const std::vector<std::size_t>& asz, const std::vector<std::size_t>& bsz, Relate&& relate) {
    Quotient q;
    q.bsz = bsz;
    q.offset.assign(asz.size() + 1, 0);
    for (std::size_t w = 0; w < asz.size(); ++w) q.offset[w + 1] = q.offset[w] + asz[w] * bsz[w];
    std::size_t total = q.offset.back();
    boost::disjoint_sets_with_storage<> ds(total);
    for (std::size_t e = 0; e < total; ++e) ds.make_set(e);
    relate([&](std::size_t e1, std::size_t e2) { ds.union_set(e1, e2); }, q);
    q.cls.assign(total, 0);
    std::map<std::size_t, Elem> root_class;
    for (std::size_t e = 0; e < total; ++e) {
        auto [it, fresh] = root_class.emplace(ds.find_set(e), static_cast<Elem>(q.rep.size()));
        if (fresh) q.rep.push_back(e);
        q.cls[e] = it->second;
    }
    return q;
}

// F : base -> presheaves, with F h : F x => F y.
struct PresheafFamily {
    std::string name;
    std::vector<SetFunctor> at;
    std::vector<std::vector<NatTrans>> map;  // [x * n + y][h]
};

PresheafFamily yoneda_family(const FinCat& c, const std::vector<SetFunctor>& y) {
    std::size_t n = c.size();
    PresheafFamily f{"Y", y, std::vector<std::vector<NatTrans>>(n * n)};
    for (Obj a = 0; a < n; ++a)
        for (Obj b = 0; b < n; ++b)
            for (Elem h = 0; h < c.hom(a, b); ++h) f.map[a * n + b].push_back(yoneda_map(c, y[a], y[b], a, b, h));
    return f;
}

PresheafFamily constant_family(const FinCat& c, const SetFunctor& g) {
    std::size_t n = c.size();
    PresheafFamily f{"const(" + g.name() + ")", std::vector<SetFunctor>(n, g), std::vector<std::vector<NatTrans>>(n * n)};
    for (Obj a = 0; a < n; ++a)
        for (Obj b = 0; b < n; ++b) f.map[a * n + b].assign(c.hom(a, b), identity_nat(g));
    return f;
}

// Position of each a' . Y h in Nat(Y W, H), for h : W -> W2 and a' in Nat(Y W2, H).
std::vector<std::vector<std::vector<Elem>>> precompose_tables(const FinCat& c, const std::vector<SetFunctor>& y,
                                                              const std::vector<NatSet>& a) {
    std::size_t n = c.size();
    std::vector<std::vector<std::vector<Elem>>> out(n * n);
    for (Obj w = 0; w < n; ++w)
        for (Obj w2 = 0; w2 < n; ++w2)
            for (Elem h = 0; h < c.hom(w, w2); ++h) {
                NatTrans yh = yoneda_map(c, y[w], y[w2], w, w2, h);
                std::vector<Elem> tab;
                for (const auto& a2 : a[w2].nats) {
                    auto i = a[w].find(vertical(a2, yh));
                    if (!i) throw ShapeError("yoneda check: precomposite is not natural");
                    tab.push_back(*i);
                }
                out[w * n + w2].push_back(std::move(tab));
            }
    return out;
}

}  // namespace

Report yoneda_wellbehaved_check(const CatPtr& base, const YonedaBounds& bounds) {
    Report r("yoneda-wellbehaved");
    const FinCat& c = *base;
    std::size_t n = c.size();
    CatPtr opc = op_category(base);
    std::vector<SetFunctor> y = yoneda_presheaves(base, opc);

    // J^-1 tau = tau id.
    LawCheck jl("j-inverse-left");
    LawCheck jr("j-inverse-right");
    LawCheck yc("yoneda-count");
    for (Obj x = 0; x < n; ++x)
        for (Obj x2 = 0; x2 < n; ++x2) {
            for (Elem f = 0; f < c.hom(x, x2); ++f) {
                NatTrans yf = yoneda_map(c, y[x], y[x2], x, x2, f);
                jl.expect(check_nat(yf).ok() && yf.at(x)(c.id(x)) == f,
                          [&] { return json{{"X", c.name(x)}, {"Y", c.name(x2)}, {"f", f}}; });
            }
            auto taus = functor_category_homs(y[x], y[x2]);
            yc.expect(taus.size() == c.hom(x, x2),
                      [&] { return json{{"X", c.name(x)}, {"Y", c.name(x2)}, {"nats", taus.size()}}; });
            for (const auto& tau : taus) {
                Elem f = tau.at(x)(c.id(x));
                jr.expect(yoneda_map(c, y[x], y[x2], x, x2, f) == tau,
                          [&] { return json{{"X", c.name(x)}, {"Y", c.name(x2)}, {"tau", nat_json(tau)}}; });
            }
        }
    r.add(jl);
    r.add(jr);
    r.add(yc);

    std::vector<SetFunctor> gs;
    try {
        gs = enumerate_presheaves(opc, bounds.max_presheaf);
    } catch (const EnumerationOverflow& e) {
        r.skip("k-inverse", std::string("budget: ") + e.what());
        r.skip("l-condition", std::string("budget: ") + e.what());
        return r;
    }

    // Nat(Y X, G) per presheaf, the nerve K G, and the Yoneda element positions.
    std::vector<std::vector<NatSet>> ny(gs.size());
    std::vector<SetFunctor> kg;
    std::vector<std::vector<std::vector<Elem>>> yon(gs.size());
    LawCheck yg("yoneda-count-presheaves");
    for (std::size_t g = 0; g < gs.size(); ++g) {
        for (Obj x = 0; x < n; ++x) ny[g].emplace_back(y[x], gs[g]);
        for (Obj x = 0; x < n; ++x) {
            yg.expect(ny[g][x].size() == gs[g].at(x), [&] { return json{{"G", g}, {"X", c.name(x)}}; });
            std::vector<Elem> pos;
            for (Elem a = 0; a < gs[g].at(x); ++a) {
                auto i = ny[g][x].find(yoneda_nat(y[x], gs[g], x, a));
                pos.push_back(i ? *i : 0);
            }
            yon[g].push_back(std::move(pos));
        }
        std::vector<std::size_t> obj(n);
        for (Obj x = 0; x < n; ++x) obj[x] = ny[g][x].size();
        // A base arrow h : X2 -> X sends theta : Y X => G to theta . Y h.
        kg.push_back(make_set_functor(
            opc, std::move(obj),
            [&](Obj x, Obj x2, Elem h) {
                NatTrans yh = yoneda_map(c, y[x2], y[x], x2, x, h);
                std::vector<Elem> tab;
                for (const auto& theta : ny[g][x].nats) tab.push_back(ny[g][x2].find(vertical(theta, yh)).value_or(0));
                return FinFn(ny[g][x2].size(), std::move(tab));
            },
            "K(" + gs[g].name() + ")"));
    }
    r.add(yg, json{{"presheaves", gs.size()}});

    // K^-1 alpha = lambda a. alpha (lambda f. G f a) id.
    LawCheck kf("k-functor");
    LawCheck kl("k-inverse-left");
    LawCheck kn("k-inverse-natural");
    LawCheck kr("k-inverse-right");
    try {
        for (std::size_t g = 0; g < gs.size(); ++g) {
            kf.expect(check_functor(kg[g]).ok(), [&] { return json{{"G", g}}; });
            for (std::size_t h = 0; h < gs.size(); ++h) {
                auto k_of = [&](const NatTrans& tau) {
                    NatTrans kt{kg[g], kg[h], {}};
                    for (Obj x = 0; x < n; ++x) {
                        std::vector<Elem> tab;
                        for (const auto& theta : ny[g][x].nats) tab.push_back(ny[h][x].find(vertical(tau, theta)).value_or(0));
                        kt.comp.emplace_back(ny[h][x].size(), std::move(tab));
                    }
                    return kt;
                };
                auto k_inv = [&](const NatTrans& alpha) {
                    NatTrans t{gs[g], gs[h], {}};
                    for (Obj x = 0; x < n; ++x) {
                        std::vector<Elem> tab;
                        for (Elem a = 0; a < gs[g].at(x); ++a)
                            tab.push_back(ny[h][x].nats[alpha.at(x)(yon[g][x][a])].at(x)(c.id(x)));
                        t.comp.emplace_back(gs[h].at(x), std::move(tab));
                    }
                    return t;
                };
                for (const auto& tau : functor_category_homs(gs[g], gs[h]))
                    kl.expect(k_inv(k_of(tau)) == tau,
                              [&] { return json{{"G", g}, {"H", h}, {"tau", nat_json(tau)}}; });
                for (const auto& alpha : functor_category_homs(kg[g], kg[h])) {
                    NatTrans t = k_inv(alpha);
                    bool natural = check_nat(t).ok();
                    kn.expect(natural, [&] { return json{{"G", g}, {"H", h}, {"alpha", nat_json(alpha)}}; });
                    kr.expect(natural && k_of(t) == alpha,
                              [&] { return json{{"G", g}, {"H", h}, {"alpha", nat_json(alpha)}}; });
                }
            }
        }
    } catch (const EnumerationOverflow& e) {
        r.skip("k-inverse", std::string("budget: ") + e.what());
    }
    r.add(kf);
    r.add(kl);
    r.add(kn);
    r.add(kr);

    // L condition, pointwise.
    std::vector<PresheafFamily> families{yoneda_family(c, y)};
    for (const auto& g : gs) families.push_back(constant_family(c, g));
    LawCheck lw("l-welldefined");
    LawCheck ln("l-natural");
    LawCheck lb("l-bijective");
    LawCheck lf("lan-presheaf");
    try {
        for (const auto& fam : families)
            for (std::size_t h = 0; h < gs.size(); ++h) {
                const std::vector<NatSet>& a = ny[h];
                auto pre = precompose_tables(c, y, a);
                std::vector<std::size_t> asz(n);
                for (Obj w = 0; w < n; ++w) asz[w] = a[w].size();
                // (Lan_Y F H) Z = coend of Nat(Y W, H) x F W Z.
                std::vector<Quotient> lan;
                for (Obj z = 0; z < n; ++z) {
                    std::vector<std::size_t> bsz(n);
                    for (Obj w = 0; w < n; ++w) bsz[w] = fam.at[w].at(z);
                    lan.push_back(quotient(asz, bsz, [&](auto unite, const Quotient& q) {
                        for (Obj w = 0; w < n; ++w)
                            for (Obj w2 = 0; w2 < n; ++w2)
                                for (Elem hh = 0; hh < c.hom(w, w2); ++hh) {
                                    const FinFn& fz = fam.map[w * n + w2][hh].at(z);
                                    for (std::size_t a2 = 0; a2 < asz[w2]; ++a2)
                                        for (Elem e = 0; e < bsz[w]; ++e)
                                            unite(q.raw(w, pre[w * n + w2][hh][a2], e), q.raw(w2, a2, fz(e)));
                                }
                    }));
                }
                std::vector<std::size_t> lobj(n);
                for (Obj z = 0; z < n; ++z) lobj[z] = lan[z].size();
                bool welldef = true;
                SetFunctor lanf = make_set_functor(opc, lobj, [&](Obj z, Obj z2, Elem g) {
                    std::vector<Elem> tab(lan[z].size(), 0);
                    std::vector<char> set(tab.size(), 0);
                    for (Obj w = 0; w < n; ++w)
                        for (std::size_t aa = 0; aa < asz[w]; ++aa)
                            for (Elem e = 0; e < fam.at[w].at(z); ++e) {
                                Elem from = lan[z].of(w, aa, e);
                                Elem to = lan[z2].of(w, aa, fam.at[w].map(z, z2, g)(e));
                                if (set[from] && tab[from] != to) welldef = false;
                                tab[from] = to;
                                set[from] = 1;
                            }
                    return FinFn(lan[z2].size(), std::move(tab));
                });
                lf.expect(welldef && check_functor(lanf).ok(), [&] { return json{{"F", fam.name}, {"H", h}}; });
                if (!welldef) continue;
                for (Obj x = 0; x < n; ++x) {
                    // Domain: coend of Nat(Y W, H) x Nat(Y X, F W).
                    std::vector<NatSet> nf;
                    for (Obj w = 0; w < n; ++w) nf.emplace_back(y[x], fam.at[w]);
                    std::vector<std::size_t> bsz(n);
                    for (Obj w = 0; w < n; ++w) bsz[w] = nf[w].size();
                    Quotient dom = quotient(asz, bsz, [&](auto unite, const Quotient& q) {
                        for (Obj w = 0; w < n; ++w)
                            for (Obj w2 = 0; w2 < n; ++w2)
                                for (Elem hh = 0; hh < c.hom(w, w2); ++hh)
                                    for (std::size_t e = 0; e < bsz[w]; ++e) {
                                        auto e2 = nf[w2].find(vertical(fam.map[w * n + w2][hh], nf[w].nats[e]));
                                        if (!e2) throw ShapeError("yoneda check: F h . e is not natural");
                                        for (std::size_t a2 = 0; a2 < asz[w2]; ++a2)
                                            unite(q.raw(w, pre[w * n + w2][hh][a2], e), q.raw(w2, a2, *e2));
                                    }
                    });
                    NatSet target(y[x], lanf);
                    // L (W, a, e) = lambda f. [W, a, e f] at each Z.
                    std::vector<std::optional<std::vector<Elem>>> image(dom.size());
                    bool ok_def = true, ok_nat = true;
                    for (Obj w = 0; w < n; ++w)
                        for (std::size_t aa = 0; aa < asz[w]; ++aa)
                            for (std::size_t e = 0; e < bsz[w]; ++e) {
                                NatTrans l{y[x], lanf, {}};
                                for (Obj z = 0; z < n; ++z) {
                                    std::vector<Elem> tab(y[x].at(z));
                                    for (Elem f = 0; f < tab.size(); ++f) tab[f] = lan[z].of(w, aa, nf[w].nats[e].at(z)(f));
                                    l.comp.emplace_back(lan[z].size(), std::move(tab));
                                }
                                Elem k = dom.of(w, aa, e);
                                std::vector<Elem> flat = flatten(l);
                                if (!image[k]) {
                                    image[k] = flat;
                                    if (!check_nat(l).ok()) ok_nat = false;
                                } else if (*image[k] != flat) {
                                    ok_def = false;
                                }
                            }
                    json where{{"F", fam.name}, {"H", h}, {"X", c.name(x)}};
                    lw.expect(ok_def, [&] { return where; });
                    ln.expect(ok_nat, [&] { return where; });
                    std::vector<char> hit(target.size(), 0);
                    bool bij = dom.size() == target.size();
                    for (const auto& im : image) {
                        auto it = target.index.find(*im);
                        if (it == target.index.end() || hit[it->second]) {
                            bij = false;
                            break;
                        }
                        hit[it->second] = 1;
                    }
                    lb.expect(bij, [&] {
                        return json{{"F", fam.name}, {"H", h}, {"X", c.name(x)}, {"domain", dom.size()},
                                    {"target", target.size()}};
                    });
                }
            }
    } catch (const EnumerationOverflow& e) {
        r.skip("l-condition", std::string("budget: ") + e.what());
    }
    r.add(lf, json{{"families", families.size()}});
    r.add(lw);
    r.add(ln);
    r.add(lb);
    return r;
}

// ---------------- Freyd categories ----------------

CatPtr freyd_category(const ArrowData& a) {
    std::size_t n = a.n();
    std::vector<Elem> ids(n);
    for (Obj x = 0; x < n; ++x) ids[x] = a.pure_of(x, x, a.base->id(x));
    return std::make_shared<FinCat>(a.base->names(), a.cells, a.comp, std::move(ids));
}

Report freyd_is_kleisli_check(const ArrowData& a) {
    Report r("freyd-kleisli");
    std::size_t n = a.n();
    try {
        CatPtr fr = freyd_category(a);
        r.merge(check_category(*fr), "freyd");
        PresheafRelMonad t = arrow_to_relmon(a);
        PresheafKleisli kl = presheaf_kleisli(t);
        r.merge(check_category(*kl.cat), "kleisli");
        CatFunctor f{fr, kl.cat, {}, std::vector<std::vector<Elem>>(n * n)};
        LawCheck hom("hom-bijection");
        for (Obj x = 0; x < n; ++x) f.obj.push_back(x);
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) {
                hom.expect(kl.cat->hom(x, y) == a.cell(x, y), [&] {
                    return json{{"X", a.base->name(x)}, {"Y", a.base->name(y)}, {"freyd", a.cell(x, y)},
                                {"kleisli", kl.cat->hom(x, y)}};
                });
                for (Elem q = 0; q < a.cell(x, y); ++q) {
                    auto i = kl.find(x, y, yoneda_nat(t.yoneda[x], t.t[y], x, q));
                    hom.expect(i.has_value(), [&] { return json{{"X", a.base->name(x)}, {"Y", a.base->name(y)}, {"r", q}}; });
                    f.arrows[x * n + y].push_back(i.value_or(0));
                }
            }
        r.add(hom);
        if (hom.failed()) return r;
        r.merge(check_cat_functor(f), "comparison");
        r.expect("isomorphism", is_isomorphism(f));
    } catch (const EnumerationOverflow& e) {
        r.skip("freyd-kleisli", std::string("budget: ") + e.what());
    }
    return r;
}

}  // namespace relmon
