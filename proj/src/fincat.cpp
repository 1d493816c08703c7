#include "relmon/fincat.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>

namespace relmon {

namespace {
std::atomic<std::uint64_t> g_next_uid{1};
}

json to_json(const Arrow& a) { return json{{"src", a.src}, {"tgt", a.tgt}, {"index", a.index}}; }

struct FinCat::Lazy {
    std::once_flag once;
    std::vector<Arrow> generators;
};

FinCat::FinCat(std::vector<std::string> names, std::vector<std::size_t> hom_sizes,
               std::vector<std::vector<Elem>> comp, std::vector<Elem> ids)
    : names_(std::move(names)), hom_(std::move(hom_sizes)), comp_(std::move(comp)), ids_(std::move(ids)),
      lazy_(std::make_shared<Lazy>()) {
    std::size_t n = names_.size();
    if (hom_.size() != n * n || comp_.size() != n * n * n || ids_.size() != n)
        throw ShapeError("FinCat: table sizes do not match object count");
    for (Obj x = 0; x < n; ++x) {
        if (ids_[x] >= hom(x, x)) throw ShapeError("FinCat: identity of " + names_[x] + " out of range");
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                const auto& t = comp_[(x * n + y) * n + z];
                if (t.size() != hom(y, z) * hom(x, y))
                    throw ShapeError("FinCat: composition table " + names_[x] + "," + names_[y] + "," +
                                     names_[z] + " has wrong size");
                for (Elem e : t)
                    if (e >= hom(x, z)) throw ShapeError("FinCat: composite out of range");
            }
    }
}

std::optional<Obj> FinCat::find(const std::string& name) const {
    for (Obj x = 0; x < names_.size(); ++x)
        if (names_[x] == name) return x;
    return std::nullopt;
}

std::size_t FinCat::arrow_count() const {
    std::size_t n = 0;
    for (auto h : hom_) n += h;
    return n;
}

const std::vector<Arrow>& FinCat::generators() const {
    std::call_once(lazy_->once, [this] {
        std::size_t n = size();
        std::vector<std::vector<char>> in(n * n);
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y) in[x * n + y].assign(hom(x, y), 0);
        std::vector<Arrow> gens;
        std::vector<Arrow> members;
        std::deque<Arrow> queue;
        auto mark = [&](Arrow a) {
            char& m = in[a.src * n + a.tgt][a.index];
            if (!m) {
                m = 1;
                members.push_back(a);
                queue.push_back(a);
            }
        };
        auto drain = [&] {
            while (!queue.empty()) {
                Arrow s = queue.front();
                queue.pop_front();
                for (const Arrow& g : gens)
                    if (g.src == s.tgt) mark(Arrow{s.src, g.tgt, comp(s.src, s.tgt, g.tgt, g.index, s.index)});
            }
        };
        for (Obj x = 0; x < n; ++x) mark(Arrow{x, x, id(x)});
        drain();
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (Elem i = 0; i < hom(x, y); ++i) {
                    if (in[x * n + y][i]) continue;
                    Arrow g{x, y, i};
                    gens.push_back(g);
                    std::vector<Arrow> snapshot = members;
                    mark(g);
                    for (const Arrow& s : snapshot)
                        if (s.tgt == g.src) mark(Arrow{s.src, g.tgt, comp(s.src, s.tgt, g.tgt, g.index, s.index)});
                    drain();
                }
        lazy_->generators = std::move(gens);
    });
    return lazy_->generators;
}

CatPtr subuniverse(const std::vector<std::size_t>& sizes) {
    std::size_t n = sizes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sizes[i] == sizes[j]) throw ShapeError("subuniverse: repeated size " + std::to_string(sizes[i]));
    std::vector<std::string> names;
    for (auto s : sizes) names.push_back(std::to_string(s));
    std::vector<std::size_t> hom(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) hom[x * n + y] = fn_count(sizes[x], sizes[y]);
    std::vector<std::vector<Elem>> comp(n * n * n);
    std::vector<Elem> fd, gd, hd;
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                std::size_t hxy = hom[x * n + y], hyz = hom[y * n + z];
                auto& t = comp[(x * n + y) * n + z];
                t.resize(checked_mul(hxy, hyz, budget()));
                fd.resize(sizes[x]);
                gd.resize(sizes[y]);
                hd.resize(sizes[x]);
                for (Elem g = 0; g < hyz; ++g) {
                    if (sizes[y] > 0) decode_tuple(g, sizes[z], gd);
                    for (Elem f = 0; f < hxy; ++f) {
                        if (sizes[x] > 0) decode_tuple(f, sizes[y], fd);
                        for (std::size_t i = 0; i < sizes[x]; ++i) hd[i] = gd[fd[i]];
                        t[g * hxy + f] = static_cast<Elem>(encode_tuple(hd, sizes[z]));
                    }
                }
            }
    std::vector<Elem> ids(n);
    for (Obj x = 0; x < n; ++x) ids[x] = static_cast<Elem>(fn_index(FinFn::identity(sizes[x])));
    auto c = std::make_shared<FinCat>(std::move(names), std::move(hom), std::move(comp), std::move(ids));
    c->sizes_ = sizes;
    return c;
}

CatPtr fin_skeleton(std::size_t k) {
    if (k > 4) throw PreconditionError("fin_skeleton: k must be at most 4");
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i <= k; ++i) sizes.push_back(i);
    return subuniverse(sizes);
}

CatPtr op_category(const CatPtr& c) {
    std::size_t n = c->size();
    std::vector<std::size_t> hom(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) hom[x * n + y] = c->hom(y, x);
    std::vector<std::vector<Elem>> comp(n * n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z) {
                // op: f: x->y is c-arrow y->x, g: y->z is c-arrow z->y; g.op f = (f . g) in c.
                std::size_t hxy = c->hom(y, x), hyz = c->hom(z, y);
                auto& t = comp[(x * n + y) * n + z];
                t.resize(hxy * hyz);
                for (Elem g = 0; g < hyz; ++g)
                    for (Elem f = 0; f < hxy; ++f) t[g * hxy + f] = c->comp(z, y, x, f, g);
            }
    std::vector<Elem> ids(n);
    for (Obj x = 0; x < n; ++x) ids[x] = c->id(x);
    auto r = std::make_shared<FinCat>(c->names(), std::move(hom), std::move(comp), std::move(ids));
    r->sizes_ = c->sizes_;
    r->opposite_ = !c->opposite_;
    return r;
}

CatPtr discrete_category(const std::vector<std::string>& names) {
    std::vector<std::vector<bool>> leq(names.size(), std::vector<bool>(names.size(), false));
    for (std::size_t i = 0; i < names.size(); ++i) leq[i][i] = true;
    return poset_category(names, leq);
}

CatPtr poset_category(const std::vector<std::string>& names, const std::vector<std::vector<bool>>& leq) {
    std::size_t n = names.size();
    std::vector<std::size_t> hom(n * n);
    for (Obj x = 0; x < n; ++x) {
        if (!leq[x][x]) throw ShapeError("poset_category: relation is not reflexive");
        for (Obj y = 0; y < n; ++y) hom[x * n + y] = leq[x][y] ? 1 : 0;
    }
    std::vector<std::vector<Elem>> comp(n * n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                if (leq[x][y] && leq[y][z]) {
                    if (!leq[x][z]) throw ShapeError("poset_category: relation is not transitive");
                    comp[(x * n + y) * n + z] = {0};
                }
    return std::make_shared<FinCat>(names, std::move(hom), std::move(comp), std::vector<Elem>(n, 0));
}

FinFn concrete_arrow(const FinCat& c, Obj x, Obj y, Elem index) {
    const auto* s = c.concrete();
    if (!s) throw ShapeError("concrete_arrow: category is not a subuniverse of FinSet");
    return fn_from_index(index, (*s)[x], (*s)[y]);
}

Elem concrete_index(const FinCat& c, const FinFn& f) {
    if (!c.concrete()) throw ShapeError("concrete_index: category is not a subuniverse of FinSet");
    return static_cast<Elem>(fn_index(f));
}

bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

Report check_category(const FinCat& c) {
    Report r("category");
    std::size_t n = c.size();
    LawCheck unit("identity");
    LawCheck assoc("associativity");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem f = 0; f < c.hom(x, y); ++f) {
                unit.expect(c.comp(x, y, y, c.id(y), f) == f && c.comp(x, x, y, f, c.id(x)) == f, [&] {
                    return json{{"arrow", to_json(Arrow{x, y, f})}};
                });
            }
    for (Obj w = 0; w < n; ++w)
        for (Obj x = 0; x < n; ++x)
            for (Obj y = 0; y < n; ++y)
                for (Obj z = 0; z < n; ++z)
                    for (Elem f = 0; f < c.hom(w, x); ++f)
                        for (Elem g = 0; g < c.hom(x, y); ++g) {
                            Elem gf = c.comp(w, x, y, g, f);
                            for (Elem h = 0; h < c.hom(y, z); ++h) {
                                Elem hg = c.comp(x, y, z, h, g);
                                assoc.expect(c.comp(w, y, z, h, gf) == c.comp(w, x, z, hg, f), [&] {
                                    return json{{"f", to_json(Arrow{w, x, f})},
                                                {"g", to_json(Arrow{x, y, g})},
                                                {"h", to_json(Arrow{y, z, h})}};
                                });
                            }
                        }
    r.add(unit);
    r.add(assoc);
    return r;
}

SetFunctor::SetFunctor(CatPtr src, std::vector<std::size_t> obj, std::vector<std::vector<FinFn>> arrows,
                       std::string name) {
    std::size_t n = src->size();
    if (obj.size() != n || arrows.size() != n * n) throw ShapeError("SetFunctor: table sizes do not match");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            const auto& v = arrows[x * n + y];
            if (v.size() != src->hom(x, y)) throw ShapeError("SetFunctor: arrow table size mismatch");
            for (const auto& f : v)
                if (f.dom() != obj[x] || f.cod() != obj[y])
                    throw ShapeError("SetFunctor " + name + ": arrow " + src->name(x) + "->" + src->name(y) +
                                     " maps between wrong sets");
        }
    impl_ = std::make_shared<const Impl>(
        Impl{std::move(src), std::move(obj), std::move(arrows), std::move(name), g_next_uid.fetch_add(1)});
}

SetFunctor SetFunctor::renamed(std::string name) const {
    SetFunctor r;
    r.impl_ = std::make_shared<const Impl>(Impl{impl_->src, impl_->obj, impl_->arrows, std::move(name), impl_->uid});
    return r;
}

Report check_functor(const SetFunctor& f) {
    Report r("functor");
    const FinCat& c = *f.src();
    std::size_t n = c.size();
    LawCheck ids("preserves-identity");
    LawCheck comp("preserves-composition");
    for (Obj x = 0; x < n; ++x)
        ids.expect(f.map(x, x, c.id(x)) == FinFn::identity(f.at(x)), [&] { return json{{"object", c.name(x)}}; });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                for (Elem a = 0; a < c.hom(x, y); ++a)
                    for (Elem b = 0; b < c.hom(y, z); ++b) {
                        comp.expect(f.map(x, z, c.comp(x, y, z, b, a)) == compose(f.map(y, z, b), f.map(x, y, a)),
                                    [&] {
                                        return json{{"f", to_json(Arrow{x, y, a})}, {"g", to_json(Arrow{y, z, b})}};
                                    });
                    }
    r.add(ids);
    r.add(comp);
    return r;
}

SetFunctor inclusion_functor(const CatPtr& c) {
    const auto* s = c->concrete();
    if (!s) throw ShapeError("inclusion_functor: category is not a subuniverse of FinSet");
    return make_set_functor(
        c, *s, [&](Obj x, Obj y, Elem i) { return concrete_arrow(*c, x, y, i); }, "J");
}

SetFunctor constant_functor(const CatPtr& c, std::size_t value, std::string name) {
    std::vector<std::size_t> obj(c->size(), value);
    return make_set_functor(
        c, std::move(obj), [&](Obj, Obj, Elem) { return FinFn::identity(value); },
        name.empty() ? "const" + std::to_string(value) : std::move(name));
}

SetFunctor representable(const CatPtr& c, const CatPtr& opc, Obj x) {
    std::size_t n = c->size();
    std::vector<std::size_t> obj(n);
    for (Obj y = 0; y < n; ++y) obj[y] = c->hom(y, x);
    // An op-arrow y -> y' is a c-arrow h: y' -> y acting by f |-> f . h.
    return make_set_functor(
        opc, std::move(obj),
        [&](Obj y, Obj y2, Elem h) {
            std::vector<Elem> t(c->hom(y, x));
            for (Elem f = 0; f < t.size(); ++f) t[f] = c->comp(y2, y, x, f, h);
            return FinFn(c->hom(y2, x), std::move(t));
        },
        "Y(" + c->name(x) + ")");
}

Report check_cat_functor(const CatFunctor& f) {
    Report r("cat-functor");
    const FinCat& c = *f.src;
    const FinCat& d = *f.tgt;
    std::size_t n = c.size();
    LawCheck shape("well-typed");
    LawCheck ids("preserves-identity");
    LawCheck comp("preserves-composition");
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Elem a = 0; a < c.hom(x, y); ++a)
                shape.expect(f.map(x, y, a) < d.hom(f.obj[x], f.obj[y]),
                             [&] { return json{{"arrow", to_json(Arrow{x, y, a})}}; });
    r.add(shape);
    if (shape.failed()) return r;
    for (Obj x = 0; x < n; ++x)
        ids.expect(f.map(x, x, c.id(x)) == d.id(f.obj[x]), [&] { return json{{"object", c.name(x)}}; });
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y)
            for (Obj z = 0; z < n; ++z)
                for (Elem a = 0; a < c.hom(x, y); ++a)
                    for (Elem b = 0; b < c.hom(y, z); ++b) {
                        Elem lhs = f.map(x, z, c.comp(x, y, z, b, a));
                        Elem rhs = d.comp(f.obj[x], f.obj[y], f.obj[z], f.map(y, z, b), f.map(x, y, a));
                        comp.expect(lhs == rhs, [&] {
                            return json{{"f", to_json(Arrow{x, y, a})}, {"g", to_json(Arrow{y, z, b})}};
                        });
                    }
    r.add(ids);
    r.add(comp);
    return r;
}

CatFunctor identity_cat_functor(const CatPtr& c) {
    std::size_t n = c->size();
    CatFunctor f{c, c, std::vector<Obj>(n), std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) {
        f.obj[x] = x;
        for (Obj y = 0; y < n; ++y) {
            auto& v = f.arrows[x * n + y];
            v.resize(c->hom(x, y));
            for (Elem i = 0; i < v.size(); ++i) v[i] = i;
        }
    }
    return f;
}

CatFunctor compose(const CatFunctor& g, const CatFunctor& f) {
    std::size_t n = f.src->size();
    CatFunctor h{f.src, g.tgt, std::vector<Obj>(n), std::vector<std::vector<Elem>>(n * n)};
    for (Obj x = 0; x < n; ++x) {
        h.obj[x] = g.obj[f.obj[x]];
        for (Obj y = 0; y < n; ++y) {
            auto& v = h.arrows[x * n + y];
            v.resize(f.src->hom(x, y));
            for (Elem i = 0; i < v.size(); ++i) v[i] = g.map(f.obj[x], f.obj[y], f.map(x, y, i));
        }
    }
    return h;
}

bool is_isomorphism(const CatFunctor& f) {
    std::size_t n = f.src->size();
    if (f.tgt->size() != n) return false;
    std::vector<char> hit(n, 0);
    for (Obj x = 0; x < n; ++x) {
        if (hit[f.obj[x]]) return false;
        hit[f.obj[x]] = 1;
    }
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            std::size_t m = f.tgt->hom(f.obj[x], f.obj[y]);
            if (m != f.src->hom(x, y)) return false;
            std::vector<char> seen(m, 0);
            for (Elem i = 0; i < f.src->hom(x, y); ++i) {
                Elem j = f.map(x, y, i);
                if (seen[j]) return false;
                seen[j] = 1;
            }
        }
    return true;
}

bool operator==(const CatFunctor& a, const CatFunctor& b) {
    return same_category(a.src, b.src) && same_category(a.tgt, b.tgt) && a.obj == b.obj && a.arrows == b.arrows;
}

Report check_nat(const NatTrans& t) {
    Report r("natural-transformation");
    const FinCat& c = *t.src.src();
    LawCheck shape("components-typed");
    for (Obj x = 0; x < c.size(); ++x)
        shape.expect(t.comp[x].dom() == t.src.at(x) && t.comp[x].cod() == t.tgt.at(x),
                     [&] { return json{{"object", c.name(x)}}; });
    r.add(shape);
    if (shape.failed()) return r;
    LawCheck nat("naturality");
    for (Obj x = 0; x < c.size(); ++x)
        for (Obj y = 0; y < c.size(); ++y)
            for (Elem h = 0; h < c.hom(x, y); ++h)
                nat.expect(compose(t.tgt.map(x, y, h), t.comp[x]) == compose(t.comp[y], t.src.map(x, y, h)),
                           [&] { return json{{"arrow", to_json(Arrow{x, y, h})}}; });
    r.add(nat);
    return r;
}

NatTrans identity_nat(const SetFunctor& f) {
    NatTrans t{f, f, {}};
    for (Obj x = 0; x < f.src()->size(); ++x) t.comp.push_back(FinFn::identity(f.at(x)));
    return t;
}

NatTrans vertical(const NatTrans& b, const NatTrans& a) {
    NatTrans t{a.src, b.tgt, {}};
    for (std::size_t x = 0; x < a.comp.size(); ++x) t.comp.push_back(compose(b.comp[x], a.comp[x]));
    return t;
}

bool operator==(const NatTrans& a, const NatTrans& b) { return a.comp == b.comp; }

std::vector<NatTrans> functor_category_homs(const SetFunctor& f, const SetFunctor& g) {
    const CatPtr& c = f.src();
    if (!same_category(c, g.src())) throw ShapeError("functor_category_homs: functors on different categories");
    std::size_t n = c->size();
    // Points (x, a) with a in F x, in object order.
    std::vector<std::size_t> offset(n + 1, 0);
    for (Obj x = 0; x < n; ++x) offset[x + 1] = offset[x] + f.at(x);
    std::size_t npoints = offset[n];
    for (Obj x = 0; x < n; ++x)
        if (f.at(x) > 0 && g.at(x) == 0) return {};
    // Constraint: G h (v[p]) = v[q] where q = F h p, for generators h: x -> y.
    struct Edge {
        std::size_t other;
        const FinFn* gh;
        bool forward;  // true: this point is the source p
    };
    std::vector<std::vector<Edge>> edges(npoints);
    for (const Arrow& h : c->generators()) {
        const FinFn& fh = f.map(h);
        const FinFn* gh = &g.map(h);
        for (Elem a = 0; a < f.at(h.src); ++a) {
            std::size_t p = offset[h.src] + a;
            std::size_t q = offset[h.tgt] + fh(a);
            edges[p].push_back(Edge{q, gh, true});
            edges[q].push_back(Edge{p, gh, false});
        }
    }
    std::vector<Elem> value(npoints, 0);
    std::vector<char> assigned(npoints, 0);
    std::vector<std::size_t> obj_of(npoints);
    for (Obj x = 0; x < n; ++x)
        for (std::size_t p = offset[x]; p < offset[x + 1]; ++p) obj_of[p] = x;
    std::vector<NatTrans> out;
    std::uint64_t nodes = 0;
    const std::uint64_t limit = budget();
    auto consistent = [&](std::size_t p) {
        for (const Edge& e : edges[p]) {
            if (!assigned[e.other]) continue;
            if (e.forward) {
                if ((*e.gh)(value[p]) != value[e.other]) return false;
            } else {
                if ((*e.gh)(value[e.other]) != value[p]) return false;
            }
        }
        return true;
    };
    auto emit = [&] {
        NatTrans t{f, g, {}};
        for (Obj x = 0; x < n; ++x) {
            std::vector<Elem> tab(value.begin() + offset[x], value.begin() + offset[x + 1]);
            t.comp.emplace_back(g.at(x), std::move(tab));
        }
        out.push_back(std::move(t));
        if (out.size() > limit)
            throw EnumerationOverflow(out.size(), limit, "functor_category_homs: too many natural transformations");
    };
    // Iterative depth-first search over points.
    std::size_t p = 0;
    if (npoints == 0) {
        emit();
        return out;
    }
    value[0] = 0;
    bool descending = true;
    while (true) {
        if (descending) {
            // Try values starting from value[p].
            bool found = false;
            std::size_t range = g.at(obj_of[p]);
            while (value[p] < range) {
                if (++nodes > limit * 16)
                    throw EnumerationOverflow(nodes, limit, "functor_category_homs: search exceeds budget");
                assigned[p] = 1;
                if (consistent(p)) {
                    found = true;
                    break;
                }
                assigned[p] = 0;
                ++value[p];
            }
            if (found) {
                if (p + 1 == npoints) {
                    emit();
                    assigned[p] = 0;
                    ++value[p];
                    continue;
                }
                ++p;
                value[p] = 0;
                continue;
            }
            // Exhausted: backtrack.
            value[p] = 0;
            if (p == 0) break;
            --p;
            assigned[p] = 0;
            ++value[p];
        }
    }
    return out;
}

}  // namespace relmon
