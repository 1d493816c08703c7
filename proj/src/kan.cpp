#include "relmon/kan.hpp"

#include <algorithm>
#include <numeric>

namespace relmon {

json to_json(const CoendElement& e) { return json{{"z", e.z}, {"g", e.g.table()}, {"x", e.x}}; }

namespace {

std::uint64_t find(std::vector<std::uint32_t>& parent, std::uint64_t a) {
    while (parent[a] != a) {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    return a;
}

void unite(std::vector<std::uint32_t>& parent, std::uint64_t a, std::uint64_t b) {
    a = find(parent, a);
    b = find(parent, b);
    if (a == b) return;
    if (a < b)
        parent[b] = static_cast<std::uint32_t>(a);
    else
        parent[a] = static_cast<std::uint32_t>(b);
}

// g . m on function indices, where g: B -> X is given by its index and m: A -> B as a table.
std::uint64_t precompose_table(std::uint64_t g, std::size_t x, std::size_t b, const FinFn& m,
                               std::vector<Elem>& gd, std::vector<Elem>& out) {
    gd.resize(b);
    out.resize(m.dom());
    if (b > 0) decode_tuple(g, x, gd);
    for (std::size_t i = 0; i < m.dom(); ++i) out[i] = gd[m(static_cast<Elem>(i))];
    return encode_tuple(out, x);
}

// m . g on function indices, for g: A -> X (index) and m: X -> Y.
std::uint64_t postcompose_index(std::uint64_t g, std::size_t a, const FinFn& m, std::vector<Elem>& digits) {
    digits.resize(a);
    if (a > 0) decode_tuple(g, m.dom(), digits);
    for (auto& d : digits) d = m(d);
    return encode_tuple(digits, m.cod());
}

}  // namespace

std::uint64_t precompose_index(const SetFunctor& j, std::size_t x, const Arrow& h, std::uint64_t g) {
    std::vector<Elem> gd, out;
    return precompose_table(g, x, j.at(h.tgt), j.map(h), gd, out);
}

LanObject::LanObject(SetFunctor j, SetFunctor f, std::size_t x) : j_(std::move(j)), f_(std::move(f)), x_(x) {
    if (!same_category(j_.src(), f_.src())) throw ShapeError("lan_object: J and F have different sources");
    const FinCat& c = *j_.src();
    std::size_t n = c.size();
    const std::uint64_t limit = budget();
    gcount_.resize(n);
    offset_.assign(n + 1, 0);
    for (Obj z = 0; z < n; ++z) {
        gcount_[z] = fn_count(j_.at(z), x_);
        std::uint64_t block = f_.at(z) == 0 ? 0 : checked_mul(gcount_[z], f_.at(z), limit);
        offset_[z + 1] = offset_[z] + block;
        if (offset_[z + 1] > limit)
            throw EnumerationOverflow(offset_[z + 1], limit, "lan_object: coend elements exceed budget");
    }
    std::uint64_t total = offset_[n];
    std::vector<std::uint32_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0u);
    std::vector<Elem> gd, out;
    for (const Arrow& h : c.generators()) {
        Obj z = h.src, w = h.tgt;
        std::size_t fz = f_.at(z), fw = f_.at(w);
        if (fz == 0) continue;
        const FinFn& fh = f_.map(h);
        const FinFn& jh = j_.map(h);
        for (std::uint64_t g = 0; g < gcount_[w]; ++g) {
            std::uint64_t gz = precompose_table(g, x_, j_.at(w), jh, gd, out);
            for (Elem e = 0; e < fz; ++e) unite(parent, offset_[z] + gz * fz + e, offset_[w] + g * fw + fh(e));
        }
    }
    cls_.resize(total);
    std::vector<Elem> number(total, 0);
    Obj z = 0;
    for (std::uint64_t id = 0; id < total; ++id) {
        std::uint64_t r = find(parent, id);
        if (r == id) {
            while (offset_[z + 1] <= id) ++z;
            std::uint64_t local = id - offset_[z];
            number[id] = static_cast<Elem>(reps_.size());
            reps_.push_back(Raw{z, local / f_.at(z), static_cast<Elem>(local % f_.at(z))});
        }
        cls_[id] = number[r];
    }
}

Elem LanObject::class_of(Obj z, const FinFn& g, Elem x) const {
    if (g.dom() != j_.at(z) || g.cod() != x_)
        throw ShapeError("class_of: map " + to_string(g) + " is not of shape J z -> X");
    if (x >= f_.at(z)) throw ShapeError("class_of: point out of range");
    return class_of_index(z, fn_index(g), x);
}

CoendElement LanObject::rep(Elem c) const {
    const Raw& r = reps_[c];
    return CoendElement{r.z, fn_from_index(r.g, j_.at(r.z), x_), r.x};
}

FinFn LanObject::iota(Obj z, const FinFn& g) const {
    if (g.dom() != j_.at(z) || g.cod() != x_)
        throw ShapeError("iota: map " + to_string(g) + " is not of shape J z -> X");
    return iota_index(z, fn_index(g));
}

FinFn LanObject::iota_index(Obj z, std::uint64_t g) const {
    std::vector<Elem> t(f_.at(z));
    for (Elem e = 0; e < t.size(); ++e) t[e] = class_of_index(z, g, e);
    return FinFn(size(), std::move(t));
}

Report LanObject::check_quotient() const {
    Report r("lan-quotient");
    LawCheck lc("generator-soundness");
    const FinCat& c = *j_.src();
    std::vector<Elem> gd, out;
    for (Obj z = 0; z < c.size(); ++z)
        for (Obj w = 0; w < c.size(); ++w)
            for (Elem i = 0; i < c.hom(z, w); ++i) {
                const FinFn& fh = f_.map(z, w, i);
                const FinFn& jh = j_.map(z, w, i);
                for (std::uint64_t g = 0; g < gcount_[w]; ++g) {
                    std::uint64_t gz = precompose_table(g, x_, j_.at(w), jh, gd, out);
                    for (Elem e = 0; e < f_.at(z); ++e)
                        lc.expect(class_of_index(z, gz, e) == class_of_index(w, g, fh(e)), [&] {
                            return json{{"h", to_json(Arrow{z, w, i})}, {"g", g}, {"x", e}};
                        });
                }
            }
    r.add(lc);
    LawCheck reps("rep-section");
    for (Elem k = 0; k < size(); ++k)
        reps.expect(class_of_index(reps_[k].z, reps_[k].g, reps_[k].x) == k, [&] { return json{{"class", k}}; });
    r.add(reps);
    return r;
}

LanPtr lan_object(const SetFunctor& j, const SetFunctor& f, std::size_t x) {
    return std::make_shared<const LanObject>(j, f, x);
}

FinFn lan_factorize(const LanObject& lan, const LanFamily& theta, std::size_t y) {
    const FinCat& c = *lan.J().src();
    std::size_t n = c.size();
    std::vector<std::vector<FinFn>> memo(n);
    for (Obj z = 0; z < n; ++z) {
        memo[z].reserve(lan.fn_space(z));
        for (std::uint64_t g = 0; g < lan.fn_space(z); ++g) {
            FinFn v = theta(z, fn_from_index(g, lan.J().at(z), lan.X()));
            if (v.dom() != lan.F().at(z) || v.cod() != y)
                throw ShapeError("lan_factorize: family component has the wrong shape");
            memo[z].push_back(std::move(v));
        }
    }
    std::vector<Elem> gd, out;
    for (const Arrow& h : c.generators()) {
        const FinFn& fh = lan.F().map(h);
        const FinFn& jh = lan.J().map(h);
        for (std::uint64_t g = 0; g < lan.fn_space(h.tgt); ++g) {
            std::uint64_t gz = precompose_table(g, lan.X(), lan.J().at(h.tgt), jh, gd, out);
            if (memo[h.src][gz] != compose(memo[h.tgt][g], fh)) {
                throw FactorizeError("lan_factorize: family is not natural",
                                     json{{"generator", to_json(h)},
                                          {"g", fn_from_index(g, lan.J().at(h.tgt), lan.X()).table()}});
            }
        }
    }
    std::vector<Elem> t(lan.size());
    for (Elem k = 0; k < lan.size(); ++k) t[k] = memo[lan.rep_object(k)][lan.rep_fn_index(k)](lan.rep_point(k));
    for (Obj z = 0; z < n; ++z)
        for (std::uint64_t g = 0; g < lan.fn_space(z); ++g)
            for (Elem e = 0; e < lan.F().at(z); ++e)
                if (memo[z][g](e) != t[lan.class_of_index(z, g, e)])
                    throw FactorizeError("lan_factorize: family is inconsistent on a class",
                                         json{{"z", z}, {"g", g}, {"x", e}});
    return FinFn(y, std::move(t));
}

FinFn lan_factorize_unchecked(const LanObject& lan, const LanFamily& theta, std::size_t y) {
    std::map<std::pair<Obj, std::uint64_t>, FinFn> memo;
    std::vector<Elem> t(lan.size());
    for (Elem k = 0; k < lan.size(); ++k) {
        auto key = std::make_pair(lan.rep_object(k), lan.rep_fn_index(k));
        auto it = memo.find(key);
        if (it == memo.end())
            it = memo.emplace(key, theta(key.first, fn_from_index(key.second, lan.J().at(key.first), lan.X())))
                     .first;
        t[k] = it->second(lan.rep_point(k));
    }
    return FinFn(y, std::move(t));
}

Kan::Kan(SetFunctor j) : j_(std::move(j)) {}

LanPtr Kan::lan(const SetFunctor& f, std::size_t x) const {
    auto key = std::make_pair(f.uid(), x);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = lans_.find(key);
        if (it != lans_.end()) return it->second;
    }
    LanPtr l = lan_object(j_, f, x);
    std::lock_guard<std::mutex> lock(mu_);
    return lans_.emplace(key, l).first->second;
}

FinFn Kan::lan_map(const SetFunctor& f, const FinFn& m) const {
    LanPtr src = lan(f, m.dom());
    LanPtr tgt = lan(f, m.cod());
    std::vector<Elem> t(src->size());
    std::vector<Elem> digits;
    for (Elem k = 0; k < src->size(); ++k) {
        Obj z = src->rep_object(k);
        std::uint64_t g = postcompose_index(src->rep_fn_index(k), j_.at(z), m, digits);
        t[k] = tgt->class_of_index(z, g, src->rep_point(k));
    }
    return FinFn(tgt->size(), std::move(t));
}

FinFn Kan::lan_nat(const NatTrans& tau, std::size_t x) const {
    LanPtr src = lan(tau.src, x);
    LanPtr tgt = lan(tau.tgt, x);
    std::vector<Elem> t(src->size());
    for (Elem k = 0; k < src->size(); ++k) {
        Obj z = src->rep_object(k);
        t[k] = tgt->class_of_index(z, src->rep_fn_index(k), tau.comp[z](src->rep_point(k)));
    }
    return FinFn(tgt->size(), std::move(t));
}

FinFn Kan::rho(const SetFunctor& f, Obj x) const {
    LanPtr l = lan(f, j_.at(x));
    std::uint64_t id = fn_index(FinFn::identity(j_.at(x)));
    return l->iota_index(x, id);
}

FinFn Kan::lambda_bar(std::size_t x) const {
    LanPtr l = lan(j_, x);
    std::vector<Elem> t(l->size());
    std::vector<Elem> digits;
    for (Elem k = 0; k < l->size(); ++k) {
        Obj z = l->rep_object(k);
        digits.resize(j_.at(z));
        decode_tuple(l->rep_fn_index(k), x, digits);
        t[k] = digits[l->rep_point(k)];
    }
    return FinFn(x, std::move(t));
}

FinFn Kan::alpha_bar(const SetFunctor& f, const SetFunctor& g, std::size_t x) const {
    SetFunctor fg = tensor(f, g);
    LanPtr src = lan(fg, x);
    LanPtr lg = lan(g, x);
    LanPtr tgt = lan(f, lg->size());
    std::vector<Elem> t(src->size());
    std::vector<Elem> digits;
    for (Elem k = 0; k < src->size(); ++k) {
        Obj z = src->rep_object(k);
        FinFn iota_g = lg->iota_index(z, src->rep_fn_index(k));  // G z -> Lan G X
        LanPtr inner = lan(f, g.at(z));                           // Lan F (G z)
        Elem e = src->rep_point(k);
        Obj w = inner->rep_object(e);
        std::uint64_t gg = postcompose_index(inner->rep_fn_index(e), j_.at(w), iota_g, digits);
        t[k] = tgt->class_of_index(w, gg, inner->rep_point(e));
    }
    return FinFn(tgt->size(), std::move(t));
}

SetFunctor Kan::tensor(const SetFunctor& f, const SetFunctor& g) const {
    auto key = std::make_pair(f.uid(), g.uid());
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = tensors_.find(key);
        if (it != tensors_.end()) return it->second;
    }
    SetFunctor t = lan_after(f, g);
    std::lock_guard<std::mutex> lock(mu_);
    return tensors_.emplace(key, t).first->second;
}

SetFunctor Kan::lan_after(const SetFunctor& f, const SetFunctor& h) const {
    const CatPtr& c = h.src();
    std::vector<std::size_t> obj(c->size());
    for (Obj z = 0; z < c->size(); ++z) obj[z] = lan(f, h.at(z))->size();
    return make_set_functor(
        c, std::move(obj), [&](Obj x, Obj y, Elem i) { return lan_map(f, h.map(x, y, i)); },
        "(" + f.name() + "." + h.name() + ")");
}

NatTrans Kan::rho_nat(const SetFunctor& f) const {
    NatTrans t{f, tensor(f, j_), {}};
    for (Obj z = 0; z < base()->size(); ++z) t.comp.push_back(rho(f, z));
    return t;
}

NatTrans Kan::lambda_nat(const SetFunctor& f) const {
    NatTrans t{tensor(j_, f), f, {}};
    for (Obj z = 0; z < base()->size(); ++z) t.comp.push_back(lambda_bar(f.at(z)));
    return t;
}

NatTrans Kan::alpha_nat(const SetFunctor& f, const SetFunctor& g, const SetFunctor& h) const {
    NatTrans t{tensor(tensor(f, g), h), tensor(f, tensor(g, h)), {}};
    for (Obj z = 0; z < base()->size(); ++z) t.comp.push_back(alpha_bar(f, g, h.at(z)));
    return t;
}

NatTrans Kan::whisker_left(const SetFunctor& f, const NatTrans& tau) const {
    NatTrans t{tensor(f, tau.src), tensor(f, tau.tgt), {}};
    for (Obj z = 0; z < base()->size(); ++z) t.comp.push_back(lan_map(f, tau.comp[z]));
    return t;
}

NatTrans Kan::whisker_right(const NatTrans& tau, const SetFunctor& g) const {
    NatTrans t{tensor(tau.src, g), tensor(tau.tgt, g), {}};
    for (Obj z = 0; z < base()->size(); ++z) t.comp.push_back(lan_nat(tau, g.at(z)));
    return t;
}

StructureMaps structure_maps(const Kan& kan, const SetFunctor& f, const SetFunctor& g, Obj x) {
    std::size_t jx = kan.J().at(x);
    return StructureMaps{kan.rho(f, x), kan.lambda_bar(jx), kan.alpha_bar(f, g, jx)};
}

json bijection_failure(const FinFn& f) {
    std::vector<long> pre(f.cod(), -1);
    for (Elem i = 0; i < f.dom(); ++i) {
        Elem y = f(i);
        if (pre[y] >= 0) return json{{"kind", "not-injective"}, {"x1", pre[y]}, {"x2", i}, {"image", y}};
        pre[y] = i;
    }
    for (Elem y = 0; y < f.cod(); ++y)
        if (pre[y] < 0) return json{{"kind", "not-surjective"}, {"missing", y}};
    return nullptr;
}

namespace {

json diff_witness(const FinFn& a, const FinFn& b) {
    if (a.dom() != b.dom() || a.cod() != b.cod())
        return json{{"shape", {a.dom(), a.cod(), b.dom(), b.cod()}}};
    for (Elem i = 0; i < a.dom(); ++i)
        if (a(i) != b(i)) return json{{"point", i}, {"lhs", a(i)}, {"rhs", b(i)}};
    return nullptr;
}

void compare(Report& r, const std::string& law, const FinFn& lhs, const FinFn& rhs, const json& where) {
    if (lhs == rhs) {
        r.pass(law, lhs.dom());
    } else {
        json w = diff_witness(lhs, rhs);
        w["at"] = where;
        r.fail(law, w, lhs.dom());
    }
}

}  // namespace

Report skew_coherence_check(const Kan& kan, const SetFunctor& f, const SetFunctor& g, const SetFunctor& h,
                            const SetFunctor& k, Obj x) {
    Report r("skew-coherence");
    const SetFunctor& j = kan.J();
    json where = {{"object", x}, {"F", f.name()}, {"G", g.name()}, {"H", h.name()}, {"K", k.name()}};
    // (a)
    compare(r, "a", compose(kan.lambda_bar(j.at(x)), kan.rho(j, x)), FinFn::identity(j.at(x)), where);
    // (b)
    {
        std::size_t gx = g.at(x);
        FinFn lhs = compose(kan.lan_map(f, kan.lambda_bar(gx)),
                            compose(kan.alpha_bar(f, j, gx), kan.lan_nat(kan.rho_nat(f), gx)));
        compare(r, "b", lhs, FinFn::identity(kan.tensor(f, g).at(x)), where);
    }
    // (c)
    {
        std::size_t gx = g.at(x);
        FinFn lhs = compose(kan.lambda_bar(kan.tensor(f, g).at(x)), kan.alpha_bar(j, f, gx));
        compare(r, "c", lhs, kan.lan_nat(kan.lambda_nat(f), gx), where);
    }
    // (d)
    {
        FinFn lhs = compose(kan.alpha_bar(f, g, j.at(x)), kan.rho(kan.tensor(f, g), x));
        compare(r, "d", lhs, kan.lan_map(f, kan.rho(g, x)), where);
    }
    // (e)
    {
        std::size_t kx = k.at(x);
        FinFn lhs = compose(kan.lan_map(f, kan.alpha_bar(g, h, kx)),
                            compose(kan.alpha_bar(f, kan.tensor(g, h), kx), kan.lan_nat(kan.alpha_nat(f, g, h), kx)));
        FinFn rhs = compose(kan.alpha_bar(f, g, kan.tensor(h, k).at(x)), kan.alpha_bar(kan.tensor(f, g), h, kx));
        compare(r, "e", lhs, rhs, where);
    }
    // Generalized forms at the set J x.
    std::size_t s = j.at(x);
    {
        FinFn lhs = compose(kan.lan_map(f, kan.lambda_bar(s)),
                            compose(kan.alpha_bar(f, j, s), kan.lan_nat(kan.rho_nat(f), s)));
        compare(r, "b-prime", lhs, FinFn::identity(kan.lan(f, s)->size()), where);
    }
    {
        FinFn lhs = compose(kan.lambda_bar(kan.lan(f, s)->size()), kan.alpha_bar(j, f, s));
        compare(r, "c-prime", lhs, kan.lan_nat(kan.lambda_nat(f), s), where);
    }
    {
        FinFn lhs = compose(kan.lan_map(f, kan.alpha_bar(g, h, s)),
                            compose(kan.alpha_bar(f, kan.tensor(g, h), s), kan.lan_nat(kan.alpha_nat(f, g, h), s)));
        FinFn rhs = compose(kan.alpha_bar(f, g, kan.lan(h, s)->size()), kan.alpha_bar(kan.tensor(f, g), h, s));
        compare(r, "e-prime", lhs, rhs, where);
    }
    return r;
}

// ---------------- well-behavedness ----------------

json to_json(const Verdict& v) {
    json j;
    j["status"] = to_string(v.status);
    j["verified"] = v.verified;
    j["out_of_universe"] = v.out_of_universe;
    if (v.offending_size) j["offending_size"] = *v.offending_size;
    if (!v.witness.is_null()) j["witness"] = v.witness;
    if (!v.reason.empty()) j["reason"] = v.reason;
    return j;
}

Report WellBehaved::report() const {
    Report r("wellbehaved");
    auto add = [&](const std::string& name, const Verdict& v) {
        Check c;
        c.law = name;
        c.status = v.status;
        c.count = v.verified;
        c.witness = v.witness;
        c.reason = v.reason;
        c.detail = json{{"out_of_universe", v.out_of_universe}};
        if (v.offending_size) c.detail["offending_size"] = *v.offending_size;
        r.add(std::move(c));
    };
    add("fully-faithful", ff);
    add("dense", dense);
    add("lan-preserving", lan_pres);
    return r;
}

bool is_inclusion(const SetFunctor& j) {
    const FinCat& c = *j.src();
    const auto* sizes = c.concrete();
    if (!sizes || *sizes != j.objects()) return false;
    for (Obj x = 0; x < c.size(); ++x)
        for (Obj y = 0; y < c.size(); ++y)
            for (Elem i = 0; i < c.hom(x, y); ++i)
                if (j.map(x, y, i) != concrete_arrow(c, x, y, i)) return false;
    return true;
}

std::optional<Obj> unit_object(const SetFunctor& j) {
    for (Obj x = 0; x < j.src()->size(); ++x)
        if (j.at(x) == 1) return x;
    return std::nullopt;
}

std::optional<Elem> j_inverse(const SetFunctor& j, Obj x, Obj y, const FinFn& g) {
    const FinCat& c = *j.src();
    for (Elem i = 0; i < c.hom(x, y); ++i)
        if (j.map(x, y, i) == g) return i;
    return std::nullopt;
}

SetFunctor hom_functor(const SetFunctor& j, Obj a, const SetFunctor& f) {
    const CatPtr& c = f.src();
    std::size_t ja = j.at(a);
    std::vector<std::size_t> obj(c->size());
    for (Obj z = 0; z < c->size(); ++z) obj[z] = fn_count(ja, f.at(z));
    return make_set_functor(
        c, obj,
        [&](Obj z, Obj w, Elem i) {
            const FinFn& fh = f.map(z, w, i);
            std::vector<Elem> t(obj[z]);
            std::vector<Elem> digits;
            for (std::uint64_t k = 0; k < obj[z]; ++k) t[k] = static_cast<Elem>(postcompose_index(k, ja, fh, digits));
            return FinFn(obj[w], std::move(t));
        },
        "(J" + c->name(a) + "->" + f.name() + ")");
}

LMap l_map(const Kan& kan, const SetFunctor& f, Obj a, std::size_t y) {
    const SetFunctor& j = kan.J();
    std::size_t ja = j.at(a);
    SetFunctor h = hom_functor(j, a, f);
    LanPtr dom = kan.lan(h, y);
    LanPtr tgt = kan.lan(f, y);
    std::uint64_t cod = fn_count(ja, tgt->size());
    std::vector<Elem> t(dom->size());
    std::vector<Elem> kd(ja), out(ja);
    for (Elem c = 0; c < dom->size(); ++c) {
        Obj z = dom->rep_object(c);
        if (ja > 0) decode_tuple(dom->rep_point(c), f.at(z), kd);
        for (std::size_t i = 0; i < ja; ++i) out[i] = tgt->class_of_index(z, dom->rep_fn_index(c), kd[i]);
        t[c] = static_cast<Elem>(encode_tuple(out, tgt->size()));
    }
    return LMap{dom, tgt, ja, FinFn(cod, std::move(t))};
}

namespace {

struct SigmaElement {
    Obj z;
    std::uint64_t g;
    std::uint64_t k;
};

struct Component {
    Obj z;
    std::uint64_t g;
    Elem x;
};

// (sigma A f0, lambda(a,c). f10 a c, lambda a. F(inj_a)(f11 a)) from chosen components.
SigmaElement sigma_element(const Kan& kan, const SetFunctor& f, const std::vector<Component>& comps, std::size_t y) {
    const SetFunctor& j = kan.J();
    const FinCat& c = *j.src();
    const auto& sizes = *c.concrete();
    std::size_t total = 0;
    for (const auto& p : comps) total += j.at(p.z);
    std::optional<Obj> sigma;
    for (Obj o = 0; o < c.size(); ++o)
        if (sizes[o] == total) sigma = o;
    if (!sigma) throw OutOfUniverse(total, "sigma object of size " + std::to_string(total) + " is not in the universe");
    std::vector<Elem> g(total);
    std::vector<Elem> k(comps.size());
    std::vector<Elem> digits;
    std::size_t off = 0;
    for (std::size_t a = 0; a < comps.size(); ++a) {
        const auto& p = comps[a];
        std::size_t s = j.at(p.z);
        digits.resize(s);
        if (s > 0) decode_tuple(p.g, y, digits);
        std::vector<Elem> inj(s);
        for (std::size_t i = 0; i < s; ++i) {
            g[off + i] = digits[i];
            inj[i] = static_cast<Elem>(off + i);
        }
        Elem arrow = concrete_index(c, FinFn(total, std::move(inj)));
        k[a] = f.map(p.z, *sigma, arrow)(p.x);
        off += s;
    }
    return SigmaElement{*sigma, encode_tuple(g, y), encode_tuple(k, f.at(*sigma))};
}

std::vector<Component> rep_components(const LanObject& tgt, std::uint64_t fn, std::size_t arity) {
    std::vector<Elem> cls(arity);
    if (arity > 0) decode_tuple(fn, tgt.size(), cls);
    std::vector<Component> comps;
    for (Elem c : cls) comps.push_back(Component{tgt.rep_object(c), tgt.rep_fn_index(c), tgt.rep_point(c)});
    return comps;
}

}  // namespace

Elem l_inverse(const Kan& kan, const LMap& l, std::uint64_t fn) {
    if (!is_inclusion(kan.J())) throw PreconditionError("L^-1: J is not the inclusion of a subuniverse");
    const SetFunctor& f = l.target->F();
    auto comps = rep_components(*l.target, fn, l.arity);
    SigmaElement s = sigma_element(kan, f, comps, l.target->X());
    return l.domain->class_of_index(s.z, s.g, static_cast<Elem>(s.k));
}

WellBehaved wellbehaved_check(const SetFunctor& j, const WellBehavedBounds& bounds) {
    WellBehaved wb;
    const CatPtr& c = j.src();
    std::size_t n = c->size();
    Kan kan(j);
    bool inclusion = is_inclusion(j);

    // Fully faithful.
    {
        Verdict& v = wb.ff;
        for (Obj x = 0; x < n && v.status == Status::pass; ++x)
            for (Obj y = 0; y < n && v.status == Status::pass; ++y) {
                for (Elem i = 0; i < c->hom(x, y); ++i) {
                    auto back = j_inverse(j, x, y, j.map(x, y, i));
                    ++v.verified;
                    if (!back || *back != i) {
                        v.status = Status::fail;
                        v.witness = json{{"kind", "not-faithful"}, {"arrow", to_json(Arrow{x, y, i})}};
                        break;
                    }
                }
                if (v.status != Status::pass) break;
                for (const auto& g : enumerate_fns(j.at(x), j.at(y))) {
                    auto back = j_inverse(j, x, y, g);
                    ++v.verified;
                    if (!back || j.map(x, y, *back) != g) {
                        v.status = Status::fail;
                        v.witness = json{{"kind", "not-full"}, {"x", x}, {"y", y}, {"g", g.table()}};
                        break;
                    }
                }
            }
    }

    // Dense: K : (X -> Y) -> Nat(hom(J-, X), hom(J-, Y)).
    {
        Verdict& v = wb.dense;
        CatPtr opc = op_category(c);
        auto nerve = [&](std::size_t x) {
            std::vector<std::size_t> obj(n);
            for (Obj z = 0; z < n; ++z) obj[z] = fn_count(j.at(z), x);
            return make_set_functor(opc, obj, [&](Obj w, Obj z, Elem i) {
                // op-arrow w -> z is a base arrow h: z -> w.
                std::vector<Elem> t(obj[w]);
                for (std::uint64_t g = 0; g < obj[w]; ++g)
                    t[g] = static_cast<Elem>(precompose_index(j, x, Arrow{z, w, i}, g));
                return FinFn(obj[z], std::move(t));
            });
        };
        auto unit = unit_object(j);
        for (std::size_t x = 0; x <= bounds.max_set && v.status == Status::pass; ++x) {
            SetFunctor nx = nerve(x);
            for (std::size_t y = 0; y <= bounds.max_set && v.status == Status::pass; ++y) {
                SetFunctor ny = nerve(y);
                auto k_of = [&](const FinFn& m) {
                    NatTrans t{nx, ny, {}};
                    std::vector<Elem> digits;
                    for (Obj z = 0; z < n; ++z) {
                        std::vector<Elem> tab(nx.at(z));
                        for (std::uint64_t g = 0; g < tab.size(); ++g)
                            tab[g] = static_cast<Elem>(postcompose_index(g, j.at(z), m, digits));
                        t.comp.emplace_back(ny.at(z), std::move(tab));
                    }
                    return t;
                };
                std::vector<NatTrans> taus;
                try {
                    taus = functor_category_homs(nx, ny);
                } catch (const EnumerationOverflow& e) {
                    v.status = Status::skipped;
                    v.reason = "budget";
                    break;
                }
                if (unit) {
                    auto k_inv = [&](const NatTrans& tau) {
                        std::vector<Elem> t(x);
                        for (Elem a = 0; a < x; ++a) t[a] = tau.comp[*unit](a);  // tau(const a)(*)
                        return FinFn(y, std::move(t));
                    };
                    for (const auto& m : enumerate_fns(x, y)) {
                        ++v.verified;
                        if (k_inv(k_of(m)) != m) {
                            v.status = Status::fail;
                            v.witness = json{{"kind", "K-inverse-left"}, {"X", x}, {"Y", y}, {"f", m.table()}};
                            break;
                        }
                    }
                    for (const auto& tau : taus) {
                        if (v.status != Status::pass) break;
                        ++v.verified;
                        if (!(k_of(k_inv(tau)) == tau)) {
                            v.status = Status::fail;
                            json comps = json::array();
                            for (const auto& cpt : tau.comp) comps.push_back(cpt.table());
                            v.witness = json{{"kind", "K-not-surjective"}, {"X", x}, {"Y", y}, {"tau", comps}};
                        }
                    }
                } else {
                    std::vector<NatTrans> image;
                    for (const auto& m : enumerate_fns(x, y)) image.push_back(k_of(m));
                    for (std::size_t a = 0; a < image.size() && v.status == Status::pass; ++a)
                        for (std::size_t b = a + 1; b < image.size(); ++b)
                            if (image[a] == image[b]) {
                                v.status = Status::fail;
                                v.witness = json{{"kind", "K-not-injective"}, {"X", x}, {"Y", y}};
                                break;
                            }
                    for (const auto& tau : taus) {
                        if (v.status != Status::pass) break;
                        ++v.verified;
                        bool hit = std::any_of(image.begin(), image.end(), [&](const NatTrans& t) { return t == tau; });
                        if (!hit) {
                            v.status = Status::fail;
                            json comps = json::array();
                            for (const auto& cpt : tau.comp) comps.push_back(cpt.table());
                            v.witness = json{{"kind", "K-not-surjective"}, {"X", x}, {"Y", y}, {"tau", comps}};
                        }
                    }
                }
            }
        }
    }

    // Nerve preserves Lan: L^F_{A,Y} is invertible.
    {
        Verdict& v = wb.lan_pres;
        std::vector<SetFunctor> fs = bounds.functors;
        if (fs.empty()) {
            fs.push_back(j);
            fs.push_back(constant_functor(c, 1));
            fs.push_back(constant_functor(c, 2));
        }
        for (const auto& f : fs) {
            for (Obj a = 0; a < n && v.status != Status::fail; ++a)
                for (std::size_t y = 0; y <= bounds.max_set && v.status != Status::fail; ++y) {
                    LMap l;
                    try {
                        l = l_map(kan, f, a, y);
                    } catch (const EnumerationOverflow&) {
                        continue;
                    }
                    if (!inclusion) {
                        ++v.verified;
                        json w = bijection_failure(l.table);
                        if (!w.is_null()) {
                            v.status = Status::fail;
                            v.witness = json{{"F", f.name()}, {"A", a}, {"Y", y}, {"L", w}};
                        }
                        continue;
                    }
                    std::vector<std::optional<Elem>> inv(l.table.cod());
                    for (std::uint64_t fn = 0; fn < l.table.cod(); ++fn) {
                        try {
                            inv[fn] = l_inverse(kan, l, fn);
                        } catch (const OutOfUniverse& e) {
                            ++v.out_of_universe;
                            if (!v.offending_size || e.size < *v.offending_size) v.offending_size = e.size;
                            continue;
                        }
                        ++v.verified;
                        if (l.table(*inv[fn]) != fn) {
                            v.status = Status::fail;
                            v.witness = json{{"kind", "L-after-Linv"}, {"F", f.name()}, {"A", a}, {"Y", y}, {"fn", fn}};
                            break;
                        }
                    }
                    for (Elem e = 0; e < l.table.dom() && v.status != Status::fail; ++e) {
                        const auto& back = inv[l.table(e)];
                        if (!back) continue;
                        ++v.verified;
                        if (*back != e) {
                            v.status = Status::fail;
                            v.witness = json{{"kind", "Linv-after-L"}, {"F", f.name()}, {"A", a}, {"Y", y}, {"class", e}};
                        }
                    }
                    // Class respect: varying any one component over its whole class leaves the result fixed.
                    if (v.status == Status::fail) break;
                    const LanObject& tgt = *l.target;
                    std::vector<std::vector<Component>> members(tgt.size());
                    for (Obj z = 0; z < n; ++z)
                        for (std::uint64_t g = 0; g < tgt.fn_space(z); ++g)
                            for (Elem x = 0; x < f.at(z); ++x)
                                members[tgt.class_of_index(z, g, x)].push_back(Component{z, g, x});
                    for (std::uint64_t fn = 0; fn < l.table.cod() && v.status != Status::fail; ++fn) {
                        if (!inv[fn]) continue;
                        auto comps = rep_components(tgt, fn, l.arity);
                        for (std::size_t i = 0; i < comps.size() && v.status != Status::fail; ++i) {
                            Elem cls = tgt.class_of_index(comps[i].z, comps[i].g, comps[i].x);
                            for (const auto& m : members[cls]) {
                                auto varied = comps;
                                varied[i] = m;
                                SigmaElement s;
                                try {
                                    s = sigma_element(kan, f, varied, y);
                                } catch (const OutOfUniverse&) {
                                    continue;
                                }
                                ++v.verified;
                                if (l.domain->class_of_index(s.z, s.g, static_cast<Elem>(s.k)) != *inv[fn]) {
                                    v.status = Status::fail;
                                    v.witness = json{{"kind", "Linv-class-respect"}, {"F", f.name()}, {"fn", fn}};
                                    break;
                                }
                            }
                        }
                    }
                }
        }
        if (v.status == Status::pass && v.verified == 0 && v.out_of_universe > 0) {
            v.status = Status::skipped;
            v.reason = "out-of-universe";
        }
    }
    return wb;
}

FinFn rho_inverse(const Kan& kan, const SetFunctor& f, Obj x) {
    const SetFunctor& j = kan.J();
    LanPtr l = kan.lan(f, j.at(x));
    std::vector<Elem> t(l->size());
    for (Elem k = 0; k < l->size(); ++k) {
        CoendElement e = l->rep(k);
        auto back = j_inverse(j, e.z, x, e.g);
        if (!back) throw PreconditionError("rho^-1: J is not full (no preimage for " + to_string(e.g) + ")");
        t[k] = f.map(e.z, x, *back)(e.x);
    }
    return FinFn(f.at(x), std::move(t));
}

FinFn lambda_bar_inverse(const Kan& kan, std::size_t x) {
    auto u = unit_object(kan.J());
    if (!u) throw PreconditionError("lambda-bar^-1: no one-element object in the universe");
    LanPtr l = kan.lan(kan.J(), x);
    std::vector<Elem> t(x);
    for (Elem a = 0; a < x; ++a) t[a] = l->class_of_index(*u, a, 0);
    return FinFn(l->size(), std::move(t));
}

FinFn alpha_bar_inverse(const Kan& kan, const SetFunctor& f, const SetFunctor& g, std::size_t x) {
    if (!is_inclusion(kan.J())) throw PreconditionError("alpha-bar^-1: J is not the inclusion of a subuniverse");
    const SetFunctor& j = kan.J();
    LanPtr lg = kan.lan(g, x);
    LanPtr src = kan.lan(f, lg->size());          // Lan F (Lan G X)
    LanPtr tgt = kan.lan(kan.tensor(f, g), x);    // Lan (F.G) X
    std::vector<Elem> t(src->size());
    for (Elem k = 0; k < src->size(); ++k) {
        Obj z = src->rep_object(k);
        auto comps = rep_components(*lg, src->rep_fn_index(k), j.at(z));
        SigmaElement s = sigma_element(kan, g, comps, x);
        LanPtr inner = kan.lan(f, g.at(s.z));   // Lan F (G sigma)
        Elem e = inner->class_of_index(z, s.k, src->rep_point(k));
        t[k] = tgt->class_of_index(s.z, s.g, e);
    }
    return FinFn(tgt->size(), std::move(t));
}

IsoInverses iso_inverses(const Kan& kan, const SetFunctor& f, const SetFunctor& g, Obj x) {
    std::size_t jx = kan.J().at(x);
    return IsoInverses{rho_inverse(kan, f, x), lambda_bar_inverse(kan, jx), alpha_bar_inverse(kan, f, g, jx)};
}

}  // namespace relmon
