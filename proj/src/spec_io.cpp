#include "relmon/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace relmon {

namespace {

std::string escape(const std::string& key) {
    std::string out;
    for (char ch : key) {
        if (ch == '~')
            out += "~0";
        else if (ch == '/')
            out += "~1";
        else
            out += ch;
    }
    return out;
}

// A value together with its JSON pointer.
class Node {
public:
    Node(const json& v, std::string ptr) : v_(&v), ptr_(std::move(ptr)) {}

    [[noreturn]] void fail(const std::string& msg) const { throw SpecError(ptr_.empty() ? "/" : ptr_, msg); }

    const json& raw() const { return *v_; }
    const std::string& pointer() const { return ptr_; }

    void require_object() const {
        if (!v_->is_object()) fail("expected an object");
    }
    void require_array() const {
        if (!v_->is_array()) fail("expected an array");
    }
    bool has(const std::string& key) const { return v_->is_object() && v_->contains(key); }
    Node at(const std::string& key) const {
        require_object();
        if (!v_->contains(key)) throw SpecError(ptr_ + "/" + escape(key), "missing key");
        return Node((*v_)[key], ptr_ + "/" + escape(key));
    }
    std::optional<Node> get(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return at(key);
    }
    Node at(std::size_t i) const {
        require_array();
        if (i >= v_->size()) fail("index " + std::to_string(i) + " out of range");
        return Node((*v_)[i], ptr_ + "/" + std::to_string(i));
    }
    std::size_t length() const {
        require_array();
        return v_->size();
    }
    Node array_of(std::size_t n) const {
        if (length() != n) fail("expected " + std::to_string(n) + " entries, found " + std::to_string(length()));
        return *this;
    }
    void only(std::initializer_list<const char*> keys) const {
        require_object();
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& item : v_->items())
            if (!allowed.count(item.key())) throw SpecError(ptr_ + "/" + escape(item.key()), "unknown key");
    }
    std::size_t size(std::size_t limit = std::size_t{1} << 24) const {
        if (!v_->is_number_integer() && !v_->is_number_unsigned()) fail("expected a non-negative integer");
        if (v_->is_number_integer() && v_->get<std::int64_t>() < 0) fail("expected a non-negative integer");
        auto u = v_->get<std::uint64_t>();
        if (u > limit) fail("value " + std::to_string(u) + " exceeds " + std::to_string(limit));
        return static_cast<std::size_t>(u);
    }
    Elem below(std::size_t bound) const {
        std::size_t v = size(bound);
        if (v >= bound) fail("index " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
        return static_cast<Elem>(v);
    }
    std::string str() const {
        if (!v_->is_string()) fail("expected a string");
        return v_->get<std::string>();
    }
    bool boolean() const {
        if (!v_->is_boolean()) fail("expected a boolean");
        return v_->get<bool>();
    }
    // A list of n indices, each below bound.
    std::vector<Elem> indices(std::size_t n, std::size_t bound) const {
        array_of(n);
        std::vector<Elem> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = at(i).below(bound);
        return out;
    }
    FinFn table(std::size_t dom, std::size_t cod) const { return FinFn(cod, indices(dom, cod)); }

private:
    const json* v_;
    std::string ptr_;
};

std::vector<std::string> names(const Node& n) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < n.length(); ++i) {
        std::string s = n.at(i).str();
        if (!seen.insert(s).second) n.at(i).fail("duplicate object name");
        out.push_back(s);
    }
    if (out.empty()) n.fail("a category needs at least one object");
    return out;
}

CatPtr load_category(const Node& n) {
    n.require_object();
    if (n.has("builtin")) {
        std::string b = n.at("builtin").str();
        if (b == "fin_skeleton") {
            n.only({"builtin", "k"});
            return fin_skeleton(n.at("k").size(4));
        }
        if (b == "subuniverse") {
            n.only({"builtin", "sizes"});
            Node s = n.at("sizes");
            std::vector<std::size_t> sizes;
            for (std::size_t i = 0; i < s.length(); ++i) sizes.push_back(s.at(i).size(8));
            if (sizes.empty()) s.fail("a subuniverse needs at least one size");
            for (std::size_t i = 1; i < sizes.size(); ++i)
                if (sizes[i] <= sizes[i - 1]) s.at(i).fail("sizes must be strictly increasing");
            return subuniverse(sizes);
        }
        if (b == "discrete") {
            n.only({"builtin", "objects"});
            return discrete_category(names(n.at("objects")));
        }
        if (b == "poset") {
            n.only({"builtin", "objects", "leq"});
            auto obj = names(n.at("objects"));
            Node l = n.at("leq").array_of(obj.size());
            std::vector<std::vector<bool>> leq(obj.size());
            for (std::size_t i = 0; i < obj.size(); ++i) {
                Node row = l.at(i).array_of(obj.size());
                for (std::size_t k = 0; k < obj.size(); ++k) leq[i].push_back(row.at(k).boolean());
                if (!leq[i][i]) row.at(i).fail("leq must be reflexive");
            }
            for (std::size_t a = 0; a < obj.size(); ++a)
                for (std::size_t b2 = 0; b2 < obj.size(); ++b2)
                    for (std::size_t c = 0; c < obj.size(); ++c)
                        if (leq[a][b2] && leq[b2][c] && !leq[a][c]) l.at(a).at(c).fail("leq must be transitive");
            return poset_category(obj, leq);
        }
        n.at("builtin").fail("unknown category builtin '" + b + "'");
    }
    n.only({"objects", "homs", "comp", "ids"});
    auto obj = names(n.at("objects"));
    std::size_t k = obj.size();
    Node h = n.at("homs").array_of(k);
    std::vector<std::size_t> hom(k * k);
    for (std::size_t x = 0; x < k; ++x) {
        Node row = h.at(x).array_of(k);
        for (std::size_t y = 0; y < k; ++y) hom[x * k + y] = row.at(y).size(4096);
    }
    std::vector<Elem> ids(k);
    Node idn = n.at("ids").array_of(k);
    for (std::size_t x = 0; x < k; ++x) ids[x] = idn.at(x).below(hom[x * k + x]);
    Node c = n.at("comp").array_of(k);
    std::vector<std::vector<Elem>> comp(k * k * k);
    for (std::size_t x = 0; x < k; ++x) {
        Node cx = c.at(x).array_of(k);
        for (std::size_t y = 0; y < k; ++y) {
            Node cxy = cx.at(y).array_of(k);
            for (std::size_t z = 0; z < k; ++z)
                comp[(x * k + y) * k + z] = cxy.at(z).indices(hom[x * k + y] * hom[y * k + z], hom[x * k + z]);
        }
    }
    return std::make_shared<FinCat>(obj, std::move(hom), std::move(comp), std::move(ids));
}

SetFunctor load_functor(const Node& n, const CatPtr& c, const std::string& name) {
    n.require_object();
    std::size_t k = c->size();
    if (n.has("builtin")) {
        std::string b = n.at("builtin").str();
        std::optional<SetEndo> e;
        if (b == "inclusion") {
            n.only({"builtin", "of"});
            e = endo_identity();
        } else if (b == "plus_constant") {
            n.only({"builtin", "e", "of"});
            e = endo_plus(n.at("e").size(16));
        } else if (b == "times_constant") {
            n.only({"builtin", "s", "of"});
            e = endo_times(n.at("s").size(16));
        } else if (b == "exp_constant") {
            n.only({"builtin", "s", "of"});
            e = endo_exp(n.at("s").size(4));
        } else if (b == "constant") {
            n.only({"builtin", "value", "of"});
            std::size_t v = n.at("value").size(1 << 16);
            if (!n.has("of")) return constant_functor(c, v, name);
            e = endo_constant(v);
        } else if (b == "powerset") {
            n.only({"builtin", "of"});
            e = endo_powerset();
        } else {
            n.at("builtin").fail("unknown functor builtin '" + b + "'");
        }
        SetFunctor inner;
        if (auto of = n.get("of")) {
            inner = load_functor(*of, c, name + ".of");
        } else {
            if (!c->concrete()) n.fail("builtin functors other than constant need a concrete category");
            inner = inclusion_functor(c);
        }
        for (Obj x = 0; x < k; ++x) {
            std::size_t in = inner.at(x), out = 0;
            try {
                out = (b == "powerset" && in > 16) ? SIZE_MAX : e->obj(in);
            } catch (const EnumerationOverflow&) {
                out = SIZE_MAX;
            }
            if (out > (std::size_t{1} << 16)) n.fail("functor value too large at object " + c->name(x));
        }
        return apply_endo(*e, inner).renamed(name);
    }
    n.only({"objects", "arrows"});
    Node o = n.at("objects").array_of(k);
    std::vector<std::size_t> obj(k);
    for (std::size_t x = 0; x < k; ++x) obj[x] = o.at(x).size(1 << 16);
    Node a = n.at("arrows").array_of(k);
    std::vector<std::vector<FinFn>> arrows(k * k);
    for (Obj x = 0; x < k; ++x) {
        Node ax = a.at(x).array_of(k);
        for (Obj y = 0; y < k; ++y) {
            Node axy = ax.at(y).array_of(c->hom(x, y));
            for (Elem i = 0; i < c->hom(x, y); ++i) arrows[x * k + y].push_back(axy.at(i).table(obj[x], obj[y]));
        }
    }
    return SetFunctor(c, std::move(obj), std::move(arrows), name);
}

ArrowData load_arrow(const Node& n, const CatPtr& c) {
    n.only({"cells", "pure", "comp", "name"});
    std::size_t k = c->size();
    ArrowData a{"spec", c, std::vector<std::size_t>(k * k), std::vector<std::vector<Elem>>(k * k),
                std::vector<std::vector<Elem>>(k * k * k)};
    if (auto nm = n.get("name")) a.name = nm->str();
    Node cells = n.at("cells").array_of(k);
    for (std::size_t x = 0; x < k; ++x) {
        Node row = cells.at(x).array_of(k);
        for (std::size_t y = 0; y < k; ++y) a.cells[x * k + y] = row.at(y).size(1 << 16);
    }
    Node pure = n.at("pure").array_of(k);
    for (Obj x = 0; x < k; ++x) {
        Node px = pure.at(x).array_of(k);
        for (Obj y = 0; y < k; ++y) a.pure[x * k + y] = px.at(y).indices(c->hom(x, y), a.cell(x, y));
    }
    Node comp = n.at("comp").array_of(k);
    for (Obj x = 0; x < k; ++x) {
        Node cx = comp.at(x).array_of(k);
        for (Obj y = 0; y < k; ++y) {
            Node cxy = cx.at(y).array_of(k);
            for (Obj z = 0; z < k; ++z) {
                std::uint64_t len = checked_mul(a.cell(x, y), a.cell(y, z), budget());
                a.comp[(x * k + y) * k + z] = cxy.at(z).indices(static_cast<std::size_t>(len), a.cell(x, z));
            }
        }
    }
    return a;
}

RelMonad load_relmonad(const Node& n, const Spec& s) {
    auto functor = [&](const std::optional<Node>& jn) -> SetFunctor {
        std::string name;
        if (jn)
            name = jn->str();
        else if (s.j)
            name = *s.j;
        else
            n.fail("no J: give \"j\" here or at the top level");
        auto it = s.functors.find(name);
        if (it == s.functors.end()) (jn ? *jn : n).fail("unknown functor '" + name + "'");
        return it->second;
    };
    if (n.has("builtin")) {
        n.only({"builtin", "monad", "j"});
        if (n.at("builtin").str() != "restrict") n.at("builtin").fail("unknown relative monad builtin");
        SetFunctor j = functor(n.get("j"));
        std::string m = n.at("monad").str();
        if (m == "identity") return restrict(identity_monad(), j);
        if (m == "maybe") return restrict(maybe_monad(), j);
        if (m == "powerset") {
            for (std::size_t v : j.objects())
                if (v > 8) n.fail("powerset is tabulated only on sets of size <= 8");
            return restrict(powerset_monad(), j);
        }
        n.at("monad").fail("unknown monad '" + m + "'");
    }
    n.only({"j", "t", "unit", "star", "name"});
    SetFunctor j = functor(n.get("j"));
    std::size_t k = j.src()->size();
    Node tn = n.at("t").array_of(k);
    std::vector<std::size_t> t(k);
    for (std::size_t x = 0; x < k; ++x) t[x] = tn.at(x).size(1 << 16);
    Node un = n.at("unit").array_of(k);
    std::vector<FinFn> unit;
    for (std::size_t x = 0; x < k; ++x) unit.push_back(un.at(x).table(j.at(static_cast<Obj>(x)), t[x]));
    Node sn = n.at("star").array_of(k);
    auto stars = std::make_shared<std::vector<std::vector<FinFn>>>(k * k);
    for (Obj x = 0; x < k; ++x) {
        Node sx = sn.at(x).array_of(k);
        for (Obj y = 0; y < k; ++y) {
            std::size_t count = static_cast<std::size_t>(fn_count(j.at(x), t[y]));
            Node sxy = sx.at(y).array_of(count);
            for (std::size_t i = 0; i < count; ++i) (*stars)[x * k + y].push_back(sxy.at(i).table(t[x], t[y]));
        }
    }
    std::string name = "spec";
    if (auto nm = n.get("name")) name = nm->str();
    StarFn star = [stars, k](Obj x, Obj y, const FinFn& f) { return (*stars)[x * k + y][fn_index(f)]; };
    return RelMonad(name, j, std::move(t), std::move(unit), std::move(star));
}

}  // namespace

Spec load_spec(const json& doc) {
    Node root(doc, "");
    root.require_object();
    root.only({"schema", "category", "functors", "j", "arrow", "relmonad", "description"});
    std::string schema = root.at("schema").str();
    if (schema != "relmon/1") root.at("schema").fail("unsupported schema '" + schema + "'");
    if (auto d = root.get("description")) d->str();
    Spec s;
    s.category = load_category(root.at("category"));
    if (auto fs = root.get("functors")) {
        fs->require_object();
        for (const auto& item : fs->raw().items())
            s.functors.emplace(item.key(), load_functor(fs->at(item.key()), s.category, item.key()));
    }
    if (auto jn = root.get("j")) {
        std::string name = jn->str();
        if (!s.functors.count(name)) jn->fail("unknown functor '" + name + "'");
        s.j = name;
    } else if (s.functors.count("J")) {
        s.j = "J";
    }
    if (auto a = root.get("arrow")) s.arrow = load_arrow(*a, s.category);
    if (auto r = root.get("relmonad")) s.relmonad = load_relmonad(*r, s);
    return s;
}

Spec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("/", "cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("/", std::string("parse error: ") + e.what());
    }
    return load_spec(doc);
}

Report check_spec(const Spec& s) {
    Report r("spec");
    r.merge(check_category(*s.category), "category");
    if (!r.ok()) return r;
    for (const auto& [name, f] : s.functors) r.merge(check_functor(f), "functor:" + name);
    if (s.arrow) r.merge(check_arrow_laws(*s.arrow), "arrow");
    if (s.relmonad && r.ok()) r.merge(check_relmonad_laws(*s.relmonad), "relmonad");
    return r;
}

json kan_query(const Spec& s, const std::string& functor, std::size_t x) {
    if (!s.j) throw SpecError("/j", "no J to extend along (set \"j\")");
    auto it = s.functors.find(functor);
    if (it == s.functors.end()) throw SpecError("/functors", "unknown functor '" + functor + "'");
    const SetFunctor& j = s.functors.at(*s.j);
    const FinCat& c = *s.category;
    LanObject lan(j, it->second, x);
    json reps = json::array();
    for (Elem k = 0; k < lan.size(); ++k) {
        CoendElement e = lan.rep(k);
        reps.push_back(json{{"class", k}, {"object", c.name(e.z)}, {"g", e.g.table()}, {"x", e.x}});
    }
    std::uint64_t entries = 0;
    json iota = json::array();
    for (Obj z = 0; z < c.size(); ++z)
        for (std::uint64_t g = 0; g < lan.fn_space(z); ++g) {
            entries += it->second.at(z);
            if (entries > budget()) throw EnumerationOverflow(entries, budget(), "kan_query: iota tables");
            iota.push_back(json{{"object", c.name(z)}, {"g", fn_from_index(g, j.at(z), x).table()},
                                {"table", lan.iota_index(z, g).table()}});
        }
    return json{{"functor", functor}, {"j", *s.j}, {"X", x}, {"classes", lan.size()}, {"representatives", reps},
                {"iota", iota}};
}

}  // namespace relmon
