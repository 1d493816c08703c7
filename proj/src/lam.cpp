#include "relmon/lam.hpp"

#include <cctype>
#include <map>
#include <mutex>

namespace relmon {

namespace {

std::size_t subterm_end(const std::vector<std::uint32_t>& code, std::size_t pos) {
    std::size_t need = 1;
    while (need > 0) {
        std::uint32_t tok = code.at(pos++);
        --need;
        if (tok == kApp)
            need += 2;
        else if (tok == kAbs)
            need += 1;
    }
    return pos;
}

// Binder depth of every token.
std::vector<std::size_t> depths(const std::vector<std::uint32_t>& code) {
    struct Frame {
        std::size_t child_depth;
        int remaining;
    };
    std::vector<std::size_t> d(code.size());
    std::vector<Frame> open;
    for (std::size_t i = 0; i < code.size(); ++i) {
        d[i] = open.empty() ? 0 : open.back().child_depth;
        if (!open.empty() && --open.back().remaining == 0) open.pop_back();
        if (code[i] == kApp)
            open.push_back({d[i], 2});
        else if (code[i] == kAbs)
            open.push_back({d[i] + 1, 1});
    }
    return d;
}

void append_shifted(std::vector<std::uint32_t>& out, const std::vector<std::uint32_t>& code, std::size_t by) {
    if (by == 0) {
        out.insert(out.end(), code.begin(), code.end());
        return;
    }
    std::vector<std::size_t> d = depths(code);
    for (std::size_t i = 0; i < code.size(); ++i) {
        std::uint32_t tok = code[i];
        if (tok >= kVar0 && tok - kVar0 >= d[i])
            out.push_back(static_cast<std::uint32_t>(tok + by));
        else
            out.push_back(tok);
    }
}

}  // namespace

Term var(std::size_t scope, std::size_t i) {
    if (i >= scope) throw ScopeError("variable " + std::to_string(i) + " is out of scope " + std::to_string(scope), i);
    return Term{scope, {static_cast<std::uint32_t>(i + kVar0)}};
}

Term app(const Term& f, const Term& a) {
    if (f.scope != a.scope) throw ShapeError("app: scopes differ");
    Term t{f.scope, {kApp}};
    t.code.insert(t.code.end(), f.code.begin(), f.code.end());
    t.code.insert(t.code.end(), a.code.begin(), a.code.end());
    return t;
}

Term abs(const Term& body) {
    if (body.scope == 0) throw ShapeError("abs: body must have a bound variable in scope");
    Term t{body.scope - 1, {kAbs}};
    t.code.insert(t.code.end(), body.code.begin(), body.code.end());
    return t;
}

void check_scope(const Term& t) {
    if (t.code.empty() || subterm_end(t.code, 0) != t.code.size()) throw ShapeError("malformed term");
    std::vector<std::size_t> d = depths(t.code);
    for (std::size_t i = 0; i < t.code.size(); ++i)
        if (t.code[i] >= kVar0 && t.code[i] - kVar0 >= t.scope + d[i]) {
            std::size_t v = t.code[i] - kVar0;
            throw ScopeError("variable " + std::to_string(v) + " is out of scope at token " + std::to_string(i), v);
        }
}

// ---------------- text ----------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t scope;
    std::size_t i = 0;
    std::vector<std::uint32_t> out;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_atom() {
        ws();
        return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '(');
    }
    void term(std::size_t depth) {
        ws();
        if (i < s.size() && s[i] == '\\') {
            ++i;
            out.push_back(kAbs);
            term(depth + 1);
            return;
        }
        // app := atom+, left-associated: emit the App tokens up front once the atom count is known.
        std::vector<std::vector<std::uint32_t>> atoms;
        if (!at_atom()) throw ParseError("expected a term", i);
        while (at_atom()) {
            std::vector<std::uint32_t> saved;
            saved.swap(out);
            atom(depth);
            atoms.push_back(std::move(out));
            out = std::move(saved);
        }
        for (std::size_t a = 1; a < atoms.size(); ++a) out.push_back(kApp);
        out.insert(out.end(), atoms[0].begin(), atoms[0].end());
        for (std::size_t a = 1; a < atoms.size(); ++a) out.insert(out.end(), atoms[a].begin(), atoms[a].end());
    }
    void atom(std::size_t depth) {
        ws();
        if (s[i] == '(') {
            ++i;
            term(depth);
            ws();
            if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
            ++i;
            return;
        }
        std::size_t start = i;
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
            if (v > 1000000) throw ParseError("index too large", start);
            ++i;
        }
        if (v >= scope + depth)
            throw ParseError("variable " + std::to_string(v) + " is out of scope", start);
        out.push_back(static_cast<std::uint32_t>(v + kVar0));
    }
};

std::size_t print_term_at(const std::vector<std::uint32_t>& c, std::size_t pos, std::string& out);
std::size_t print_atom_at(const std::vector<std::uint32_t>& c, std::size_t pos, std::string& out) {
    if (c[pos] >= kVar0) {
        out += std::to_string(c[pos] - kVar0);
        return pos + 1;
    }
    out += '(';
    pos = print_term_at(c, pos, out);
    out += ')';
    return pos;
}
std::size_t print_app_at(const std::vector<std::uint32_t>& c, std::size_t pos, std::string& out) {
    if (c[pos] != kApp) return print_atom_at(c, pos, out);
    pos = print_app_at(c, pos + 1, out);
    out += ' ';
    return print_atom_at(c, pos, out);
}
std::size_t print_term_at(const std::vector<std::uint32_t>& c, std::size_t pos, std::string& out) {
    if (c[pos] == kAbs) {
        out += "\\ ";
        return print_term_at(c, pos + 1, out);
    }
    return print_app_at(c, pos, out);
}

}  // namespace

Term parse_term(const std::string& text, std::size_t scope) {
    Parser p{text, scope};
    p.term(0);
    p.ws();
    if (p.i != text.size()) throw ParseError("unexpected input", p.i);
    return Term{scope, std::move(p.out)};
}

std::string print_term(const Term& t) {
    std::string out;
    print_term_at(t.code, 0, out);
    return out;
}

// ---------------- substitution ----------------

Subst identity_subst(std::size_t n) {
    Subst s{n, n, {}};
    for (std::size_t i = 0; i < n; ++i) s.table.push_back(var(n, i));
    return s;
}

Term shift(const Term& t, std::size_t by) {
    Term r{t.scope + by, {}};
    append_shifted(r.code, t.code, by);
    return r;
}

Subst lift(const Subst& s) {
    Subst r{s.src + 1, s.tgt + 1, {var(s.tgt + 1, 0)}};
    for (const auto& e : s.table) r.table.push_back(shift(e));
    return r;
}

Term subst(const Term& t, const Subst& s, std::vector<std::size_t>* positions) {
    if (t.scope != s.src || s.table.size() != s.src)
        throw ScopeError("subst: term scope " + std::to_string(t.scope) + " does not match substitution source " +
                             std::to_string(s.src),
                         t.scope);
    for (std::size_t i = 0; i < s.table.size(); ++i)
        if (s.table[i].scope != s.tgt) throw ScopeError("subst: entry " + std::to_string(i) + " has the wrong scope", i);
    std::vector<std::size_t> d = depths(t.code);
    Term r{s.tgt, {}};
    r.code.reserve(t.code.size() * 2);
    if (positions) positions->assign(t.code.size(), 0);
    for (std::size_t i = 0; i < t.code.size(); ++i) {
        if (positions) (*positions)[i] = r.code.size();
        std::uint32_t tok = t.code[i];
        if (tok < kVar0 || tok - kVar0 < d[i]) {
            r.code.push_back(tok);
            continue;
        }
        append_shifted(r.code, s.table[tok - kVar0 - d[i]].code, d[i]);
    }
    return r;
}

Term subst(const Term& t, const Subst& s) { return subst(t, s, nullptr); }

Term rename(const Term& t, const std::vector<std::uint32_t>& f, std::size_t tgt) {
    if (f.size() != t.scope) throw ScopeError("rename: map domain differs from the term scope", t.scope);
    std::vector<std::size_t> d = depths(t.code);
    Term r{tgt, t.code};
    for (std::size_t i = 0; i < r.code.size(); ++i) {
        std::uint32_t tok = r.code[i];
        if (tok >= kVar0 && tok - kVar0 >= d[i]) {
            std::uint32_t v = f[tok - kVar0 - d[i]];
            if (v >= tgt) throw ScopeError("rename: target index out of scope", v);
            r.code[i] = static_cast<std::uint32_t>(v + d[i] + kVar0);
        }
    }
    return r;
}

// ---------------- beta ----------------

std::optional<std::size_t> first_redex(const Term& t) {
    for (std::size_t i = 0; i + 1 < t.code.size(); ++i)
        if (t.code[i] == kApp && t.code[i + 1] == kAbs) return i;
    return std::nullopt;
}

Term contract_at(const Term& t, std::size_t pos) {
    if (pos + 1 >= t.code.size() || t.code[pos] != kApp || t.code[pos + 1] != kAbs)
        throw ShapeError("contract_at: no redex at token " + std::to_string(pos));
    std::size_t local = t.scope + depths(t.code)[pos];
    std::size_t body_end = subterm_end(t.code, pos + 2);
    std::size_t arg_end = subterm_end(t.code, body_end);
    Term body{local + 1, std::vector<std::uint32_t>(t.code.begin() + pos + 2, t.code.begin() + body_end)};
    Term arg{local, std::vector<std::uint32_t>(t.code.begin() + body_end, t.code.begin() + arg_end)};
    Subst s{local + 1, local, {arg}};
    for (std::size_t i = 0; i < local; ++i) s.table.push_back(var(local, i));
    Term red = subst(body, s);
    Term r{t.scope, std::vector<std::uint32_t>(t.code.begin(), t.code.begin() + pos)};
    r.code.insert(r.code.end(), red.code.begin(), red.code.end());
    r.code.insert(r.code.end(), t.code.begin() + arg_end, t.code.end());
    return r;
}

std::optional<Term> beta_step(const Term& t) {
    auto p = first_redex(t);
    if (!p) return std::nullopt;
    return contract_at(t, *p);
}

NormalizeResult normalize(const Term& t, std::size_t fuel) {
    NormalizeResult r{t, false, 0};
    while (true) {
        auto p = first_redex(r.term);
        if (!p) {
            r.normal = true;
            return r;
        }
        if (r.steps == fuel) return r;
        r.term = contract_at(r.term, *p);
        ++r.steps;
    }
}

// ---------------- enumeration ----------------

const std::vector<Term>& terms_of_size(std::size_t scope, std::size_t size) {
    static std::recursive_mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> memo;
    std::lock_guard<std::recursive_mutex> lock(mu);
    auto key = std::make_pair(scope, size);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Term> out;
    if (size == 1) {
        for (std::size_t i = 0; i < scope; ++i) out.push_back(var(scope, i));
    } else if (size >= 2) {
        for (std::size_t ls = 1; ls + 2 <= size; ++ls) {
            const auto& left = terms_of_size(scope, ls);
            const auto& right = terms_of_size(scope, size - 1 - ls);
            for (const auto& l : left)
                for (const auto& r : right) out.push_back(app(l, r));
        }
        for (const auto& b : terms_of_size(scope + 1, size - 1)) out.push_back(abs(b));
    }
    return memo.emplace(key, std::move(out)).first->second;
}

std::vector<Term> terms_up_to(std::size_t scope, std::size_t max_size) {
    std::vector<Term> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        const auto& v = terms_of_size(scope, n);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

ShallowRelMonad<std::size_t, Term> lam_relmonad() {
    ShallowRelMonad<std::size_t, Term> t;
    t.name = "Lam";
    t.arity = [](const std::size_t& n) { return n; };
    t.unit = [](const std::size_t& n, std::size_t i) { return var(n, i); };
    t.star = [](const std::size_t& x, const std::size_t& y, const std::vector<Term>& k, const Term& v) {
        return subst(v, Subst{x, y, k});
    };
    return t;
}

namespace {

std::vector<std::vector<Term>> all_tuples(const std::vector<Term>& entries, std::size_t len) {
    std::vector<std::vector<Term>> out;
    std::uint64_t count = checked_pow(entries.size(), len, budget());
    std::vector<Elem> digits(len);
    for (std::uint64_t c = 0; c < count; ++c) {
        if (len > 0) decode_tuple(c, entries.size(), digits);
        std::vector<Term> k;
        for (Elem d : digits) k.push_back(entries[d]);
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace

ShallowGen<std::size_t, Term> lam_gen(std::size_t max_scope, std::size_t max_term, std::size_t max_entry) {
    ShallowGen<std::size_t, Term> g;
    for (std::size_t n = 0; n <= max_scope; ++n) g.objects.push_back(n);
    g.values = [max_term](const std::size_t& n) { return terms_up_to(n, max_term); };
    g.homs = [max_entry](const std::size_t& x, const std::size_t& y) { return all_tuples(terms_up_to(y, max_entry), x); };
    g.show = [](const Term& t) { return json(print_term(t)); };
    g.show_obj = [](const std::size_t& n) { return json(n); };
    return g;
}

Report beta_stability_check(std::size_t max_scope, std::size_t max_term, std::size_t max_entry) {
    Report r("beta-stability");
    LawCheck lc("substitution-stable");
    for (std::size_t x = 0; x <= max_scope; ++x)
        for (const Term& t : terms_up_to(x, max_term))
            for (std::size_t p = 0; p + 1 < t.code.size(); ++p) {
                if (t.code[p] != kApp || t.code[p + 1] != kAbs) continue;
                Term tp = contract_at(t, p);
                for (std::size_t y = 0; y <= max_scope; ++y)
                    for (const auto& k : all_tuples(terms_up_to(y, max_entry), x)) {
                        Subst s{x, y, k};
                        std::vector<std::size_t> pos;
                        Term ts = subst(t, s, &pos);
                        lc.expect(contract_at(ts, pos[p]) == subst(tp, s), [&] {
                            json ks = json::array();
                            for (const auto& e : k) ks.push_back(print_term(e));
                            return json{{"t", print_term(t)}, {"redex", p}, {"s", ks}};
                        });
                    }
            }
    r.add(lc);
    return r;
}

Report rename_laws(std::size_t max_scope, std::size_t max_term) {
    Report r("rename");
    LawCheck agree("rename-is-subst"), ident("identity"), comp("composition");
    auto maps = [](std::size_t a, std::size_t b) {
        std::vector<std::vector<std::uint32_t>> out;
        for (const auto& f : enumerate_fns(a, b)) out.emplace_back(f.table().begin(), f.table().end());
        return out;
    };
    for (std::size_t x = 0; x <= max_scope; ++x) {
        auto ts = terms_up_to(x, max_term);
        std::vector<std::uint32_t> id(x);
        for (std::size_t i = 0; i < x; ++i) id[i] = static_cast<std::uint32_t>(i);
        for (const auto& t : ts) ident.expect(rename(t, id, x) == t, [&] { return json{{"t", print_term(t)}}; });
        for (std::size_t y = 0; y <= max_scope; ++y)
            for (const auto& f : maps(x, y)) {
                Subst s{x, y, {}};
                for (auto v : f) s.table.push_back(var(y, v));
                for (const auto& t : ts) {
                    Term rt = rename(t, f, y);
                    agree.expect(rt == subst(t, s), [&] { return json{{"t", print_term(t)}, {"f", f}}; });
                    for (std::size_t z = 0; z <= max_scope; ++z)
                        for (const auto& g : maps(y, z)) {
                            std::vector<std::uint32_t> gf(x);
                            for (std::size_t i = 0; i < x; ++i) gf[i] = g[f[i]];
                            comp.expect(rename(rt, g, z) == rename(t, gf, z),
                                        [&] { return json{{"t", print_term(t)}, {"f", f}, {"g", g}}; });
                        }
                }
            }
    }
    r.add(agree);
    r.add(ident);
    r.add(comp);
    return r;
}

}  // namespace relmon
