#include "relmon/finset.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <sstream>

namespace relmon {

namespace {
std::atomic<std::uint64_t> g_budget{1000000};
}

std::uint64_t budget() { return g_budget.load(); }
void set_budget(std::uint64_t b) { g_budget.store(b); }

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t limit) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw EnumerationOverflow(std::numeric_limits<std::uint64_t>::max(), limit,
                                  "enumeration overflow: product exceeds 2^64");
    }
    std::uint64_t r = a * b;
    if (r > limit) {
        throw EnumerationOverflow(r, limit,
                                  "enumeration overflow: " + std::to_string(r) + " > budget " +
                                      std::to_string(limit));
    }
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base == 0) return 0;
        r = checked_mul(r, base, limit);
    }
    return r;
}

FinSet::FinSet(std::size_t n, std::vector<std::string> names) : size(n) {
    if (names.size() != n) throw ShapeError("FinSet: label count does not match size");
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) throw ShapeError("FinSet: labels must be distinct");
    labels = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::string FinSet::label(Elem x) const {
    if (labels) return (*labels)[x];
    return std::to_string(x);
}

FinFn::FinFn(std::size_t cod, std::vector<Elem> table) : cod_(cod), table_(std::move(table)) {
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] >= cod_) {
            throw ShapeError("FinFn: entry " + std::to_string(i) + " = " + std::to_string(table_[i]) +
                             " out of codomain of size " + std::to_string(cod_));
        }
    }
}

FinFn FinFn::identity(std::size_t n) {
    std::vector<Elem> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<Elem>(i);
    return FinFn(n, std::move(t));
}

FinFn FinFn::constant(std::size_t dom, std::size_t cod, Elem value) {
    return FinFn(cod, std::vector<Elem>(dom, value));
}

bool FinFn::is_injective() const {
    std::vector<char> seen(cod_, 0);
    for (Elem y : table_) {
        if (seen[y]) return false;
        seen[y] = 1;
    }
    return true;
}

bool FinFn::is_surjective() const {
    std::vector<char> hit(cod_, 0);
    std::size_t n = 0;
    for (Elem y : table_) {
        if (!hit[y]) {
            hit[y] = 1;
            ++n;
        }
    }
    return n == cod_;
}

FinFn FinFn::inverse() const {
    if (!is_bijective()) throw ShapeError("FinFn::inverse: not a bijection");
    std::vector<Elem> t(cod_);
    for (std::size_t i = 0; i < table_.size(); ++i) t[table_[i]] = static_cast<Elem>(i);
    return FinFn(table_.size(), std::move(t));
}

FinFn compose(const FinFn& g, const FinFn& f) {
    if (f.cod() != g.dom()) {
        throw CompositionError(g.dom(), f.cod(),
                               "compose: inner map " + std::to_string(f.dom()) + "->" +
                                   std::to_string(f.cod()) + " does not meet outer map " +
                                   std::to_string(g.dom()) + "->" + std::to_string(g.cod()));
    }
    std::vector<Elem> t(f.dom());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g(f(static_cast<Elem>(i)));
    return FinFn(g.cod(), std::move(t));
}

std::string to_string(const FinFn& f) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < f.dom(); ++i) {
        if (i) os << ',';
        os << f(static_cast<Elem>(i));
    }
    os << "]:" << f.dom() << "->" << f.cod();
    return os.str();
}

std::uint64_t fn_count(std::size_t a, std::size_t b) {
    if (a == 0) return 1;
    return checked_pow(b, a, budget());
}

std::uint64_t encode_tuple(std::span<const Elem> digits, std::size_t base) {
    std::uint64_t idx = 0;
    for (Elem d : digits) idx = idx * base + d;
    return idx;
}

void decode_tuple(std::uint64_t index, std::size_t base, std::span<Elem> digits) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = static_cast<Elem>(index % base);
        index /= base;
    }
}

std::uint64_t fn_index(const FinFn& f) { return encode_tuple(f.table(), f.cod()); }

FinFn fn_from_index(std::uint64_t index, std::size_t dom, std::size_t cod) {
    std::vector<Elem> t(dom);
    if (dom > 0) {
        if (cod == 0) throw ShapeError("fn_from_index: no functions into the empty set");
        decode_tuple(index, cod, t);
    }
    return FinFn(cod, std::move(t));
}

FnRange::FnRange(std::size_t dom, std::size_t cod)
    : dom_(dom), cod_(cod), count_(fn_count(dom, cod)) {}

FnRange::iterator FnRange::begin() const {
    iterator it;
    it.remaining_ = count_;
    if (count_ > 0) it.current_ = FinFn(cod_, std::vector<Elem>(dom_, 0));
    return it;
}

FnRange::iterator& FnRange::iterator::operator++() {
    if (--remaining_ == 0) {
        current_ = FinFn();
        return *this;
    }
    auto t = current_.table();
    std::size_t i = t.size();
    while (i-- > 0) {
        if (t[i] + 1 < current_.cod()) {
            ++t[i];
            break;
        }
        t[i] = 0;
    }
    current_ = FinFn(current_.cod(), std::move(t));
    return *this;
}

Product product(std::size_t a, std::size_t b) {
    std::size_t n = checked_mul(a, b, budget());
    std::vector<Elem> p1(n), p2(n);
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            p1[i * b + j] = static_cast<Elem>(i);
            p2[i * b + j] = static_cast<Elem>(j);
        }
    }
    return Product{n, a, b, FinFn(a, std::move(p1)), FinFn(b, std::move(p2))};
}

Coproduct coproduct(std::size_t a, std::size_t b) {
    std::vector<Elem> l(a), r(b);
    for (std::size_t i = 0; i < a; ++i) l[i] = static_cast<Elem>(i);
    for (std::size_t j = 0; j < b; ++j) r[j] = static_cast<Elem>(a + j);
    return Coproduct{a + b, FinFn(a + b, std::move(l)), FinFn(a + b, std::move(r))};
}

Exponential exponential(std::size_t a, std::size_t b) {
    std::size_t n = fn_count(a, b);
    std::size_t pn = checked_mul(n, a, budget());
    std::vector<Elem> ev(pn);
    std::vector<Elem> digits(a);
    for (std::size_t f = 0; f < n; ++f) {
        decode_tuple(f, b, digits);
        for (std::size_t x = 0; x < a; ++x) ev[f * a + x] = digits[x];
    }
    return Exponential{n, a, b, FinFn(b, std::move(ev))};
}

FinFn product_map(const FinFn& f, const FinFn& g) {
    std::vector<Elem> t(f.dom() * g.dom());
    for (std::size_t i = 0; i < f.dom(); ++i)
        for (std::size_t j = 0; j < g.dom(); ++j)
            t[i * g.dom() + j] = static_cast<Elem>(f(static_cast<Elem>(i)) * g.cod() + g(static_cast<Elem>(j)));
    return FinFn(f.cod() * g.cod(), std::move(t));
}

FinFn coproduct_map(const FinFn& f, const FinFn& g) {
    std::vector<Elem> t(f.dom() + g.dom());
    for (std::size_t i = 0; i < f.dom(); ++i) t[i] = f(static_cast<Elem>(i));
    for (std::size_t j = 0; j < g.dom(); ++j)
        t[f.dom() + j] = static_cast<Elem>(f.cod() + g(static_cast<Elem>(j)));
    return FinFn(f.cod() + g.cod(), std::move(t));
}

FinFn curry(const FinFn& h, std::size_t c, std::size_t a) {
    if (h.dom() != c * a) throw ShapeError("curry: domain is not C x A");
    std::size_t b = h.cod();
    std::size_t n = fn_count(a, b);
    std::vector<Elem> t(c);
    std::vector<Elem> row(a);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t x = 0; x < a; ++x) row[x] = h(static_cast<Elem>(i * a + x));
        t[i] = static_cast<Elem>(encode_tuple(row, b));
    }
    return FinFn(n, std::move(t));
}

FinFn uncurry(const FinFn& k, std::size_t a, std::size_t b) {
    std::vector<Elem> t(k.dom() * a);
    std::vector<Elem> row(a);
    for (std::size_t i = 0; i < k.dom(); ++i) {
        decode_tuple(k(static_cast<Elem>(i)), b, row);
        for (std::size_t x = 0; x < a; ++x) t[i * a + x] = row[x];
    }
    return FinFn(b, std::move(t));
}

}  // namespace relmon
