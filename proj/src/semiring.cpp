#include "relmon/semiring.hpp"

namespace relmon {

namespace {

template <typename Add, typename Mul>
FiniteSemiring tabulate(std::string name, std::size_t n, Elem zero, Elem one, Add add, Mul mul) {
    FiniteSemiring s;
    s.name = std::move(name);
    s.n = n;
    s.zero = zero;
    s.one = one;
    s.add_table.resize(n * n);
    s.mul_table.resize(n * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            s.add_table[a * n + b] = add(a, b);
            s.mul_table[a * n + b] = mul(a, b);
        }
    return s;
}

}  // namespace

FiniteSemiring bool_semiring() {
    auto s = tabulate("Bool", 2, 0, 1, [](Elem a, Elem b) { return a | b; }, [](Elem a, Elem b) { return a & b; });
    s.labels = {"false", "true"};
    return s;
}

FiniteSemiring zmod_semiring(std::size_t m) {
    return tabulate(
        "Z/" + std::to_string(m), m, 0, 1, [m](Elem a, Elem b) { return static_cast<Elem>((a + b) % m); },
        [m](Elem a, Elem b) { return static_cast<Elem>((a * b) % m); });
}

FiniteSemiring tropical_semiring(std::size_t top) {
    const Elem inf = static_cast<Elem>(top + 1);
    auto s = tabulate(
        "Tropical" + std::to_string(top), top + 2, inf, 0, [](Elem a, Elem b) { return std::min(a, b); },
        [inf](Elem a, Elem b) { return (a == inf || b == inf || a + b >= inf) ? inf : a + b; });
    for (Elem a = 0; a <= top; ++a) s.labels.push_back(std::to_string(a));
    s.labels.push_back("inf");
    return s;
}

FiniteSemiring ncap_semiring(std::size_t cap) {
    auto c = static_cast<Elem>(cap);
    auto s = tabulate(
        "Ncap" + std::to_string(cap), cap + 1, 0, 1, [c](Elem a, Elem b) { return std::min(a + b, c); },
        [c](Elem a, Elem b) { return std::min(a * b, c); });
    s.lawful = false;
    return s;
}

Report check_semiring(const FiniteSemiring& s) {
    Report r("semiring:" + s.name);
    LawCheck add_assoc("add-associative"), add_comm("add-commutative"), add_unit("add-unit"),
        mul_assoc("mul-associative"), mul_unit("mul-unit"), distrib("distributive"), annih("zero-annihilates");
    for (Elem a = 0; a < s.n; ++a) {
        auto w1 = [&] { return json{{"a", s.label(a)}}; };
        add_unit.expect(s.add(a, s.zero) == a && s.add(s.zero, a) == a, w1);
        mul_unit.expect(s.mul(a, s.one) == a && s.mul(s.one, a) == a, w1);
        annih.expect(s.mul(a, s.zero) == s.zero && s.mul(s.zero, a) == s.zero, w1);
        for (Elem b = 0; b < s.n; ++b) {
            add_comm.expect(s.add(a, b) == s.add(b, a), [&] { return json{{"a", s.label(a)}, {"b", s.label(b)}}; });
            for (Elem c = 0; c < s.n; ++c) {
                auto w = [&] { return json{{"a", s.label(a)}, {"b", s.label(b)}, {"c", s.label(c)}}; };
                add_assoc.expect(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)), w);
                mul_assoc.expect(s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)), w);
                distrib.expect(s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)) &&
                                   s.mul(s.add(b, c), a) == s.add(s.mul(b, a), s.mul(c, a)),
                               w);
            }
        }
    }
    for (auto* lc : {&add_assoc, &add_comm, &add_unit, &mul_assoc, &mul_unit, &distrib, &annih}) r.add(*lc);
    return r;
}

Report check_semiring_morphism(const FiniteSemiring& a, const FiniteSemiring& b, const std::vector<Elem>& h) {
    Report r("semiring-morphism:" + a.name + "->" + b.name);
    LawCheck units("units"), add("preserves-add"), mul("preserves-mul");
    units.expect(h[a.zero] == b.zero && h[a.one] == b.one);
    for (Elem x = 0; x < a.n; ++x)
        for (Elem y = 0; y < a.n; ++y) {
            auto w = [&] { return json{{"a", a.label(x)}, {"b", a.label(y)}}; };
            add.expect(h[a.add(x, y)] == b.add(h[x], h[y]), w);
            mul.expect(h[a.mul(x, y)] == b.mul(h[x], h[y]), w);
        }
    r.add(units);
    r.add(add);
    r.add(mul);
    return r;
}

}  // namespace relmon
