#pragma once

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relmon/finset.hpp"
#include "relmon/report.hpp"

namespace relmon {

// Semiring on {0, ..., n-1} given by tables.
struct FiniteSemiring {
    std::string name;
    std::size_t n = 0;
    Elem zero = 0;
    Elem one = 0;
    std::vector<Elem> add_table;  // a*n + b
    std::vector<Elem> mul_table;
    std::vector<std::string> labels;
    bool lawful = true;  // false for carriers that only approximate an infinite semiring

    using V = Elem;
    Elem add(Elem a, Elem b) const { return add_table[a * n + b]; }
    Elem mul(Elem a, Elem b) const { return mul_table[a * n + b]; }
    std::string label(Elem a) const { return labels.empty() ? std::to_string(a) : labels[a]; }
    Elem random(std::mt19937_64& rng) const { return static_cast<Elem>(rng() % n); }
    json show(Elem a) const { return label(a); }
};

FiniteSemiring bool_semiring();
FiniteSemiring zmod_semiring(std::size_t m);
// min-plus on {0..top, inf}; sums past top saturate to inf.
FiniteSemiring tropical_semiring(std::size_t top = 7);
// {0..cap} with saturating + and x; stands in for the naturals, flagged not lawful.
FiniteSemiring ncap_semiring(std::size_t cap);

// The integers with exact arithmetic.
struct IntSemiring {
    using V = boost::multiprecision::cpp_int;
    std::string name = "Z";
    V zero = 0;
    V one = 1;
    V add(const V& a, const V& b) const { return a + b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V random(std::mt19937_64& rng) const { return V(static_cast<long>(rng() % 11) - 5); }
    json show(const V& a) const { return a.str(); }
};

// The naturals with exact arithmetic (multisets).
struct NatSemiring {
    using V = boost::multiprecision::cpp_int;
    std::string name = "N";
    V zero = 0;
    V one = 1;
    V add(const V& a, const V& b) const { return a + b; }
    V mul(const V& a, const V& b) const { return a * b; }
    V random(std::mt19937_64& rng) const { return V(static_cast<long>(rng() % 4)); }
    json show(const V& a) const { return a.str(); }
};

Report check_semiring(const FiniteSemiring& s);

template <typename S>
Report check_semiring_sampled(const S& s, std::uint64_t seed, std::size_t samples) {
    Report r("semiring:" + s.name);
    std::mt19937_64 rng(seed);
    LawCheck add_assoc("add-associative"), add_comm("add-commutative"), add_unit("add-unit"),
        mul_assoc("mul-associative"), mul_unit("mul-unit"), distrib("distributive"), annih("zero-annihilates");
    for (std::size_t i = 0; i < samples; ++i) {
        auto a = s.random(rng), b = s.random(rng), c = s.random(rng);
        auto w = [&] { return json{{"a", s.show(a)}, {"b", s.show(b)}, {"c", s.show(c)}}; };
        add_assoc.expect(s.add(s.add(a, b), c) == s.add(a, s.add(b, c)), w);
        add_comm.expect(s.add(a, b) == s.add(b, a), w);
        add_unit.expect(s.add(a, s.zero) == a, w);
        mul_assoc.expect(s.mul(s.mul(a, b), c) == s.mul(a, s.mul(b, c)), w);
        mul_unit.expect(s.mul(a, s.one) == a && s.mul(s.one, a) == a, w);
        distrib.expect(s.mul(a, s.add(b, c)) == s.add(s.mul(a, b), s.mul(a, c)) &&
                           s.mul(s.add(b, c), a) == s.add(s.mul(b, a), s.mul(c, a)),
                       w);
        annih.expect(s.mul(a, s.zero) == s.zero && s.mul(s.zero, a) == s.zero, w);
    }
    json d{{"seed", seed}, {"samples", samples}};
    for (auto* lc : {&add_assoc, &add_comm, &add_unit, &mul_assoc, &mul_unit, &distrib, &annih}) r.add(*lc, d);
    return r;
}

// A map of carriers preserving 0, 1, + and x.
Report check_semiring_morphism(const FiniteSemiring& a, const FiniteSemiring& b, const std::vector<Elem>& h);

}  // namespace relmon
