#pragma once

#include "relmon/relmonad.hpp"
#include "relmon/semiring.hpp"
#include "relmon/shallow.hpp"

namespace relmon {

// A i j with i < rows, j < cols, row-major.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> a;
    Elem at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    friend bool operator==(const Matrix&, const Matrix&) = default;
};

json to_json(const FiniteSemiring& r, const Matrix& m);

// Vectors m -> R are indexed like functions: entry 0 is the most significant digit.
std::vector<Elem> vec_decode(const FiniteSemiring& r, std::uint64_t index, std::size_t m);
std::uint64_t vec_encode(const FiniteSemiring& r, const std::vector<Elem>& v);

// k : m -> R^n read as the m x n matrix with rows k(i), and back.
Matrix kleisli_matrix(const FiniteSemiring& r, const FinFn& k, std::size_t n);
FinFn matrix_kleisli(const FiniteSemiring& r, const Matrix& a);

Matrix identity_matrix(const FiniteSemiring& r, std::size_t m);
// (A B) i j = sum_l A i l x B l j
Matrix matmul(const FiniteSemiring& r, const Matrix& a, const Matrix& b);
// A* x j = sum_i A i j x x i
std::vector<Elem> matrix_star(const FiniteSemiring& r, const Matrix& a, const std::vector<Elem>& x);

// Vec over r on the inclusion J of a subuniverse: T m = R^m, unit = identity columns, star = matrix action.
RelMonad vec_relmonad(const FiniteSemiring& r, const SetFunctor& j);
// Componentwise map of vectors induced by a semiring map h.
RelMonadMorphism vec_morphism(const RelMonad& src, const RelMonad& tgt, const FiniteSemiring& a,
                              const FiniteSemiring& b, const std::vector<Elem>& h);

// Vec over a semiring with exact or large carriers.
template <typename S>
ShallowRelMonad<std::size_t, std::vector<typename S::V>> vec_shallow(const S& s) {
    using V = typename S::V;
    ShallowRelMonad<std::size_t, std::vector<V>> t;
    t.name = "Vec(" + s.name + ")";
    t.arity = [](const std::size_t& m) { return m; };
    t.unit = [s](const std::size_t& m, std::size_t i) {
        std::vector<V> e(m, s.zero);
        e[i] = s.one;
        return e;
    };
    t.star = [s](const std::size_t& m, const std::size_t& n, const std::vector<std::vector<V>>& k, const std::vector<V>& x) {
        std::vector<V> y(n, s.zero);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) y[j] = s.add(y[j], s.mul(k[i][j], x[i]));
        return y;
    };
    return t;
}

// Seeded sample of vectors and matrices at dims 0..max_dim.
template <typename S>
ShallowGen<std::size_t, std::vector<typename S::V>> vec_sample(const S& s, std::size_t max_dim, std::uint64_t seed,
                                                               std::size_t per_dim) {
    using V = typename S::V;
    ShallowGen<std::size_t, std::vector<V>> g;
    for (std::size_t m = 0; m <= max_dim; ++m) g.objects.push_back(m);
    g.values = [s, seed, per_dim](const std::size_t& m) {
        std::mt19937_64 rng(seed * 1000003 + m);
        std::vector<std::vector<V>> out;
        for (std::size_t i = 0; i < per_dim; ++i) {
            std::vector<V> v(m);
            for (auto& e : v) e = s.random(rng);
            out.push_back(v);
        }
        return out;
    };
    g.homs = [s, seed, per_dim](const std::size_t& m, const std::size_t& n) {
        std::mt19937_64 rng(seed * 7919 + m * 31 + n);
        std::vector<std::vector<std::vector<V>>> out;
        for (std::size_t i = 0; i < per_dim; ++i) {
            std::vector<std::vector<V>> k(m, std::vector<V>(n));
            for (auto& row : k)
                for (auto& e : row) e = s.random(rng);
            out.push_back(k);
        }
        return out;
    };
    g.show = [s](const std::vector<V>& v) {
        json a = json::array();
        for (const auto& e : v) a.push_back(s.show(e));
        return a;
    };
    g.show_obj = [](const std::size_t& m) { return json(m); };
    return g;
}

}  // namespace relmon
