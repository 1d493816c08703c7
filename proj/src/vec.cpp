#include "relmon/vec.hpp"

namespace relmon {

json to_json(const FiniteSemiring& r, const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(r.label(m.at(i, j)));
        rows.push_back(row);
    }
    return json{{"semiring", r.name}, {"rows", rows}, {"shape", {m.rows, m.cols}}};
}

std::vector<Elem> vec_decode(const FiniteSemiring& r, std::uint64_t index, std::size_t m) {
    std::vector<Elem> v(m);
    if (m > 0) decode_tuple(index, r.n, v);
    return v;
}

std::uint64_t vec_encode(const FiniteSemiring& r, const std::vector<Elem>& v) { return encode_tuple(v, r.n); }

Matrix kleisli_matrix(const FiniteSemiring& r, const FinFn& k, std::size_t n) {
    Matrix a{k.dom(), n, {}};
    for (Elem i = 0; i < k.dom(); ++i) {
        auto row = vec_decode(r, k(i), n);
        a.a.insert(a.a.end(), row.begin(), row.end());
    }
    return a;
}

FinFn matrix_kleisli(const FiniteSemiring& r, const Matrix& a) {
    std::vector<Elem> t(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        t[i] = static_cast<Elem>(vec_encode(r, std::vector<Elem>(a.a.begin() + i * a.cols, a.a.begin() + (i + 1) * a.cols)));
    return FinFn(fn_count(a.cols, r.n), std::move(t));
}

Matrix identity_matrix(const FiniteSemiring& r, std::size_t m) {
    Matrix a{m, m, std::vector<Elem>(m * m, r.zero)};
    for (std::size_t i = 0; i < m; ++i) a.a[i * m + i] = r.one;
    return a;
}

Matrix matmul(const FiniteSemiring& r, const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw ShapeError("matmul: inner dimensions differ");
    Matrix c{a.rows, b.cols, std::vector<Elem>(a.rows * b.cols, r.zero)};
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            Elem acc = r.zero;
            for (std::size_t l = 0; l < a.cols; ++l) acc = r.add(acc, r.mul(a.at(i, l), b.at(l, j)));
            c.a[i * b.cols + j] = acc;
        }
    return c;
}

std::vector<Elem> matrix_star(const FiniteSemiring& r, const Matrix& a, const std::vector<Elem>& x) {
    if (x.size() != a.rows) throw ShapeError("matrix_star: vector length differs from the row count");
    std::vector<Elem> y(a.cols, r.zero);
    for (std::size_t j = 0; j < a.cols; ++j)
        for (std::size_t i = 0; i < a.rows; ++i) y[j] = r.add(y[j], r.mul(a.at(i, j), x[i]));
    return y;
}

RelMonad vec_relmonad(const FiniteSemiring& r, const SetFunctor& j) {
    std::size_t n = j.src()->size();
    std::vector<std::size_t> t(n);
    std::vector<FinFn> unit;
    for (Obj x = 0; x < n; ++x) {
        t[x] = fn_count(j.at(x), r.n);
        unit.push_back(matrix_kleisli(r, identity_matrix(r, j.at(x))));
    }
    std::vector<std::size_t> dims = j.objects();
    return RelMonad("Vec(" + r.name + ")", j, t, std::move(unit), [r, dims](Obj x, Obj y, const FinFn& k) {
        Matrix a = kleisli_matrix(r, k, dims[y]);
        std::size_t tx = fn_count(dims[x], r.n);
        std::vector<Elem> out(tx);
        for (std::uint64_t v = 0; v < tx; ++v)
            out[v] = static_cast<Elem>(vec_encode(r, matrix_star(r, a, vec_decode(r, v, dims[x]))));
        return FinFn(fn_count(dims[y], r.n), std::move(out));
    });
}

RelMonadMorphism vec_morphism(const RelMonad& src, const RelMonad& tgt, const FiniteSemiring& a,
                              const FiniteSemiring& b, const std::vector<Elem>& h) {
    RelMonadMorphism m{src, tgt, {}};
    for (Obj x = 0; x < src.base()->size(); ++x) {
        std::size_t d = src.J().at(x);
        std::vector<Elem> t(src.T(x));
        for (std::uint64_t v = 0; v < t.size(); ++v) {
            auto e = vec_decode(a, v, d);
            for (auto& c : e) c = h[c];
            t[v] = static_cast<Elem>(vec_encode(b, e));
        }
        m.comp.push_back(FinFn(tgt.T(x), std::move(t)));
    }
    return m;
}

}  // namespace relmon
