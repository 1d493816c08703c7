#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "relmon/error.hpp"

namespace relmon {

using Elem = std::uint32_t;

// A canonical finite set {0, ..., size-1}. Labels are for display only.
struct FinSet {
    std::size_t size = 0;
    std::shared_ptr<const std::vector<std::string>> labels;

    FinSet() = default;
    explicit FinSet(std::size_t n) : size(n) {}
    FinSet(std::size_t n, std::vector<std::string> names);

    std::string label(Elem x) const;
    friend bool operator==(const FinSet& a, const FinSet& b) { return a.size == b.size; }
};

// A total function between canonical finite sets, stored as a table.
class FinFn {
public:
    FinFn() = default;
    FinFn(std::size_t cod, std::vector<Elem> table);

    static FinFn identity(std::size_t n);
    static FinFn constant(std::size_t dom, std::size_t cod, Elem value);
    static FinFn empty(std::size_t cod) { return FinFn(cod, {}); }

    std::size_t dom() const { return table_.size(); }
    std::size_t cod() const { return cod_; }
    Elem operator()(Elem x) const { return table_[x]; }
    const std::vector<Elem>& table() const { return table_; }

    bool is_injective() const;
    bool is_surjective() const;
    bool is_bijective() const { return is_injective() && is_surjective(); }
    // Inverse of a bijection; throws ShapeError otherwise.
    FinFn inverse() const;

    friend bool operator==(const FinFn&, const FinFn&) = default;
    friend auto operator<=>(const FinFn&, const FinFn&) = default;

private:
    std::size_t cod_ = 0;
    std::vector<Elem> table_;
};

// g after f.
FinFn compose(const FinFn& g, const FinFn& f);

std::string to_string(const FinFn& f);

// Number of functions a -> b, throwing EnumerationOverflow beyond the budget.
std::uint64_t fn_count(std::size_t a, std::size_t b);

// Position of f in enumerate_fns(f.dom(), f.cod()); the first table entry is most significant.
std::uint64_t fn_index(const FinFn& f);
FinFn fn_from_index(std::uint64_t index, std::size_t dom, std::size_t cod);

// Digits of a tuple index in a fixed base, most significant first.
std::uint64_t encode_tuple(std::span<const Elem> digits, std::size_t base);
void decode_tuple(std::uint64_t index, std::size_t base, std::span<Elem> digits);

// All functions a -> b in lexicographic table order.
class FnRange {
public:
    FnRange(std::size_t dom, std::size_t cod);

    class iterator {
    public:
        using value_type = FinFn;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        const FinFn& operator*() const { return current_; }
        const FinFn* operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& o) const { return remaining_ == o.remaining_; }

    private:
        friend class FnRange;
        FinFn current_;
        std::uint64_t remaining_ = 0;
    };

    iterator begin() const;
    iterator end() const { return iterator(); }
    std::uint64_t size() const { return count_; }

private:
    std::size_t dom_;
    std::size_t cod_;
    std::uint64_t count_;
};

inline FnRange enumerate_fns(std::size_t a, std::size_t b) { return FnRange(a, b); }
inline FnRange enumerate_fns(const FinSet& a, const FinSet& b) { return FnRange(a.size, b.size); }

struct Product {
    std::size_t size;
    std::size_t left;
    std::size_t right;
    FinFn proj1;
    FinFn proj2;
    Elem pair(Elem i, Elem j) const { return static_cast<Elem>(i * right + j); }
};

struct Coproduct {
    std::size_t size;
    FinFn inl;
    FinFn inr;
};

struct Exponential {
    std::size_t size;   // cod^dom
    std::size_t dom;
    std::size_t cod;
    FinFn eval;         // on product(size, dom)
};

Product product(std::size_t a, std::size_t b);
Coproduct coproduct(std::size_t a, std::size_t b);
Exponential exponential(std::size_t a, std::size_t b);

// f x g on products, using the row-major pairing.
FinFn product_map(const FinFn& f, const FinFn& g);
// f + g on coproducts, inl first.
FinFn coproduct_map(const FinFn& f, const FinFn& g);
// h : C x A -> B  |->  C -> B^A.
FinFn curry(const FinFn& h, std::size_t c, std::size_t a);
FinFn uncurry(const FinFn& k, std::size_t a, std::size_t b);

}  // namespace relmon
