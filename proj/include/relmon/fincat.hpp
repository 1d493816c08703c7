#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relmon/finset.hpp"
#include "relmon/report.hpp"

namespace relmon {

using Obj = std::uint32_t;

struct Arrow {
    Obj src;
    Obj tgt;
    Elem index;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

json to_json(const Arrow& a);

// A finite category with tabulated homsets and composition.
class FinCat {
public:
    // hom_sizes is indexed X*n+Y; comp is indexed (X*n+Y)*n+Z with entry g*|hom(X,Y)|+f
    // holding g . f for f: X->Y, g: Y->Z.
    FinCat(std::vector<std::string> names, std::vector<std::size_t> hom_sizes,
           std::vector<std::vector<Elem>> comp, std::vector<Elem> ids);

    std::size_t size() const { return names_.size(); }
    std::size_t hom(Obj x, Obj y) const { return hom_[x * size() + y]; }
    Elem comp(Obj x, Obj y, Obj z, Elem g, Elem f) const {
        return comp_[(x * size() + y) * size() + z][g * hom(x, y) + f];
    }
    Elem id(Obj x) const { return ids_[x]; }
    const std::string& name(Obj x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Obj> find(const std::string& name) const;

    // Object sizes when this is a full subcategory of FinSet whose arrows are
    // numbered in enumerate_fns order; null otherwise.
    const std::vector<std::size_t>* concrete() const {
        return (sizes_ && !opposite_) ? &*sizes_ : nullptr;
    }
    // The sizes of the underlying concrete category, for its opposite as well.
    const std::vector<std::size_t>* underlying_sizes() const { return sizes_ ? &*sizes_ : nullptr; }
    bool is_opposite() const { return opposite_; }

    // Non-identity arrows generating the category under composition.
    const std::vector<Arrow>& generators() const;
    std::size_t arrow_count() const;

    friend bool operator==(const FinCat& a, const FinCat& b) {
        return a.names_ == b.names_ && a.hom_ == b.hom_ && a.comp_ == b.comp_ && a.ids_ == b.ids_ &&
               a.sizes_ == b.sizes_ && a.opposite_ == b.opposite_;
    }

private:
    friend std::shared_ptr<const FinCat> subuniverse(const std::vector<std::size_t>& sizes);
    friend std::shared_ptr<const FinCat> op_category(const std::shared_ptr<const FinCat>& c);

    std::vector<std::string> names_;
    std::vector<std::size_t> hom_;
    std::vector<std::vector<Elem>> comp_;
    std::vector<Elem> ids_;
    std::optional<std::vector<std::size_t>> sizes_;
    bool opposite_ = false;

    struct Lazy;
    std::shared_ptr<Lazy> lazy_;
};

using CatPtr = std::shared_ptr<const FinCat>;

CatPtr fin_skeleton(std::size_t k);
CatPtr subuniverse(const std::vector<std::size_t>& sizes);
CatPtr op_category(const CatPtr& c);
CatPtr discrete_category(const std::vector<std::string>& names);
// Objects `names`, one arrow x->y exactly when leq[x][y]; leq must be a preorder.
CatPtr poset_category(const std::vector<std::string>& names, const std::vector<std::vector<bool>>& leq);
// The arrow of a concrete category as a function.
FinFn concrete_arrow(const FinCat& c, Obj x, Obj y, Elem index);
Elem concrete_index(const FinCat& c, const FinFn& f);

bool same_category(const CatPtr& a, const CatPtr& b);

Report check_category(const FinCat& c);

// A functor from a finite category into FinSet.
class SetFunctor {
public:
    SetFunctor() = default;
    // arrows is indexed X*n+Y, then by arrow index.
    SetFunctor(CatPtr src, std::vector<std::size_t> obj, std::vector<std::vector<FinFn>> arrows,
               std::string name = "");

    const CatPtr& src() const { return impl_->src; }
    std::size_t at(Obj x) const { return impl_->obj[x]; }
    const std::vector<std::size_t>& objects() const { return impl_->obj; }
    const FinFn& map(Obj x, Obj y, Elem i) const { return impl_->arrows[x * impl_->obj.size() + y][i]; }
    const FinFn& map(const Arrow& a) const { return map(a.src, a.tgt, a.index); }
    const std::string& name() const { return impl_->name; }
    std::uint64_t uid() const { return impl_->uid; }
    bool valid() const { return impl_ != nullptr; }

    SetFunctor renamed(std::string name) const;

private:
    struct Impl {
        CatPtr src;
        std::vector<std::size_t> obj;
        std::vector<std::vector<FinFn>> arrows;
        std::string name;
        std::uint64_t uid;
    };
    std::shared_ptr<const Impl> impl_;
};

// Builds a SetFunctor from per-object sizes and a per-arrow action.
template <typename Act>
SetFunctor make_set_functor(const CatPtr& c, std::vector<std::size_t> obj, Act&& act, std::string name = "") {
    std::size_t n = c->size();
    std::vector<std::vector<FinFn>> arrows(n * n);
    for (Obj x = 0; x < n; ++x)
        for (Obj y = 0; y < n; ++y) {
            auto& v = arrows[x * n + y];
            v.reserve(c->hom(x, y));
            for (Elem i = 0; i < c->hom(x, y); ++i) v.push_back(act(x, y, i));
        }
    return SetFunctor(c, std::move(obj), std::move(arrows), std::move(name));
}

Report check_functor(const SetFunctor& f);

// Inclusion of a concrete category into FinSet.
SetFunctor inclusion_functor(const CatPtr& c);
SetFunctor constant_functor(const CatPtr& c, std::size_t value, std::string name = "");
// Yoneda presheaf hom(-, x), as a functor on op(c).
SetFunctor representable(const CatPtr& c, const CatPtr& opc, Obj x);

// A functor between finite categories.
struct CatFunctor {
    CatPtr src;
    CatPtr tgt;
    std::vector<Obj> obj;
    std::vector<std::vector<Elem>> arrows;  // indexed X*n+Y
    Elem map(Obj x, Obj y, Elem i) const { return arrows[x * src->size() + y][i]; }
};

Report check_cat_functor(const CatFunctor& f);
CatFunctor identity_cat_functor(const CatPtr& c);
CatFunctor compose(const CatFunctor& g, const CatFunctor& f);
bool is_isomorphism(const CatFunctor& f);
bool operator==(const CatFunctor& a, const CatFunctor& b);

struct NatTrans {
    SetFunctor src;
    SetFunctor tgt;
    std::vector<FinFn> comp;
    const FinFn& at(Obj x) const { return comp[x]; }
};

Report check_nat(const NatTrans& t);
NatTrans identity_nat(const SetFunctor& f);
NatTrans vertical(const NatTrans& b, const NatTrans& a);
bool operator==(const NatTrans& a, const NatTrans& b);

// All natural transformations F => G, found by constraint propagation.
std::vector<NatTrans> functor_category_homs(const SetFunctor& f, const SetFunctor& g);

}  // namespace relmon
