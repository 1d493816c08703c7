#pragma once

#include <map>

#include "relmon/kleisli_em.hpp"

namespace relmon {

// An arrow on a finite category: sets R(X,Y), pure : hom(X,Y) -> R(X,Y) and s << r : R(Y,Z) x R(X,Y) -> R(X,Z).
struct ArrowData {
    std::string name;
    CatPtr base;
    std::vector<std::size_t> cells;          // [x * n + y] = |R(X,Y)|
    std::vector<std::vector<Elem>> pure;     // [x * n + y][f]
    std::vector<std::vector<Elem>> comp;     // [(x * n + y) * n + z][s * |R(X,Y)| + r] = s << r

    std::size_t n() const { return base->size(); }
    std::size_t cell(Obj x, Obj y) const { return cells[x * n() + y]; }
    Elem pure_of(Obj x, Obj y, Elem f) const { return pure[x * n() + y][f]; }
    Elem compose(Obj x, Obj y, Obj z, Elem s, Elem r) const {
        return comp[(x * n() + y) * n() + z][s * cell(x, y) + r];
    }
};

bool operator==(const ArrowData& a, const ArrowData& b);

// pure (g . f) = pure g << pure f, s << pure id = s, pure id << r = r, t << (s << r) = (t << s) << r,
// and (s << pure f) << r = s << (pure f << r).
Report check_arrow_laws(const ArrowData& a);

// R = hom, pure = id, << = composition.
ArrowData hom_arrow(const CatPtr& base);
// R(X,Y) = Kl(T)(X,Y), pure f = eta . J f, << = Kleisli composition.
ArrowData kleisli_arrow(const RelMonad& t);
// R(X,Y) = (Y x S)^(X x S) on a concrete base, pure f = f x S, << = composition.
ArrowData state_arrow(std::size_t s, const CatPtr& base);

// ---------------- relative monads on the Yoneda embedding ----------------

// A relative monad on Y : base -> [base^op, FinSet]. Presheaves are functors on opc; the action of
// a base arrow h : W' -> W on P is P.map(W, W', h).
struct PresheafRelMonad {
    using Star = std::function<NatTrans(Obj x, Obj y, const NatTrans& k)>;  // k : Y x => T y gives T x => T y

    std::string name;
    CatPtr base;
    CatPtr opc;
    std::vector<SetFunctor> yoneda;   // Y x = hom(-, x)
    std::vector<SetFunctor> t;
    std::vector<NatTrans> unit;       // Y x => T x
    Star star;
};

// Presheaves hom(-, x) on op(base) for every object.
std::vector<SetFunctor> yoneda_presheaves(const CatPtr& base, const CatPtr& opc);
// The natural transformation Y x => G sending f to G f a.
NatTrans yoneda_nat(const SetFunctor& yx, const SetFunctor& g, Obj x, Elem a);

// T = Y, eta = id, k* = k.
PresheafRelMonad yoneda_trivial_relmonad(const CatPtr& base);

// Each T x a functor, eta natural, k* natural for every enumerated k, and the three relative-monad laws.
Report check_presheaf_relmonad(const PresheafRelMonad& t, const LawMode& mode = {});

// Kleisli category with homs Nat(Y x, T y) as enumerated by functor_category_homs.
struct PresheafKleisli {
    PresheafRelMonad t;
    CatPtr cat;
    std::vector<std::vector<NatTrans>> homs;                            // [x * n + y]
    std::vector<std::map<std::vector<Elem>, Elem>> index;               // flattened components -> arrow
    std::optional<Elem> find(Obj x, Obj y, const NatTrans& k) const;
};

PresheafKleisli presheaf_kleisli(const PresheafRelMonad& t);

// T X Y = R(Y,X), eta f = pure f, k* r = k id << r.
PresheafRelMonad arrow_to_relmon(const ArrowData& a);

struct NaturalityError : PreconditionError {
    NaturalityError(const std::string& what, json witness) : PreconditionError(what), witness(std::move(witness)) {}
    json witness;
};

// R(X,Y) = T Y X, pure f = eta f, s << r = (lambda f. T _ f s)* r. Throws NaturalityError when
// lambda f. T _ f s is not natural.
ArrowData relmon_to_arrow(const PresheafRelMonad& t);

// arrow -> relmon -> arrow and relmon -> arrow -> relmon are identities on every table.
Report roundtrip_check(const ArrowData& a);
Report roundtrip_check(const PresheafRelMonad& t, const LawMode& mode = {});

// ---------------- morphisms ----------------

struct ArrowMorphism {
    ArrowData src;
    ArrowData tgt;
    std::vector<FinFn> cells;  // [x * n + y] : R(X,Y) -> R'(X,Y)
};

// tau (pure f) = pure' f and tau (s << r) = tau s <<' tau r.
Report check_arrow_morphism(const ArrowMorphism& m);
ArrowMorphism identity_arrow_morphism(const ArrowData& a);
// k |-> sigma . k between Kleisli arrows.
ArrowMorphism kleisli_arrow_morphism(const RelMonadMorphism& s);

struct PresheafMorphism {
    PresheafRelMonad src;
    PresheafRelMonad tgt;
    std::vector<NatTrans> comp;  // T x => T' x
};

// Naturality, sigma . eta = eta' and sigma . k* = (sigma . k)*' . sigma for every enumerated k.
Report check_presheaf_morphism(const PresheafMorphism& m, const LawMode& mode = {});

// sigma_X at Y = tau_{Y,X}, between arrow_to_relmon of both sides, and back.
PresheafMorphism transport_morphism(const ArrowMorphism& m);
ArrowMorphism transport_back(const PresheafMorphism& m, const ArrowData& src, const ArrowData& tgt);
// Arrow-side laws, relmonad-side laws, and the exact round trip.
Report transport_check(const ArrowMorphism& m, const LawMode& mode = {});

// ---------------- Yoneda well-behavedness, Freyd categories ----------------

struct YonedaBounds {
    std::size_t max_presheaf = 2;  // |G Z| for enumerated presheaves
};

// All presheaves on opc with every G Z of size <= max_size.
std::vector<SetFunctor> enumerate_presheaves(const CatPtr& opc, std::size_t max_size);

// J^-1 tau = tau id and K^-1 alpha = lambda a. alpha (lambda f. G f a) id as two-sided inverses, and
// the L map Lan_Y (Nat(Y X, F -)) H -> Nat(Y X, Lan_Y F H) bijective, with coends computed pointwise.
Report yoneda_wellbehaved_check(const CatPtr& base, const YonedaBounds& bounds = {});

// Objects of the base, homs R(X,Y), id = pure id, composition <<.
CatPtr freyd_category(const ArrowData& a);
// r |-> (f |-> T _ f r) is an isomorphism from the Freyd category to presheaf_kleisli(arrow_to_relmon(a)),
// identity on objects.
Report freyd_is_kleisli_check(const ArrowData& a);

}  // namespace relmon
