#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "relmon/fincat.hpp"

namespace relmon {

struct CoendElement {
    Obj z;
    FinFn g;  // J z -> X
    Elem x;   // element of F z
};

json to_json(const CoendElement& e);

// Lan_J F X as the quotient of the elements (z, g: J z -> X, x in F z) by the relation
// generated by (z, g . J h, x) ~ (w, g, F h x).
class LanObject {
public:
    LanObject(SetFunctor j, SetFunctor f, std::size_t x);

    const SetFunctor& J() const { return j_; }
    const SetFunctor& F() const { return f_; }
    std::size_t X() const { return x_; }
    std::size_t size() const { return reps_.size(); }
    FinSet carrier() const { return FinSet(size()); }
    std::uint64_t element_count() const { return offset_.back(); }

    Elem class_of(Obj z, const FinFn& g, Elem x) const;
    Elem class_of_index(Obj z, std::uint64_t g, Elem x) const { return cls_[offset_[z] + g * f_.at(z) + x]; }
    CoendElement rep(Elem c) const;
    Obj rep_object(Elem c) const { return reps_[c].z; }
    std::uint64_t rep_fn_index(Elem c) const { return reps_[c].g; }
    Elem rep_point(Elem c) const { return reps_[c].x; }
    std::uint64_t fn_space(Obj z) const { return gcount_[z]; }

    // iota g : F z -> Lan F X.
    FinFn iota(Obj z, const FinFn& g) const;
    FinFn iota_index(Obj z, std::uint64_t g) const;

    // Checks class_of(z, g . J h, x) == class_of(w, g, F h x) for every arrow h.
    Report check_quotient() const;

private:
    struct Raw {
        Obj z;
        std::uint64_t g;
        Elem x;
    };
    SetFunctor j_;
    SetFunctor f_;
    std::size_t x_;
    std::vector<std::uint64_t> gcount_;
    std::vector<std::uint64_t> offset_;
    std::vector<Elem> cls_;
    std::vector<Raw> reps_;
};

using LanPtr = std::shared_ptr<const LanObject>;

LanPtr lan_object(const SetFunctor& j, const SetFunctor& f, std::size_t x);

// Precomposition g . J h as a function index, for h: z -> w and g: J w -> X.
std::uint64_t precompose_index(const SetFunctor& j, std::size_t x, const Arrow& h, std::uint64_t g);

// A natural family theta: (z, g: J z -> X) |-> (F z -> Y).
using LanFamily = std::function<FinFn(Obj z, const FinFn& g)>;

struct FactorizeError : Error {
    FactorizeError(const std::string& what, json witness) : Error(what), witness(std::move(witness)) {}
    json witness;
};

// [theta]. Naturality of theta on every generator and consistency on every class are checked.
FinFn lan_factorize(const LanObject& lan, const LanFamily& theta, std::size_t y);
// [theta] evaluated only at representatives, for families natural by construction.
FinFn lan_factorize_unchecked(const LanObject& lan, const LanFamily& theta, std::size_t y);

// Left Kan extensions along a fixed J, with memoized objects and tensor functors.
class Kan {
public:
    explicit Kan(SetFunctor j);

    const SetFunctor& J() const { return j_; }
    const CatPtr& base() const { return j_.src(); }

    LanPtr lan(const SetFunctor& f, std::size_t x) const;
    // Lan_J F f : Lan F X -> Lan F Y.
    FinFn lan_map(const SetFunctor& f, const FinFn& m) const;
    // (Lan_J tau)_X : Lan F X -> Lan G X.
    FinFn lan_nat(const NatTrans& tau, std::size_t x) const;

    // rho_F at an object x of the base: F x -> Lan F (J x).
    FinFn rho(const SetFunctor& f, Obj x) const;
    // lambda-bar at a set X: Lan J X -> X.
    FinFn lambda_bar(std::size_t x) const;
    // alpha-bar_{F,G} at a set X: Lan (F.G) X -> Lan F (Lan G X).
    FinFn alpha_bar(const SetFunctor& f, const SetFunctor& g, std::size_t x) const;

    // F . G = (Lan F) o G.
    SetFunctor tensor(const SetFunctor& f, const SetFunctor& g) const;
    NatTrans rho_nat(const SetFunctor& f) const;                      // F => F . J
    NatTrans lambda_nat(const SetFunctor& f) const;                   // J . F => F
    NatTrans alpha_nat(const SetFunctor& f, const SetFunctor& g, const SetFunctor& h) const;  // (F.G).H => F.(G.H)
    NatTrans whisker_left(const SetFunctor& f, const NatTrans& tau) const;   // F . tau
    NatTrans whisker_right(const NatTrans& tau, const SetFunctor& g) const;  // tau . G
    // Lan F o H for an arbitrary functor H into FinSet.
    SetFunctor lan_after(const SetFunctor& f, const SetFunctor& h) const;

private:
    SetFunctor j_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::uint64_t, std::size_t>, LanPtr> lans_;
    mutable std::map<std::pair<std::uint64_t, std::uint64_t>, SetFunctor> tensors_;
};

struct StructureMaps {
    FinFn rho;
    FinFn lambda_bar;
    FinFn alpha_bar;
};

// rho_F at x, lambda-bar at J x, alpha-bar_{F,G} at J x.
StructureMaps structure_maps(const Kan& kan, const SetFunctor& f, const SetFunctor& g, Obj x);

// Coherence conditions (a)-(e) at the object x, and their generalized forms at the set size xs.
Report skew_coherence_check(const Kan& kan, const SetFunctor& f, const SetFunctor& g, const SetFunctor& h,
                            const SetFunctor& k, Obj x);

// A witness that a map is not a bijection, or null.
json bijection_failure(const FinFn& f);

// -------- well-behavedness --------

struct Verdict {
    Status status = Status::pass;
    std::uint64_t verified = 0;
    std::uint64_t out_of_universe = 0;
    std::optional<std::size_t> offending_size;
    json witness;
    std::string reason;
};

json to_json(const Verdict& v);

struct WellBehaved {
    Verdict ff;
    Verdict dense;
    Verdict lan_pres;
    Report report() const;
};

struct WellBehavedBounds {
    std::size_t max_set = 3;                // |X|, |Y| for K and L
    std::vector<SetFunctor> functors;       // F for the L condition; defaults to J and constants
};

// J^-1 : hom(J x, J y) -> hom(x, y) for a fully faithful J.
std::optional<Elem> j_inverse(const SetFunctor& j, Obj x, Obj y, const FinFn& g);

WellBehaved wellbehaved_check(const SetFunctor& j, const WellBehavedBounds& bounds = {});

// L^F_{A,Y} : Lan_J (J A -> F -) Y -> (J A -> Lan_J F Y), as a table on class indices
// (the codomain is indexed as functions in enumerate_fns order).
struct LMap {
    LanPtr domain;          // Lan of the functor (J A -> F -)
    LanPtr target;          // Lan F Y
    std::size_t arity;      // |J A|
    FinFn table;
};
LMap l_map(const Kan& kan, const SetFunctor& f, Obj a, std::size_t y);
// L^-1 for the inclusion of a subuniverse: builds the sigma-object representative.
// Throws OutOfUniverse when the needed sum of sizes is not an object.
Elem l_inverse(const Kan& kan, const LMap& l, std::uint64_t fn);

// Exponent functor (J A -> F -).
SetFunctor hom_functor(const SetFunctor& j, Obj a, const SetFunctor& f);

struct IsoInverses {
    FinFn rho_inv;
    FinFn lambda_bar_inv;
    FinFn alpha_bar_inv;
};

// rho^-1, lambda-bar^-1 and alpha-bar^-1 by the inverse formulas (for rho: at x; the others at J x).
IsoInverses iso_inverses(const Kan& kan, const SetFunctor& f, const SetFunctor& g, Obj x);
FinFn rho_inverse(const Kan& kan, const SetFunctor& f, Obj x);
FinFn lambda_bar_inverse(const Kan& kan, std::size_t x);
FinFn alpha_bar_inverse(const Kan& kan, const SetFunctor& f, const SetFunctor& g, std::size_t x);

// Object of size 1 in the base whose J-image is a singleton, if any.
std::optional<Obj> unit_object(const SetFunctor& j);
// True when J is the inclusion of a concrete subuniverse.
bool is_inclusion(const SetFunctor& j);

}  // namespace relmon
