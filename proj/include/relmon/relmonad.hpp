#pragma once

#include <functional>
#include <memory>
#include <random>

#include "relmon/builtins.hpp"
#include "relmon/kan.hpp"

namespace relmon {

// How law checkers pick the maps they quantify over.
struct LawMode {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;

    static LawMode all() { return {}; }
    static LawMode sampled(std::uint64_t seed, std::size_t n) { return {false, seed, n}; }
    json to_json() const;
};

// The maps a -> b to quantify over: all of them, or a seeded sample when sampling and there are too many.
std::vector<FinFn> law_inputs(std::size_t a, std::size_t b, const LawMode& mode, std::mt19937_64& rng);
FinFn random_fn(std::size_t a, std::size_t b, std::mt19937_64& rng);

using StarFn = std::function<FinFn(Obj x, Obj y, const FinFn& k)>;

// Relative monad on J : base -> FinSet, given by tables for T and the unit and an operator for the star.
class RelMonad {
public:
    RelMonad() = default;
    RelMonad(std::string name, SetFunctor j, std::vector<std::size_t> t, std::vector<FinFn> unit, StarFn star);

    const std::string& name() const { return impl_->name; }
    const SetFunctor& J() const { return impl_->j; }
    const CatPtr& base() const { return impl_->j.src(); }
    std::size_t T(Obj x) const { return impl_->t[x]; }
    const std::vector<std::size_t>& sizes() const { return impl_->t; }
    const FinFn& unit(Obj x) const { return impl_->unit[x]; }
    FinFn star(Obj x, Obj y, const FinFn& k) const;

    // T as a functor via T f = (eta . J f)*; computed once.
    const SetFunctor& functor() const;
    NatTrans unit_nat() const;  // J => T

private:
    struct Impl {
        std::string name;
        SetFunctor j;
        std::vector<std::size_t> t;
        std::vector<FinFn> unit;
        StarFn star;
        mutable std::once_flag once;
        mutable SetFunctor functor;
    };
    std::shared_ptr<Impl> impl_;
};

FinFn functor_action(const RelMonad& t, Obj x, Obj y, Elem i);
Report check_relmonad_laws(const RelMonad& t, const LawMode& mode = {});

// T = J, unit = id, k* = k.
RelMonad trivial_relmonad(const SetFunctor& j, std::string name = "trivial");

struct RelMonadMorphism {
    RelMonad src;
    RelMonad tgt;
    std::vector<FinFn> comp;  // T X -> T' X
    NatTrans as_nat() const;
};

// Unit and multiplication preservation; naturality is checked separately.
Report check_morphism(const RelMonadMorphism& m, const LawMode& mode = {});
RelMonadMorphism identity_morphism(const RelMonad& t);

// ---------------- monads on FinSet ----------------

struct Monad {
    std::string name;
    std::function<std::size_t(std::size_t)> obj;
    std::function<FinFn(std::size_t)> unit;                 // X -> T X
    std::function<FinFn(const FinFn& k, std::size_t y)> star;  // k : X -> T Y gives T X -> T Y
    std::size_t max_size = 0;                               // largest set the monad is defined on

    FinFn fmap(const FinFn& f) const;
    FinFn mu(std::size_t x) const;  // T T X -> T X
    SetEndo endo() const;
};

Monad identity_monad();
Monad maybe_monad();                          // X + 1, nothing is the last point
Monad powerset_monad(std::size_t max_size = 8);

Report check_monad_laws(const Monad& m, std::size_t max_size, const LawMode& mode = {});

struct MonadMorphism {
    Monad src;
    Monad tgt;
    std::function<FinFn(std::size_t)> comp;
};
// just x |-> {x}, nothing |-> empty set.
MonadMorphism maybe_to_powerset();
Report check_monad_morphism(const MonadMorphism& m, std::size_t max_size, const LawMode& mode = {});

// T(J X), unit at J X, same star.
RelMonad restrict(const Monad& m, const SetFunctor& j);
RelMonadMorphism restrict_morphism(const MonadMorphism& s, const SetFunctor& j);

// ---------------- skew monoids ----------------

// mu_X = [(-)*] : Lan T (T X) -> T X for each object X.
std::vector<FinFn> mu_from_star(const Kan& kan, const RelMonad& t);
// k* = mu_Y . iota k
StarFn star_from_mu(const Kan& kan, const RelMonad& t, std::vector<FinFn> mu);
NatTrans mu_nat(const Kan& kan, const RelMonad& t, const std::vector<FinFn>& mu);  // T.T => T
Report skew_monoid_laws(const Kan& kan, const RelMonad& t, const std::vector<FinFn>& mu);
Report mu_star_roundtrip(const Kan& kan, const RelMonad& t, const LawMode& mode = {});
// Morphism laws in monoid form: sigma . eta = eta', sigma . mu = mu' . (sigma.sigma).
Report monoid_morphism_check(const Kan& kan, const RelMonadMorphism& s);

// ---------------- extension along J ----------------

struct ExtendStats {
    std::uint64_t alpha_formula = 0;  // alpha-bar^-1 built by the inverse formula
    std::uint64_t alpha_table = 0;    // alpha-bar^-1 by inverting a verified bijection
    json to_json() const;
};

// T# = Lan T, eta# = Lan eta . lambda-bar^-1, mu# = Lan mu . alpha-bar^-1, defined on sets of size <= max_size.
// Refuses (PreconditionError) when an inverse is unavailable.
Monad extend(std::shared_ptr<const Kan> kan, const RelMonad& t, std::size_t max_size,
             std::shared_ptr<ExtendStats> stats = nullptr);
MonadMorphism extend_morphism(std::shared_ptr<const Kan> kan, const RelMonadMorphism& s, const Monad& src_sharp,
                              const Monad& tgt_sharp);

// alpha-alpha_{T,J} at Y : Lan (T.J) Y -> T (Lan J Y), [lambda g. T(iota g)].
FinFn alpha_alpha(const Kan& kan, const Monad& m, const SetFunctor& tj, std::size_t y);
// Counit (restrict m)# -> m at Y: T(lambda-bar) . alpha-alpha.
FinFn counit_component(const Kan& kan, const Monad& m, const SetFunctor& tj, std::size_t y);

struct CoreflectionBounds {
    std::size_t max_size = 2;
    LawMode mode;
};
// Unit rho_T on t and the counit on m, with both triangle identities.
Report coreflection_check(std::shared_ptr<const Kan> kan, const RelMonad& t, const Monad& m,
                          const CoreflectionBounds& bounds = {});

// mu-flat by the composite mu_J . T(lambda-bar) . alpha-alpha versus mu_from_star(restrict m).
Report mu_flat_check(const Kan& kan, const Monad& m);

}  // namespace relmon
