#pragma once

#include "relmon/relmonad.hpp"

namespace relmon {

// Kleisli category: objects of the base, hom(X, Y) = maps J X -> T Y numbered by fn_index,
// identity eta, composition l* . k.
struct KleisliCat {
    RelMonad t;
    CatPtr cat;
    FinFn arrow(Obj x, Obj y, Elem i) const { return fn_from_index(i, t.J().at(x), t.T(y)); }
};

KleisliCat kleisli_build(const RelMonad& t);
// L f = eta . J f and R k = k*.
CatFunctor kleisli_left(const KleisliCat& k);
SetFunctor kleisli_right(const KleisliCat& k);
// Category laws, functoriality of L and R, R . L = T, naturality of the identity hom bijection.
Report kleisli_adjunction_check(const RelMonad& t);

// Relative EM-algebra: chi[z][fn_index(f)] : T z -> X for each f : J z -> X.
struct EMAlgebra {
    std::size_t carrier = 0;
    std::vector<std::vector<FinFn>> chi;
    const FinFn& at(Obj z, const FinFn& f) const { return chi[z][fn_index(f)]; }
    friend bool operator==(const EMAlgebra&, const EMAlgebra&) = default;
};

json to_json(const EMAlgebra& a);

// (T x, k |-> k*)
EMAlgebra free_algebra(const RelMonad& t, Obj x);
// f = chi f . eta and chi (chi f . k) = chi f . k*.
Report em_check(const RelMonad& t, const EMAlgebra& a, const LawMode& mode = {});
bool em_lawful(const RelMonad& t, const EMAlgebra& a);
// h . chi f = chi' (h . f)
bool is_em_morphism(const RelMonad& t, const EMAlgebra& a, const EMAlgebra& b, const FinFn& h);
// Every lawful structure on a carrier of the given size, by enumerating the maps the unit law leaves free.
std::vector<EMAlgebra> enumerate_em_algebras(const RelMonad& t, std::size_t carrier);

// x : Lan T X -> X.
struct EMAltAlgebra {
    std::size_t carrier = 0;
    FinFn x;
    friend bool operator==(const EMAltAlgebra&, const EMAltAlgebra&) = default;
};

// Context for the alternative format: the Kan extensions along J and mu = [(-)*].
struct EMAltContext {
    std::shared_ptr<const Kan> kan;
    RelMonad t;
    NatTrans mu;  // T.T => T
    EMAltContext(std::shared_ptr<const Kan> kan, RelMonad t);
};

// x . Lan eta = lambda-bar and x . Lan mu = x . Lan T x . alpha-bar.
Report em_alt_check(const EMAltContext& c, const EMAltAlgebra& a);
bool is_em_alt_morphism(const EMAltContext& c, const EMAltAlgebra& a, const EMAltAlgebra& b, const FinFn& h);
EMAltAlgebra em_to_alt(const EMAltContext& c, const EMAlgebra& a);   // x = [chi]
EMAlgebra alt_to_em(const EMAltContext& c, const EMAltAlgebra& a);   // chi g = x . iota g
// Over all x : Lan T X -> X: the two law sets agree, both round trips are exact, morphisms transfer.
Report em_alt_roundtrip(const EMAltContext& c, std::size_t carrier);

// ---------------- splittings ----------------

// A relative adjunction L -| R along J with R . L = T. phi[x][y] maps the arrows L x -> y of d
// to fn indices of J x -> R y.
struct Splitting {
    std::string name;
    CatPtr d;
    CatFunctor left;
    SetFunctor right;
    std::vector<std::vector<std::vector<std::uint64_t>>> phi;
};

// phi bijective and natural; R . L = T on objects; the induced unit and star are those of t.
Report check_splitting(const RelMonad& t, const Splitting& s);
Splitting kleisli_splitting(const KleisliCat& k);

// Lawful algebras on carriers of size <= max_carrier, with all algebra maps as arrows.
struct EMCat {
    RelMonad t;
    std::vector<EMAlgebra> algebras;
    CatPtr cat;
    std::vector<std::vector<FinFn>> maps;  // [a * n + b] -> underlying functions by arrow index
    const FinFn& map(Obj a, Obj b, Elem i) const { return maps[a * algebras.size() + b][i]; }
    std::optional<Obj> find(const EMAlgebra& a) const;
    std::optional<Elem> find_map(Obj a, Obj b, const FinFn& h) const;
};

EMCat em_category(const RelMonad& t, std::size_t max_carrier);
// L x = free algebra on x (must be among the enumerated algebras), R = forgetful.
Splitting em_splitting(const EMCat& em);

struct SplittingMorphisms {
    CatFunctor from_kleisli;
    CatFunctor to_em;
    Report report;
};

// V X = L X, V k = phi^-1 k; W Y = (R Y, f |-> R (phi^-1 f)), W h = R h; each checked against the
// splitting-morphism equations, and uniqueness by enumerating all candidates that satisfy them.
SplittingMorphisms splitting_morphisms(const RelMonad& t, const KleisliCat& kl, const EMCat& em, const Splitting& s);

// ---------------- comparisons along restriction and extension ----------------

// Ordinary algebras a : T A -> A of a monad.
struct MonadAlgebra {
    std::size_t carrier = 0;
    FinFn a;
    friend bool operator==(const MonadAlgebra&, const MonadAlgebra&) = default;
};
Report monad_algebra_check(const Monad& m, const MonadAlgebra& a);
std::vector<MonadAlgebra> enumerate_monad_algebras(const Monad& m, std::size_t carrier);

// D : Kl(T-flat) -> Kl(T), k |-> k, and E : EM(T) -> EM(T-flat), chi f = a . T f.
Report comparison_flat(const Monad& m, const SetFunctor& j, std::size_t max_carrier = 2);
// D : Kl(T) -> Kl(T#), k |-> rho . k, fully faithful; E : EM(T#) -> EM(T) and its inverse.
Report comparison_sharp(std::shared_ptr<const Kan> kan, const RelMonad& t, std::size_t max_size,
                        std::size_t max_carrier = 2);

// ---------------- modules over a finite semiring ----------------

struct FiniteSemiring;

// (M, 0, +, .) with smul[r * |M| + m] = r . m.
struct Semimodule {
    std::size_t size = 0;
    Elem zero = 0;
    std::vector<Elem> add;
    std::vector<Elem> smul;
    friend bool operator==(const Semimodule&, const Semimodule&) = default;
};

Report semimodule_check(const FiniteSemiring& r, const Semimodule& m);
// All modules over Bool of the given size (idempotent commutative monoids).
std::vector<Semimodule> bool_semimodules(std::size_t size);
// chi_n f g = sum_i f i . g i on the Vec relative monad.
EMAlgebra module_to_em(const FiniteSemiring& r, const RelMonad& vec, const Semimodule& m);
// 0 = chi_0, a + b = chi_2 (a, b) (1, 1), r . a = chi_1 (a) (r).
Semimodule em_to_module(const FiniteSemiring& r, const RelMonad& vec, const EMAlgebra& a);
// Both round trips on the given modules, and every lawful structure on carriers <= max_carrier comes from a module.
Report vec_em_bridge(const FiniteSemiring& r, const RelMonad& vec, const std::vector<Semimodule>& modules,
                     std::size_t max_carrier = 2);

// ---------------- state relative monad ----------------

// Natural families chi on carrier X versus maps X^S x S -> X, and the lawful ones among them.
Report state_em_check(std::size_t s, std::size_t x);

}  // namespace relmon
