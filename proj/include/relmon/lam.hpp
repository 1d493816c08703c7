#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relmon/error.hpp"
#include "relmon/finset.hpp"
#include "relmon/shallow.hpp"

namespace relmon {

// Well-scoped untyped lambda terms with de Bruijn indices.
// Stored in prefix order: token 0 is an application, 1 an abstraction, and v + 2 the variable v.
struct Term {
    std::size_t scope = 0;
    std::vector<std::uint32_t> code;

    std::size_t size() const { return code.size(); }
    friend bool operator==(const Term&, const Term&) = default;
    friend auto operator<=>(const Term&, const Term&) = default;
};

class ScopeError : public Error {
public:
    ScopeError(const std::string& what, std::size_t index) : Error(what), index(index) {}
    std::size_t index;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position) : Error(what), position(position) {}
    std::size_t position;
};

inline constexpr std::uint32_t kApp = 0;
inline constexpr std::uint32_t kAbs = 1;
inline constexpr std::uint32_t kVar0 = 2;

Term var(std::size_t scope, std::size_t i);
Term app(const Term& f, const Term& a);
Term abs(const Term& body);  // body has scope n+1, result scope n

// Throws ScopeError naming the first out-of-scope index.
void check_scope(const Term& t);

Term parse_term(const std::string& text, std::size_t scope);
std::string print_term(const Term& t);

// A substitution from scope src to scope tgt: one term of scope tgt per variable.
struct Subst {
    std::size_t src = 0;
    std::size_t tgt = 0;
    std::vector<Term> table;
};

Subst identity_subst(std::size_t n);
Subst lift(const Subst& s);  // Var 0 :: shift . s
Term subst(const Term& t, const Subst& s);
// Also reports where each token of t landed in the result.
Term subst(const Term& t, const Subst& s, std::vector<std::size_t>* positions);
// Renaming along f : m -> n.
Term rename(const Term& t, const std::vector<std::uint32_t>& f, std::size_t tgt);
Term shift(const Term& t, std::size_t by = 1);

// Token position of the leftmost-outermost redex.
std::optional<std::size_t> first_redex(const Term& t);
// Contracts the redex whose application token is at pos.
Term contract_at(const Term& t, std::size_t pos);
std::optional<Term> beta_step(const Term& t);

struct NormalizeResult {
    Term term;
    bool normal = false;  // false when fuel ran out
    std::size_t steps = 0;
};
NormalizeResult normalize(const Term& t, std::size_t fuel);

// All terms of the scope with exactly / at most the given size.
const std::vector<Term>& terms_of_size(std::size_t scope, std::size_t size);
std::vector<Term> terms_up_to(std::size_t scope, std::size_t max_size);

ShallowRelMonad<std::size_t, Term> lam_relmonad();
// Terms of size <= max_term in each scope <= max_scope; substitution entries of size <= max_entry.
ShallowGen<std::size_t, Term> lam_gen(std::size_t max_scope, std::size_t max_term, std::size_t max_entry);

// t ->beta t' implies t[s] ->beta t'[s] at the matching position; checked on enumerated terms.
Report beta_stability_check(std::size_t max_scope, std::size_t max_term, std::size_t max_entry);
// rename agrees with subst along variable substitutions; renaming is functorial.
Report rename_laws(std::size_t max_scope, std::size_t max_term);

}  // namespace relmon
