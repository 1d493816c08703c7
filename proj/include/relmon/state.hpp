#pragma once

#include "relmon/relmonad.hpp"

namespace relmon {

// J X = X x S on a subuniverse, with T = J, unit = id and k* = k.
RelMonad state_relmonad(std::size_t s, const std::vector<std::size_t>& sizes = {0, 1, 2});
// The ordinary state monad (X x S)^S.
Monad state_monad(std::size_t s, std::size_t max_size = 3);
// Currying X x S -> Y x S to X -> (Y x S)^S: bijective on homs, preserves identities and composition.
Report state_kleisli_iso(std::size_t s, const std::vector<std::size_t>& sizes = {0, 1, 2});

// J X = R^X on the opposite of a subuniverse, with T = J.
RelMonad cont_relmonad(std::size_t r, const std::vector<std::size_t>& sizes = {0, 1});
// |R^X -> R^Y| against the continuation monad's |Y -> R^(R^X)|.
Report cont_kleisli_counts(std::size_t r, const std::vector<std::size_t>& sizes = {0, 1});

}  // namespace relmon
