#pragma once

#include <map>
#include <optional>
#include <string>

#include "relmon/arrows.hpp"

namespace relmon {

// A malformed spec document; pointer is the JSON pointer of the offending value.
class SpecError : public Error {
public:
    SpecError(std::string pointer, const std::string& what) : Error(what), pointer(std::move(pointer)) {}
    std::string pointer;
};

// A "relmon/1" document:
//   category  {"builtin": "fin_skeleton", "k"} | {"builtin": "subuniverse", "sizes"} |
//             {"builtin": "discrete", "objects"} | {"builtin": "poset", "objects", "leq"} |
//             {"objects", "homs": [[size]], "comp": [x][y][z] -> table, "ids"}
//   functors  name -> {"builtin": "inclusion" | "plus_constant" (e) | "times_constant" (s) |
//             "exp_constant" (s) | "constant" (value) | "powerset", "of": inner functor} |
//             {"objects": [size], "arrows": [x][y][i] -> table}
//   j         name of the functor to extend along (default "J" when present)
//   arrow     {"cells": [[size]], "pure": [x][y] -> table, "comp": [x][y][z] -> table}
//   relmonad  {"j", "t": [size], "unit": [table], "star": [x][y][k] -> table} |
//             {"builtin": "restrict", "monad": "identity" | "maybe" | "powerset", "j"}
//   description  free text
struct Spec {
    CatPtr category;
    std::map<std::string, SetFunctor> functors;
    std::optional<std::string> j;
    std::optional<ArrowData> arrow;
    std::optional<RelMonad> relmonad;
};

Spec load_spec(const json& doc);
// Parse errors are reported as SpecError at the root pointer.
Spec load_spec_file(const std::string& path);

// Category laws, functoriality of every functor, and the laws of the arrow and relative-monad payloads.
Report check_spec(const Spec& s);

// Lan_J F X for the document's J: class count, a representative per class and the iota tables.
json kan_query(const Spec& s, const std::string& functor, std::size_t x);

}  // namespace relmon
