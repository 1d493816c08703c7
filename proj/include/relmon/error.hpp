#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relmon {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CompositionError : public Error {
public:
    CompositionError(std::size_t outer_dom, std::size_t inner_cod, const std::string& what)
        : Error(what), outer_dom(outer_dom), inner_cod(inner_cod) {}
    std::size_t outer_dom;
    std::size_t inner_cod;
};

// Raised when an enumeration would exceed the configured budget.
class EnumerationOverflow : public Error {
public:
    EnumerationOverflow(std::uint64_t count, std::uint64_t budget, const std::string& what)
        : Error(what), count(count), budget(budget) {}
    std::uint64_t count;
    std::uint64_t budget;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

// A construction needs an object the truncated universe does not contain.
class OutOfUniverse : public Error {
public:
    OutOfUniverse(std::size_t size, const std::string& what) : Error(what), size(size) {}
    std::size_t size;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

std::uint64_t budget();
void set_budget(std::uint64_t b);

// Multiplies or exponentiates, throwing EnumerationOverflow once the result passes `limit`.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t limit);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit);

}  // namespace relmon
