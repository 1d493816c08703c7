#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relmon/error.hpp"
#include "relmon/report.hpp"

namespace relmon {

struct SuiteOptions {
    std::optional<std::size_t> size_cap;  // clamps every enumerated size bound
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    std::size_t truncation = 2;           // k of the finite-set skeleton
    std::uint64_t budget = 1000000;
    json to_json() const;
};

class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& name) : Error("unknown suite: " + name), name(name) {}
    std::string name;
};

// Every suite name except "all", in the order "all" runs them.
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite (merged under its name) for "all". Budget overflows become skipped checks.
Report run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace relmon
