#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace relmon {

using json = nlohmann::json;

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct Check {
    std::string law;
    Status status = Status::pass;
    std::uint64_t count = 0;
    json witness;   // null unless failed
    std::string reason;
    json detail;    // optional extra data
};

// Accumulates the outcome of one law over many instances; keeps the first counterexample.
class LawCheck {
public:
    explicit LawCheck(std::string law) : law_(std::move(law)) {}

    template <typename W>
    bool expect(bool ok, W&& witness) {
        ++count_;
        if (!ok && !failed_) {
            failed_ = true;
            witness_ = witness();
        }
        return ok;
    }
    bool expect(bool ok) {
        return expect(ok, [] { return json(); });
    }
    void fail(json witness) {
        ++count_;
        if (!failed_) {
            failed_ = true;
            witness_ = std::move(witness);
        }
    }

    bool failed() const { return failed_; }
    std::uint64_t count() const { return count_; }
    Check finish(json detail = {}) const;

private:
    std::string law_;
    std::uint64_t count_ = 0;
    bool failed_ = false;
    json witness_;
};

class Report {
public:
    Report() = default;
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    void add(Check c) { checks_.push_back(std::move(c)); }
    void add(const LawCheck& lc, json detail = {}) { add(lc.finish(std::move(detail))); }
    void pass(const std::string& law, std::uint64_t count = 1, json detail = {});
    void fail(const std::string& law, json witness, std::uint64_t count = 1);
    void skip(const std::string& law, const std::string& reason, json detail = {});
    void expect(const std::string& law, bool ok, json witness = {});
    // Appends the checks of `r`, prefixing their law names.
    void merge(const Report& r, const std::string& prefix = "");

    bool ok() const;
    const Check* first_failure() const;
    const Check* find(const std::string& law) const;
    const std::vector<Check>& checks() const { return checks_; }
    const std::string& suite() const { return suite_; }
    std::uint64_t total_count() const;

    // Checks sorted by law name; keys sorted.
    json to_json() const;

private:
    std::string suite_;
    std::vector<Check> checks_;
};

json check_to_json(const Check& c);

}  // namespace relmon
