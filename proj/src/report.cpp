#include "relmon/report.hpp"

#include <algorithm>

namespace relmon {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

Check LawCheck::finish(json detail) const {
    Check c;
    c.law = law_;
    c.count = count_;
    c.status = failed_ ? Status::fail : Status::pass;
    if (failed_) c.witness = witness_;
    c.detail = std::move(detail);
    return c;
}

void Report::pass(const std::string& law, std::uint64_t count, json detail) {
    add(Check{law, Status::pass, count, {}, {}, std::move(detail)});
}

void Report::fail(const std::string& law, json witness, std::uint64_t count) {
    add(Check{law, Status::fail, count, std::move(witness), {}, {}});
}

void Report::skip(const std::string& law, const std::string& reason, json detail) {
    add(Check{law, Status::skipped, 0, {}, reason, std::move(detail)});
}

void Report::expect(const std::string& law, bool ok, json witness) {
    if (ok)
        pass(law);
    else
        fail(law, std::move(witness));
}

void Report::merge(const Report& r, const std::string& prefix) {
    for (Check c : r.checks_) {
        if (!prefix.empty()) c.law = prefix + "/" + c.law;
        checks_.push_back(std::move(c));
    }
}

bool Report::ok() const { return first_failure() == nullptr; }

const Check* Report::first_failure() const {
    for (const auto& c : checks_)
        if (c.status == Status::fail) return &c;
    return nullptr;
}

const Check* Report::find(const std::string& law) const {
    for (const auto& c : checks_)
        if (c.law == law) return &c;
    return nullptr;
}

std::uint64_t Report::total_count() const {
    std::uint64_t n = 0;
    for (const auto& c : checks_) n += c.count;
    return n;
}

json check_to_json(const Check& c) {
    json j;
    j["law"] = c.law;
    j["status"] = to_string(c.status);
    j["count"] = c.count;
    if (c.status == Status::fail && !c.witness.is_null()) j["witness"] = c.witness;
    if (c.status == Status::skipped) j["reason"] = c.reason;
    if (!c.detail.is_null()) j["detail"] = c.detail;
    return j;
}

json Report::to_json() const {
    std::vector<const Check*> sorted;
    for (const auto& c : checks_) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Check* a, const Check* b) { return a->law < b->law; });
    json j;
    j["suite"] = suite_;
    j["ok"] = ok();
    json arr = json::array();
    for (const Check* c : sorted) arr.push_back(check_to_json(*c));
    j["checks"] = std::move(arr);
    return j;
}

}  // namespace relmon
