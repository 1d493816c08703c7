// One line per acceptance criterion: PASS or FAIL with what was observed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <sys/wait.h>

#include "relmon/suites.hpp"

using namespace relmon;

namespace {

using Clock = std::chrono::steady_clock;

struct Timed {
    Report report;
    double seconds = 0;
};

std::map<std::string, Timed>& cache() {
    static std::map<std::string, Timed> c;
    return c;
}

const Timed& suite(const std::string& name) {
    auto it = cache().find(name);
    if (it != cache().end()) return it->second;
    auto start = Clock::now();
    Report r = run_suite(name);
    double s = std::chrono::duration<double>(Clock::now() - start).count();
    return cache().emplace(name, Timed{std::move(r), s}).first->second;
}

// Collects the reasons a criterion fails.
class Verdict {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) problems_.push_back(what);
    }
    void note(const std::string& s) { notes_.push_back(s); }
    bool ok() const { return problems_.empty(); }
    std::string text() const {
        std::ostringstream o;
        const auto& v = ok() ? notes_ : problems_;
        for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "; " : "") << v[i];
        return o.str();
    }

private:
    std::vector<std::string> problems_, notes_;
};

// Every check under the prefix passed (none failed or skipped), and there is at least one.
void all_pass(Verdict& v, const std::string& suite_name, const std::string& prefix) {
    const Timed& t = suite(suite_name);
    std::size_t n = 0;
    for (const auto& c : t.report.checks()) {
        if (c.law.rfind(prefix, 0) != 0) continue;
        ++n;
        if (c.status != Status::pass)
            v.require(false, c.law + " " + to_string(c.status) + (c.witness.is_null() ? "" : " " + c.witness.dump()));
    }
    v.require(n > 0, "no checks under " + prefix);
}

const Check* find(const std::string& suite_name, const std::string& law) { return suite(suite_name).report.find(law); }

void under_a_minute(Verdict& v, std::initializer_list<const char*> names) {
    for (const char* n : names) {
        double s = suite(n).seconds;
        v.require(s < 60, std::string(n) + " took " + std::to_string(s) + "s");
    }
}

std::uint64_t count(const std::string& suite_name, const std::string& law) {
    const Check* c = find(suite_name, law);
    return c ? c->count : 0;
}

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run(const std::string& cmd) {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Verdict c1() {
    Verdict v;
    all_pass(v, "vec", "vec/bool/laws/");
    all_pass(v, "powerset", "powerset/trivial/laws/");
    all_pass(v, "state", "state/relmonad/");
    all_pass(v, "cont", "cont/relmonad/");
    all_pass(v, "powerset", "powerset/restriction/laws/");
    for (const char* law : {"vec/bool/laws/associativity", "state/relmonad/associativity", "cont/relmonad/associativity",
                            "powerset/restriction/laws/associativity", "powerset/trivial/laws/associativity"}) {
        std::string s(law);
        const Check* c = find(s.substr(0, s.find('/')), law);
        v.require(c && c->detail.value("mode", "") == "exhaustive", std::string(law) + " not exhaustive");
    }
    under_a_minute(v, {"vec", "state", "cont", "powerset"});
    v.note("state associativity over " + std::to_string(count("state", "state/relmonad/associativity")) + " triples");
    return v;
}

Verdict c2() {
    Verdict v;
    all_pass(v, "lam", "lam/");
    const Check* b = find("lam", "lam/identity-substitution");
    v.require(b && b->detail["max_term"] == 5 && b->detail["max_scope"] == 2 && b->detail["max_entry"] == 3,
              "bounds are not terms <= 5, contexts <= 2, entries <= 3");
    const Check* w = find("lam", "lam/witness-counts");
    std::uint64_t id = w ? w->detail.value("identity", 0) : 0, as = w ? w->detail.value("associativity", 0) : 0;
    v.require(id > 1000, "identity checks " + std::to_string(id));
    v.require(as > 1000, "associativity checks " + std::to_string(as));
    under_a_minute(v, {"lam"});
    v.note("identity checks " + std::to_string(id) + ", associativity checks " + std::to_string(as));
    return v;
}

Verdict c3() {
    Verdict v;
    for (const char* law : {"kan-coherence/closed-form/times", "kan-coherence/closed-form/plus"}) {
        const Check* c = find("kan-coherence", law);
        v.require(c && c->status == Status::pass, std::string(law) + " did not pass");
        std::size_t fs = c ? c->detail["functors"].size() : 0;
        v.require(fs >= 5, std::string(law) + ": " + std::to_string(fs) + " functors");
        v.note(std::string(law) + " on " + std::to_string(fs) + " functors");
    }
    under_a_minute(v, {"kan-coherence"});
    return v;
}

Verdict c4() {
    Verdict v;
    all_pass(v, "kan-coherence", "kan-coherence/coherence/plus");
    const Check* c = find("kan-coherence", "kan-coherence/coherence/plus");
    v.require(c && c->detail["tuples"].size() >= 3, "fewer than 3 tuples");
    for (const char* law : {"kan-coherence/witness/alpha-bar-plus", "kan-coherence/witness/rho-times",
                            "kan-coherence/witness/lambda-bar-times"}) {
        const Check* w = find("kan-coherence", law);
        v.require(w && w->status == Status::pass && w->detail.contains("witness"), std::string(law) + " has no witness");
        if (w && w->detail.contains("witness")) v.note(std::string(law) + " " + w->detail["witness"]["kind"].get<std::string>());
    }
    return v;
}

Verdict c5() {
    Verdict v;
    all_pass(v, "wellbehaved", "wellbehaved/inclusion/");
    all_pass(v, "wellbehaved", "wellbehaved/point/");
    const Check* l = find("wellbehaved", "wellbehaved/inclusion/lan-preserving");
    std::uint64_t oou = l ? l->detail.value("out_of_universe", 0) : 0;
    v.require(oou > 0, "no out-of-universe verdicts at the boundary");
    v.note("L verified on " + std::to_string(l ? l->count : 0) + " instances, " + std::to_string(oou) +
           " out-of-universe verdicts");
    under_a_minute(v, {"wellbehaved"});
    return v;
}

Verdict c6() {
    Verdict v;
    all_pass(v, "wellbehaved", "wellbehaved/inverse/");
    all_pass(v, "wellbehaved", "wellbehaved/alpha-bar-constants-bijective");
    all_pass(v, "wellbehaved", "wellbehaved/rho-natural");
    v.note("rho " + std::to_string(count("wellbehaved", "wellbehaved/inverse/rho")) + ", lambda-bar " +
           std::to_string(count("wellbehaved", "wellbehaved/inverse/lambda-bar")) + ", alpha-bar " +
           std::to_string(count("wellbehaved", "wellbehaved/inverse/alpha-bar")) + " two-sided inverses");
    return v;
}

Verdict c7() {
    Verdict v;
    auto classes = [&](const std::string& law) {
        const Check* c = find("extend", law);
        return c && c->status == Status::pass ? c->detail.value("classes", -1) : -1;
    };
    int k3 = classes("extend/powerset-k3/class-count"), k2 = classes("extend/powerset-k2/class-count");
    v.require(k3 == 8, "k=3 class count " + std::to_string(k3));
    v.require(k2 == 7, "k=2 class count " + std::to_string(k2));
    all_pass(v, "extend", "extend/vec-bool/monad/");
    all_pass(v, "extend", "extend/mu-flat/powerset/");
    all_pass(v, "extend", "extend/mu-flat/maybe/");
    all_pass(v, "extend", "extend/");
    under_a_minute(v, {"extend"});
    v.note("class counts 8 (k=3) and 7 (k=2)");
    return v;
}

Verdict c8() {
    Verdict v;
    all_pass(v, "coreflection", "coreflection/");
    for (const char* t : {"powerset", "identity", "maybe"}) {
        std::string p = std::string("coreflection/") + t;
        all_pass(v, "coreflection", p + "/unit/bijective");
        all_pass(v, "coreflection", p + "/triangle-flat");
        all_pass(v, "coreflection", p + "/triangle-sharp");
    }
    const Check* b = find("coreflection", "coreflection/powerset/counit/bijectivity");
    v.require(b && b->detail["bijective_at_size"]["2"] == true && b->detail["bijective_at_size"]["3"] == false,
              "powerset counit bijectivity table differs");
    under_a_minute(v, {"coreflection"});
    if (b) v.note("powerset counit bijective at " + b->detail["bijective_at_size"].dump());
    return v;
}

Verdict c9() {
    Verdict v;
    all_pass(v, "roundtrips", "roundtrips/mu-star/");
    all_pass(v, "roundtrips", "roundtrips/em-alt/powerset/1/");
    all_pass(v, "roundtrips", "roundtrips/em-alt/powerset/2/");
    all_pass(v, "roundtrips", "roundtrips/em-sharp/");
    all_pass(v, "roundtrips", "roundtrips/");
    under_a_minute(v, {"roundtrips"});
    v.note(std::to_string(suite("roundtrips").report.checks().size()) + " round-trip checks, " +
           std::to_string(suite("roundtrips").report.total_count()) + " instances");
    return v;
}

Verdict c10() {
    Verdict v;
    all_pass(v, "kleisli", "kleisli/");
    all_pass(v, "kleisli", "kleisli/state-iso/");
    all_pass(v, "em", "em/state/");
    all_pass(v, "em", "em/vec-bool/bridge/");
    const Check* f = find("em", "em/state/same-families");
    v.require(f && f->detail["families"] == 256, "state EM families differ from 256");
    const Check* m = find("em", "em/vec-bool/bridge/em-laws");
    v.require(m && m->detail["modules"] == 45, "module count differs from 45");
    under_a_minute(v, {"kleisli", "em"});
    v.note("state: 256 families in bijection; Vec/Bool bridge on " + (m ? m->detail["modules"].dump() : "?") + " modules");
    return v;
}

Verdict c11() {
    Verdict v;
    for (const char* a : {"function", "maybe", "state"}) {
        std::string p = std::string("arrows/") + a;
        all_pass(v, "arrows", p + "/laws/");
        all_pass(v, "arrows", p + "/roundtrip/");
        all_pass(v, "arrows", p + "/freyd-is-kleisli/");
    }
    all_pass(v, "arrows", "arrows/transport/");
    all_pass(v, "arrows", "arrows/yoneda/fin1/");
    all_pass(v, "arrows", "arrows/yoneda/two-point-poset/");
    under_a_minute(v, {"arrows"});
    v.note("state arrow associativity over " + std::to_string(count("arrows", "arrows/state/laws/associativity")) +
           " triples");
    return v;
}

Verdict c12() {
    Verdict v;
    std::string cli = RELMON_CLI;
    auto start = Clock::now();
    Run a = run("'" + cli + "' laws --suite all --seed 42");
    Run b = run("'" + cli + "' laws --suite all --seed 42");
    v.require(a.exit_code == 0 && b.exit_code == 0,
              "exit codes " + std::to_string(a.exit_code) + ", " + std::to_string(b.exit_code));
    v.require(!a.out.empty() && a.out == b.out, "reports differ");
    v.require(!a.out.empty() && a.out.back() == '\n', "report not newline-terminated");
    auto mid = Clock::now();
    Run d = run("'" + cli + "' laws --suite all");
    double full = std::chrono::duration<double>(Clock::now() - mid).count();
    v.require(d.exit_code == 0, "default run exit code " + std::to_string(d.exit_code));
    v.require(full <= 300, "default run took " + std::to_string(full) + "s");
    double both = std::chrono::duration<double>(mid - start).count();
    v.note(std::to_string(a.out.size()) + " identical bytes; default run " + std::to_string(full).substr(0, 5) +
           "s; seeded pair " + std::to_string(both).substr(0, 5) + "s");
    return v;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"relative-monad laws", c1},       {"lambda-term laws", c2},       {"Kan closed forms", c3},
        {"skew but not monoidal", c4},     {"well-behavedness", c5},       {"monoidality inverses", c6},
        {"extension", c7},                 {"coreflection", c8},           {"round trips", c9},
        {"Kleisli and EM", c10},           {"arrows", c11},                {"determinism", c12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        failed += !v.ok();
        std::cout << (v.ok() ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << v.text() << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
    return failed ? 1 : 0;
}
