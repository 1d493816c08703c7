// relmon: law suites, Kan extensions from spec files, and lambda terms.
//
// Exit codes: 0 pass or skipped, 1 law failure, 2 input error, 3 fuel exhausted.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "relmon/lam.hpp"
#include "relmon/spec_io.hpp"
#include "relmon/suites.hpp"

using namespace relmon;

namespace {

constexpr int kPass = 0, kLawFailure = 1, kInputError = 2, kFuelExhausted = 3;

int input_error(const std::string& msg, json where = {}) {
    json e{{"error", msg}};
    if (!where.is_null()) e.update(where);
    std::cerr << e.dump() << "\n";
    return kInputError;
}

// Writes the document with sorted keys and a final newline.
int emit(const json& doc, const std::string& out) {
    std::string text = doc.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return kPass;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) return input_error("cannot write " + out, {{"path", out}});
    f << text;
    return kPass;
}

json summary(const Report& r) {
    std::uint64_t pass = 0, fail = 0, skipped = 0;
    for (const auto& c : r.checks()) {
        if (c.status == Status::pass) ++pass;
        if (c.status == Status::fail) ++fail;
        if (c.status == Status::skipped) ++skipped;
    }
    return json{{"pass", pass}, {"fail", fail}, {"skipped", skipped}, {"instances", r.total_count()}};
}

int report_failure(const Report& r) {
    const Check* f = r.first_failure();
    if (!f) return kPass;
    std::cerr << "law failure: " << f->law << "\n" << f->witness.dump() << "\n";
    return kLawFailure;
}

struct LawsArgs {
    std::string suite;
    std::optional<std::size_t> size_cap;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    std::uint64_t budget = 1000000;
    std::size_t truncation = 2;
    std::string spec;
    std::string out;
    bool timing = false;
};

int cmd_laws(const LawsArgs& a) {
    if (a.suite.empty() && a.spec.empty()) return input_error("laws needs --suite or --spec");
    SuiteOptions opt;
    opt.size_cap = a.size_cap;
    opt.seed = a.seed;
    opt.samples = a.samples;
    opt.budget = a.budget;
    opt.truncation = a.truncation;
    auto start = std::chrono::steady_clock::now();
    Report r(a.suite.empty() ? "spec" : a.suite);
    if (!a.suite.empty()) {
        try {
            r.merge(run_suite(a.suite, opt));
        } catch (const UnknownSuite& e) {
            json names = suite_names();
            names.push_back("all");
            return input_error(e.what(), {{"suites", names}});
        }
    }
    if (!a.spec.empty()) {
        try {
            set_budget(a.budget);
            r.merge(check_spec(load_spec_file(a.spec)), "spec");
        } catch (const SpecError& e) {
            return input_error(e.what(), {{"pointer", e.pointer}, {"path", a.spec}});
        } catch (const EnumerationOverflow& e) {
            r.skip("spec", std::string("budget: ") + e.what());
        }
    }
    json doc = r.to_json();
    doc["options"] = opt.to_json();
    if (!a.spec.empty()) doc["options"]["spec"] = a.spec;
    doc["summary"] = summary(r);
    if (a.timing)
        doc["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (int rc = emit(doc, a.out)) return rc;
    return report_failure(r);
}

int cmd_kan(const std::string& spec_path, const std::string& functor, std::size_t object, const std::string& out,
            std::uint64_t budget) {
    set_budget(budget);
    try {
        Spec s = load_spec_file(spec_path);
        Report checked = check_spec(s);
        if (!checked.ok()) return report_failure(checked);
        return emit(kan_query(s, functor, object), out);
    } catch (const SpecError& e) {
        return input_error(e.what(), {{"pointer", e.pointer}, {"path", spec_path}});
    } catch (const EnumerationOverflow& e) {
        return input_error(e.what(), {{"count", e.count}, {"budget", e.budget}});
    }
}

int cmd_lam(const std::string& action, const std::string& text, std::size_t scope, std::size_t fuel,
            const std::vector<std::string>& with, std::optional<std::size_t> tgt_scope) {
    std::string which = "term";
    try {
        Term t = parse_term(text, scope);
        if (action == "nf") {
            NormalizeResult n = normalize(t, fuel);
            if (!n.normal) {
                std::cout << "fuel-exhausted after " << n.steps << " steps: " << print_term(n.term) << "\n";
                return kFuelExhausted;
            }
            std::cout << print_term(n.term) << "\n";
            return kPass;
        }
        if (with.size() != scope)
            return input_error("subst needs one --with per variable in scope",
                               {{"scope", scope}, {"entries", with.size()}});
        Subst s{scope, tgt_scope.value_or(scope), {}};
        for (std::size_t i = 0; i < with.size(); ++i) {
            which = "with[" + std::to_string(i) + "]";
            s.table.push_back(parse_term(with[i], s.tgt));
        }
        std::cout << print_term(subst(t, s)) << "\n";
        return kPass;
    } catch (const ParseError& e) {
        return input_error(e.what(), {{"input", which}, {"position", e.position}});
    } catch (const ScopeError& e) {
        return input_error(e.what(), {{"input", which}, {"index", e.index}});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative monads on finite data: law suites, Kan extensions, lambda terms"};
    app.require_subcommand(1);

    std::uint64_t budget = 1000000;
    if (const char* env = std::getenv("RELMON_BUDGET")) {
        try {
            budget = std::stoull(env);
        } catch (const std::exception&) {
            return input_error("RELMON_BUDGET is not a number", {{"value", env}});
        }
    }

    LawsArgs la;
    la.budget = budget;
    auto* laws = app.add_subcommand("laws", "run a law suite or check a spec file");
    laws->add_option("--suite", la.suite, "suite name, or all");
    laws->add_option("--size-cap", la.size_cap, "upper bound on enumerated sizes");
    laws->add_option("--seed", la.seed, "seed for sampled checks and random functors");
    laws->add_option("--samples", la.samples, "samples per sampled check");
    laws->add_option("--budget", la.budget, "enumeration budget");
    laws->add_option("--truncation", la.truncation, "k of the finite-set skeleton");
    laws->add_option("--spec", la.spec, "spec file whose payloads are checked");
    laws->add_option("--out", la.out, "report path (default stdout)");
    laws->add_flag("--timing", la.timing, "add wall-clock seconds to the report");

    std::string kspec, kfunctor, kout;
    std::size_t kobject = 0;
    std::uint64_t kbudget = budget;
    auto* kan = app.add_subcommand("kan", "Lan_J F X for a spec file");
    kan->add_option("--spec", kspec, "spec file")->required();
    kan->add_option("--functor", kfunctor, "functor name")->required();
    kan->add_option("--object", kobject, "size of the set X")->required();
    kan->add_option("--out", kout, "report path (default stdout)");
    kan->add_option("--budget", kbudget, "enumeration budget");

    std::string action, text;
    std::size_t scope = 0, fuel = 1000;
    std::optional<std::size_t> tgt_scope;
    std::vector<std::string> with;
    auto* lam = app.add_subcommand("lam", "normalize or substitute a de Bruijn term");
    lam->add_option("action", action, "nf or subst")->required()->check(CLI::IsMember({"nf", "subst"}));
    lam->add_option("term", text, "term text, e.g. \"(\\\\ 0) 0\"")->required();
    lam->add_option("--scope", scope, "number of free variables");
    lam->add_option("--fuel", fuel, "beta steps before giving up");
    lam->add_option("--with", with, "substitution entry for each variable, in order");
    lam->add_option("--tgt-scope", tgt_scope, "scope of the substitution entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kInputError;
    }

    try {
        if (*laws) return cmd_laws(la);
        if (*kan) return cmd_kan(kspec, kfunctor, kobject, kout, kbudget);
        return cmd_lam(action, text, scope, fuel, with, tgt_scope);
    } catch (const Error& e) {
        return input_error(e.what());
    }
}
