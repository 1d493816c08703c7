#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    Run r;
    std::string cmd = std::string("'") + RELMON_CLI + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string spec(const std::string& name) { return std::string("'") + RELMON_SPEC_DIR + "/" + name + "'"; }

}  // namespace

TEST_CASE("laws exit codes") {
    CHECK(cli("laws --suite vec --size-cap 2").code == 0);
    CHECK(cli("laws --suite nosuch").code == 2);
    CHECK(cli("laws").code == 2);
    CHECK(cli("laws --suite vec --seed notanumber").code == 2);
    Run r = cli("laws --suite cont");
    CHECK(r.out.back() == '\n');
    CHECK(r.out.find("wall_clock") == std::string::npos);
    CHECK(cli("laws --suite cont --timing").out.find("wall_clock_seconds") != std::string::npos);
}

TEST_CASE("kan command") {
    CHECK(cli("kan --spec " + spec("plus_constant.json") + " --functor F --object 2").out.find("\"classes\": 4") !=
          std::string::npos);
    CHECK(cli("kan --spec " + spec("empty.json") + " --functor Empty --object 2").out.find("\"classes\": 0") !=
          std::string::npos);
    CHECK(cli("kan --spec " + spec("powerset_truncated.json") + " --functor P --object 3").out.find("\"classes\": 7") !=
          std::string::npos);
    Run a = cli("kan --spec " + spec("plus_constant.json") + " --functor F --object 2");
    CHECK(a.out == cli("kan --spec " + spec("plus_constant.json") + " --functor F --object 2").out);
    CHECK(cli("kan --spec /nonexistent.json --functor F --object 1").code == 2);
}

TEST_CASE("lam command") {
    Run nf = cli("lam nf '(\\ 0) 0' --scope 1");
    CHECK(nf.code == 0);
    CHECK(nf.out == "0\n");
    Run s = cli("lam subst '0 1' --scope 2 --with '\\ 0' --with '0' --tgt-scope 1");
    CHECK(s.code == 0);
    CHECK(s.out == "(\\ 0) 0\n");
    CHECK(cli("lam nf '(\\ 0 0) (\\ 0 0)' --fuel 10").code == 3);
    CHECK(cli("lam nf '(0' --scope 1").code == 2);
    CHECK(cli("lam nf '1' --scope 1").code == 2);
    CHECK(cli("lam subst '0 1' --scope 2 --with '0'").code == 2);
}
