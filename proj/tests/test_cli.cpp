#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "thom/corpus.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(THOM_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    int status = pclose(p);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("homology of corpus instances through the CLI") {
    auto r = run("homology torus --degree 0..2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("H0 = Z") != std::string::npos);
    CHECK(r.out.find("H1 = Z^2") != std::string::npos);
    CHECK(r.out.find("H2 = Z") != std::string::npos);

    auto pt = run("homology point --degree 0..1");
    CHECK(pt.out.find("H0 = Z") != std::string::npos);
    CHECK(pt.out.find("H1 = 0") != std::string::npos);

    auto mod = run("homology circle --degree 1 --coeffs Z/5");
    CHECK(mod.out.find("H1 = Z/5") != std::string::npos);
}

TEST_CASE("steenrod and cech of the solenoid through the CLI") {
    auto st = run("steenrod solenoid2 --degree 0..1");
    CHECK(st.exit_code == 0);
    CHECK(st.out.find("H1 = 0") != std::string::npos);
    CHECK(st.out.find("reduced-H0 = Z_2-adic/Z") != std::string::npos);

    auto ch = run("cech solenoid2 --degree 1");
    CHECK(ch.exit_code == 0);
    CHECK(ch.out.find("H^1 = Z[1/2]") != std::string::npos);
    CHECK(ch.out.find("rational-rank H^1: 1") != std::string::npos);
}

TEST_CASE("corrupted instances exit 3 with cell diagnostics") {
    auto r = run("homology corrupted --degree 0");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("validation error") != std::string::npos);
    CHECK(r.out.find("f") != std::string::npos);
}

TEST_CASE("schema errors exit 2") {
    auto r = run("homology /dev/null --degree 0");
    CHECK(r.exit_code == 2);
}

TEST_CASE("unsupported periodic bondings exit 4") {
    // wedge of two circles with a shear bonding: the induced map on H1 is
    // not monomial, so the lim/lim1 oracle refuses it
    std::string path = "/tmp/thom-shear-tower.json";
    {
        std::string level = R"({"cells":[
            {"id":"v","dim":0,"boundary":[]},
            {"id":"a","dim":1,"boundary":[["v","1"],["v","-1"]]},
            {"id":"b","dim":1,"boundary":[["v","1"],["v","-1"]]}]})";
        std::string bonding =
            R"({"v":[["v","1"]],"a":[["a","1"],["b","1"]],"b":[["b","1"]]})";
        std::string doc = std::string("{\"kind\":\"tower\",\"levels\":[") + level + "," + level +
                          "," + level + "],\"bondings\":[" + bonding + "," + bonding +
                          "],\"tail\":{\"policy\":\"eventually-periodic\",\"from\":0,\"period\":1}}";
        FILE* f = fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        fputs(doc.c_str(), f);
        fclose(f);
    }
    auto r = run("steenrod " + path + " --degree 1");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("unsupported bonding") != std::string::npos);
}

TEST_CASE("verify suites pass and reports are byte-identical per seed") {
    auto a = run("verify duality --trials 40 --seed 7 --format json");
    auto b = run("verify duality --trials 40 --seed 7 --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run("verify duality --trials 40 --seed 8 --format json");
    CHECK(c.exit_code == 0);

    auto chi = run("verify chi --trials 30 --seed 3");
    CHECK(chi.exit_code == 0);
    auto vacuous = run("verify chi --trials 0 --seed 3");
    CHECK(vacuous.exit_code == 0);
    CHECK(vacuous.out.find("vacuous") != std::string::npos);
}

TEST_CASE("corpus listing and export") {
    auto r = run("corpus list");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("solenoid2") != std::string::npos);
    auto s = run("corpus show circle");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("\"kind\": \"complex\"") != std::string::npos);
}
