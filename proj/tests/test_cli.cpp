#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <string>

#ifndef QSKA_CLI_PATH
#error "QSKA_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("'") + QSKA_CLI_PATH + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("op apply prints the canonical image") {
    RunResult r = run_cli("op apply --name Y --to chi:1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1/1*s^4 + -1/1 / 1/1*s^2\n"); // q - q^-1
}

TEST_CASE("op compose of the two shifts is the identity") {
    RunResult r = run_cli("op compose --names Tplus,Tminus --format json");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["terms"].size() == 1);
    CHECK(doc["terms"][0]["shift"].get<int>() == 0);
    CHECK(doc["terms"][0]["num"].get<std::string>() == "1/1");
    CHECK(doc["terms"][0]["den"].get<std::string>() == "1/1");
}

TEST_CASE("op equal resolves aliases") {
    RunResult r = run_cli("op equal --lhs tau --rhs Y");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "true\n");
    RunResult rf = run_cli("op equal --lhs Tplus --rhs Tminus");
    CHECK(rf.exit_code == 0);
    CHECK(rf.out == "false\n");
}

TEST_CASE("op apply accepts parameter assignments") {
    RunResult generic = run_cli("op apply --name mu --to chi:0");
    RunResult special = run_cli("op apply --name mu --to chi:0 --params a=2,b=1/3");
    CHECK(generic.exit_code == 0);
    CHECK(special.exit_code == 0);
    CHECK(generic.out != special.out);
    CHECK_FALSE(contains(special.out, "a^1"));
}

TEST_CASE("verify rejects unknown suites and flag combinations") {
    CHECK(run_cli("verify --suite BOGUS_ID").exit_code == 2);
    CHECK(run_cli("verify --suite all --suite FACT1").exit_code == 2);
}

TEST_CASE("verify exit codes encode the outcome") {
    CHECK(run_cli("verify --suite FACT1").exit_code == 0);
    CHECK(run_cli("verify --suite APPENDIX_01").exit_code == 3);
    CHECK(run_cli("verify --suite X_CLEARED").exit_code == 1);
}

TEST_CASE("verify json report is schema-shaped and seeded") {
    RunResult r = run_cli("verify --suite FACT1,GAMMA --format json --seed 9");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["seed"].get<std::uint64_t>() == 9);
    REQUIRE(doc["results"].size() == 2);
    CHECK(doc["results"][0]["id"].get<std::string>() == "FACT1");
    CHECK(doc["results"][1]["id"].get<std::string>() == "GAMMA");
    for (const auto& e : doc["results"]) CHECK(e["status"].get<std::string>() == "pass");
}

TEST_CASE("aw eval prints the chi expansion") {
    RunResult r = run_cli("aw eval --n 1 --base 2 --params generic");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "1: -1/1*a^1*b^1*c^1*d^1 + 1/1 / 1/1"));
    RunResult r0 = run_cli("aw eval --n 0 --base 1 --params generic");
    CHECK(r0.exit_code == 0);
    CHECK(contains(r0.out, "0: 1/2 / 1/1"));
}

TEST_CASE("rep builds matrices and validates the relations") {
    RunResult r = run_cli("rep --N 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "ok"));
    CHECK(run_cli("rep --N 0").exit_code == 2);
}

TEST_CASE("rep without truncation reports the leakage witness") {
    RunResult r = run_cli("rep --N 3 --skip-trunc");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.out, "leak at basis degree 2"));
}

TEST_CASE("sheun derive prints the raising solution") {
    RunResult r = run_cli("sheun derive");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "A1: "));
    CHECK(contains(r.out, "a12")); // symbolic parameters present
}

TEST_CASE("heun reduce prints canonical coordinates") {
    RunResult r = run_cli("heun reduce --word '(* L M1)'");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "M2*L: -1/1 / 1/1"));
    CHECK(run_cli("heun reduce --word '(* R1 R2)'").exit_code == 1);
    CHECK(run_cli("heun reduce --word '(* L'").exit_code != 0);
}

TEST_CASE("heun build prints shape data and the operator") {
    RunResult r = run_cli("heun build --alphas 1,0,0,0,0,0 --betas 0,0,0");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "r3: 1/1*s^6 / 1/1"));
    CHECK(contains(r.out, "\"terms\""));
}

TEST_CASE("unknown operator names exit with a usage error") {
    CHECK(run_cli("op apply --name NOPE --to chi:1").exit_code == 2);
    CHECK(run_cli("op apply --name Y --to chi:x").exit_code == 2);
}
