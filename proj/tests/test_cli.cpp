#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef PDMISO_CLI_PATH
#error "PDMISO_CLI_PATH must point at the pdm-isospec binary"
#endif

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(PDMISO_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("figure output is byte-identical across runs") {
    REQUIRE(run("figure fig1 --out cli_f1_a.csv >/dev/null 2>&1") == 0);
    REQUIRE(run("figure fig1 --out cli_f1_b.csv >/dev/null 2>&1") == 0);
    const std::string a = slurp("cli_f1_a.csv");
    const std::string b = slurp("cli_f1_b.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    // header and the x = 0 row values
    CHECK(a.rfind("x,V,Vbar\r\n", 0) == 0);
    CHECK(a.find("0.000000000000e+00,1.500000000000e+00,6.500000000000e+00") !=
          std::string::npos);
    const std::string sidecar = slurp("cli_f1_a.csv.json");
    CHECK(sidecar.find("\"pole_scan_pass\":true") != std::string::npos);
}

TEST_CASE("partner subcommand writes a curve and verdicts") {
    REQUIRE(run("partner --a 3 --b 5 --c 4 --range -2:2 --samples 41 "
                "--out cli_p.csv 2>cli_p.log") == 0);
    const std::string csv = slurp("cli_p.csv");
    CHECK(csv.rfind("x,V,Vbar\r\n", 0) == 0);
    const std::string log = slurp("cli_p.log");
    CHECK(log.find("strict-isospectral") != std::string::npos);
    // a classification that contradicts the requested mode fails
    CHECK(run("partner --a 3 --b 5 --c 4 --mode create --range -2:2 "
              "--samples 11 --out cli_p2.csv 2>/dev/null") == 1);
}

TEST_CASE("verify: unknown suite is a usage error with exit code 2") {
    CHECK(run("verify --suite nonsense >/dev/null 2>&1") == 2);
    CHECK(run("nonsense-subcommand >/dev/null 2>&1") == 2);
}

TEST_CASE("verify: special-function suite passes and emits JSON lines") {
    REQUIRE(run("verify --suite numerics --json cli_v.jsonl 2>/dev/null") ==
            0);
    const std::string lines = slurp("cli_v.jsonl");
    CHECK(lines.find("\"name\":\"c01_model_spectrum\"") != std::string::npos);
    CHECK(lines.find("\"name\":\"c12_special_functions\"") !=
          std::string::npos);
    CHECK(lines.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("tightened tolerances can fail honestly") {
    // 1e-3 of the default tolerance pushes the eigenvalue comparison below
    // the discretization error, so the numerics suite must report failure
    CHECK(run("verify --suite numerics --tol-scale 1e-3 >/dev/null 2>&1") ==
          1);
}

TEST_CASE("grid override through the environment variable") {
    // a coarser grid still passes the model-spectrum criterion at 1e-3
    CHECK(run("verify --suite numerics --json cli_env.jsonl 2>/dev/null "
              ">/dev/null") == 0);
    const int code = std::system(
        ("PDM_ISOSPEC_GRID_N=2000 " + std::string(PDMISO_CLI_PATH) +
         " verify --suite numerics --json cli_env2.jsonl >/dev/null 2>&1")
            .c_str());
    CHECK(WEXITSTATUS(code) == 0);
    CHECK(slurp("cli_env2.jsonl").find("\"grid_n\":2000") !=
          std::string::npos);
}

TEST_CASE("spectrum subcommand prints the three spectra and the verdict") {
    REQUIRE(run("spectrum --a 5 --b 0 --c 3 -k 3 --json cli_s.json "
                ">cli_s.txt 2>/dev/null") == 0);
    const std::string txt = slurp("cli_s.txt");
    CHECK(txt.find("4.50000000") != std::string::npos);
    CHECK(txt.find("shift-by-one") != std::string::npos);
    const std::string js = slurp("cli_s.json");
    CHECK(js.find("\"law_pass\": true") != std::string::npos);
}
