// End-to-end checks of the tau-loop binary: spawns the real executable,
// captures its report bytes, and verifies exit codes, determinism, and the
// published JSON shape. The path comes in through TAU_LOOP_CLI_PATH.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    std::string out_path = "/tmp/tau_cli_" + tag + ".out";
    std::string cmd = std::string(TAU_LOOP_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    return r;
}

} // namespace

TEST_CASE("dimension table round-trips through the JSON schema") {
    RunResult r = run_cli("verma-dims --preset scalar --psi lam=1,c=1,d0=0 --box 4,4 --json",
                          "dims");
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == "tau-loop-report/1");
    CHECK(doc["command"] == "verma-dims");
    CHECK(doc["violations"].empty());
    int d01 = -1, d11 = -1;
    for (const auto& row : doc["table"]) {
        if (row["offset"] == nlohmann::json({0, 1})) d01 = row["dim"];
        if (row["offset"] == nlohmann::json({1, 1})) d11 = row["dim"];
    }
    CHECK(d01 == 3);
    CHECK(d11 == 4);
}

TEST_CASE("identical jobs produce identical report bytes") {
    std::string args = "crt --algebra points:1,2 --json";
    RunResult first = run_cli(args, "det1");
    RunResult second = run_cli(args, "det2");
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    nlohmann::json doc = nlohmann::json::parse(first.out);
    REQUIRE(doc["factors"] == 2);
    CHECK(doc["idempotents"][0]["coords"] == nlohmann::json({"2", "-1"}));
    CHECK(doc["idempotents"][1]["coords"] == nlohmann::json({"-1", "1"}));
}

TEST_CASE("malformed input exits with status 2") {
    CHECK(run_cli("verma-dims --preset scalar --psi lam=1,x=3", "bad_psi").code == 2);
    CHECK(run_cli("verma-dims --preset cubic --psi lam=1,c=1,d0=0", "bad_algebra").code == 2);
    CHECK(run_cli("crt --algebra jet:2", "bad_crt").code == 2);
    CHECK(run_cli("apply --psi lam=1,c=1,d0=0 --elem 'X(0)' --at 9,9:0", "bad_at").code == 2);
    CHECK(run_cli("", "no_command").code == 2);
    CHECK(run_cli("--help", "help").code == 0);
}

TEST_CASE("operator application reports the image with monomial labels") {
    RunResult r = run_cli("apply --psi lam=2,c=1,d0=0 --op T:-1 --box 1,1 --json", "apply");
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["result"].size() == 1);
    const auto& layer = doc["result"][0];
    CHECK(layer["offset"] == nlohmann::json({0, 1}));
    REQUIRE(layer["terms"].size() == 3);
    std::string all;
    for (const auto& t : layer["terms"])
        all += t["label"].get<std::string>() + "=" + t["coeff"].get<std::string>() + ";";
    CHECK(all ==
          "Y(t^0;a0)*X(t^-1;a0)*v=2;h(t^-1;a0)*v=4;L_-1(a0)*v=6;");
}

TEST_CASE("a job file and the equivalent flags agree byte for byte") {
    std::string spec_path = "/tmp/tau_cli_spec.json";
    {
        std::ofstream f(spec_path, std::ios::binary);
        f << R"({
  "command": "verma-dims",
  "algebra": "jet:2",
  "psi": {"h": ["1", "0"], "K": ["1", "0"], "L0": ["0", "0"]},
  "box": [2, 2],
  "output": "json"
})";
    }
    RunResult from_spec = run_cli("--spec " + spec_path, "spec");
    RunResult from_flags = run_cli(
        "verma-dims --algebra jet:2 --psi-h 1,0 --psi-K 1,0 --psi-L0 0,0 --box 2,2 --json",
        "flags");
    REQUIRE(from_spec.code == 0);
    REQUIRE(from_flags.code == 0);
    CHECK(from_spec.out == from_flags.out);

    CHECK(run_cli("--spec /tmp/definitely_missing_spec.json", "missing_spec").code == 2);
}

TEST_CASE("two-point example reports singular images") {
    RunResult r = run_cli("example31 --z 1,2 --lam 2,3 --c 1,2 --json", "ex31");
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc["violations"].empty());
    REQUIRE(doc["operators"].size() == 2);
    for (const auto& op : doc["operators"]) {
        CHECK(op["nonzero"] == true);
        CHECK(op["killed_by_affine_raising"] == true);
        CHECK(op["surviving_generators"].empty());
    }
    CHECK(doc["operators"][0]["image"][0]["terms"].size() == 6);
    CHECK(doc["operators"][1]["image"][0]["terms"].size() == 9);
}

TEST_CASE("identity checks succeed on a small window") {
    RunResult central = run_cli(
        "check-central --psi lam=1,c=1,d0=0 --box 2,2 --j 0,-1 --reach 2 --json", "central");
    REQUIRE(central.code == 0);
    nlohmann::json doc = nlohmann::json::parse(central.out);
    for (const auto& res : doc["results"]) {
        CHECK(res["central"] == true);
        CHECK(res["violations"].empty());
    }

    RunResult bracket =
        run_cli("check-bracket --psi lam=1,c=2,d0=0 --box 2,3 --k 2 --j 1,-1 --json", "bracket");
    REQUIRE(bracket.code == 0);
    doc = nlohmann::json::parse(bracket.out);
    CHECK(doc["regular"]["violations"].empty());
    REQUIRE(doc["boundary"].size() == 1);
    CHECK(doc["boundary"][0]["measured_gamma1"] == "-1");
    CHECK(doc["boundary"][0]["measured_gamma2"] == "1");
    CHECK(doc["boundary"][0]["matches_stated"] == true);
}

TEST_CASE("rationals serialize as fraction strings") {
    RunResult r = run_cli("apply --psi lam=1/2,c=1/3,d0=0 --elem 'h(0)' --at 0,0:0 --json",
                          "fracs");
    REQUIRE(r.code == 0);
    nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["result"].size() == 1);
    CHECK(doc["result"][0]["terms"][0]["coeff"] == "1/2");
    CHECK(r.out.find("0.5") == std::string::npos);
}
