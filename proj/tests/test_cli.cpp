#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "effham/cli.hpp"

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = effham::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expand json output and schema round trip") {
    RunResult r = run_cli({"expand", "--hamiltonian", "p^2/(2*M)+(M*w^2/2)*x^2", "--order", "4",
                           "--format", "json"});
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["hamiltonian"].is_string());
    REQUIRE(j["orders"].size() == 4);
    CHECK(j["orders"][0]["n"] == 1);
    CHECK(j["orders"][0]["beta_power"] == 0);
    CHECK(j["orders"][2]["coefficient"] == "0");  // order 3 vanishes
    CHECK(j["orders"][1]["coefficient"] == "1/24 * hbar^2 * w^2");

    // round trip: parse + dump + parse is stable
    nlohmann::json j2 = nlohmann::json::parse(j.dump());
    CHECK(j2 == j);
}

TEST_CASE("identical invocations give byte-identical output") {
    std::vector<std::string> args{"expand", "--order", "4", "--format", "json"};
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    RunResult c = run_cli({"diagrams", "--order", "2", "--evaluate"});
    RunResult d = run_cli({"diagrams", "--order", "2", "--evaluate"});
    CHECK(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("eval closed form") {
    RunResult r = run_cli({"eval", "--closed-form", "ho", "--beta", "1", "--omega", "1", "--M",
                           "1", "--hbar", "1", "--p0", "0", "--x0", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "0.0413248546129\n");  // ln(2 sinh 1/2)
}

TEST_CASE("eval series matches closed form at small x") {
    RunResult series = run_cli({"eval", "--order", "6", "--beta", "0.2"});
    RunResult closed = run_cli({"eval", "--closed-form", "ho", "--beta", "0.2"});
    REQUIRE(series.code == 0);
    REQUIRE(closed.code == 0);
    double vs = std::stod(series.out), vc = std::stod(closed.out);
    CHECK(std::abs(vs - vc) < 1e-10);
}

TEST_CASE("diagrams listing shows the order-2 classes") {
    RunResult r = run_cli({"diagrams", "--order", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("loop") != std::string::npos);
    CHECK(r.out.find("chain") != std::string::npos);
    CHECK(r.out.find("current-only") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"expand", "--no-such-flag"}).code == 2);
    CHECK(run_cli({"no-such-command"}).code == 2);
    CHECK(run_cli({}).code == 2);

    RunResult bad = run_cli({"expand", "--hamiltonian", "p^2 + &x"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position 6") != std::string::npos);

    RunResult frac = run_cli({"expand", "--hamiltonian", "x^0.5"});
    CHECK(frac.code == 2);
    CHECK(frac.err.find("fractional") != std::string::npos);

    CHECK(run_cli({"expand", "--order", "9"}).code == 2);
    CHECK(run_cli({"eval", "--beta", "-1"}).code == 2);
    CHECK(run_cli({"zeta", "--k", "0"}).code == 2);
}

TEST_CASE("zeta output") {
    RunResult r = run_cli({"zeta", "--k", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("zeta(2) = 1/6 * pi^2") != std::string::npos);
    CHECK(r.out.find("B_2 = 1/6") != std::string::npos);
}

TEST_CASE("validate passes and supports json") {
    RunResult r = run_cli({"validate"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    RunResult j = run_cli({"validate", "--format", "json"});
    CHECK(j.code == 0);
    nlohmann::json report = nlohmann::json::parse(j.out);
    REQUIRE(report.is_array());
    CHECK(report.size() > 10);
    for (const auto& row : report) {
        CHECK(row.contains("check"));
        CHECK(row.contains("expected"));
        CHECK(row.contains("actual"));
        CHECK(row.contains("tolerance"));
        CHECK(row["pass"] == true);
    }
}

TEST_CASE("help exits zero") {
    CHECK(run_cli({"--help"}).code == 0);
}
