#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

using json = nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(GEOMTOM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    std::array<char, 4096> buf{};
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json report_of(const CliResult& r) { return json::parse(r.output); }

}  // namespace

TEST_CASE("calibrate: closed forms pass and the report is schema-complete") {
    CliResult r = run_cli("calibrate --resolution 32 --samples 2000 --seed 7");
    CHECK(r.exit_code == 0);
    json rep = report_of(r);
    CHECK(rep.at("schema_version") == "1.0");
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("command") == "calibrate");
    CHECK(rep.at("constants").at("dimension") == 3);
    CHECK(std::abs(rep.at("constants").at("k_cosine").get<double>() - 2.0 * 3.14159265358979) < 1e-6);
    CHECK(rep.at("config").at("seed") == 7);
    // every threshold echoes into the config
    CHECK(rep.at("config").at("tolerances").contains("k_cosine"));
    CHECK(rep.at("wall_time_seconds").get<double>() >= 0.0);
}

TEST_CASE("calibrate is reproducible across runs") {
    CliResult a = run_cli("calibrate --resolution 16 --samples 1000 --seed 3");
    CliResult b = run_cli("calibrate --resolution 16 --samples 1000 --seed 3");
    CHECK(a.exit_code == 0);
    CHECK(report_of(a).at("constants") == report_of(b).at("constants"));
}

TEST_CASE("isotropy: ball passes, ellipsoid fails with flagged poles") {
    CliResult ball = run_cli("isotropy --poles 8 --samples 1000 --resolution 24");
    CHECK(ball.exit_code == 0);
    CHECK(report_of(ball).at("pass") == true);

    CliResult e = run_cli(
        "isotropy --body '{\"kind\":\"ellipsoid\",\"axes\":[1,1,2]}' --poles 8 --samples 1000 "
        "--resolution 24");
    CHECK(e.exit_code == 1);
    json rep = report_of(e);
    CHECK(rep.at("pass") == false);
    bool found_flagged = false;
    for (const auto& check : rep.at("checks"))
        if (check.at("name") == "equator_isotropy") {
            CHECK(check.at("pass") == false);
            for (const auto& pole : check.at("values").at("per_pole"))
                if (pole.at("anisotropy").get<double>() > 1e-2) found_flagged = true;
        }
    CHECK(found_flagged);
}

TEST_CASE("theorem-chain: ball passes, ellipsoid and cube show strict slack") {
    CliResult ball = run_cli("theorem-chain --resolution 24 --samples 1000");
    CHECK(ball.exit_code == 0);

    CliResult e = run_cli(
        "theorem-chain --body '{\"kind\":\"ellipsoid\",\"axes\":[1,1,1.5]}' --resolution 24 "
        "--samples 1000");
    CHECK(e.exit_code == 1);
    json erep = report_of(e);
    for (const auto& check : erep.at("checks"))
        if (check.at("name") == "ball_equality_case")
            CHECK(check.at("values").at("urysohn_slack").get<double>() > 1e-3);

    CliResult cube = run_cli("theorem-chain --body cube --resolution 24 --samples 1000");
    CHECK(cube.exit_code == 1);
    json crep = report_of(cube);
    for (const auto& check : crep.at("checks"))
        if (check.at("name") == "ball_equality_case") {
            CHECK(check.at("pass") == false);
            CHECK(std::abs(check.at("values").at("urysohn_slack").get<double>()) > 1e-3);
        }
}

TEST_CASE("symmetry: builtin groups and planar agreement") {
    CliResult cube = run_cli("symmetry --group cube --resolution 24 --samples 500");
    CHECK(cube.exit_code == 0);
    json rep = report_of(cube);
    for (const auto& check : rep.at("checks"))
        if (check.at("name") == "group") {
            CHECK(check.at("values").at("order") == 48);
            CHECK(check.at("values").at("complete") == true);
        }

    CliResult pm = run_cli(
        "symmetry --group '{\"generators\":[[[-1,0,0],[0,-1,0],[0,0,-1]]]}' --resolution 24 "
        "--samples 500");
    CHECK(pm.exit_code == 0);  // incomplete group: the implication is vacuous
    json pmrep = report_of(pm);
    for (const auto& check : pmrep.at("checks"))
        if (check.at("name") == "group") CHECK(check.at("values").at("complete") == false);

    CliResult d5 = run_cli(
        "symmetry --group dihedral-5 --dim 2 --body '{\"kind\":\"ball\",\"dim\":2}' --resolution 24 "
        "--samples 500");
    CHECK(d5.exit_code == 0);
    bool planar_seen = false;
    json d5rep = report_of(d5);
    for (const auto& check : d5rep.at("checks"))
        if (check.at("name") == "planar_criterion_agrees") {
            planar_seen = true;
            CHECK(check.at("pass") == true);
        }
    CHECK(planar_seen);
}

TEST_CASE("counterexample: default body passes, ball control is an ellipsoid") {
    CliResult def = run_cli("counterexample --poles 8 --resolution 24");
    CHECK(def.exit_code == 0);
    json rep = report_of(def);
    CHECK(rep.at("pass") == true);
    for (const auto& check : rep.at("checks")) {
        if (check.at("name") == "not_an_ellipsoid")
            CHECK(check.at("values").at("fit_residual").get<double>() > 1e-3);
        if (check.at("name") == "projections_unconditional")
            CHECK(check.at("values").at("max_residual").get<double>() < 1e-8);
    }

    CliResult ball = run_cli("counterexample --body ball --poles 8 --resolution 24");
    CHECK(ball.exit_code == 1);  // a ball is an ellipsoid: the control fails by design
    json brep = report_of(ball);
    for (const auto& check : brep.at("checks"))
        if (check.at("name") == "not_an_ellipsoid") {
            CHECK(check.at("pass") == false);
            CHECK(check.at("values").at("fit_residual").get<double>() < 1e-6);
        }
}

TEST_CASE("busemann subcommand passes on the default body") {
    CliResult r = run_cli("busemann --resolution 24 --samples 1000 --poles 8");
    CHECK(r.exit_code == 0);
    CHECK(report_of(r).at("pass") == true);
}

TEST_CASE("tolerance overrides are honored and echoed") {
    // a huge slack tolerance turns the ellipsoid failure into a pass
    CliResult r = run_cli(
        "theorem-chain --body '{\"kind\":\"ellipsoid\",\"axes\":[1,1,1.5]}' --resolution 24 "
        "--samples 500 --tolerance slack=10");
    CHECK(r.exit_code == 0);
    json rep = report_of(r);
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("config").at("tolerances").at("slack").get<double>() == 10.0);
}

TEST_CASE("--out writes the report file and prints a summary") {
    std::string path = "/tmp/geomtom_cli_test_report.json";
    std::remove(path.c_str());
    CliResult r = run_cli("calibrate --resolution 16 --samples 500 --out " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS calibrate") != std::string::npos);
    std::ifstream in(path);
    REQUIRE(in.good());
    json rep = json::parse(in);
    CHECK(rep.at("pass") == true);
    std::remove(path.c_str());
}

TEST_CASE("usage and config errors exit with code 2") {
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);  // a subcommand is required
    CHECK(run_cli("isotropy --body '{\"kind\":\"nope\"}'").exit_code == 2);
    CHECK(run_cli("isotropy --tolerance anisotropy").exit_code == 2);  // missing =value
    CHECK(run_cli("theorem-chain --body '{\"kind\":\"ball\",\"dim\":2}'").exit_code == 2);
    CHECK(run_cli("calibrate --out /no/such/dir/report.json").exit_code == 2);
}
