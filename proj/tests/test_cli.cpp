// End-to-end checks of the installed CLI binary: verbs, formats, exit codes
// and byte-level determinism. The binary path and the scenario directory come
// in through compile definitions.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "relphase_cli_tests";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd = std::string(RELPHASE_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

std::string scenario(const std::string& name) {
    return (fs::path(RELPHASE_SCENARIO_DIR) / name).string();
}

fs::path write_temp_scenario(const std::string& name, const std::string& text) {
    const fs::path dir = fs::temp_directory_path() / "relphase_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("phase verb emits the expected json") {
    const CliResult res =
        run_cli("phase --scenario " + scenario("two_qubit_phase.scn"));
    REQUIRE(res.exit_code == 0);
    const auto parsed = nlohmann::json::parse(res.out);
    CHECK(parsed["kind"] == "discrete-phase");
    CHECK(std::abs(parsed["results"]["relative_phase"]["radians"].get<double>() -
                   0.3217505543966422) <= 1e-10);
    CHECK(std::abs(parsed["results"]["sequence_phase"]["radians"].get<double>() +
                   0.7853981633974483) <= 1e-12);
}

TEST_CASE("protocol verb agrees with the phase verb") {
    const CliResult res =
        run_cli("protocol --scenario " + scenario("two_qubit_protocol.scn"));
    REQUIRE(res.exit_code == 0);
    const auto parsed = nlohmann::json::parse(res.out);
    CHECK(std::abs(parsed["results"]["gamma"]["radians"].get<double>() -
                   0.3217505543966422) <= 1e-9);
    CHECK(parsed["steps"].size() == 3);
}

TEST_CASE("csv fringe output via --out") {
    const fs::path out =
        fs::temp_directory_path() / "relphase_cli_tests" / "fringe.csv";
    fs::create_directories(out.parent_path());
    const CliResult res = run_cli("protocol --scenario " +
                                  scenario("two_qubit_protocol.scn") +
                                  " --format csv-fringe --out " + out.string());
    REQUIRE(res.exit_code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("j,f,intensity\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 16);
}

TEST_CASE("sampled runs are reproducible byte for byte") {
    const std::string cmd =
        "protocol --scenario " + scenario("two_qubit_protocol_sampled.scn");
    const CliResult a = run_cli(cmd);
    const CliResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    // a different seed changes the bytes
    const CliResult c = run_cli(cmd + " --seed 999");
    REQUIRE(c.exit_code == 0);
    CHECK(c.out != a.out);
}

TEST_CASE("uhlmann and oracle verbs run their scenarios") {
    const CliResult trivial =
        run_cli("uhlmann --scenario " + scenario("uhlmann_product.scn"));
    REQUIRE(trivial.exit_code == 0);
    const auto parsed = nlohmann::json::parse(trivial.out);
    CHECK(parsed["results"]["deviation_from_identity"].get<double>() <= 1e-8);
    CHECK(parsed["holonomy"]["real"].size() == 2);

    const CliResult entangled =
        run_cli("uhlmann --scenario " + scenario("uhlmann_entangled.scn"));
    REQUIRE(entangled.exit_code == 0);
    const auto parsed2 = nlohmann::json::parse(entangled.out);
    CHECK(parsed2["results"]["deviation_from_identity"].get<double>() > 1e-3);
    CHECK(parsed2["results"]["unitarity_defect"].get<double>() <= 1e-8);

    const CliResult oracle =
        run_cli("oracle --scenario " + scenario("oracle_two_qubit.scn"));
    REQUIRE(oracle.exit_code == 0);
    const auto parsed3 = nlohmann::json::parse(oracle.out);
    CHECK(std::abs(parsed3["results"]["relative_phase_oracle"]["radians"]
                       .get<double>() -
                   0.3217505543966422) <= 1e-12);
}

TEST_CASE("squeezed and continuous scenarios run end to end") {
    const CliResult squeezed =
        run_cli("phase --scenario " + scenario("squeezed_phase.scn"));
    REQUIRE(squeezed.exit_code == 0);
    const auto parsed = nlohmann::json::parse(squeezed.out);
    // the loop phase is the mirrored scaled area: tanh^2(1) * (-(-1/2))
    CHECK(std::abs(parsed["results"]["relative_phase"]["radians"].get<double>() +
                   0.2900128291929867) <= 1e-6);

    const CliResult continuous =
        run_cli("phase --scenario " + scenario("two_qubit_continuous.scn"));
    REQUIRE(continuous.exit_code == 0);
    const auto parsed2 = nlohmann::json::parse(continuous.out);
    CHECK(parsed2["diagnostics"]["integral_vs_discrete"].get<double>() <= 1e-6);
}

TEST_CASE("validation failures exit with 2") {
    const fs::path bad = write_temp_scenario("bad.scn",
                                             "kind: discrete-phase\n[state]\n"
                                             "model: two-qubit-lambda\n"
                                             "lambda: 4.0\n[sequence]\n"
                                             "generator: qubit-triangle\n"
                                             "phi: 1.0\n");
    const CliResult res = run_cli("phase --scenario " + bad.string());
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("state.lambda") != std::string::npos);

    // verb/kind mismatch
    const CliResult mismatch =
        run_cli("protocol --scenario " + scenario("two_qubit_phase.scn"));
    CHECK(mismatch.exit_code == 2);

    // missing file
    const CliResult missing = run_cli("phase --scenario /nonexistent.scn");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("numeric failures exit with 3") {
    const fs::path undefined = write_temp_scenario(
        "undefined.scn",
        "kind: discrete-phase\n[state]\nmodel: two-qubit-lambda\n"
        "lambda: 3.141592653589793\n[sequence]\ngenerator: qubit-triangle\n"
        "phi: 1.0\n");
    const CliResult res = run_cli("phase --scenario " + undefined.string());
    CHECK(res.exit_code == 3);

    const fs::path truncated = write_temp_scenario(
        "truncated.scn",
        "kind: discrete-phase\n[state]\nmodel: squeezed\nr: 5.0\n"
        "truncation: 10\n[sequence]\ngenerator: coherent-polygon\n"
        "z: 0, 0.5, 0.5i\n");
    const CliResult res2 = run_cli("phase --scenario " + truncated.string());
    CHECK(res2.exit_code == 3);
}

TEST_SUITE_END();
