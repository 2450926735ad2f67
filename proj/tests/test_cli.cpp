#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qctl/cli.h"
#include "qctl/io.h"

using namespace qctl;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qctl_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sweep flags map onto the config") {
    const RunConfig c = parse_config({"sweep", "--model", "commutative", "--lambdas", "0,3,5,10",
                                      "--eps-min", "-0.2", "--eps-max", "0.2", "--eps-step",
                                      "0.01"});
    CHECK(c.command == "sweep");
    CHECK(c.model == "commutative");
    CHECK(c.lambdas == std::vector<double>{0.0, 3.0, 5.0, 10.0});
    CHECK(c.eps_min == -0.2);
    CHECK(c.eps_max == 0.2);
    CHECK(c.eps_step == 0.01);
    CHECK(c.format == "csv");
}

TEST_CASE("cyclic flags map onto the config") {
    const RunConfig c = parse_config({"cyclic", "--model", "noncommutative", "--lambda", "5",
                                      "--epsilon", "-0.2", "--loops", "2"});
    CHECK(c.command == "cyclic");
    CHECK(c.model == "noncommutative");
    CHECK(c.lambda == 5.0);
    CHECK(c.epsilon == -0.2);
    CHECK(c.loops == 2);
}

TEST_CASE("usage errors name the offending field") {
    auto message_of = [](std::vector<std::string> args) -> std::string {
        try {
            parse_config(args);
        } catch (const usage_error& e) {
            return e.what();
        }
        return {};
    };
    CHECK(message_of({"sweep", "--epsilon", "0.9"}).find("epsilon") != std::string::npos);
    CHECK(message_of({"sweep", "--frobnicate", "1"}).find("frobnicate") != std::string::npos);
    CHECK(message_of({"transfer", "--model", "commutative"}).find("epsilon") !=
          std::string::npos);
    CHECK(message_of({"warp", "--lambda", "1"}).find("warp") != std::string::npos);
    CHECK_THROWS_AS(parse_config({"cyclic", "--epsilon", "-0.2", "--loops", "0"}), usage_error);
    CHECK_THROWS_AS(parse_config({"transfer", "--epsilon", "0.1", "--n-steps", "10"}),
                    usage_error);
    CHECK_THROWS_AS(parse_config({"transfer", "--epsilon", "nope"}), usage_error);
    CHECK_THROWS_AS(parse_config({"audit", "--epsilon", "0.1", "--model", "none"}), usage_error);
    CHECK_THROWS_AS(parse_config({}), usage_error);
}

TEST_CASE("configs round-trip through the text form") {
    const RunConfig original =
        parse_config({"sweep", "--model", "noncommutative", "--lambdas", "0,5", "--eps-min",
                      "-0.1", "--eps-max", "0.1", "--eps-step", "0.05", "--n-steps", "2000",
                      "--output", "rows.csv", "--format", "json"});
    const RunConfig reparsed = parse_config_text(serialize_config(original));
    CHECK(reparsed == original);

    const RunConfig audit_cfg =
        parse_config({"audit", "--model", "commutative", "--lambda", "5", "--epsilon", "0.1"});
    CHECK(audit_cfg.format == "json");
    CHECK(parse_config_text(serialize_config(audit_cfg)) == audit_cfg);
}

TEST_CASE("config files feed defaults, flags override") {
    TempDir dir;
    const auto file = dir.path / "run.cfg";
    std::ofstream(file) << "# reproduction defaults\n"
                        << "model = commutative\n"
                        << "lambda = 3\n"
                        << "epsilon = -0.2\n";
    const RunConfig from_file = parse_config({"transfer", "--config", file.string()});
    CHECK(from_file.lambda == 3.0);
    CHECK(from_file.epsilon == -0.2);

    const RunConfig overridden =
        parse_config({"transfer", "--config", file.string(), "--lambda", "5"});
    CHECK(overridden.lambda == 5.0);
    CHECK(overridden.epsilon == -0.2);

    std::ofstream(dir.path / "bad.cfg") << "model: commutative\n";
    CHECK_THROWS_AS(
        parse_config({"transfer", "--epsilon", "0", "--config", (dir.path / "bad.cfg").string()}),
        usage_error);
}

TEST_CASE("float formatting is fixed-width scientific") {
    CHECK(format_sci(1.0) == "1.00000000000e+00");
    CHECK(format_sci(-0.2) == "-2.00000000000e-01");
    CHECK(format_sci(0.6729871098) == "6.72987109800e-01");
}

TEST_CASE("a small run writes the expected artifacts") {
    TempDir dir;
    RunConfig c = parse_config({"sweep", "--model", "commutative", "--lambdas", "0", "--eps-min",
                                "-0.1", "--eps-max", "0.1", "--eps-step", "0.1", "--n-steps",
                                "1000", "--output", (dir.path / "rows.csv").string()});
    REQUIRE(run(c) == 0);
    const std::string csv = slurp(dir.path / "rows.csv");
    CHECK(csv.rfind("lambda,epsilon,fidelity\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows

    RunConfig p = parse_config({"pulse-table", "--lambda", "5", "--n-steps", "1000", "--output",
                                (dir.path / "pulse.csv").string()});
    REQUIRE(run(p) == 0);
    const std::string pulse = slurp(dir.path / "pulse.csv");
    CHECK(pulse.rfind("t,delta_e,delta_1,delta_0,omega_0,omega_1,omega_2,"
                      "varphi_0,varphi_1,varphi_2\n",
                      0) == 0);
    CHECK(std::count(pulse.begin(), pulse.end(), '\n') == 1002);  // header + 1001 samples

    // unwritable output reports the I/O exit code
    RunConfig bad = c;
    bad.output = (dir.path / "missing_dir" / "rows.csv").string();
    CHECK(run(bad) == 2);
}

TEST_CASE("default grids produce the documented file sizes") {
    TempDir dir;
    // 41 epsilon values x 4 lambda values
    RunConfig sweep = parse_config(
        {"sweep", "--model", "commutative", "--output", (dir.path / "full.csv").string()});
    REQUIRE(run(sweep) == 0);
    const std::string csv = slurp(dir.path / "full.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 41 * 4);

    // two loops at 4800 steps per period: 14400 steps, inclusive endpoints
    RunConfig cyc = parse_config({"cyclic", "--model", "commutative", "--lambda", "5",
                                  "--epsilon", "-0.2", "--loops", "2", "--output",
                                  (dir.path / "loop.csv").string()});
    REQUIRE(run(cyc) == 0);
    const std::string loop = slurp(dir.path / "loop.csv");
    CHECK(std::count(loop.begin(), loop.end(), '\n') == 1 + 14401);

    // audit report exposes the documented keys
    RunConfig audit_cfg = parse_config({"audit", "--model", "commutative", "--lambda", "5",
                                        "--epsilon", "0.1", "--output",
                                        (dir.path / "audit.json").string()});
    REQUIRE(run(audit_cfg) == 0);
    const std::string report = slurp(dir.path / "audit.json");
    for (const char* key : {"\"m12\"", "\"m13\"", "\"m23\"", "\"fidelity_magnus\"",
                            "\"fidelity_numerical\"", "\"margins\""}) {
        CHECK(report.find(key) != std::string::npos);
    }
}
