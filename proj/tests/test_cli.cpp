#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    const std::string command = std::string(HDR_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("mixture reproduction through the CLI") {
    const auto result = run_cli(
        "--dist 'mix(0.3:pois(12),0.3:pois(28),0.4:pois(40))' --cover-prob 0.9 --supp-min 0");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("7..17, 21..47") != std::string::npos);
    CHECK(result.output.find("90.63%") != std::string::npos);
}

TEST_CASE("all solutions listing") {
    const auto result = run_cli("--dist 'binom(10,0.5)' --cover-prob 0.9 --all-solutions");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("All canonical solutions (2):") != std::string::npos);
    CHECK(result.output.find("2..7") != std::string::npos);
    CHECK(result.output.find("3..8") != std::string::npos);
}

TEST_CASE("table input at cover_prob 0") {
    const std::string path = "test_cli_table.csv";
    {
        std::ofstream out(path);
        out << "0,0.25\n1,0.25\n2,0.5\n";
    }
    const auto result = run_cli("--dist '@" + path + "' --cover-prob 0");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("∅") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("json output schema") {
    const auto result = run_cli("--dist 'binom(10,0.5)' --cover-prob 0.9 --format json "
                                "--all-solutions --check");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["label"] == "binom(10, 0.5)");
    CHECK(doc["cover_prob"] == 0.9);
    CHECK(doc["coverage"].get<double>() == doctest::Approx(957.0 / 1024).epsilon(1e-12));
    REQUIRE(doc["intervals"].size() == 1);
    CHECK(doc["intervals"][0]["lower"] == 2);
    CHECK(doc["intervals"][0]["upper"] == 7);
    CHECK(doc["region_size"] == 6);
    CHECK(doc["search_set_size"] == 9);
    CHECK(doc["variation_set"] == nlohmann::json::array({2, 8}));
    CHECK(doc["required_from_variation"] == 1);
    CHECK(doc["warnings"].empty());
    CHECK(doc.contains("iterations"));
    REQUIRE(doc["solutions"].size() == 2);
    CHECK(doc["certificate"]["highest_density_ok"] == true);
    CHECK(doc["certificate"]["lemmas_ok"] == true);
}

TEST_CASE("csv output lists interval rows") {
    const auto result = run_cli(
        "--dist 'mix(0.3:pois(12),0.3:pois(28),0.4:pois(40))' --cover-prob 0.9 "
        "--supp-min 0 --format csv");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "lower,upper\n7,17\n21,47\n");
}

TEST_CASE("deterministic output") {
    const std::string args = "--dist 'pois(30)' --cover-prob 0.95 --format json --check "
                             "--seed 7";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
}

TEST_CASE("error exit codes") {
    SUBCASE("parse errors exit 1") {
        const auto result = run_cli("--dist 'pois(-1)' --cover-prob 0.9");
        CHECK(result.exit_code == 1);
        CHECK(result.output.find("error:") != std::string::npos);
    }
    SUBCASE("flag validation errors exit 1") {
        CHECK(run_cli("--dist 'pois(5)' --cover-prob 1.5").exit_code == 1);
        CHECK(run_cli("--cover-prob 0.9").exit_code == 1);
        CHECK(run_cli("--dist 'pois(5)' --cover-prob 0.9 --format yaml").exit_code == 1);
    }
    SUBCASE("termination failures exit 2") {
        const auto result =
            run_cli("--dist 'pois(5)' --supp-min 40 --cover-prob 0.9 --iter-cap 50000");
        CHECK(result.exit_code == 2);
        CHECK(result.output.find("termination not reached") != std::string::npos);
    }
    SUBCASE("improper tables exit 1 unless permissive") {
        const std::string path = "test_cli_improper.csv";
        {
            std::ofstream out(path);
            out << "0,0.25\n1,0.25\n";
        }
        CHECK(run_cli("--dist '@" + path + "' --cover-prob 0.5").exit_code == 1);
        const auto ok = run_cli("--dist '@" + path + "' --cover-prob 0.5 --permissive");
        CHECK(ok.exit_code == 0);
        std::remove(path.c_str());
    }
}

TEST_CASE("cover_prob 1 warning flows through") {
    const auto result =
        run_cli("--dist 'pois(5)' --cover-prob 1 --iter-cap 100000 --format text");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("Warning:") != std::string::npos);
    CHECK(result.output.find("might not be the smallest covering region") !=
          std::string::npos);
}

TEST_CASE("masses dump") {
    const std::string path = "test_cli_masses.csv";
    const auto result = run_cli("--dist 'binom(10,0.5)' --cover-prob 0.9 --emit-masses " +
                                path);
    CHECK(result.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,mass,in_region");
    int rows = 0, in_region = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        if (line.ends_with(",1")) ++in_region;
    }
    CHECK(rows == 9);       // visited search set 0..8
    CHECK(in_region == 6);  // region 2..7
    in.close();
    std::remove(path.c_str());
}
