#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"dmotto"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = dmotto::cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string value_of(const std::string& csv, const std::string& key) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
    return "<missing>";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cycle at the field reference point") {
    const Run r = run({"cycle", "--protocol", "vary-field", "--J", "1", "--D", "0", "--B1", "8", "--B2", "6",
                       "--T-hot", "2", "--T-cold", "1"});
    CHECK(r.code == 0);
    CHECK(std::stod(value_of(r.out, "Q_hot")) == doctest::Approx(0.011459).epsilon(1e-4));
    CHECK(std::stod(value_of(r.out, "W")) == doctest::Approx(2.9485e-3).epsilon(1e-4));
    CHECK(std::stod(value_of(r.out, "eta")) == doctest::Approx(0.2573).epsilon(1e-4));
    CHECK(value_of(r.out, "class") == "Engine");
}

TEST_CASE("cycle with idle vary-dm has an empty eta field") {
    const Run r = run({"cycle", "--protocol", "vary-dm", "--J", "1", "--B", "4", "--D1", "1", "--D2", "1",
                       "--T-hot", "2", "--T-cold", "1"});
    CHECK(r.code == 0);
    CHECK(value_of(r.out, "eta").empty());
    CHECK(value_of(r.out, "class") == "Idle");
}

TEST_CASE("validation errors exit 1 and name the flag") {
    Run r = run({"cycle", "--protocol", "vary-field", "--J", "1", "--B1", "8", "--B2", "6", "--T-hot", "2",
                 "--T-cold", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--D") != std::string::npos);

    r = run({"cycle", "--protocol", "vary-dm", "--J", "1", "--B", "4", "--D1", "0", "--D2", "1", "--D", "3",
             "--T-hot", "2", "--T-cold", "1"});
    CHECK(r.code == 1);

    r = run({"cycle", "--protocol", "sideways"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--protocol") != std::string::npos);

    r = run({"cycle", "--protocol", "vary-field", "--J", "1", "--D", "0", "--B1", "8", "--B2", "6", "--T-hot",
             "-2", "--T-cold", "1"});
    CHECK(r.code == 1);

    r = run({"figures", "fig9"});
    CHECK(r.code == 1);

    r = run({"audit", "--claims", "C1,C12"});
    CHECK(r.code == 1);
    CHECK(r.err.find("C12") != std::string::npos);

    r = run({});
    CHECK(r.code == 1);
}

TEST_CASE("figures fig1 emits the full grid") {
    const Run r = run({"figures", "fig1"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 61 * 61);
    CHECK(r.out.rfind("x,y,Q_hot,Q_cold,W,eta,class\n", 0) == 0);
}

TEST_CASE("figures output is identical across worker counts") {
    CHECK(run({"figures", "fig5"}).out == run({"figures", "fig5", "--workers", "3"}).out);
}

TEST_CASE("sweep from a config file, json-report to a file") {
    const auto dir = std::filesystem::temp_directory_path() / "dmotto_cli_test";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "scan.json";
    std::ofstream(cfg) << R"({"protocol": "vary-field", "J": 1, "B1": 8, "B2": 6, "T_hot": 2, "T_cold": 1,
        "sweep": {"x": {"param": "D", "min": 0, "max": 1, "count": 3}}, "output": ["x", "W", "eta"]})";
    const auto out = dir / "scan.out.json";
    const Run r = run({"sweep", "--config", cfg.c_str(), "--format", "json-report", "--out", out.c_str()});
    CHECK(r.code == 0);
    std::ifstream in(out);
    const auto doc = nlohmann::ordered_json::parse(in);
    CHECK(doc["rows"].size() == 3);
    CHECK(doc["columns"] == nlohmann::ordered_json::array({"x", "W", "eta"}));
    std::filesystem::remove_all(dir);
}

TEST_CASE("config errors exit 1 with position") {
    const auto dir = std::filesystem::temp_directory_path() / "dmotto_cli_bad";
    std::filesystem::create_directories(dir);
    const auto cfg = dir / "bad.json";
    std::ofstream(cfg) << "{\n  \"protocol\": \"vary-dm\"\n  \"J\": 1\n}";
    const Run r = run({"sweep", "--config", cfg.c_str()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 3") != std::string::npos);
    const Run missing = run({"sweep", "--config", (dir / "nope.json").c_str()});
    CHECK(missing.code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("audit subset writes a JSON report") {
    const Run r = run({"audit", "--claims", "C8,C4"});
    CHECK(r.code == 0);
    const auto doc = nlohmann::ordered_json::parse(r.out);
    REQUIRE(doc["claims"].size() == 2);
    CHECK(doc["claims"][0]["claim_id"] == "C4");
    CHECK(doc["claims"][1]["verdict"] == "Holds");
}

TEST_CASE("oracle self-check") {
    const Run r = run({"oracle", "--draws", "1000"});
    CHECK(r.code == 0);
    CHECK(std::stod(value_of(r.out, "max_eigenvalue_deviation")) <= 1e-10);
    CHECK(run({"oracle", "--draws", "0"}).code == 1);
    CHECK(run({"oracle", "--draws", "50", "--tolerance", "0"}).code == 2);
}

TEST_CASE("help exits 0") {
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("figures") != std::string::npos);
}

}
