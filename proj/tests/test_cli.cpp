// End-to-end tests against the built qsw binary (path injected by CMake).

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;
using Catch::Approx;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "cli_stdout_" + std::to_string(counter) + ".txt";
    std::string err_path = "cli_stderr_" + std::to_string(counter) + ".txt";
    ++counter;
    std::string cmd = std::string(QSW_CLI_BIN) + " " + args + " >" + out_path +
                      " 2>" + err_path;
    int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

} // namespace

TEST_CASE("analyze on a uniform profile", "[cli]") {
    write_file("uniform2.json",
               R"({"n":2,"type":"dense","probabilities":[0.25,0.25,0.25,0.25]})");
    auto res = run_cli("profile analyze --profile uniform2.json");
    REQUIRE(res.exit_code == 0);
    json report = json::parse(res.out);
    CHECK(report["p1"].get<double>() == 0.25);
    CHECK(report["mutual_info"].get<double>() == Approx(0.0).margin(1e-12));
    CHECK(report["trial_complexity"].get<double>() == Approx(2.5).margin(1e-12));
}

TEST_CASE("analyze rejects an unnormalized profile with a structured error", "[cli]") {
    write_file("bad_sum.json",
               R"({"n":2,"type":"dense","probabilities":[0.4,0.2,0.2,0.1]})");
    auto res = run_cli("profile analyze --profile bad_sum.json");
    REQUIRE(res.exit_code == 1);
    json err = json::parse(res.err);
    CHECK(err["error"] == "domain");
    CHECK(err["message"].get<std::string>().find("sum to 1") != std::string::npos);
}

TEST_CASE("unknown subcommands exit with the usage code", "[cli]") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("profile analyze").exit_code == 2);  // missing --profile
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("missing input files are domain errors", "[cli]") {
    auto res = run_cli("profile analyze --profile does_not_exist.json");
    CHECK(res.exit_code == 1);
    CHECK(json::parse(res.err)["error"] == "domain");
}

TEST_CASE("decohere emits the fixed-header csv", "[cli]") {
    auto res = run_cli("fock decohere --n1 1 --n2 0 --eta-grid 0:1:0.5 --out csv");
    REQUIRE(res.exit_code == 0);
    std::istringstream lines(res.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "eta,trace_distance,eq3_prediction,ratio");
    double expected[3] = {0.0, 0.5, 1.0};
    for (int i = 0; i < 3; ++i) {
        std::string line;
        REQUIRE(std::getline(lines, line));
        double eta = 0, td = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &eta, &td) == 2);
        CHECK(td == Approx(expected[i]).margin(1e-12));
    }
}

TEST_CASE("worstcase solves the per-bit leakage example", "[cli]") {
    auto res = run_cli("profile worstcase --n 1000 --ie-per-bit 0.0009765625");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    double delta = out["profile"]["delta"].get<double>();
    CHECK(delta * 1024.0 >= 1.0);
    CHECK(delta * 1024.0 <= 1.05);
    CHECK(out["report"]["mutual_info"].get<double>() ==
          Approx(0.9765625).epsilon(1e-5));
}

TEST_CASE("pamp experiment runs from a profile file", "[cli]") {
    write_file("pb8.json",
               R"({"n":8,"type":"product_bernoulli","q":[0.75,0.75,0.75,0.75,0.75,0.75,0.75,0.75]})");
    auto res = run_cli(
        "pamp experiment --profile pb8.json --out-bits 2 --seeds 40 --rng-seed 11");
    REQUIRE(res.exit_code == 0);
    json rec = json::parse(res.out);
    CHECK(rec["n"] == 8);
    CHECK(rec["r"] == 2);
    CHECK(rec["seeds_tested"] == 40);
    CHECK(rec["avg_mutual_info"].get<double>() <= rec["bound_value"].get<double>());
}

TEST_CASE("qfi subcommand reports all four generators when unspecified", "[cli]") {
    auto res = run_cli("fock qfi --state noon --N 4");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    CHECK(out["result_by_generator"]["mode1"]["qfi"].get<double>() ==
          Approx(16.0).epsilon(1e-12));
    CHECK(out["result_by_generator"]["total"]["qfi"].get<double>() ==
          Approx(0.0).margin(1e-12));

    auto single = run_cli("fock qfi --state coherent --alpha 1.5 --generator total");
    json sj = json::parse(single.out);
    CHECK(sj["result"]["qfi"].get<double>() == Approx(9.0).margin(1e-8));
}

TEST_CASE("cat subcommand reports numeric and analytic distances", "[cli]") {
    auto res = run_cli("fock cat --alpha 2 --eta 0.99");
    REQUIRE(res.exit_code == 0);
    json out = json::parse(res.out);
    CHECK(out["distance"].get<double>() ==
          Approx(out["analytic_distance"].get<double>()).margin(1e-6));
}

TEST_CASE("json outputs are parse/serialize fixed points", "[cli]") {
    write_file("spike10.json", R"({"n":10,"type":"spike","delta":0.125})");
    for (const char* args :
         {"profile analyze --profile spike10.json --l 3",
          "fock decohere --n1 2 --n2 0 --eta-grid 0:1:0.25",
          "fock cat --alpha 1.0 --eta 0.9"}) {
        auto res = run_cli(args);
        REQUIRE(res.exit_code == 0);
        std::string once = json::parse(res.out).dump();
        std::string twice = json::parse(once).dump();
        CHECK(once == twice);
    }
}

TEST_CASE("identical invocations produce byte-identical stdout", "[cli]") {
    write_file("pb6.json",
               R"({"n":6,"type":"product_bernoulli","q":[0.9,0.8,0.7,0.9,0.8,0.7]})");
    const std::string args =
        "pamp experiment --profile pb6.json --out-bits 3 --seeds 60 --rng-seed 5";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("reproduce emits byte-identical reports across runs", "[cli]") {
    auto a = run_cli("reproduce all");
    auto b = run_cli("reproduce all");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("passed 9/9") != std::string::npos);

    auto single = run_cli("reproduce c7");
    CHECK(single.exit_code == 0);
    CHECK(single.out.find("c7 PASS") != std::string::npos);

    CHECK(run_cli("reproduce c99").exit_code == 1);
}

TEST_CASE("config file lowers the dense cap", "[cli]") {
    write_file("tiny_cap.json", R"({"dense_cap": 3})");
    write_file("uniform4.json",
               R"({"n":4,"type":"dense","probabilities":[0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625,0.0625]})");
    auto ok = run_cli("profile analyze --profile uniform4.json");
    CHECK(ok.exit_code == 0);
    auto blocked = run_cli("--config tiny_cap.json profile analyze --profile uniform4.json");
    CHECK(blocked.exit_code == 1);
    CHECK(json::parse(blocked.err)["message"].get<std::string>().find("dense cap") !=
          std::string::npos);
}
