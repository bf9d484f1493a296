#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs a shell command, capturing stdout (stderr routed as the caller wrote it).
RunResult run(const std::string& command) {
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 512> buffer;
    while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) result.output += buffer.data();
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

const std::string kBin = TMELLIN_CLI_PATH;
const std::string kGoldenDir = TMELLIN_GOLDEN_DIR;

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

double second_field(const std::string& csv_line) {
    const auto c1 = csv_line.find(',');
    const auto c2 = csv_line.find(',', c1 + 1);
    return std::strtod(csv_line.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
}

}  // namespace

TEST_CASE("eval prints closed-form transform values") {
    const auto r = run(kBin + " eval --fn 'poly(0,0,1)' --s 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("value=6") != std::string::npos);
    CHECK(r.output.find("method=closed_form") != std::string::npos);

    const auto todd = run(kBin + " eval --fn todd --s 0");
    CHECK(todd.exit_code == 0);
    CHECK(todd.output.find("value=1.64493406684822") != std::string::npos);

    const auto unit = run(kBin + " eval --fn 'const(1)' --s 7.3");
    CHECK(unit.exit_code == 0);
    CHECK(unit.output.find("value=1 ") != std::string::npos);
}

TEST_CASE("eval exit codes: divergence is 3, parse failure is 2") {
    CHECK(run(kBin + " eval --fn geom --s 0 2>/dev/null").exit_code == 3);
    const auto bad = run(kBin + " eval --fn 'bogus(1)' --s 1 2>&1");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("name(p1,p2,...)") != std::string::npos);  // names the grammar
    CHECK(run(kBin + " eval --fn 'power(' --s 1 2>/dev/null").exit_code == 2);
}

TEST_CASE("table emits the exact CSV header and the expected grid") {
    const auto r = run(kBin + " table --fn 'exp_decay(1)' --s-start 0 --s-end 2 --step 1");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "s,value,error_estimate,method");
    CHECK(second_field(rows[1]) == 0.5);
    CHECK(second_field(rows[2]) == 0.25);
    CHECK(second_field(rows[3]) == 0.125);
}

TEST_CASE("table with equal endpoints yields one row") {
    const auto r = run(kBin + " table --fn 'sin(1)' --s-start 2 --s-end 2 --step 0.5");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.output).size() == 2);
}

TEST_CASE("table of sin(1) vanishes at s = 3") {
    const auto r = run(kBin + " table --fn 'sin(1)' --s-start 1 --s-end 3 --step 2");
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 3);
    CHECK(second_field(rows[1]) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(second_field(rows[2])) < 1e-12);
}

TEST_CASE("table carries nan rows and a nonzero exit on divergence") {
    const auto r = run(kBin + " table --fn geom --s-start 0 --s-end 1 --step 1 2>/dev/null");
    CHECK(r.exit_code == 3);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].find("nan") != std::string::npos);
    CHECK(rows[2].find("nan") == std::string::npos);
}

TEST_CASE("poly subcommand prints exact tables") {
    CHECK(run(kBin + " poly f 5").output == "120 154 35\n");
    CHECK(run(kBin + " poly f 0").output == "1\n");
    CHECK(run(kBin + " poly stirling 4").output == "6 11 6 1\n");
    CHECK(run(kBin + " poly coeffs 4").output == "24 26 3\n");
    CHECK(run(kBin + " poly f 201 2>/dev/null").exit_code == 2);
    CHECK(run(kBin + " poly stirling 0 2>/dev/null").exit_code == 2);
    CHECK(run(kBin + " poly nope 3 2>/dev/null").exit_code == 2);
    // big rows stay exact: 20! has 19 digits
    const auto r21 = run(kBin + " poly stirling 21");
    CHECK(r21.output.find("2432902008176640000") == 0);
}

TEST_CASE("verify polyseq passes with zero residuals") {
    const auto r = run(kBin + " verify polyseq");
    CHECK(r.exit_code == 0);
    for (const auto& line : lines_of(r.output)) {
        CHECK(line.find("PASS") != std::string::npos);
        CHECK(line.find(", 0, 0, ") != std::string::npos);
    }
    CHECK(run(kBin + " verify nope 2>/dev/null").exit_code == 2);
}

TEST_CASE("expand shows termination and compares against quadrature") {
    const auto r = run(kBin + " expand --fn 'poly(0,0,1)' --s 3 --order 2 --compare");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 4);
    // final partial sum 20 with vanishing error column
    CHECK(rows[3].find(",20,") != std::string::npos);
    const auto last_comma = rows[3].rfind(',');
    CHECK(std::strtod(rows[3].substr(last_comma + 1).c_str(), nullptr) < 1e-9);

    const auto unit = run(kBin + " expand --fn 'const(1)' --s 5 --order 0");
    CHECK(unit.exit_code == 0);
    CHECK(lines_of(unit.output)[1] == "0,1,1,1,1");

    CHECK(run(kBin + " expand --fn geom --s 5 --order 5 2>/dev/null").exit_code == 2);
}

TEST_CASE("expand error column shrinks by order 4 for the rational symbol") {
    const auto r = run(kBin + " expand --fn rational_decay --s 50 --order 4 --compare");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 6);
    const auto error_of = [](const std::string& row) {
        return std::strtod(row.substr(row.rfind(',') + 1).c_str(), nullptr);
    };
    CHECK(error_of(rows[5]) < error_of(rows[1]));
}

TEST_CASE("expand with --N uses the N-twisted path") {
    const auto r = run(kBin + " expand --fn 'poly(0,0,0,1)' --s 2 --order 2 --N 10 --compare");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.output);
    REQUIRE(rows.size() == 4);
    // order-2 value 8 + 2.4 + 0.22 = 10.62, absolute error 6/N^3
    CHECK(second_field(rows[3]) == doctest::Approx(10.62).epsilon(1e-12));
    const auto last_comma = rows[3].rfind(',');
    CHECK(std::strtod(rows[3].substr(last_comma + 1).c_str(), nullptr) ==
          doctest::Approx(0.006).epsilon(1e-6));
}

TEST_CASE("invert reconstructs pointwise values") {
    const auto reconstructed = [](const RunResult& r) {
        const auto pos = r.output.find("reconstructed=");
        REQUIRE(pos != std::string::npos);
        return std::strtod(r.output.c_str() + pos + 14, nullptr);
    };
    const auto linear = run(kBin + " invert --fn 'poly(0,1)' --x 1");
    CHECK(linear.exit_code == 0);
    CHECK(reconstructed(linear) == doctest::Approx(1.0).epsilon(1e-4));

    const auto decay = run(kBin + " invert --fn 'exp_decay(1)' --x 1");
    CHECK(decay.exit_code == 0);
    CHECK(reconstructed(decay) == doctest::Approx(0.36787944117144233).epsilon(1e-4));

    const auto square = run(kBin + " invert --fn 'poly(0,0,1)' --x 0.5");
    CHECK(square.exit_code == 0);
    CHECK(reconstructed(square) == doctest::Approx(0.25).epsilon(1e-4));

    CHECK(run(kBin + " invert --fn todd --x 1 2>/dev/null").exit_code == 2);
}

TEST_CASE("json output matches the fixed schema") {
    const auto r = run(kBin + " eval --fn 'poly(0,0,1)' --s 1 --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.output);
    REQUIRE(doc.is_object());
    CHECK(doc.size() == 4);
    CHECK(doc["value"].is_number());
    CHECK(doc["error_estimate"].is_number());
    CHECK(doc["method"].is_string());
    CHECK(doc["nodes_used"].is_number_integer());
    CHECK(doc["value"].get<double>() == 6.0);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::string cmd = kBin + " verify catalog --format json --seed 123";
    const auto a = run(cmd);
    const auto b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const auto e1 = run(kBin + " eval --fn 'power(0.5)' --s 2.5");
    const auto e2 = run(kBin + " eval --fn 'power(0.5)' --s 2.5");
    CHECK(e1.output == e2.output);
}

TEST_CASE("environment variables configure the tool and flags win") {
    // invalid env tolerance rejected -> proves the env layer is read
    CHECK(run("TMELLIN_TOL=1 " + kBin + " eval --fn todd --s 1 2>/dev/null").exit_code == 2);
    // explicit flag overrides the bad environment value
    CHECK(run("TMELLIN_TOL=1 " + kBin + " eval --fn todd --s 1 --tol 1e-10 2>/dev/null")
              .exit_code == 0);
    CHECK(run("TMELLIN_MAX_NODES=4 " + kBin + " eval --fn todd --s 1 2>/dev/null").exit_code ==
          2);
}

TEST_CASE("config file sits below the environment") {
    const std::string path = "/tmp/tmellin_test_config.json";
    {
        std::ofstream out(path);
        out << "{\"tol\": 1.0}\n";
    }
    CHECK(run(kBin + " eval --fn todd --s 1 --config " + path + " 2>/dev/null").exit_code == 2);
    CHECK(run("TMELLIN_TOL=1e-9 " + kBin + " eval --fn todd --s 1 --config " + path +
              " 2>/dev/null")
              .exit_code == 0);
    {
        std::ofstream out(path);
        out << "{\"format\": \"json\"}\n";
    }
    const auto r = run(kBin + " eval --fn 'const(1)' --s 1 --config " + path);
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output)["value"].get<double>() == 1.0);
    std::remove(path.c_str());
}

TEST_CASE("golden catalog tables are reproduced byte for byte") {
    const struct {
        const char* file;
        const char* args;
    } fixtures[] = {
        {"exp_decay_1.csv", "table --fn 'exp_decay(1)' --s-start 0 --s-end 2 --step 0.5"},
        {"sine_1.csv", "table --fn 'sin(1)' --s-start 0 --s-end 3 --step 0.5"},
        {"todd.csv", "table --fn todd --s-start 0.5 --s-end 2.5 --step 0.5"},
        {"square.csv", "table --fn 'poly(0,0,1)' --s-start 0 --s-end 2 --step 0.5"},
        {"power_half.csv", "table --fn 'power(0.5)' --s-start 0 --s-end 2 --step 0.5"},
        {"log_power_1.csv", "table --fn 'log_power(1)' --s-start 0.5 --s-end 2.5 --step 1"},
    };
    for (const auto& fixture : fixtures) {
        std::ifstream in(kGoldenDir + "/" + fixture.file, std::ios::binary);
        REQUIRE_MESSAGE(in.good(), fixture.file);
        std::stringstream golden;
        golden << in.rdbuf();
        const auto r = run(kBin + " " + std::string(fixture.args));
        CHECK(r.exit_code == 0);
        CHECK_MESSAGE(r.output == golden.str(), fixture.file);
    }
}
