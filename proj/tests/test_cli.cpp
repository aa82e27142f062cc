#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "efftemp/cli.hpp"
#include "efftemp/errors.hpp"
#include "efftemp/system_file.hpp"
#include "support.hpp"

using namespace efftemp;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = 0;
    std::string out;
    std::string err;
    json doc;
};

Run run(const std::vector<std::string>& args, const CliEnvironment& env = {}) {
    std::ostringstream out, err;
    Run r;
    r.status = run_cli(args, out, err, env);
    r.out = out.str();
    r.err = err.str();
    if (!r.out.empty() && r.out.front() == '{') r.doc = json::parse(r.out);
    return r;
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("efftemp_cli_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& content) const {
        const fs::path p = path_ / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

double as_double(const json& node) {
    if (node.is_string()) {
        const std::string s = node.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        return NAN;
    }
    return node.get<double>();
}

const char* kHalf = R"({"energies": [0, 1], "populations": [0.5, 0.5]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("system file parsing") {
    const QuantumSystem sys = parse_system_json(R"({"energies": [1, 0], "populations": [0.3, 0.7]})");
    CHECK(sys.energies() == std::vector<double>{0.0, 1.0});
    CHECK(sys.populations()[0] == doctest::Approx(0.7));
    const QuantumSystem dense = parse_system_json(
        R"({"energies": [0, 1], "rho_re": [[0.6, 0.2], [0.2, 0.4]], "rho_im": [[0, 0.1], [-0.1, 0]]})");
    CHECK(std::abs(dense.rho().matrix()(0, 1) - Complex(0.2, 0.1)) < 1e-15);
    const QuantumSystem back = parse_system_json(system_to_json(dense));
    CHECK(testing::max_diff(back.rho().matrix(), dense.rho().matrix()) < 1e-15);
    CHECK_THROWS_AS(parse_system_json("{not json"), InputError);
    CHECK_THROWS_AS(parse_system_json(R"({"energies": [0, 1]})"), InputError);
    CHECK_THROWS_AS(parse_system_json(R"({"energies": [0, 1], "populations": [0.5, "x"]})"), InputError);
    CHECK_THROWS_AS(parse_system_json(R"({"energies": [0, 1], "populations": [0.5, 0.4]})"), InputError);
}

TEST_CASE("single reports the virtual spectrum") {
    TempDir dir;
    const std::string file = dir.write("q.json", R"({"energies": [0, 1], "populations": [0.8, 0.2]})");
    const std::string csv = dir.path("vts.csv");
    const Run r = run({"single", file, "--out", csv, "--kelvin"});
    REQUIRE(r.status == kExitOk);
    CHECK(r.doc["command"] == "single");
    CHECK(r.doc["exit_status"] == 0);
    CHECK(r.doc["input_digest"].get<std::string>().size() == 16);
    CHECK(as_double(r.doc["results"]["beta_c"]) == doctest::Approx(std::log(4.0)).epsilon(1e-11));
    CHECK(as_double(r.doc["results"]["T_c"]) == doctest::Approx(1.0 / std::log(4.0)).epsilon(1e-11));
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"i", "j", "energy_i", "energy_j", "beta_ij"});
    CHECK(std::stod(rows[1][4]) == doctest::Approx(std::log(4.0)).epsilon(1e-11));
}

TEST_CASE("single on the coherent qutrit reduced state") {
    TempDir dir;
    const double s2 = std::sqrt(2.0);
    std::ostringstream sys;
    sys.precision(17);
    sys << R"({"energies": [0, 1, 2], "populations": [)" << (4 + s2) / 12 << ", " << (4 - 2 * s2) / 12 << ", "
        << (4 + s2) / 12 << "]}";
    const Run r = run({"single", dir.write("c.json", sys.str())});
    REQUIRE(r.status == kExitOk);
    const double expected = std::log(2.5 + 3.0 / s2);
    CHECK(as_double(r.doc["results"]["beta_c"]) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(as_double(r.doc["results"]["beta_h"]) == doctest::Approx(-expected).epsilon(1e-9));
}

TEST_CASE("asymptotic command") {
    TempDir dir;
    const std::string file = dir.write("half.json", kHalf);
    const Run r = run({"asymptotic", file, "--delta", "0.1", "--expansion"});
    REQUIRE(r.status == kExitOk);
    CHECK(as_double(r.doc["results"]["beta_c"]) == doctest::Approx(-0.2014).epsilon(1e-3));
    CHECK(as_double(r.doc["results"]["beta_h"]) == doctest::Approx(0.2014).epsilon(1e-3));
    CHECK(r.doc["results"].contains("expansion"));

    const Run gibbs = run({"asymptotic", dir.write("g.json", R"({"energies": [0, 1], "populations": [0.8, 0.2]})"),
                           "--delta", "0.001"});
    REQUIRE(gibbs.status == kExitOk);
    CHECK(std::abs(as_double(gibbs.doc["results"]["beta_c"]) - std::log(4.0)) < 1e-2);
    CHECK(std::abs(as_double(gibbs.doc["results"]["beta_h"]) - std::log(4.0)) < 1e-2);

    const Run too_far = run({"asymptotic", file, "--delta", "0.7"});
    CHECK(too_far.status == kExitNumerical);
    CHECK(too_far.doc["exit_status"] == 2);
    CHECK(too_far.doc.contains("error"));
}

TEST_CASE("input errors exit with status 1") {
    TempDir dir;
    const Run bad_trace = run({"single", dir.write("t.json", R"({"energies": [0, 1], "populations": [0.5, 0.4]})")});
    CHECK(bad_trace.status == kExitInput);
    CHECK(bad_trace.doc["exit_status"] == 1);
    CHECK(run({"single", dir.path("missing.json")}).status == kExitInput);
    CHECK(run({"oracle", "--random", "10"}).status == kExitInput);
    CHECK(run({"bogus"}).status == kExitInput);
    CHECK(run({"asymptotic", dir.write("h.json", kHalf)}).status == kExitInput);
    CHECK(run({"jc", "--fock", "1"}).status == kExitInput);
    CHECK(run({"qutrit", "--lambda", "1.5"}).status == kExitInput);

    std::string seven = R"({"energies": [0, 1, 2, 3, 4, 5, 6], "populations": [0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1]})";
    const std::string big = dir.write("seven.json", seven);
    CHECK(run({"oracle", big, "--beta-bath", "0.5"}).status == kExitInput);
    CliEnvironment env;
    env.max_dim = 7;
    CHECK(run({"oracle", big, "--beta-bath", "0.5"}, env).status == kExitOk);
}

TEST_CASE("oracle command") {
    TempDir dir;
    const std::string file = dir.write("q.json", R"({"energies": [0, 1], "populations": [0.8, 0.2]})");
    const Run r = run({"oracle", file, "--beta-bath", "0.5"});
    REQUIRE(r.status == kExitOk);
    CHECK(r.doc["results"]["can_cool"] == true);
    CHECK(r.doc["results"]["can_heat"] == false);
    CHECK(r.doc["results"]["agreement"] == true);
    CHECK(r.doc["results"]["stochasticity_residual"].get<double>() <= 1e-9);

    const Run batch = run({"oracle", "--random", "20", "--seed", "7"});
    REQUIRE(batch.status == kExitOk);
    CHECK(batch.doc["results"]["cases"] == 100);
    CHECK(batch.doc["results"]["disagreements"] == 0);
}

TEST_CASE("jc command writes steps + 1 rows") {
    TempDir dir;
    const std::string csv = dir.path("jc.csv");
    const Run r = run({"jc", "--steps", "30", "--out", csv});
    REQUIRE(r.status == kExitOk);
    CHECK(r.doc["results"]["fixed_point_residual"].get<double>() < 1e-10);
    CHECK(r.doc["results"]["atom_distance_at_tau"].get<double>() < 1e-6);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 32);
    CHECK(rows[0] == std::vector<std::string>{"t", "beta_c_A", "beta_h_A", "beta_c_R", "beta_h_R", "atom_distance",
                                              "cavity_coherence"});
    CHECK(std::stod(rows[1][0]) == 0.0);
    CHECK(std::stod(rows[31][0]) == doctest::Approx(30.0));
    CHECK(std::abs(std::stod(rows[1][1])) < 1e-9);
    CHECK(std::abs(std::stod(rows[1][2])) < 1e-9);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].size() == 7);
}

TEST_CASE("qutrit command") {
    TempDir dir;
    const Run r = run({"qutrit", "--lambda", "1", "--beta", "0", "--copies", "3"});
    REQUIRE(r.status == kExitOk);
    const double expected = std::log(2.5 + 3.0 / std::sqrt(2.0));
    CHECK(as_double(r.doc["results"]["with_catalyst"]["beta_c"]) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(as_double(r.doc["results"]["with_catalyst"]["beta_h"]) == doctest::Approx(-expected).epsilon(1e-9));
    CHECK(r.doc["results"]["copies"].size() == 3);

    const std::string csv = dir.path("sweep.csv");
    const Run sweep = run({"qutrit", "--sweep", "--out", csv});
    REQUIRE(sweep.status == kExitOk);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 22);
    CHECK(rows[0][0] == "lambda");
    CHECK(std::stod(rows[21][0]) == 1.0);
    CHECK(run({"qutrit", "--sweep"}).status == kExitInput);
}

TEST_CASE("reports are byte-identical across runs") {
    TempDir dir;
    const std::string file = dir.write("h.json", kHalf);
    const std::vector<std::vector<std::string>> commands{
        {"single", file},
        {"asymptotic", file, "--delta", "0.1", "--expansion"},
        {"oracle", "--random", "15", "--seed", "3"},
        {"qutrit", "--lambda", "0.8"},
    };
    for (const auto& args : commands) CHECK(run(args).out == run(args).out);

    const std::string a = dir.path("a.csv"), b = dir.path("b.csv");
    run({"jc", "--steps", "20", "--out", a});
    run({"jc", "--steps", "20", "--out", b});
    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("formatting helpers") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
}

}
