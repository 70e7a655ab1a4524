#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "nlab/cli.hpp"

using nlohmann::json;

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("nonlocality-lab");
    for (const auto& a : args) argv.push_back(a.c_str());
    return nlab::cli::run(static_cast<int>(argv.size()), argv.data());
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/nlab_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"no-such-subcommand"}) == 2);
    CHECK(run_cli({"epr-lattice", "--bogus-flag", "3"}) == 2);
    // Subcommands without tabular payloads reject --format csv.
    CHECK(run_cli({"vonneumann-demo", "--format", "csv"}) == 2);
}

TEST_CASE("reports carry the schema header and resolved parameters") {
    TempFile tmp("schema.json");
    CHECK(run_cli({"vonneumann-demo", "--out", tmp.path}) == 0);
    const json rep = read_json(tmp.path);
    CHECK(rep["schema"] == "nonlocality-lab/1");
    CHECK(rep["subcommand"] == "vonneumann-demo");
    CHECK(rep["passed"] == true);
    CHECK(rep.contains("timestamp"));
    CHECK(rep["attained_sums"].size() == 3);
    CHECK(rep["sum_op_eigenvalues"].size() == 2);
}

TEST_CASE("identical argv produce byte-identical reports modulo the timestamp") {
    TempFile a("det_a.json"), b("det_b.json");
    CHECK(run_cli({"perfect-correlation", "--n", "3", "--trials", "500", "--seed", "99", "--out",
                   a.path}) == 0);
    CHECK(run_cli({"perfect-correlation", "--n", "3", "--trials", "500", "--seed", "99", "--out",
                   b.path}) == 0);
    json ja = read_json(a.path);
    json jb = read_json(b.path);
    ja.erase("timestamp");
    jb.erase("timestamp");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("trajectory run reproduces the closed-form point") {
    TempFile tmp("traj.json");
    CHECK(run_cli({"bohm-trajectory", "--x0", "1", "--t-final", "1.7320508075688772", "--out",
                   tmp.path}) == 0);
    const json rep = read_json(tmp.path);
    CHECK(std::abs(rep["final_position"].get<double>() - 2.0) < 1e-6);

    // CSV payload has the t,x header and one row per step.
    TempFile csv("traj.csv");
    CHECK(run_cli({"bohm-trajectory", "--x0", "1", "--t-final", "0.01", "--format", "csv", "--out",
                   csv.path}) == 0);
    const std::string body = read_file(csv.path);
    CHECK(body.rfind("t,x\n", 0) == 0);
}

TEST_CASE("observable-algebra verification runs green") {
    TempFile tmp("clifton.json");
    CHECK(run_cli({"clifton-verify", "--n-points", "8", "--k0", "1", "--m", "4", "--out",
                   tmp.path}) == 0);
    const json rep = read_json(tmp.path);
    int residuals = 0;
    for (const auto& check : rep["checks"]) {
        const std::string name = check["name"].get<std::string>();
        if (name.rfind("residual ", 0) == 0) {
            ++residuals;
            CHECK(check["value"].get<double>() < 1e-10);
        }
    }
    CHECK(residuals == 9);
    CHECK(rep["value_map_search"]["params_admissible"] == false);
    CHECK(rep["value_map_search"]["admissible_alternatives"].size() > 0);
}

TEST_CASE("lattice subcommand emits histogram rows in csv format") {
    TempFile csv("epr.csv");
    CHECK(run_cli({"epr-lattice", "--half-count", "2", "--trials", "100", "--format", "csv",
                   "--out", csv.path}) == 0);
    const std::string body = read_file(csv.path);
    CHECK(body.rfind("index,x,count_q_first,count_p_first\n", 0) == 0);
    // Header plus one row per lattice site.
    int lines = 0;
    for (char c : body)
        if (c == '\n') ++lines;
    CHECK(lines == 6);
}
